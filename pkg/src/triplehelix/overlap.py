"""Conversion between inclusive retrieval counts and disjoint Venn cells.

A boolean retrieval such as ``U AND I`` returns every document carrying both
markers, so a document with all three markers shows up in U0, I0, G0, UI0,
UG0, IG0 and UIG0 at once.  The probability universe needs each document
exactly once, in the region of the Venn diagram it belongs to.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Iterable, Optional

__all__ = [
    "InclusiveCounts",
    "ExclusiveCells",
    "NegativeCellError",
    "to_exclusive",
    "to_inclusive",
    "validate",
    "count_documents",
    "union_total",
]

SECTORS = ("U", "I", "G")


class NegativeCellError(ValueError):
    """Raised when inclusive counts imply a negative disjoint region."""

    def __init__(self, cells: dict[str, int]):
        self.cells = cells
        bad = ", ".join(f"{k}={v}" for k, v in cells.items() if v < 0)
        super().__init__(f"inconsistent retrieval counts, negative cell(s): {bad}")


@dataclass(frozen=True)
class InclusiveCounts:
    u0: int
    i0: int
    g0: int
    ui0: int
    ug0: int
    ig0: int
    uig0: int

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))


@dataclass(frozen=True)
class ExclusiveCells:
    u: int
    i: int
    g: int
    ui: int
    ug: int
    ig: int
    uig: int
    none: Optional[int] = None

    def as_tuple(self) -> tuple[int, ...]:
        """The seven sector cells, ``none`` excluded."""
        return (self.u, self.i, self.g, self.ui, self.ug, self.ig, self.uig)

    @property
    def union(self) -> int:
        return sum(self.as_tuple())

    def histogram(self) -> dict[frozenset, int]:
        """Cell counts keyed by the sector subset they represent."""
        keys = ("U", "I", "G", "UI", "UG", "IG", "UIG")
        return {frozenset(k): v for k, v in zip(keys, self.as_tuple())}


def union_total(c: InclusiveCounts) -> int:
    """Size of U0 | I0 | G0 by inclusion-exclusion."""
    return c.u0 + c.i0 + c.g0 - c.ui0 - c.ug0 - c.ig0 + c.uig0


def _raw_cells(c: InclusiveCounts) -> dict[str, int]:
    return {
        "u": c.u0 - c.ui0 - c.ug0 + c.uig0,
        "i": c.i0 - c.ui0 - c.ig0 + c.uig0,
        "g": c.g0 - c.ig0 - c.ug0 + c.uig0,
        "ui": c.ui0 - c.uig0,
        "ug": c.ug0 - c.uig0,
        "ig": c.ig0 - c.uig0,
        "uig": c.uig0,
    }


def to_exclusive(c: InclusiveCounts) -> ExclusiveCells:
    """Remove multiple counting of the overlaps.

    Raises `NegativeCellError` instead of clamping: a negative region means
    the retrieval counts cannot come from one set of documents.
    """
    cells = _raw_cells(c)
    if any(v < 0 for v in cells.values()):
        raise NegativeCellError(cells)
    return ExclusiveCells(**cells)


def to_inclusive(cells: ExclusiveCells) -> InclusiveCounts:
    return InclusiveCounts(
        u0=cells.u + cells.ui + cells.ug + cells.uig,
        i0=cells.i + cells.ui + cells.ig + cells.uig,
        g0=cells.g + cells.ug + cells.ig + cells.uig,
        ui0=cells.ui + cells.uig,
        ug0=cells.ug + cells.uig,
        ig0=cells.ig + cells.uig,
        uig0=cells.uig,
    )


def validate(c: InclusiveCounts) -> list[str]:
    """List every consistency violation of `c`; empty means usable.

    Each entry names the failing rule and the values involved.
    """
    problems = []
    for name in ("u0", "i0", "g0", "ui0", "ug0", "ig0", "uig0"):
        v = getattr(c, name)
        if v < 0:
            problems.append(f"{name} < 0 ({name}={v})")
    pairs = (("ui0", "u0", "i0"), ("ug0", "u0", "g0"), ("ig0", "i0", "g0"))
    for both, a, b in pairs:
        va, vb, vab = getattr(c, a), getattr(c, b), getattr(c, both)
        if vab > min(va, vb):
            problems.append(f"{both} > min({a},{b}) ({both}={vab}, {a}={va}, {b}={vb})")
    if c.uig0 > min(c.ui0, c.ug0, c.ig0):
        problems.append(
            f"uig0 > min(ui0,ug0,ig0) (uig0={c.uig0}, ui0={c.ui0}, ug0={c.ug0}, ig0={c.ig0})"
        )
    if problems:
        # a broken inequality already implies the negative cells below
        return problems
    for name, v in _raw_cells(c).items():
        if v < 0:
            problems.append(f"corrected cell {name} < 0 ({name}={v})")
    return problems


def count_documents(labels: Iterable[Iterable[str]]) -> InclusiveCounts:
    """Count a collection of sector-labelled documents the way retrieval does.

    Each document is an iterable of sector letters drawn from ``"U"``, ``"I"``,
    ``"G"``.  A document is counted in every query whose sectors it carries.
    """
    tally = dict.fromkeys(("u0", "i0", "g0", "ui0", "ug0", "ig0", "uig0"), 0)
    for doc in labels:
        s = {x.upper() for x in doc}
        if not s <= set(SECTORS):
            raise ValueError(f"unknown sector label(s): {sorted(s - set(SECTORS))}")
        u, i, g = "U" in s, "I" in s, "G" in s
        tally["u0"] += u
        tally["i0"] += i
        tally["g0"] += g
        tally["ui0"] += u and i
        tally["ug0"] += u and g
        tally["ig0"] += i and g
        tally["uig0"] += u and i and g
    return InclusiveCounts(**{k: int(v) for k, v in tally.items()})
