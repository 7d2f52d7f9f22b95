"""Ranking, trend classification, scenario comparison and series extraction."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .dataset import CountryWindowRecord, CountsPayload, PayloadUnavailable, fmt_window
from .measures import UNION_ONLY, UniversePolicy, cells_to_joint3, from_bits, transmission2
from .overlap import ExclusiveCells, to_exclusive

__all__ = [
    "MissingValue",
    "NoOverlap",
    "RankEntry",
    "TrendSummary",
    "ScenarioDelta",
    "BilateralPoint",
    "GrowthPoint",
    "rank_by_synergy",
    "rank_records",
    "trend",
    "compare_scenarios",
    "sign_pattern",
    "bilateral_decomposition",
    "bilateral_from_records",
    "growth_series",
    "record_series",
]

TOWARD_ZERO = "toward-zero"
AWAY_FROM_ZERO = "away-from-zero"
MIXED = "mixed"
INSUFFICIENT = "insufficient-data"


class MissingValue(ValueError):
    pass


class NoOverlap(ValueError):
    pass


@dataclass(frozen=True)
class RankEntry:
    key: str
    t_uig: float
    position: int


def rank_by_synergy(values: Mapping[str, Optional[float]]) -> list[RankEntry]:
    """Order keys from most negative T(UIG) (most integrated) to least negative.

    Ties are broken alphabetically so the order is total and does not depend
    on input order.
    """
    missing = sorted(k for k, v in values.items() if v is None)
    if missing:
        raise MissingValue(f"no T(UIG) for: {', '.join(missing)}")
    ordered = sorted(values.items(), key=lambda kv: (kv[1], kv[0]))
    return [RankEntry(k, v, n) for n, (k, v) in enumerate(ordered, start=1)]


def rank_records(records: Iterable[CountryWindowRecord], unit: str = "mbit", policy: str = "union") -> list[RankEntry]:
    records = list(records)
    windows = {r.window for r in records}
    if len(windows) > 1:
        raise ValueError(f"records span several windows: {sorted(windows)}")
    return rank_by_synergy({r.label: r.t_uig(unit, policy) for r in records})


@dataclass(frozen=True)
class TrendSummary:
    key: str
    first: Optional[float]
    last: Optional[float]
    abs_delta: Optional[float]
    slope: Optional[float]
    classification: str


def trend(values: Sequence[Optional[float]], key: str = "", positions: Optional[Sequence[float]] = None) -> TrendSummary:
    """Classify whether |T| shrinks over a window-ordered series.

    Missing entries (None) are dropped, not imputed.  The series moves
    toward zero when the last value is smaller in magnitude than the first
    *and* the least-squares slope of |T| is negative; away from zero when both
    go the other way; anything else is mixed.  `positions` gives the x value
    of each entry (defaults to its index).
    """
    xs = np.arange(len(values), dtype=float) if positions is None else np.asarray(positions, dtype=float)
    keep = [(x, v) for x, v in zip(xs, values) if v is not None]
    if len(keep) < 2:
        only = keep[0][1] if keep else None
        return TrendSummary(key, only, only, None, None, INSUFFICIENT)
    x = np.array([k[0] for k in keep])
    y = np.abs(np.array([k[1] for k in keep], dtype=float))
    slope = float(np.polyfit(x - x.mean(), y, 1)[0])
    first, last = keep[0][1], keep[-1][1]
    delta = abs(last) - abs(first)
    if delta < 0 and slope < 0:
        cls = TOWARD_ZERO
    elif delta > 0 and slope > 0:
        cls = AWAY_FROM_ZERO
    else:
        cls = MIXED
    return TrendSummary(key, first, last, delta, slope, cls)


@dataclass(frozen=True)
class ScenarioDelta:
    window: tuple[int, int]
    a: float
    b: float
    difference: float


def _exact_diff(b: float, a: float) -> float:
    # decimal arithmetic on the shortest reprs, so -15.34 - -30.29 is 14.95
    return float(Decimal(repr(float(b))) - Decimal(repr(float(a))))


def compare_scenarios(
    a: Mapping[tuple[int, int], Optional[float]], b: Mapping[tuple[int, int], Optional[float]]
) -> list[ScenarioDelta]:
    """Per-window ``b - a`` over the windows where both series have a value."""
    common = sorted(w for w in set(a) & set(b) if a[w] is not None and b[w] is not None)
    if not common:
        raise NoOverlap("the two series share no non-missing window")
    return [ScenarioDelta(w, a[w], b[w], _exact_diff(b[w], a[w])) for w in common]


def sign_pattern(deltas: Sequence[ScenarioDelta]) -> str:
    """One character per window: ``+``, ``-`` or ``0``."""
    return "".join("+" if d.difference > 0 else "-" if d.difference < 0 else "0" for d in deltas)


@dataclass(frozen=True)
class BilateralPoint:
    window: tuple[int, int]
    tUI: float
    tUG: float
    tIG: float


def bilateral_decomposition(
    cells: Mapping[tuple[int, int], ExclusiveCells], policy: UniversePolicy = UNION_ONLY, unit: str = "bit"
) -> list[BilateralPoint]:
    out = []
    for w in sorted(cells):
        j = cells_to_joint3(cells[w], policy)
        out.append(
            BilateralPoint(
                w,
                transmission2(j.sum(axis=2), unit).value,
                transmission2(j.sum(axis=1), unit).value,
                transmission2(j.sum(axis=0), unit).value,
            )
        )
    return out


def _counts_only(records: Iterable[CountryWindowRecord]) -> list[CountryWindowRecord]:
    records = list(records)
    for r in records:
        if not isinstance(r.payload, CountsPayload):
            kind = "missing" if r.payload is None else type(r.payload).__name__
            raise PayloadUnavailable(
                f"{r.label} {fmt_window(r.window)}: needs retrieval counts, record has {kind} payload"
            )
    return records


def bilateral_from_records(
    records: Iterable[CountryWindowRecord], policy: str = "union", unit: str = "bit"
) -> list[BilateralPoint]:
    records = _counts_only(records)
    out = []
    for r in sorted(records, key=lambda r: r.window):
        out.extend(bilateral_decomposition({r.window: to_exclusive(r.payload.counts)}, r.payload.policy(policy), unit))
    return out


@dataclass(frozen=True)
class GrowthPoint:
    window: tuple[int, int]
    u0: int
    i0: int
    g0: int


def growth_series(records: Iterable[CountryWindowRecord]) -> list[GrowthPoint]:
    """Inclusive U, I and G publication counts per window, in window order."""
    records = _counts_only(records)
    return [
        GrowthPoint(r.window, r.payload.counts.u0, r.payload.counts.i0, r.payload.counts.g0)
        for r in sorted(records, key=lambda r: r.window)
    ]


def record_series(
    records: Iterable[CountryWindowRecord], unit: str = "mbit", policy: str = "union"
) -> dict[tuple[int, int], Optional[float]]:
    """Window -> T(UIG) in `unit` (None where missing), window-ordered."""
    return {r.window: r.t_uig(unit, policy) for r in sorted(records, key=lambda r: r.window)}
