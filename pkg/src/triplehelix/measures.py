"""Shannon entropies, transmissions and three-way configurational information.

Distributions are plain numpy arrays.  A three-sector joint distribution is a
``(2, 2, 2)`` array indexed ``[u, i, g]`` where 1 marks membership of the
sector.  All arithmetic is done in bits; `EntropyValue` only carries a display
unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .overlap import ExclusiveCells

__all__ = [
    "UNITS",
    "EntropyValue",
    "InvalidDistribution",
    "EmptyUniverse",
    "UniversePolicy",
    "UNION_ONLY",
    "IndicatorSet",
    "convert_unit",
    "to_bits",
    "from_bits",
    "entropy",
    "joint_entropy",
    "conditional_entropy",
    "transmission2",
    "conditional_transmission",
    "configurational_information",
    "cells_to_joint3",
    "indicator_set",
    "indicators_from_cells",
    "indicators_from_entropies",
    "ENTROPY_NAMES",
    "TRANSMISSION_NAMES",
]

TOL = 1e-9

# size of one unit, expressed in bits
_UNIT_IN_BITS = {"bit": 1.0, "mbit": 1e-3, "nat": 1.0 / math.log(2)}
UNITS = tuple(_UNIT_IN_BITS)

ENTROPY_NAMES = ("hU", "hI", "hG", "hUI", "hUG", "hIG", "hUIG")
TRANSMISSION_NAMES = ("tUI", "tUG", "tIG", "tUIG")


class InvalidDistribution(ValueError):
    pass


class EmptyUniverse(ValueError):
    pass


def _check_unit(unit: str) -> str:
    if unit not in _UNIT_IN_BITS:
        raise ValueError(f"unknown unit {unit!r}; expected one of {', '.join(UNITS)}")
    return unit


def to_bits(value: float, unit: str) -> float:
    _check_unit(unit)
    if unit == "bit":
        return value
    if unit == "mbit":
        return value / 1000.0
    return value / math.log(2)


def from_bits(value: float, unit: str) -> float:
    _check_unit(unit)
    if unit == "bit":
        return value
    if unit == "mbit":
        return value * 1000.0
    return value * math.log(2)


@dataclass(frozen=True)
class EntropyValue:
    value: float
    unit: str = "bit"

    def __post_init__(self):
        _check_unit(self.unit)

    @property
    def bits(self) -> float:
        return to_bits(self.value, self.unit)

    def to(self, unit: str) -> "EntropyValue":
        return convert_unit(self, unit)

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return f"{self.value:g} {self.unit}"


def convert_unit(v: EntropyValue, unit: str) -> EntropyValue:
    if unit == v.unit:
        return v
    return EntropyValue(from_bits(v.bits, unit), unit)


def _as_distribution(p) -> np.ndarray:
    """Validate a probability array, renormalising sub-tolerance drift."""
    arr = np.asarray(p, dtype=float)
    if arr.size == 0:
        raise InvalidDistribution("empty distribution")
    if not np.all(np.isfinite(arr)):
        raise InvalidDistribution("distribution contains non-finite entries")
    if np.any(arr < -TOL):
        raise InvalidDistribution(f"negative probability {arr.min()!r}")
    total = arr.sum()
    if abs(total - 1.0) > TOL:
        raise InvalidDistribution(f"probabilities sum to {total!r}, not 1")
    arr = np.clip(arr, 0.0, None)
    return arr / arr.sum()


def _h(p: np.ndarray) -> float:
    nz = p[p > 0]
    return float(-np.sum(nz * np.log2(nz))) if nz.size else 0.0


def entropy(p, unit: str = "bit") -> EntropyValue:
    """Shannon entropy of a one-dimensional distribution, ``0 log 0 = 0``."""
    arr = _as_distribution(p)
    if arr.ndim != 1:
        raise InvalidDistribution(f"expected a 1-d distribution, got shape {arr.shape}")
    return EntropyValue(from_bits(max(_h(arr), 0.0), unit), unit)


def _marginal(arr: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    axes = tuple(sorted(set(a % arr.ndim for a in axes)))
    drop = tuple(a for a in range(arr.ndim) if a not in axes)
    return arr.sum(axis=drop) if drop else arr


def joint_entropy(p, axes: Optional[Sequence[int]] = None, unit: str = "bit") -> EntropyValue:
    """Entropy over all cells of a joint table.

    With `axes`, the table is first marginalised onto those axes, so
    ``joint_entropy(j, axes=(0, 2))`` is H(U,G) of a three-sector joint.
    """
    arr = _as_distribution(p)
    if axes is not None:
        arr = _marginal(arr, axes)
    return EntropyValue(from_bits(max(_h(arr.ravel()), 0.0), unit), unit)


def conditional_entropy(p, given: Union[int, Sequence[int]] = 0, unit: str = "bit") -> EntropyValue:
    """H(rest | given) = H(all axes) - H(given axes), via the chain rule."""
    arr = _as_distribution(p)
    given = (given,) if isinstance(given, int) else tuple(given)
    h = _h(arr.ravel()) - _h(_marginal(arr, given).ravel())
    return EntropyValue(from_bits(max(h, 0.0) if h > -TOL else h, unit), unit)


def transmission2(p, unit: str = "bit") -> EntropyValue:
    """Mutual information H(X) + H(Y) - H(X,Y) of a two-dimensional joint."""
    arr = _as_distribution(p)
    if arr.ndim != 2:
        raise InvalidDistribution(f"expected a 2-d joint, got shape {arr.shape}")
    t = _h(arr.sum(axis=1)) + _h(arr.sum(axis=0)) - _h(arr.ravel())
    return EntropyValue(from_bits(max(t, 0.0) if t > -TOL else t, unit), unit)


def conditional_transmission(j, given: int = 2, unit: str = "bit") -> EntropyValue:
    """T(X,Y|Z) of a three-dimensional joint, conditioning on axis `given`."""
    arr = _as_distribution(j)
    if arr.ndim != 3:
        raise InvalidDistribution(f"expected a 3-d joint, got shape {arr.shape}")
    z = given % 3
    x, y = (a for a in range(3) if a != z)
    t = (
        _h(_marginal(arr, (x, z)).ravel())
        + _h(_marginal(arr, (y, z)).ravel())
        - _h(_marginal(arr, (z,)))
        - _h(arr.ravel())
    )
    return EntropyValue(from_bits(t, unit), unit)


def _seven_entropies(arr: np.ndarray) -> dict[str, float]:
    return {
        "hU": _h(_marginal(arr, (0,))),
        "hI": _h(_marginal(arr, (1,))),
        "hG": _h(_marginal(arr, (2,))),
        "hUI": _h(_marginal(arr, (0, 1)).ravel()),
        "hUG": _h(_marginal(arr, (0, 2)).ravel()),
        "hIG": _h(_marginal(arr, (1, 2)).ravel()),
        "hUIG": _h(arr.ravel()),
    }


def _t_uig(h: Mapping[str, float]) -> float:
    return h["hU"] + h["hI"] + h["hG"] - h["hUI"] - h["hUG"] - h["hIG"] + h["hUIG"]


def configurational_information(j, unit: str = "bit") -> EntropyValue:
    """Signed three-way mutual information of a ``(2, 2, 2)`` joint.

    Negative values mean the third sector reduces the uncertainty in the
    relation between the other two.
    """
    arr = _as_distribution(j)
    if arr.shape != (2, 2, 2):
        raise InvalidDistribution(f"expected shape (2, 2, 2), got {arr.shape}")
    return EntropyValue(from_bits(_t_uig(_seven_entropies(arr)), unit), unit)


@dataclass(frozen=True)
class UniversePolicy:
    """Which documents make up the probability universe.

    ``union`` uses only documents carrying at least one sector marker;
    ``with-none`` adds ``total - union`` documents in the (0, 0, 0) cell.
    """

    mode: str = "union"
    total: Optional[int] = None

    def __post_init__(self):
        if self.mode not in ("union", "with-none"):
            raise ValueError(f"unknown universe mode {self.mode!r}")
        if self.mode == "with-none" and (self.total is None or self.total < 0):
            raise ValueError("with-none policy needs a non-negative total")

    @classmethod
    def with_none(cls, total: int) -> "UniversePolicy":
        return cls("with-none", total)


UNION_ONLY = UniversePolicy()


def cells_to_joint3(cells: ExclusiveCells, policy: UniversePolicy = UNION_ONLY) -> np.ndarray:
    union = cells.union
    if policy.mode == "with-none":
        if policy.total < union:
            raise ValueError(f"universe total {policy.total} is smaller than the union {union}")
        n = policy.total
        none = policy.total - union
    else:
        n = union
        none = 0
    if n == 0:
        raise EmptyUniverse("no documents in the universe")
    j = np.zeros((2, 2, 2))
    j[0, 0, 0] = none
    j[1, 0, 0] = cells.u
    j[0, 1, 0] = cells.i
    j[0, 0, 1] = cells.g
    j[1, 1, 0] = cells.ui
    j[1, 0, 1] = cells.ug
    j[0, 1, 1] = cells.ig
    j[1, 1, 1] = cells.uig
    return j / n


@dataclass(frozen=True)
class IndicatorSet:
    """The eleven Triple-Helix indicators, stored in bits."""

    hU: float
    hI: float
    hG: float
    hUI: float
    hUG: float
    hIG: float
    hUIG: float
    tUI: float
    tUG: float
    tIG: float
    tUIG: float

    def get(self, name: str, unit: str = "bit") -> EntropyValue:
        return EntropyValue(from_bits(getattr(self, name), unit), unit)

    def as_dict(self, unit: str = "bit") -> dict[str, float]:
        return {f.name: from_bits(getattr(self, f.name), unit) for f in fields(self)}

    def violations(self, slack: float = TOL) -> list[str]:
        """Broken entropy bounds, tolerating `slack` bits of error per check."""
        out = []
        pairs = (("tUI", "hU", "hI", "hUI"), ("tUG", "hU", "hG", "hUG"), ("tIG", "hI", "hG", "hIG"))
        for t, a, b, ab in pairs:
            if getattr(self, t) < -slack:
                out.append(f"{t} < 0 ({t}={getattr(self, t):.6g} bit)")
            ha, hb, hab = getattr(self, a), getattr(self, b), getattr(self, ab)
            if hab < max(ha, hb) - slack:
                out.append(f"{ab} < max({a},{b})")
        for name in ENTROPY_NAMES:
            if getattr(self, name) < -slack:
                out.append(f"{name} < 0")
        if self.hUIG < max(self.hUI, self.hUG, self.hIG) - slack:
            out.append("hUIG < max(hUI,hUG,hIG)")
        return out


def indicators_from_entropies(h: Mapping[str, float], unit: str = "bit") -> IndicatorSet:
    """Build indicators from seven published entropies.

    Bilateral transmissions come from the pairwise entropies; T(UIG) from all
    seven.  No bound checks are applied here, since published values carry
    rounding error (see `IndicatorSet.violations`).
    """
    missing = [n for n in ENTROPY_NAMES if n not in h]
    if missing:
        raise KeyError(f"missing entropies: {', '.join(missing)}")
    b = {n: to_bits(float(h[n]), unit) for n in ENTROPY_NAMES}
    return IndicatorSet(
        **b,
        tUI=b["hU"] + b["hI"] - b["hUI"],
        tUG=b["hU"] + b["hG"] - b["hUG"],
        tIG=b["hI"] + b["hG"] - b["hIG"],
        tUIG=_t_uig(b),
    )


def indicators_from_joint(j) -> IndicatorSet:
    arr = _as_distribution(j)
    if arr.shape != (2, 2, 2):
        raise InvalidDistribution(f"expected shape (2, 2, 2), got {arr.shape}")
    h = _seven_entropies(arr)
    return IndicatorSet(
        **h,
        tUI=transmission2(_marginal(arr, (0, 1))).value,
        tUG=transmission2(_marginal(arr, (0, 2))).value,
        tIG=transmission2(_marginal(arr, (1, 2))).value,
        tUIG=_t_uig(h),
    )


def indicators_from_cells(cells: ExclusiveCells, policy: UniversePolicy = UNION_ONLY) -> IndicatorSet:
    return indicators_from_joint(cells_to_joint3(cells, policy))


def indicator_set(source, policy: UniversePolicy = UNION_ONLY, unit: str = "bit") -> IndicatorSet:
    """Indicators from either exclusive cells or a mapping of seven entropies.

    `unit` only applies to entropy input; `policy` only to cell input.
    """
    if isinstance(source, ExclusiveCells):
        return indicators_from_cells(source, policy)
    if isinstance(source, Mapping):
        return indicators_from_entropies(source, unit)
    raise TypeError(f"cannot build indicators from {type(source).__name__}")
