"""Web of Science search programs for U, I and G address counts.

Only text is produced.  Steps #1-#5 are advanced-search strings; #6-#10
combine earlier result sets into G0, UI0, UG0, IG0 and UIG0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

__all__ = [
    "EmptyCountry",
    "InvalidYearRange",
    "QueryStep",
    "QueryPlan",
    "build_plan",
    "expand_country",
    "country_groups",
    "UNIVERSITY_TERMS",
    "INDUSTRY_TERMS",
    "GOVERNMENT_TERMS",
]

UNIVERSITY_TERMS = ("UNIV*", "COLL*")
INDUSTRY_TERMS = ("GMBH*", "CORP*", "LTD*", "AG*")
GOVERNMENT_TERMS = ("NATL*", "NACL*", "NAZL*", "GOVT*", "MINIST*", "ACAD*", "NIH*")

UK_EXPANSION = "(England OR Scotland OR Wales OR North Ireland)"

_GROUPS = {
    "G7": ("CANADA", "FRANCE", "GERMANY", "ITALY", "JAPAN", "UK", "USA"),
    "BRICS": ("BRAZIL", "RUSSIA", "INDIA", "CHINA", "SOUTH AFRICA"),
    "INS": ("INDONESIA", "NETHERLANDS", "SOUTH KOREA"),
}


class EmptyCountry(ValueError):
    pass


class InvalidYearRange(ValueError):
    pass


@dataclass(frozen=True)
class QueryStep:
    label: str
    kind: str  # "direct-search" or "boolean-combination"
    text: str
    target: str = ""  # the count this step yields, e.g. "U0"; empty for intermediates


@dataclass(frozen=True)
class QueryPlan:
    country: str
    start: int
    end: int
    steps: tuple

    def to_text(self) -> str:
        return "".join(f"{s.label}: {s.text}\n" for s in self.steps)

    def to_json(self) -> str:
        doc = {
            "country": self.country,
            "start": self.start,
            "end": self.end,
            "steps": [{"label": s.label, "kind": s.kind, "text": s.text} for s in self.steps],
        }
        return json.dumps(doc, indent=2) + "\n"

    def step(self, n: int) -> QueryStep:
        return self.steps[n - 1]


def expand_country(name: str) -> str:
    """WoS address form of a country; UK becomes its four constituent nations."""
    if not name or not name.strip():
        raise EmptyCountry("country name is empty")
    if name.strip().upper() == "UK":
        return UK_EXPANSION
    return name.strip()


def country_groups() -> dict[str, tuple[str, ...]]:
    return dict(_GROUPS)


def _or(terms: Sequence[str]) -> str:
    return "(" + " OR ".join(terms) + ")"


def build_plan(
    country: str,
    start: int,
    end: int,
    *,
    bare_single_year: bool = False,
    extra_terms: Optional[Mapping[str, Sequence[str]]] = None,
) -> QueryPlan:
    """Ten-step search program for `country` over publication years start..end.

    `extra_terms` maps ``"U"``, ``"I"`` or ``"G"`` to additional truncated
    abbreviations OR-ed into that sector's pattern.  With `bare_single_year`
    a one-year range is written ``PY=2011`` instead of ``PY=2011-2011``.
    """
    c = expand_country(country)
    if start > end:
        raise InvalidYearRange(f"start year {start} is after end year {end}")
    extra = {k.upper(): tuple(v) for k, v in (extra_terms or {}).items()}
    unknown = set(extra) - {"U", "I", "G"}
    if unknown:
        raise ValueError(f"unknown sector(s) for extra terms: {sorted(unknown)}")
    u = _or(UNIVERSITY_TERMS + extra.get("U", ()))
    i = _or(INDUSTRY_TERMS + extra.get("I", ()))
    g = _or(GOVERNMENT_TERMS + extra.get("G", ()))
    py = f"PY={start}" if bare_single_year and start == end else f"PY={start}-{end}"

    def search(*patterns: str) -> str:
        return f"{py} AND AD=({' SAME '.join((c,) + patterns)})"

    steps = (
        QueryStep("#1", "direct-search", search(u), "U0"),
        QueryStep("#2", "direct-search", search(i), "I0"),
        QueryStep("#3", "direct-search", search(g)),
        QueryStep("#4", "direct-search", search(g, u)),
        QueryStep("#5", "direct-search", search(g, i)),
        QueryStep("#6", "boolean-combination", "#3 NOT #4 NOT #5", "G0"),
        QueryStep("#7", "boolean-combination", "#1 AND #2", "UI0"),
        QueryStep("#8", "boolean-combination", "#1 AND #6", "UG0"),
        QueryStep("#9", "boolean-combination", "#2 AND #6", "IG0"),
        QueryStep("#10", "boolean-combination", "#1 AND #2 AND #6", "UIG0"),
    )
    return QueryPlan(c, start, end, steps)
