"""Country/window records, CSV and JSON I/O, and the bundled reference tables.

A record carries one of three payloads: inclusive retrieval counts, seven
published entropies, or a single T(UIG) value.  ``payload=None`` is the
explicit missing marker (``n.a.`` in CSV, ``null`` in JSON).

CSV layout::

    # unit: mbit
    # provenance: free text
    country,scenario,py_start,py_end,<payload columns>

The payload columns pick the variant:

* ``u0,i0,g0,ui0,ug0,ig0,uig0[,total_n]`` -> counts
* ``h_u,h_i,h_g,h_ui,h_ig,h_ug,h_uig[,t_ui,t_ug,t_ig,t_uig]`` -> entropies
* ``t_mbit`` (or ``t_bit``, ``t_nat``) -> T(UIG) only
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from decimal import Decimal
from importlib import resources
from typing import Iterable, Optional, Union

from .measures import (
    ENTROPY_NAMES,
    TRANSMISSION_NAMES,
    UNION_ONLY,
    UNITS,
    EmptyUniverse,
    IndicatorSet,
    UniversePolicy,
    from_bits,
    indicators_from_cells,
    indicators_from_entropies,
    to_bits,
)
from .overlap import ExclusiveCells, InclusiveCounts, NegativeCellError, to_exclusive, validate

__all__ = [
    "ParseError",
    "DuplicateKeyError",
    "PayloadUnavailable",
    "CountsPayload",
    "EntropiesPayload",
    "TPayload",
    "CountryWindowRecord",
    "Dataset",
    "parse",
    "serialize",
    "load",
    "reference_table1",
    "reference_table2",
    "split_country_label",
    "check_dataset",
    "rounding_budget",
]

KEY_COLUMNS = ("country", "scenario", "py_start", "py_end")
COUNT_COLUMNS = ("u0", "i0", "g0", "ui0", "ug0", "ig0", "uig0")
ENTROPY_COLUMNS = ("h_u", "h_i", "h_g", "h_ui", "h_ig", "h_ug", "h_uig")
REPORTED_COLUMNS = ("t_ui", "t_ug", "t_ig", "t_uig")
T_COLUMNS = {f"t_{u}": u for u in UNITS}

_H_FIELD = dict(zip(ENTROPY_COLUMNS, ("hU", "hI", "hG", "hUI", "hIG", "hUG", "hUIG")))
_T_FIELD = dict(zip(REPORTED_COLUMNS, TRANSMISSION_NAMES))
MISSING_TOKEN = "n.a."
YEAR_RANGE = (1900, 2100)


class ParseError(ValueError):
    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


class DuplicateKeyError(ParseError):
    pass


class PayloadUnavailable(ValueError):
    pass


@dataclass(frozen=True)
class CountsPayload:
    counts: InclusiveCounts
    total: Optional[int] = None

    def policy(self, mode: str = "union") -> UniversePolicy:
        if mode == "with-none":
            if self.total is None:
                raise PayloadUnavailable("with-none universe needs a total_n column")
            return UniversePolicy.with_none(self.total)
        return UNION_ONLY


@dataclass(frozen=True)
class EntropiesPayload:
    """Seven entropies in `unit`, optionally with reported transmissions."""

    hU: float
    hI: float
    hG: float
    hUI: float
    hUG: float
    hIG: float
    hUIG: float
    unit: str = "mbit"
    reported: tuple = ()  # (name, value) pairs, e.g. (("tUIG", -29.96),)

    def entropies(self) -> dict[str, float]:
        return {n: getattr(self, n) for n in ENTROPY_NAMES}

    def reported_value(self, name: str) -> Optional[float]:
        return dict(self.reported).get(name)


@dataclass(frozen=True)
class TPayload:
    value: float
    unit: str = "mbit"

    @property
    def bits(self) -> float:
        return to_bits(self.value, self.unit)


Payload = Union[CountsPayload, EntropiesPayload, TPayload, None]


@dataclass(frozen=True)
class CountryWindowRecord:
    country: str
    scenario: str
    window: tuple[int, int]
    payload: Payload = None

    def __post_init__(self):
        start, end = self.window
        lo, hi = YEAR_RANGE
        if not (lo <= start <= hi and lo <= end <= hi):
            raise ValueError(f"window {start}-{end} outside {lo}-{hi}")
        if start > end:
            raise ValueError(f"window reversed: {start} > {end}")

    @property
    def key(self) -> tuple[str, str, tuple[int, int]]:
        return (self.country, self.scenario, self.window)

    @property
    def label(self) -> str:
        if self.scenario == "default":
            return self.country
        return f"{self.country} ({self.scenario})"

    @property
    def missing(self) -> bool:
        return self.payload is None

    def indicators(self, policy: str = "union") -> IndicatorSet:
        p = self.payload
        if isinstance(p, CountsPayload):
            return indicators_from_cells(to_exclusive(p.counts), p.policy(policy))
        if isinstance(p, EntropiesPayload):
            return indicators_from_entropies(p.entropies(), p.unit)
        if p is None:
            raise PayloadUnavailable(f"{self.label} {fmt_window(self.window)}: value missing")
        raise PayloadUnavailable(
            f"{self.label} {fmt_window(self.window)}: only T(UIG) is available, entropies cannot be derived"
        )

    def t_uig_bits(self, policy: str = "union") -> Optional[float]:
        """T(UIG) in bits, or None for a missing record."""
        if self.payload is None:
            return None
        if isinstance(self.payload, TPayload):
            return self.payload.bits
        return self.indicators(policy).tUIG

    def t_uig(self, unit: str = "mbit", policy: str = "union") -> Optional[float]:
        """T(UIG) in `unit`; a stored value already in `unit` is returned untouched."""
        p = self.payload
        if isinstance(p, TPayload) and p.unit == unit:
            return p.value
        t = self.t_uig_bits(policy)
        return None if t is None else from_bits(t, unit)


def fmt_window(window: tuple[int, int]) -> str:
    return f"{window[0]}-{window[1]}"


@dataclass(frozen=True)
class Dataset:
    records: tuple = ()
    unit: str = "mbit"
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        if self.unit not in UNITS:
            raise ValueError(f"unknown unit {self.unit!r}")
        seen = set()
        for r in self.records:
            if r.key in seen:
                raise DuplicateKeyError(f"duplicate key {r.label} {fmt_window(r.window)}")
            seen.add(r.key)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def keys(self) -> list[tuple[str, str]]:
        """(country, scenario) pairs in first-appearance order."""
        out = []
        for r in self.records:
            if (r.country, r.scenario) not in out:
                out.append((r.country, r.scenario))
        return out

    def windows(self) -> list[tuple[int, int]]:
        return sorted({r.window for r in self.records})

    def _match(self, country: str, scenario: str):
        c, s = country.strip().upper(), scenario.strip().upper()
        return [r for r in self.records if r.country.upper() == c and r.scenario.upper() == s]

    def get(self, country: str, scenario: str = "default", window=None) -> CountryWindowRecord:
        hits = self._match(country, scenario)
        if window is not None:
            hits = [r for r in hits if r.window == tuple(window)]
        if not hits:
            raise KeyError(f"no record for {country}/{scenario}" + (f" {fmt_window(window)}" if window else ""))
        if len(hits) > 1:
            raise KeyError(f"{country}/{scenario} has {len(hits)} windows; pass one")
        return hits[0]

    def series(self, country: str, scenario: str = "default") -> list[CountryWindowRecord]:
        hits = self._match(country, scenario)
        if not hits:
            raise KeyError(f"no records for {country}/{scenario}")
        return sorted(hits, key=lambda r: r.window)

    def in_window(self, window: tuple[int, int]) -> list[CountryWindowRecord]:
        return [r for r in self.records if r.window == tuple(window)]


_LABEL_RE = re.compile(r"^(.*?)\s*\(([^()]+)\)\s*$")


def split_country_label(label: str) -> tuple[str, str]:
    """``"CHINA(CAS as G)"`` -> ``("CHINA", "CAS-as-G")``; plain names get ``"default"``."""
    m = _LABEL_RE.match(label.strip())
    if not m:
        return label.strip(), "default"
    return m.group(1).strip(), "-".join(m.group(2).split())


# ---------------------------------------------------------------- parsing


def _is_missing(text: str) -> bool:
    return text.strip().lower() in ("", MISSING_TOKEN)


def _cell(text: str, column: str) -> str:
    text = text.strip()
    if "=" in text:
        k, _, v = text.partition("=")
        if k.strip() == column:
            return v.strip()
    return text


def _int(text: str, row: int, column: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise ParseError(f"expected an integer, got {text!r}", row, column) from None
    if v < 0:
        raise ParseError(f"negative count {v}", row, column)
    return v


def _float(text: str, row: int, column: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"expected a number, got {text!r}", row, column) from None


def _window(start, end, row: int) -> tuple[int, int]:
    try:
        a, b = int(start), int(end)
    except (TypeError, ValueError):
        raise ParseError(f"bad year in window {start!r}-{end!r}", row, "py_start") from None
    lo, hi = YEAR_RANGE
    for col, y in (("py_start", a), ("py_end", b)):
        if not lo <= y <= hi:
            raise ParseError(f"year {y} outside {lo}-{hi}", row, col)
    if a > b:
        raise ParseError(f"window reversed ({a} > {b})", row, "py_end")
    return a, b


def _variant(columns: list[str]) -> str:
    cols = set(columns)
    if len(cols) != len(columns):
        raise ParseError("duplicate column in header", 1)
    if cols and cols <= set(T_COLUMNS) and len(cols) == 1:
        return "t"
    if set(COUNT_COLUMNS) <= cols and cols <= set(COUNT_COLUMNS) | {"total_n"}:
        return "counts"
    if set(ENTROPY_COLUMNS) <= cols and cols <= set(ENTROPY_COLUMNS) | set(REPORTED_COLUMNS):
        return "entropies"
    raise ParseError(f"cannot infer payload type from columns {columns}", 1)


def _payload(variant: str, values: dict[str, str], unit: str, t_unit: Optional[str], row: int) -> Payload:
    required = {"t": [c for c in values], "counts": COUNT_COLUMNS, "entropies": ENTROPY_COLUMNS}[variant]
    if all(_is_missing(v) for v in values.values()):
        return None
    absent = [c for c in required if _is_missing(values.get(c, ""))]
    if absent:
        raise ParseError("incomplete payload (use n.a. for a missing record)", row, absent[0])
    if variant == "t":
        (col, text), = values.items()
        return TPayload(_float(text, row, col), t_unit)
    if variant == "counts":
        counts = InclusiveCounts(**{c: _int(values[c], row, c) for c in COUNT_COLUMNS})
        total = values.get("total_n", "")
        return CountsPayload(counts, None if _is_missing(total) else _int(total, row, "total_n"))
    h = {_H_FIELD[c]: _float(values[c], row, c) for c in ENTROPY_COLUMNS}
    reported = tuple(
        (_T_FIELD[c], _float(values[c], row, c))
        for c in REPORTED_COLUMNS
        if c in values and not _is_missing(values[c])
    )
    return EntropiesPayload(**h, unit=unit, reported=reported)


def _build(rows: Iterable[tuple[int, dict]], variant_of, unit: str, provenance: str) -> Dataset:
    records, seen = [], {}
    for rownum, rec in rows:
        country = str(rec.get("country") or "").strip()
        if not country:
            raise ParseError("empty country", rownum, "country")
        scenario = str(rec.get("scenario") or "").strip()
        if not scenario:
            country, scenario = split_country_label(country)
        window = _window(rec.get("py_start"), rec.get("py_end"), rownum)
        payload = variant_of(rownum, rec)
        r = CountryWindowRecord(country, scenario, window, payload)
        if r.key in seen:
            raise DuplicateKeyError(
                f"duplicate key {r.label} {fmt_window(window)} (first seen in row {seen[r.key]})",
                rownum,
            )
        seen[r.key] = rownum
        records.append(r)
    return Dataset(tuple(records), unit, provenance)


def _parse_csv(text: str) -> Dataset:
    meta = {}
    lines = text.splitlines()
    body_start = 0
    for n, line in enumerate(lines):
        s = line.strip()
        if s.startswith("#"):
            k, sep, v = s.lstrip("#").partition(":")
            if sep:
                meta[k.strip().lower()] = v.strip()
            body_start = n + 1
        elif s:
            break
        else:
            body_start = n + 1
    unit = meta.get("unit", "mbit")
    if unit not in UNITS:
        raise ParseError(f"unknown unit {unit!r}", 1)
    first = body_start + 1  # 1-based physical line of the header
    reader = csv.reader(lines[body_start:])
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise ParseError("missing header row", first) from None
    if tuple(header[:4]) != KEY_COLUMNS:
        raise ParseError(f"header must start with {','.join(KEY_COLUMNS)}", first)
    pcols = header[4:]
    try:
        variant = _variant(pcols)
    except ParseError as e:
        raise ParseError(str(e).split(": ", 1)[-1], first) from None
    t_unit = T_COLUMNS.get(pcols[0]) if variant == "t" else None

    def rows():
        for n, fields_ in enumerate(reader, start=first + 1):
            if not any(f.strip() for f in fields_):
                continue
            if len(fields_) < 4:
                raise ParseError(f"expected {len(header)} fields, got {len(fields_)}", n)
            payload_fields = fields_[4:]
            if len(payload_fields) == 1 and _is_missing(payload_fields[0]):
                payload_fields = [MISSING_TOKEN] * len(pcols)
            if len(payload_fields) != len(pcols):
                raise ParseError(f"expected {len(header)} fields, got {len(fields_)}", n)
            rec = dict(zip(KEY_COLUMNS, (f.strip() for f in fields_[:4])))
            rec["_payload"] = {c: _cell(v, c) for c, v in zip(pcols, payload_fields)}
            yield n, rec

    return _build(
        rows(), lambda n, rec: _payload(variant, rec["_payload"], unit, t_unit, n), unit, meta.get("provenance", "")
    )


def _parse_json(text: str) -> Dataset:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.lineno) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("records"), list):
        raise ParseError("expected an object with a 'records' array")
    unit = doc.get("unit", "mbit")
    if unit not in UNITS:
        raise ParseError(f"unknown unit {unit!r}", None, "unit")

    def payload_of(n, rec):
        p = rec.get("payload")
        if p is None:
            return None
        if not isinstance(p, dict):
            raise ParseError("payload must be an object or null", n, "payload")
        if not p:
            return None
        cols = list(p)
        try:
            variant = _variant(cols)
        except ParseError as e:
            raise ParseError(str(e).split(": ", 1)[-1], n, "payload") from None
        vals = {k: MISSING_TOKEN if v is None else repr(v) if isinstance(v, float) else str(v) for k, v in p.items()}
        return _payload(variant, vals, unit, T_COLUMNS.get(cols[0]), n)

    def rows():
        for n, rec in enumerate(doc["records"], start=1):
            if not isinstance(rec, dict):
                raise ParseError("record must be an object", n)
            yield n, rec

    return _build(rows(), payload_of, unit, str(doc.get("provenance", "")))


def parse(data: Union[bytes, str], format: str = "csv") -> Dataset:
    """Parse a dataset from CSV or JSON text.

    Row numbers in errors are physical line numbers for CSV and 1-based
    record indices for JSON.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8-sig")
        except UnicodeDecodeError as e:
            raise ParseError(f"not UTF-8: {e}") from None
    data = data.lstrip("﻿")
    if format == "csv":
        return _parse_csv(data)
    if format == "json":
        return _parse_json(data)
    raise ValueError(f"unknown format {format!r}")


def load(path, format: Optional[str] = None) -> Dataset:
    path = str(path)
    if format is None:
        format = "json" if path.lower().endswith(".json") else "csv"
    with open(path, "rb") as fh:
        return parse(fh.read(), format)


# ---------------------------------------------------------- serialization


def _in_unit(value: float, src: str, dst: str) -> float:
    return value if src == dst else from_bits(to_bits(value, src), dst)


def _payload_columns(d: Dataset) -> tuple[str, list[str]]:
    kinds = {type(r.payload) for r in d.records if r.payload is not None}
    if len(kinds) > 1:
        raise ValueError("cannot write mixed payload types to one file")
    kind = kinds.pop() if kinds else TPayload
    if kind is TPayload:
        return "t", [f"t_{d.unit}"]
    if kind is CountsPayload:
        extra = ["total_n"] if any(r.payload is not None and r.payload.total is not None for r in d) else []
        return "counts", list(COUNT_COLUMNS) + extra
    names = {n for r in d if r.payload is not None for n, _ in r.payload.reported}
    return "entropies", list(ENTROPY_COLUMNS) + [c for c in REPORTED_COLUMNS if _T_FIELD[c] in names]


def _payload_values(p: Payload, cols: list[str], unit: str) -> dict:
    """Column -> python value (None for an absent optional column)."""
    if p is None:
        return {c: None for c in cols}
    if isinstance(p, TPayload):
        return {cols[0]: _in_unit(p.value, p.unit, unit)}
    if isinstance(p, CountsPayload):
        out = {c: getattr(p.counts, c) for c in COUNT_COLUMNS}
        if "total_n" in cols:
            out["total_n"] = p.total
        return out
    out = {c: _in_unit(getattr(p, _H_FIELD[c]), p.unit, unit) for c in ENTROPY_COLUMNS}
    rep = dict(p.reported)
    for c in cols:
        if c in REPORTED_COLUMNS:
            v = rep.get(_T_FIELD[c])
            out[c] = None if v is None else _in_unit(v, p.unit, unit)
    return out


def _csv_text(v) -> str:
    if v is None:
        return ""
    return repr(v) if isinstance(v, float) else str(v)


def serialize(d: Dataset, format: str = "csv") -> bytes:
    """Write `d` so that ``parse(serialize(d), format) == d``."""
    variant, cols = _payload_columns(d)
    if format == "json":
        recs = []
        for r in d.records:
            vals = None if r.payload is None else {
                c: v for c, v in _payload_values(r.payload, cols, d.unit).items() if v is not None
            }
            recs.append(
                {"country": r.country, "scenario": r.scenario, "py_start": r.window[0], "py_end": r.window[1],
                 "payload": vals}
            )
        doc = {"unit": d.unit, "provenance": d.provenance, "records": recs}
        return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if format != "csv":
        raise ValueError(f"unknown format {format!r}")
    buf = io.StringIO()
    if d.unit != "mbit":
        buf.write(f"# unit: {d.unit}\n")
    if d.provenance:
        buf.write(f"# provenance: {d.provenance}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(KEY_COLUMNS) + cols)
    for r in d.records:
        head = [r.country, r.scenario, r.window[0], r.window[1]]
        if r.payload is None:
            w.writerow(head + [MISSING_TOKEN] * len(cols))
        else:
            vals = _payload_values(r.payload, cols, d.unit)
            w.writerow(head + [_csv_text(vals[c]) for c in cols])
    return buf.getvalue().encode("utf-8")


# -------------------------------------------------------- reference data


def _bundled(name: str) -> Dataset:
    return parse(resources.files("triplehelix").joinpath(f"data/{name}").read_bytes(), "csv")


def reference_table1() -> Dataset:
    """2011 entropies (mbit) for 16 country/scenario rows, with printed T(UIG)."""
    return _bundled("table1.csv")


def reference_table2() -> Dataset:
    """T(UIG) in mbit for 16 series over eight five-year windows, 1971-2010."""
    return _bundled("table2.csv")


# ---------------------------------------------------------- validation


def rounding_budget(values: Iterable[float]) -> float:
    """Worst-case accumulated error from printing each value at its shown precision.

    Each value contributes half a unit in its last shown decimal place,
    judged from its shortest repr (``1099.0`` -> 0.5, ``52.36`` -> 0.005).
    """
    total = Decimal(0)
    for v in values:
        exp = Decimal(repr(float(v))).normalize().as_tuple().exponent
        # integers are taken as printed to the unit
        total += Decimal(5).scaleb(exp - 1) if exp < 0 else Decimal("0.5")
    return float(total)


@dataclass(frozen=True)
class Violation:
    key: str
    rule: str

    def __str__(self) -> str:
        return f"{self.key}: {self.rule}"


def check_dataset(d: Dataset, policy: str = "union") -> list[Violation]:
    """Every data violation in `d`.

    Counts are checked for set consistency and a non-empty universe.  Published
    entropies are checked against information-theoretic bounds, and against
    their printed T(UIG) when present, allowing for the rounding visible in the
    printed digits.
    """
    out = []
    for r in d.records:
        key = f"{r.label} {fmt_window(r.window)}"
        p = r.payload
        if isinstance(p, CountsPayload):
            problems = validate(p.counts)
            out.extend(Violation(key, v) for v in problems)
            if problems:
                continue
            cells = to_exclusive(p.counts)
            if p.total is not None and p.total < cells.union:
                out.append(Violation(key, f"total_n < union ({p.total} < {cells.union})"))
                continue
            try:
                r.indicators(policy)
            except (EmptyUniverse, NegativeCellError, PayloadUnavailable) as e:
                out.append(Violation(key, str(e)))
        elif isinstance(p, EntropiesPayload):
            h = p.entropies()
            ind = indicators_from_entropies(h, p.unit)
            slack = to_bits(rounding_budget(h.values()), p.unit)
            out.extend(Violation(key, v) for v in ind.violations(slack))
            printed = p.reported_value("tUIG")
            if printed is not None:
                budget = rounding_budget(list(h.values()) + [printed])
                diff = from_bits(ind.tUIG, p.unit) - printed
                if abs(diff) > budget:
                    out.append(
                        Violation(key, f"tUIG identity off by {diff:.4g} {p.unit} (rounding budget {budget:.4g})")
                    )
    return out
