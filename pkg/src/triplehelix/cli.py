"""Command-line front end.

Exit codes: 0 success, 1 data violations (``check``), 2 usage or input errors.
An input argument of ``@table1`` or ``@table2`` selects a bundled reference
dataset instead of a file.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

import numpy as np

from . import analysis, charts
from .dataset import (
    CountryWindowRecord,
    Dataset,
    EntropiesPayload,
    ParseError,
    PayloadUnavailable,
    TPayload,
    check_dataset,
    fmt_window,
    load,
    reference_table1,
    reference_table2,
    serialize,
)
from .measures import ENTROPY_NAMES, TRANSMISSION_NAMES, UNITS, EmptyUniverse, from_bits
from .overlap import NegativeCellError
from .queries import EmptyCountry, InvalidYearRange, build_plan

BUILTIN = {"@table1": reference_table1, "@table2": reference_table2}


class UsageError(Exception):
    """Reported on stderr with exit status 2."""


def fmt4(v: Optional[float]) -> str:
    """Four significant figures without exponent notation, as in printed tables."""
    if v is None:
        return "n.a."
    return np.format_float_positional(v, precision=4, unique=False, fractional=False, trim="-")


def _read(args) -> Dataset:
    src = args.input
    if src in BUILTIN:
        return BUILTIN[src]()
    try:
        return load(src, args.input_format)
    except OSError as e:
        raise UsageError(f"cannot read {src}: {e.strerror or e}") from None


def _window(text: str) -> tuple[int, int]:
    a, sep, b = text.partition("-")
    try:
        return (int(a), int(b)) if sep else (int(a), int(a))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad window {text!r}, expected YYYY or YYYY-YYYY") from None


def _emit(args, text: str, data: Optional[Dataset] = None) -> None:
    """Human text on stdout, or the machine-readable dataset if --format asks for it."""
    fmt = args.format
    body = text if fmt == "text" else serialize(data, fmt).decode("utf-8")
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _write_chart(path: Optional[str], svg: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(svg)


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in [header, *rows]]
    return "\n".join(lines) + "\n"


def _series_record(args, d: Dataset) -> list[CountryWindowRecord]:
    try:
        return d.series(args.country, args.scenario)
    except KeyError:
        keys = ", ".join(c if s == "default" else f"{c}/{s}" for c, s in d.keys())
        raise UsageError(f"unknown key {args.country}/{args.scenario}; available: {keys}") from None


def _indicator_payload(ind, unit: str) -> EntropiesPayload:
    vals = ind.as_dict(unit)
    return EntropiesPayload(
        **{n: vals[n] for n in ENTROPY_NAMES}, unit=unit, reported=tuple((n, vals[n]) for n in TRANSMISSION_NAMES)
    )


# ---------------------------------------------------------------- commands


def cmd_compute(args) -> int:
    d = _read(args)
    rows, out, errors = [], [], []
    for r in d:
        if isinstance(r.payload, TPayload):
            raise UsageError(f"{r.label} {fmt_window(r.window)}: compute needs counts or entropies, not T(UIG) only")
        if r.payload is None:
            rows.append([r.label, fmt_window(r.window)] + ["n.a."] * 11)
            out.append(r)
            continue
        try:
            ind = r.indicators(args.policy)
        except (EmptyUniverse, NegativeCellError, PayloadUnavailable, ValueError) as e:
            errors.append(f"{r.label} {fmt_window(r.window)}: {e}")
            continue
        vals = ind.as_dict(args.unit)
        rows.append([r.label, fmt_window(r.window)] + [fmt4(vals[n]) for n in ENTROPY_NAMES + TRANSMISSION_NAMES])
        out.append(CountryWindowRecord(r.country, r.scenario, r.window, _indicator_payload(ind, args.unit)))
    if errors:
        raise UsageError("\n".join(errors))
    header = ["key", "window"] + [f"{n}" for n in ENTROPY_NAMES + TRANSMISSION_NAMES]
    text = f"# unit: {args.unit}\n" + _table(header, rows)
    _emit(args, text, Dataset(out, args.unit, d.provenance))
    return 0


def cmd_rank(args) -> int:
    d = _read(args)
    windows = d.windows()
    if args.window is None:
        if len(windows) != 1:
            raise UsageError(f"dataset has {len(windows)} windows; pass --window (one of {', '.join(map(fmt_window, windows))})")
        window = windows[0]
    else:
        window = args.window
    recs = d.in_window(window)
    if not recs:
        raise UsageError(f"window {fmt_window(window)} not in dataset")
    try:
        ranking = analysis.rank_records(recs, args.unit, args.policy)
    except (analysis.MissingValue, PayloadUnavailable, EmptyUniverse, NegativeCellError) as e:
        raise UsageError(str(e)) from None
    by_label = {r.label: r for r in recs}
    text = f"# T(UIG) in {args.unit}, window {fmt_window(window)}\n" + _table(
        ["rank", "key", "tUIG"], [[str(e.position), e.key, fmt4(e.t_uig)] for e in ranking]
    )
    data = Dataset(
        [
            CountryWindowRecord(by_label[e.key].country, by_label[e.key].scenario, window, TPayload(e.t_uig, args.unit))
            for e in ranking
        ],
        args.unit,
    )
    _emit(args, text, data)
    _write_chart(
        args.chart,
        charts.bar_chart(
            [e.key for e in ranking], [e.t_uig for e in ranking], f"T(UIG), {fmt_window(window)}", args.unit
        ),
    )
    return 0


def cmd_series(args) -> int:
    d = _read(args)
    recs = _series_record(args, d)
    try:
        series = analysis.record_series(recs, args.unit, args.policy)
    except (PayloadUnavailable, EmptyUniverse, NegativeCellError) as e:
        raise UsageError(str(e)) from None
    summary = analysis.trend(list(series.values()), recs[0].label)
    text = f"# {recs[0].label}: T(UIG) in {args.unit}\n" + _table(
        ["window", "tUIG"], [[fmt_window(w), fmt4(v)] for w, v in series.items()]
    )
    text += f"trend: {summary.classification}\n"
    data = Dataset(
        [
            CountryWindowRecord(r.country, r.scenario, r.window, None if v is None else TPayload(v, args.unit))
            for r, v in zip(recs, series.values())
        ],
        args.unit,
    )
    _emit(args, text, data)
    _write_chart(
        args.chart,
        charts.line_chart([fmt_window(w) for w in series], {recs[0].label: list(series.values())}, "T(UIG)", args.unit),
    )
    return 0


def cmd_decompose(args) -> int:
    d = _read(args)
    recs = _series_record(args, d)
    try:
        points = analysis.bilateral_from_records(recs, args.policy, args.unit)
        inds = [r.indicators(args.policy) for r in recs]
    except (PayloadUnavailable, EmptyUniverse, NegativeCellError) as e:
        raise UsageError(f"{e}\ndecompose needs retrieval counts (u0..uig0 columns) for every window") from None
    text = f"# {recs[0].label}: bilateral transmissions in {args.unit}\n" + _table(
        ["window", "tUI", "tUG", "tIG"], [[fmt_window(p.window), fmt4(p.tUI), fmt4(p.tUG), fmt4(p.tIG)] for p in points]
    )
    data = Dataset(
        [CountryWindowRecord(r.country, r.scenario, r.window, _indicator_payload(i, args.unit)) for r, i in zip(recs, inds)],
        args.unit,
    )
    _emit(args, text, data)
    _write_chart(
        args.chart,
        charts.line_chart(
            [fmt_window(p.window) for p in points],
            {"T(U,I)": [p.tUI for p in points], "T(U,G)": [p.tUG for p in points], "T(I,G)": [p.tIG for p in points]},
            f"Bilateral transmissions, {recs[0].label}",
            args.unit,
        ),
    )
    return 0


def cmd_queries(args) -> int:
    extra = {}
    for item in args.extra or ():
        sector, sep, term = item.partition("=")
        if not sep or sector.upper() not in ("U", "I", "G") or not term:
            raise UsageError(f"bad --extra {item!r}, expected U=TERM, I=TERM or G=TERM")
        extra.setdefault(sector.upper(), []).append(term)
    try:
        plan = build_plan(args.country, args.start, args.end, bare_single_year=args.bare_single_year, extra_terms=extra)
    except (EmptyCountry, InvalidYearRange) as e:
        raise UsageError(f"{type(e).__name__}: {e}") from None
    body = plan.to_json() if args.format == "json" else plan.to_text()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return 0


def cmd_check(args) -> int:
    d = _read(args)
    problems = check_dataset(d, args.policy)
    for p in problems:
        print(p)
    print(f"{len(d)} records, {len(problems)} violation(s)", file=sys.stderr)
    return 1 if problems else 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="triplehelix", description="Triple-Helix synergy indicators.")
    sub = p.add_subparsers(dest="command", required=True)

    def data_cmd(name, func, help_, fmt=True):
        s = sub.add_parser(name, help=help_)
        s.add_argument("input", help="dataset file (.csv or .json), or @table1 / @table2")
        s.add_argument("--input-format", choices=("csv", "json"), help="override format detection")
        s.add_argument("--policy", choices=("union", "with-none"), default="union", help="probability universe")
        if fmt:
            s.add_argument("--unit", choices=UNITS, default="mbit")
            s.add_argument("--format", choices=("text", "csv", "json"), default="text")
            s.add_argument("--output", help="write the report here instead of stdout")
        s.set_defaults(func=func)
        return s

    data_cmd("compute", cmd_compute, "entropies and transmissions per record")
    s = data_cmd("rank", cmd_rank, "rank records of one window by T(UIG)")
    s.add_argument("--window", type=_window, help="YYYY or YYYY-YYYY")
    s.add_argument("--chart", help="write an SVG bar chart here")
    for name, func, help_ in (
        ("series", cmd_series, "T(UIG) over time with trend classification"),
        ("decompose", cmd_decompose, "bilateral transmissions over time"),
    ):
        s = data_cmd(name, func, help_)
        s.add_argument("--country", required=True)
        s.add_argument("--scenario", default="default")
        s.add_argument("--chart", help="write an SVG line chart here")
    data_cmd("check", cmd_check, "validate a dataset", fmt=False)

    s = sub.add_parser("queries", help="emit the ten-step search program")
    s.add_argument("country")
    s.add_argument("start", type=int)
    s.add_argument("end", type=int)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--bare-single-year", action="store_true", help="write PY=Y instead of PY=Y-Y")
    s.add_argument("--extra", action="append", metavar="SECTOR=TERM", help="extra OR-term, e.g. G=INST*")
    s.add_argument("--output")
    s.set_defaults(func=cmd_queries)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"triplehelix {args.command}: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
