"""Self-contained SVG bar and line charts.

Output is a pure function of the inputs (fixed formatting, no timestamps or
ids), so identical data always gives identical bytes.
"""

from __future__ import annotations

import math
from typing import Mapping, Optional, Sequence
from xml.sax.saxutils import escape

__all__ = ["bar_chart", "line_chart"]

WIDTH, HEIGHT = 800, 450
MARGIN = dict(left=70, right=20, top=40, bottom=120)
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def _nice_ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi == lo:
        hi, lo = hi + 1.0, lo - 1.0
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 5, 10) if m * mag >= raw)
    first = math.floor(lo / step) * step
    ticks, t = [], first
    while t <= hi + step * 1e-9:
        ticks.append(round(t, 10))
        t += step
    if ticks[-1] < hi:
        ticks.append(round(t, 10))
    return ticks


def _frame(title: str, ylabel: str, ticks: list[float], y) -> list[str]:
    x0, x1 = MARGIN["left"], WIDTH - MARGIN["right"]
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<text x="16" y="{(MARGIN["top"] + HEIGHT - MARGIN["bottom"]) / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {(MARGIN["top"] + HEIGHT - MARGIN["bottom"]) / 2:.1f})">{escape(ylabel)}</text>',
    ]
    for t in ticks:
        out.append(f'<line x1="{x0}" y1="{y(t):.2f}" x2="{x1}" y2="{y(t):.2f}" stroke="#ddd"/>')
        out.append(f'<text x="{x0 - 6}" y="{y(t) + 4:.2f}" text-anchor="end">{t:g}</text>')
    out.append(f'<line x1="{x0}" y1="{y(0.0):.2f}" x2="{x1}" y2="{y(0.0):.2f}" stroke="#333"/>')
    return out


def _scale(ticks: list[float]):
    top, bottom = MARGIN["top"], HEIGHT - MARGIN["bottom"]
    lo, hi = min(ticks + [0.0]), max(ticks + [0.0])
    return lambda v: bottom - (v - lo) / (hi - lo) * (bottom - top)


def _xlabel(x: float, text: str) -> str:
    yb = HEIGHT - MARGIN["bottom"] + 12
    return (
        f'<text x="{x:.2f}" y="{yb}" text-anchor="end" transform="rotate(-45 {x:.2f} {yb})">{escape(text)}</text>'
    )


def bar_chart(labels: Sequence[str], values: Sequence[float], title: str = "", ylabel: str = "") -> str:
    """One bar per label, drawn in the given order."""
    if len(labels) != len(values):
        raise ValueError("labels and values differ in length")
    ticks = _nice_ticks(min(list(values) + [0.0]), max(list(values) + [0.0]))
    y = _scale(ticks)
    out = _frame(title, ylabel, ticks, y)
    span = WIDTH - MARGIN["left"] - MARGIN["right"]
    slot = span / max(len(values), 1)
    for k, (lab, v) in enumerate(zip(labels, values)):
        x = MARGIN["left"] + k * slot + slot * 0.15
        top, base = min(y(v), y(0.0)), max(y(v), y(0.0))
        out.append(
            f'<rect class="bar" x="{x:.2f}" y="{top:.2f}" width="{slot * 0.7:.2f}" height="{base - top:.2f}" '
            f'fill="{PALETTE[0]}"><title>{escape(lab)}: {v:.6g}</title></rect>'
        )
        out.append(_xlabel(x + slot * 0.35, lab))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def line_chart(
    xlabels: Sequence[str], series: Mapping[str, Sequence[Optional[float]]], title: str = "", ylabel: str = ""
) -> str:
    """One polyline per named series; None values break the line."""
    vals = [v for s in series.values() for v in s if v is not None]
    ticks = _nice_ticks(min(vals + [0.0]), max(vals + [0.0]))
    y = _scale(ticks)
    out = _frame(title, ylabel, ticks, y)
    span = WIDTH - MARGIN["left"] - MARGIN["right"]
    n = max(len(xlabels), 1)
    xs = [MARGIN["left"] + span * (k + 0.5) / n for k in range(n)]
    for k, lab in enumerate(xlabels):
        out.append(_xlabel(xs[k], lab))
    for s, (name, points) in enumerate(series.items()):
        color = PALETTE[s % len(PALETTE)]
        run: list[str] = []
        segments = []
        for x, v in zip(xs, points):
            if v is None:
                if run:
                    segments.append(run)
                run = []
                continue
            run.append(f"{x:.2f},{y(v):.2f}")
            out.append(f'<circle cx="{x:.2f}" cy="{y(v):.2f}" r="3" fill="{color}"/>')
        if run:
            segments.append(run)
        for seg in segments:
            out.append(f'<polyline class="series" fill="none" stroke="{color}" stroke-width="2" points="{" ".join(seg)}"/>')
        ly = MARGIN["top"] + 14 * s
        out.append(f'<text x="{WIDTH - MARGIN["right"] - 4}" y="{ly + 4}" text-anchor="end" fill="{color}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
