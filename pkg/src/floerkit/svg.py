"""Barcode plots written directly as SVG text."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .filtered import Bar

WIDTH, ROW, MARGIN, LABEL = 640, 14, 40, 60
COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _x(v: float, lo: float, hi: float) -> float:
    span = hi - lo or 1.0
    return LABEL + (v - lo) / span * (WIDTH - LABEL - MARGIN)


def barcode_svg(bars: Sequence[Bar], title: str = "") -> str:
    """One horizontal segment per bar, action on the x-axis; infinite bars end in an arrow."""
    finite = [float(v) for b in bars for v in (b.birth, b.death) if not isinstance(v, float)]
    lo = min(finite, default=0.0)
    hi = max(finite, default=1.0)
    if hi - lo < 1e-9:
        lo, hi = lo - 1, hi + 1
    pad = (hi - lo) * 0.08
    lo, hi = lo - pad, hi + pad
    top = MARGIN if title else MARGIN // 2
    height = top + ROW * (len(bars) + 1) + MARGIN
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
           f'viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="10">',
           f'<rect width="{WIDTH}" height="{height}" fill="white"/>']
    if title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="{MARGIN / 2:.1f}" text-anchor="middle" '
                   f'font-size="13">{escape(title)}</text>')
    axis_y = top + ROW * (len(bars) + 0.5)
    out.append(f'<line x1="{LABEL}" y1="{axis_y:.1f}" x2="{WIDTH - MARGIN}" y2="{axis_y:.1f}" stroke="black"/>')
    for tick in _ticks(lo, hi):
        x = _x(tick, lo, hi)
        out.append(f'<line x1="{x:.1f}" y1="{axis_y:.1f}" x2="{x:.1f}" y2="{axis_y + 4:.1f}" stroke="black"/>')
        out.append(f'<text x="{x:.1f}" y="{axis_y + 15:.1f}" text-anchor="middle">{tick:g}</text>')
    out.append(f'<text x="{(WIDTH + LABEL) / 2:.1f}" y="{axis_y + 30:.1f}" text-anchor="middle">action</text>')
    degrees = sorted({b.degree for b in bars})
    for i, b in enumerate(bars):
        y = top + ROW * (i + 0.5)
        color = COLORS[degrees.index(b.degree) % len(COLORS)]
        x1 = _x(float(b.birth), lo, hi)
        x2 = WIDTH - MARGIN if b.infinite else _x(float(b.death), lo, hi)
        out.append(f'<text x="{LABEL - 6}" y="{y + 3:.1f}" text-anchor="end">deg {b.degree}</text>')
        out.append(f'<line class="bar" x1="{x1:.2f}" y1="{y:.1f}" x2="{x2:.2f}" y2="{y:.1f}" '
                   f'stroke="{color}" stroke-width="3"><title>[{b.birth}, {_fmt(b.death)})</title></line>')
        if b.infinite:
            out.append(f'<polygon points="{x2:.1f},{y - 4:.1f} {x2 + 7:.1f},{y:.1f} {x2:.1f},{y + 4:.1f}" '
                       f'fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _fmt(v) -> str:
    return "inf" if isinstance(v, float) else str(Fraction(v))


def _ticks(lo: float, hi: float, n: int = 6) -> list[float]:
    raw = (hi - lo) / n
    mag = 10 ** (len(str(int(raw))) - 1) if raw >= 1 else 10 ** -len(str(int(1 / raw)))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=raw)
    start = step * -(-lo // step)
    out = []
    t = start
    while t <= hi + 1e-12:
        out.append(round(t, 10))
        t += step
    return out
