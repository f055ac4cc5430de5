"""Minimal deterministic SVG renderer for point and line series."""

from __future__ import annotations

from typing import Mapping, Sequence

WIDTH, HEIGHT, MARGIN = 640, 480, 50
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


def _c(v: float) -> str:
    return f"{v:.2f}"


def render(
    series: Mapping[str, tuple[Sequence[float], Sequence[float]]],
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    lines: bool = False,
) -> str:
    """Render named (xs, ys) series; series are drawn in insertion order."""
    xs_all = [x for xs, _ in series.values() for x in xs]
    ys_all = [y for _, ys in series.values() for y in ys]
    if not xs_all:
        xs_all, ys_all = [0.0, 1.0], [0.0, 1.0]
    x0, x1 = min(xs_all), max(xs_all)
    y0, y1 = min(ys_all), max(ys_all)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5

    def px(x):
        return MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2 * MARGIN)

    def py(y):
        return HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2 * MARGIN)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" height="{HEIGHT - 2 * MARGIN}" '
        'fill="none" stroke="black"/>',
        f'<text x="{WIDTH / 2}" y="{MARGIN / 2}" text-anchor="middle" font-size="14">{title}</text>',
        f'<text x="{WIDTH / 2}" y="{HEIGHT - 10}" text-anchor="middle" font-size="12">{xlabel}</text>',
        f'<text x="15" y="{HEIGHT / 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 15 {HEIGHT / 2})">{ylabel}</text>',
        f'<text x="{MARGIN}" y="{HEIGHT - MARGIN + 15}" font-size="10">{x0:g}</text>',
        f'<text x="{WIDTH - MARGIN}" y="{HEIGHT - MARGIN + 15}" text-anchor="end" font-size="10">{x1:g}</text>',
        f'<text x="{MARGIN - 5}" y="{HEIGHT - MARGIN}" text-anchor="end" font-size="10">{y0:g}</text>',
        f'<text x="{MARGIN - 5}" y="{MARGIN + 10}" text-anchor="end" font-size="10">{y1:g}</text>',
    ]
    if y0 < 0.0 < y1:
        out.append(f'<line x1="{MARGIN}" y1="{_c(py(0.0))}" x2="{WIDTH - MARGIN}" y2="{_c(py(0.0))}" '
                   'stroke="#bbbbbb" stroke-dasharray="4 4"/>')
    for i, (name, (xs, ys)) in enumerate(series.items()):
        color = PALETTE[i % len(PALETTE)]
        out.append(f'<g id="{name}" fill="{color}" stroke="{color}">')
        if lines and len(xs) > 1:
            pts = " ".join(f"{_c(px(x))},{_c(py(y))}" for x, y in zip(xs, ys))
            out.append(f'<polyline points="{pts}" fill="none" stroke-width="1.5"/>')
        else:
            out.extend(f'<circle cx="{_c(px(x))}" cy="{_c(py(y))}" r="1.5" stroke="none"/>' for x, y in zip(xs, ys))
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
