"""Static SVG drawings of families, witnesses and gadgets.

Rendering is a pure sink: coordinates are converted to floats here and
nowhere else, and nothing computed here feeds back into a decision.
"""
from __future__ import annotations

from .gadgets import TransformReport
from .geom import bounding_box
from .instance import SegmentFamily
from .linker import Linking

SIZE = 800
MARGIN = 20


def _fmt(v: float) -> str:
    return f"{v:.3f}".rstrip("0").rstrip(".")


def render_svg(
    family: SegmentFamily,
    witness: Linking | None = None,
    report: TransformReport | None = None,
    zoom_delta: float = 1,
) -> str:
    """SVG text for ``family``; added witness edges are drawn dashed.

    With a report, each A'1 is drawn with its delta extension multiplied by
    ``zoom_delta`` so the otherwise invisible displacement shows up.
    """
    ends = {i: [s.p, s.q] for i, s in enumerate(family.segments)}
    drawn = {i: [(float(p.x), float(p.y)) for p in pts] for i, pts in ends.items()}
    if report is not None and zoom_delta != 1:
        for g in report.gadgets:
            i = g.segments["A'1"]
            k = ends[i].index(g.a1_prime)
            ax, ay = float(g.a1.x), float(g.a1.y)
            dx, dy = float(g.a1_prime.x - g.a1.x), float(g.a1_prime.y - g.a1.y)
            drawn[i][k] = (ax + dx * zoom_delta, ay + dy * zoom_delta)
    pts = [p for v in drawn.values() for p in v]
    if pts:
        lo, hi = bounding_box(family.points())
        xs = [p[0] for p in pts] + [float(lo.x), float(hi.x)]
        ys = [p[1] for p in pts] + [float(lo.y), float(hi.y)]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    else:
        x0 = y0 = 0.0
        x1 = y1 = 1.0
    span = max(x1 - x0, y1 - y0) or 1.0
    k = (SIZE - 2 * MARGIN) / span

    def tx(p):
        return MARGIN + (p[0] - x0) * k, SIZE - MARGIN - (p[1] - y0) * k

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" '
        f'height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if witness is not None:
        for a, b in witness.added_edges:
            (ax, ay), (bx, by) = tx(drawn[a[0]][a[1]]), tx(drawn[b[0]][b[1]])
            out.append(
                f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}" '
                'stroke="#c03030" stroke-width="1" stroke-dasharray="4 3"/>'
            )
    for i in sorted(drawn):
        (ax, ay), (bx, by) = tx(drawn[i][0]), tx(drawn[i][1])
        out.append(
            f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}" '
            f'stroke="black" stroke-width="2"><title>{i}</title></line>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
