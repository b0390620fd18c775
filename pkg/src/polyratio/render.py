"""Deterministic SVG drawings of setups and their unions."""
from __future__ import annotations

from typing import Sequence

from .geom import Loop
from .setup import Setup
from .union import as_loop, union

PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _num(x) -> str:
    text = f"{float(x):.6f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _path(loop: Loop) -> str:
    # y is flipped so that the picture has the usual orientation
    pts = [f"{_num(p[0])},{_num(-p[1])}" for p in loop.vertices]
    return "M" + " L".join(pts) + " Z"


def render_svg(s: Setup, *, show_union: bool = False, labels: bool = False, size: int = 600) -> str:
    """One translucent ``<path>`` per polygon; optionally the union boundary and indices."""
    loops = [as_loop(p).to_float() for p in s.pieces]
    xs = [p[0] for l in loops for p in l.vertices]
    ys = [-p[1] for l in loops for p in l.vertices]
    pad = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    x0, y0 = min(xs) - pad, min(ys) - pad
    w, h = max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 2 * pad
    stroke = _num(max(w, h) / 400)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{_num(x0)} {_num(y0)} {_num(w)} {_num(h)}">'
    ]
    if s.label:
        out.append(f"<title>{_escape(s.label)}</title>")
    for j, loop in enumerate(loops):
        color = PALETTE[j % len(PALETTE)]
        out.append(
            f'<path d="{_path(loop)}" fill="{color}" fill-opacity="0.35" '
            f'stroke="{color}" stroke-width="{stroke}"/>'
        )
    if show_union:
        region = union(s.pieces)
        polys = "".join(f'<polygon points="{_points(l.to_float())}"/>' for l in region.loops)
        out.append(
            f'<g id="union" fill="none" stroke="black" stroke-width="{_num(2 * float(stroke))}">'
            f"{polys}</g>"
        )
    if labels:
        fs = _num(max(w, h) / 30)
        for j, loop in enumerate(loops):
            c = loop.centroid()
            out.append(
                f'<text x="{_num(c[0])}" y="{_num(-c[1])}" font-size="{fs}" '
                f'text-anchor="middle" dominant-baseline="middle">{j}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _points(loop: Loop) -> str:
    return " ".join(f"{_num(p[0])},{_num(-p[1])}" for p in loop.vertices)


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def union_vertex_count(pieces: Sequence) -> int:
    return union(pieces).vertex_count
