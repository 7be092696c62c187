"""Deterministic SVG figures of planar grid functions."""

from __future__ import annotations

import math
from typing import Iterable

from .core import GridFunction, PreconditionError
from .geometry import POLYGON, Halfplane, clip_polygon
from .teaching import extended_system, hull_polygon

UNIT = 32
MARGIN = 32
MAX_N = 64
LAYERS = ("ones", "zeros", "hull", "delta", "essential")


def _xy(f: GridFunction, p) -> tuple[float, float]:
    # x2 grows upwards as in the usual plane picture
    return MARGIN + UNIT * float(p[0]), MARGIN + UNIT * float(f.grid.n - 1 - p[1])


def _num(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _points_attr(f: GridFunction, pts) -> str:
    return " ".join(f"{_num(x)},{_num(y)}" for x, y in (_xy(f, p) for p in pts))


def _star(cx: float, cy: float, outer: float = 9.0, inner: float = 4.0) -> str:
    pts = []
    for i in range(10):
        r = outer if i % 2 == 0 else inner
        t = math.pi / 2 + i * math.pi / 5
        pts.append(f"{_num(cx + r * math.cos(t))},{_num(cy - r * math.sin(t))}")
    return " ".join(pts)


def parse_layers(text: str) -> tuple[str, ...]:
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    bad = [s for s in names if s not in LAYERS]
    if bad:
        raise ValueError(f"unknown layers {bad}; choose from {', '.join(LAYERS)}")
    return names


def render_svg(f: GridFunction, layers: Iterable[str] = LAYERS, essential: Iterable = ()) -> str:
    """SVG document for a planar f; ``essential`` points are drawn as stars when that layer is on."""
    if f.grid.d != 2:
        raise PreconditionError("SVG output needs d = 2")
    if f.grid.n > MAX_N:
        raise PreconditionError(f"SVG output needs n <= {MAX_N}")
    layers = set(layers)
    unknown = layers - set(LAYERS)
    if unknown:
        raise ValueError(f"unknown layers {sorted(unknown)}")
    n = f.grid.n
    size = 2 * MARGIN + UNIT * (n - 1)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    poly = hull_polygon(f) if len(f) else None
    if "delta" in layers and poly is not None and poly.kind == POLYGON:
        box = [Halfplane(1, 0, n - 1), Halfplane(-1, 0, 0), Halfplane(0, 1, n - 1), Halfplane(0, -1, 0)]
        ext = clip_polygon(extended_system(poly) + box, n)
        out.append(f'<polygon class="delta" points="{_points_attr(f, ext)}" fill="#d8d8d8" stroke="none"/>')
    if "hull" in layers and poly is not None:
        if poly.kind == POLYGON:
            out.append(f'<polygon class="hull" points="{_points_attr(f, poly.vertices)}" fill="none" stroke="#000000" stroke-width="1.5"/>')
        elif len(poly.vertices) == 2:
            out.append(f'<polyline class="hull" points="{_points_attr(f, poly.vertices)}" fill="none" stroke="#000000" stroke-width="1.5"/>')
    for p in f.grid.points():
        cx, cy = _xy(f, p)
        if f(p) and "ones" in layers:
            out.append(f'<circle class="point one" cx="{_num(cx)}" cy="{_num(cy)}" r="5" fill="#000000"/>')
        elif not f(p) and "zeros" in layers:
            out.append(f'<circle class="point zero" cx="{_num(cx)}" cy="{_num(cy)}" r="5" fill="#ffffff" stroke="#000000"/>')
    if "essential" in layers:
        for p in sorted(f.grid.check(x) for x in essential):
            cx, cy = _xy(f, p)
            out.append(f'<polygon class="star" points="{_star(cx, cy)}" fill="#c00000" fill-opacity="0.8"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
