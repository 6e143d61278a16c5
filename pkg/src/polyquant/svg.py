"""Static SVG drawings of a polygon, its constraint set and a quantizer."""
from __future__ import annotations

import math
import re

import numpy as np

from .geometry import Constraint, diagonal, make_polygon
from .measure import QuantizerSet

SCALE = 200.0  # pixels per unit: the circumradius
VIEWBOX = "-256 -256 512 512"


def _xy(p) -> tuple[float, float]:
    # SVG's y axis points down
    return SCALE * float(p[0]), -SCALE * float(p[1])


def render(k: int, quantizer: QuantizerSet, constraint="none", title: str | None = None) -> str:
    constraint = Constraint(constraint)
    polygon = make_polygon(k)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{VIEWBOX}" width="512" height="512">']
    if title:
        out.append(f"  <title>{title}</title>")
    outline = " ".join("%.4f,%.4f" % _xy(v) for v in polygon.vertices)
    out.append(f'  <polygon class="polygon" points="{outline}" fill="none" stroke="black" stroke-width="1.5"/>')
    dash = 'fill="none" stroke="gray" stroke-width="1" stroke-dasharray="6 4"'
    if constraint in (Constraint.CIRCUMCIRCLE, Constraint.INCIRCLE):
        r = SCALE * (1.0 if constraint is Constraint.CIRCUMCIRCLE else math.cos(math.pi / k))
        out.append(f'  <circle class="constraint" cx="0" cy="0" r="{r:.4f}" {dash}/>')
    elif constraint.is_diagonal:
        seg = diagonal(constraint)
        (x1, y1), (x2, y2) = _xy(seg.p), _xy(seg.q)
        out.append(f'  <line class="constraint" x1="{x1:.4f}" y1="{y1:.4f}" x2="{x2:.4f}" y2="{y2:.4f}" {dash}/>')
    for p, fixed in zip(quantizer.points, quantizer.conditional):
        x, y = _xy(p)
        if fixed:
            out.append(f'  <circle class="site conditional" cx="{x:.4f}" cy="{y:.4f}" r="5" '
                       'fill="white" stroke="firebrick" stroke-width="2"/>')
        else:
            out.append(f'  <circle class="site free" cx="{x:.4f}" cy="{y:.4f}" r="4" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def site_positions(svg_text: str) -> np.ndarray:
    """Recover site coordinates from :func:`render` output (used by tests and demos)."""
    pts = re.findall(r'class="site[^"]*" cx="([-0-9.]+)" cy="([-0-9.]+)"', svg_text)
    return np.array([[float(x) / SCALE, -float(y) / SCALE] for x, y in pts]).reshape(-1, 2)
