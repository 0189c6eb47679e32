"""SVG figures of paths and face chains in the unit-disc model.

Boundary points are transferred to the unit circle by the Moebius map
psi(z) = (z - e^(i pi/q)) / (z - e^(-i pi/q)) (the Cayley transform for the
theta group, whose rotation centre degenerates).  Edges are drawn as the
circular arcs orthogonal to the unit circle, approximated by polylines.
Rendering is floating point by design; nothing here feeds back into the
exact computations.
"""

from __future__ import annotations

import cmath
import math

from .algebraic import INFINITY


def disc_point(ctx, point) -> complex:
    if ctx.q == INFINITY:
        if point.is_infinity:
            return complex(1.0, 0.0)
        z = complex(float(point.value), 0.0)
        w = (z - 1j) / (z + 1j)
        return w / abs(w)
    a = cmath.exp(1j * math.pi / ctx.q)
    if point.is_infinity:
        return complex(1.0, 0.0)
    z = complex(float(point.value), 0.0)
    w = (z - a) / (z - a.conjugate())
    return w / abs(w)


def _arc_points(w1: complex, w2: complex, steps: int = 48):
    """Points along the geodesic arc between two unit-circle points."""
    det = w1.real * w2.imag - w1.imag * w2.real
    if abs(det) < 1e-12:  # antipodal or equal: draw the chord
        return [w1, w2]
    cx = (w2.imag - w1.imag) / det
    cy = (w1.real - w2.real) / det
    c = complex(cx, cy)
    r = math.sqrt(max(abs(c) ** 2 - 1.0, 0.0))
    t1 = cmath.phase(w1 - c)
    t2 = cmath.phase(w2 - c)
    delta = t2 - t1
    while delta > math.pi:
        delta -= 2 * math.pi
    while delta < -math.pi:
        delta += 2 * math.pi
    return [c + r * cmath.exp(1j * (t1 + delta * k / steps)) for k in range(steps + 1)]


def _fmt(w: complex) -> str:
    # SVG runs y downward; flip so anticlockwise means anticlockwise
    return f"{w.real:.5f},{-w.imag:.5f}"


def _polyline(points, stroke, width, fill="none", opacity=None) -> str:
    d = "M " + " L ".join(_fmt(p) for p in points)
    extra = f' fill-opacity="{opacity}"' if opacity is not None else ""
    return f'<path d="{d}" fill="{fill}" stroke="{stroke}" stroke-width="{width}"{extra}/>'


def _svg_document(body: list[str]) -> str:
    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.08 -1.08 2.16 2.16" '
        'width="540" height="540">'
    )
    circle = '<circle cx="0" cy="0" r="1" fill="none" stroke="black" stroke-width="0.004"/>'
    return "\n".join([head, circle, *body, "</svg>"]) + "\n"


def render_path_svg(ctx, points) -> str:
    """SVG for a vertex path; `points` are BoundaryPoint values in order."""
    ws = [disc_point(ctx, p) for p in points]
    body = []
    for w1, w2 in zip(ws, ws[1:]):
        body.append(_polyline(_arc_points(w1, w2), stroke="#c62828", width="0.010"))
    for i, w in enumerate(ws):
        body.append(f'<circle cx="{w.real:.5f}" cy="{-w.imag:.5f}" r="0.014" fill="#1a237e"/>')
    return _svg_document(body)


def render_chain_svg(chain) -> str:
    """SVG for a face chain: shaded faces, bridges emphasized, endpoints marked."""
    ctx = chain.x.ctx
    body = []
    for face in chain.faces:
        pts = []
        ws = [disc_point(ctx, v.point) for v in face.vertices]
        for i in range(len(ws)):
            pts.extend(_arc_points(ws[i], ws[(i + 1) % len(ws)]))
        d = "M " + " L ".join(_fmt(p) for p in pts) + " Z"
        body.append(f'<path d="{d}" fill="#90caf9" fill-opacity="0.45" stroke="#1565c0" stroke-width="0.004"/>')
    for u, v in chain.bridges:
        arc = _arc_points(disc_point(ctx, u.point), disc_point(ctx, v.point))
        body.append(_polyline(arc, stroke="#2e7d32", width="0.008"))
    for v, color in ((chain.x, "#c62828"), (chain.y, "#c62828")):
        w = disc_point(ctx, v.point)
        body.append(f'<circle cx="{w.real:.5f}" cy="{-w.imag:.5f}" r="0.016" fill="{color}"/>')
    return _svg_document(body)
