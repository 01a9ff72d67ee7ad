"""Deterministic SVG rendering of figures with matplotlib.

Regions are drawn by filling the membership mask on a grid; boundaries of
open primitives are dashed and excluded endpoints are hollow.  Disc and
half-plane figures are drawn in the disc (half-plane coordinates are
transported by the Cayley map); elliptic figures are projected top-down.
Rendering never feeds back into any verdict.
"""

from __future__ import annotations

import io
import math

import numpy as np
from matplotlib import rc_context
from matplotlib.figure import Figure as MplFigure
from matplotlib.patches import Circle

from .figures import (
    AngleWedge,
    Arc,
    Disc,
    FiniteFigure,
    HalfLine,
    HalfPlane,
    Line,
    OrbitFigure,
    Segment,
    SinglePoint,
    leaves,
    realize,
    defining_points,
)
from .geometry import Geometry, Point

_RC = {
    "svg.hashsalt": "figorder",
    "svg.fonttype": "none",
    "path.simplify": False,
    "font.size": 9,
}
GRID = 240
_FAR = 1e4


def _to_screen(geometry):
    """Map model coordinates to drawing coordinates."""
    if geometry is Geometry.HALF_PLANE:
        def f(x, y):
            z = complex(x, y)
            w = (z - 1j) / (z + 1j)
            return (w.real, w.imag)
        return f
    return lambda x, y, *rest: (x, y)


def _from_screen(geometry):
    if geometry is Geometry.HALF_PLANE:
        def f(u, v):
            w = complex(u, v)
            if abs(w) >= 1:
                return None
            z = 1j * (1 + w) / (1 - w)
            return (z.real, z.imag)
        return f
    if geometry is Geometry.DISC:
        return lambda u, v: (u, v) if u * u + v * v < 1 else None
    if geometry is Geometry.ELLIPTIC:
        def f(u, v):
            s = u * u + v * v
            return (u, v, math.sqrt(1 - s)) if s <= 1 and not (s == 1 and (u < 0 or (u == 0 and v < 0))) else None
        return f
    return lambda u, v: (u, v)


def default_viewport(figs) -> tuple:
    g = figs[0].geometry if figs else Geometry.EUCLIDEAN
    if g is not Geometry.EUCLIDEAN:
        return (-1.1, 1.1, -1.1, 1.1)
    pts = [c for F in figs for c in defining_points(F)]
    if not pts:
        return (-3.0, 3.0, -3.0, 3.0)
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half = max(3.0, (max(xs) - min(xs)) / 2 + 1.5, (max(ys) - min(ys)) / 2 + 1.5)
    return (cx - half, cx + half, cy - half, cy + half)


def _curve(ax, to_screen, pts, closed=True, color="k"):
    xy = np.array([to_screen(*p) for p in pts])
    ax.plot(xy[:, 0], xy[:, 1], color=color, lw=1.2, ls="-" if closed else "--")


def _end(ax, to_screen, p, included, color="k"):
    x, y = to_screen(*p)
    ax.plot([x], [y], marker="o", ms=4, color=color, mfc=color if included else "white", zorder=5)


def _line_pts(o, d, t0, t1, n=200):
    ts = np.linspace(t0, t1, n)
    return [(o[0] + t * d[0], o[1] + t * d[1]) for t in ts]


def _draw_leaf(ax, leaf, to_screen, truncation, color):
    g = leaf.geometry
    far = _FAR if g is Geometry.EUCLIDEAN else 60.0
    if isinstance(leaf, HalfPlane):
        f, t = leaf.foot, (-leaf.normal[1], leaf.normal[0])
        pts = [p for p in _line_pts(f, t, -far, far, 800) if g is not Geometry.HALF_PLANE or p[1] > 0]
        if len(pts) > 1:
            _curve(ax, to_screen, pts, leaf.closed, color)
    elif isinstance(leaf, AngleWedge):
        for d in (leaf.dir1, leaf.dir2):
            _curve(ax, to_screen, _line_pts(leaf.vertex, d, 0, far), leaf.closed, color)
    elif isinstance(leaf, Disc):
        ts = np.linspace(0, 2 * math.pi, 200)
        pts = [(leaf.center[0] + leaf.radius * math.cos(t), leaf.center[1] + leaf.radius * math.sin(t)) for t in ts]
        _curve(ax, to_screen, pts, leaf.closed, color)
    elif isinstance(leaf, Line):
        _curve(ax, to_screen, _line_pts(leaf.through, leaf.direction, -far, far), True, color)
    elif isinstance(leaf, HalfLine):
        _curve(ax, to_screen, _line_pts(leaf.origin, leaf.direction, 0, far), True, color)
        _end(ax, to_screen, leaf.origin, leaf.include_origin, color)
    elif isinstance(leaf, Segment):
        _curve(ax, to_screen, [leaf.start, leaf.end], True, color)
        _end(ax, to_screen, leaf.start, leaf.closed_start, color)
        _end(ax, to_screen, leaf.end, leaf.closed_end, color)
    elif isinstance(leaf, Arc):
        ts = np.linspace(leaf.start, leaf.end, 120)
        _curve(ax, to_screen, [leaf.at(t) for t in ts], True, color)
        s, e = leaf.endpoints()
        _end(ax, to_screen, s, leaf.closed_start, color)
        _end(ax, to_screen, e, leaf.closed_end, color)
    elif isinstance(leaf, SinglePoint):
        _end(ax, to_screen, leaf.point, True, color)
    elif isinstance(leaf, (FiniteFigure, OrbitFigure)):
        fig = leaf
        if isinstance(leaf, OrbitFigure):
            fig = realize(leaf, leaf.truncation or truncation)
        if len(fig):
            xy = np.array([to_screen(*p.coords) for p in fig.points])
            ax.scatter(xy[:, 0], xy[:, 1], s=10, color=color, zorder=4)


def _draw_figure(ax, F, viewport, truncation, color):
    g = F.geometry
    to_screen, from_screen = _to_screen(g), _from_screen(g)
    x0, x1, y0, y1 = viewport
    xs, ys = np.linspace(x0, x1, GRID), np.linspace(y0, y1, GRID)
    solid = any(isinstance(l, (HalfPlane, AngleWedge, Disc)) for l in leaves(F))
    if solid:
        mask = np.zeros((GRID, GRID))
        for i, y in enumerate(ys):
            for j, x in enumerate(xs):
                c = from_screen(x, y)
                mask[i, j] = 1.0 if c is not None and F._test(c, 1e-9) is True else 0.0
        if mask.any():
            ax.contourf(xs, ys, mask, levels=[0.5, 1.5], colors=[color], alpha=0.25)
    for leaf in leaves(F):
        _draw_leaf(ax, leaf, to_screen, truncation, color)


def _setup(ax, geometry, viewport, title):
    x0, x1, y0, y1 = viewport
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_aspect("equal")
    if geometry is not Geometry.EUCLIDEAN:
        ax.add_patch(Circle((0, 0), 1.0, fill=False, color="0.5", lw=0.8))
    ax.axhline(0, color="0.85", lw=0.6, zorder=0)
    ax.axvline(0, color="0.85", lw=0.6, zorder=0)
    if title:
        ax.set_title(title)


_COLORS = ("tab:blue", "tab:red", "tab:green", "tab:purple")


def render_svg(panels, viewport=None, truncation: int = 40, witness=None) -> bytes:
    """SVG bytes for one or more panels.

    ``panels`` is a list of ``(title, [figures])``.  ``witness`` (optional)
    draws arrows from characteristic points of the first figure to their
    images.
    """
    panels = list(panels) or [("", [])]
    with rc_context(_RC):
        fig = MplFigure(figsize=(4.0 * len(panels), 4.0))
        for k, (title, figs) in enumerate(panels):
            ax = fig.add_subplot(1, len(panels), k + 1)
            g = figs[0].geometry if figs else Geometry.EUCLIDEAN
            vp = viewport or default_viewport(figs)
            _setup(ax, g, vp, title)
            for i, F in enumerate(figs):
                _draw_figure(ax, F, vp, truncation, _COLORS[i % len(_COLORS)])
            if witness is not None and figs and g is witness.geometry and g is not Geometry.ELLIPTIC:
                to_screen = _to_screen(g)
                for c in defining_points(figs[0])[:8]:
                    try:
                        p = Point(g, c)
                    except ValueError:
                        continue
                    a, b = to_screen(*p.coords), to_screen(*witness.apply(p).coords)
                    ax.annotate("", xy=b, xytext=a, arrowprops={"arrowstyle": "->", "color": "0.3", "lw": 0.8})
        buf = io.BytesIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()


def write_svg(path, panels, **kw) -> None:
    with open(path, "wb") as fh:
        fh.write(render_svg(panels, **kw))
