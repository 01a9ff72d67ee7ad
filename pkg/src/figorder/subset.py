"""Sound subset rules for symbolic figures.

``check_subset(X, Y)`` answers ``proved``, ``refuted`` (with a point of X
outside Y) or ``unknown``.  Proofs come only from structural rules; every
refutation point is re-checked by membership evaluation, so a refutation is
never a sampling artefact.  Sampling can refute but never proves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import DEFAULT_TOL, check_tol, require_same
from .figures import (
    EQ_EPS,
    UNDECIDABLE,
    AngleWedge,
    Arc,
    Complement,
    Difference,
    Disc,
    FiniteFigure,
    Figure,
    HalfLine,
    HalfPlane,
    Line,
    OrbitFigure,
    Segment,
    SinglePoint,
    Union,
    defining_points,
    halfplane_rep,
    sample_points,
    _valid,
)

MAX_SAMPLES = 10_000


@dataclass(frozen=True)
class SubsetResult:
    status: str  # "proved" | "refuted" | "unknown"
    witness: tuple | None = None
    reason: str = ""

    @property
    def proved(self) -> bool:
        return self.status == "proved"

    @property
    def refuted(self) -> bool:
        return self.status == "refuted"


# support function: sup of n . p over a figure, plus whether it is attained


@dataclass(frozen=True)
class _Support:
    value: float
    attained: bool | None  # None: unknown


_INF = _Support(math.inf, None)


def _max_support(items):
    best = None
    for s in items:
        if best is None or s.value > best.value + EQ_EPS:
            best = s
        elif abs(s.value - best.value) <= EQ_EPS:
            if best.attained is True or s.attained is True:
                att = True
            elif best.attained is None or s.attained is None:
                att = None
            else:
                att = False
            best = _Support(max(best.value, s.value), att)
    return best


def _lp_support(hps, n):
    from scipy.optimize import linprog

    A = [list(h.normal) for h in hps]
    b = [h.offset for h in hps]
    res = linprog([-n[0], -n[1]], A_ub=A, b_ub=b, bounds=[(None, None)] * 2)
    if res.status == 3:
        return _INF
    if res.status != 0:
        return _Support(-math.inf, False)  # empty intersection
    att = True if all(h.closed for h in hps) else None
    return _Support(float(-res.fun), att)


def support(X: Figure, n) -> _Support:
    """``sup {n . p : p in X}`` for a unit vector ``n`` (planar models)."""
    dot = lambda p: n[0] * p[0] + n[1] * p[1]
    if isinstance(X, HalfPlane):
        if abs(X.normal[0] - n[0]) <= EQ_EPS and abs(X.normal[1] - n[1]) <= EQ_EPS:
            return _Support(X.offset, X.closed)
        return _INF
    if isinstance(X, (HalfLine, Line)):
        o = X.origin if isinstance(X, HalfLine) else X.through
        slope = dot(X.direction)
        if abs(slope) <= EQ_EPS:
            return _Support(dot(o), True)
        if slope > 0 or isinstance(X, Line):
            return _INF
        return _Support(dot(o), X.include_origin)
    if isinstance(X, Segment):
        a, b = dot(X.start), dot(X.end)
        if abs(a - b) <= EQ_EPS:
            return _Support(max(a, b), True)
        return _Support(a, X.closed_start) if a > b else _Support(b, X.closed_end)
    if isinstance(X, Disc):
        return _Support(dot(X.center) + X.radius, X.closed)
    if isinstance(X, SinglePoint):
        return _Support(dot(X.point), True)
    if isinstance(X, Arc):
        phi = math.atan2(n[1], n[0])
        rel = (phi - X.start) % (2 * math.pi)
        ends = [_Support(dot(X.at(X.start)), X.closed_start), _Support(dot(X.at(X.end)), X.closed_end)]
        if 0 < rel < X.span:
            ends.append(_Support(dot(X.center) + X.radius, True))
        return _max_support(ends)
    if isinstance(X, FiniteFigure):
        if not len(X):
            return _Support(-math.inf, False)
        return _Support(max(dot(p.coords) for p in X.points), True)
    if isinstance(X, OrbitFigure):
        if X.truncation is not None:
            return _Support(max(dot(X.coords(k)) for k in X.indices(X.truncation)), True)
        # dense in its circle; the supremum may or may not be attained
        return _Support(X.radius * math.hypot(*n), None)
    if isinstance(X, Union):
        return _max_support(support(p, n) for p in X.parts)
    hps = halfplane_rep(X)
    if hps is not None:
        return _lp_support(hps, n)
    if isinstance(X, AngleWedge):
        return _lp_support(X.halfplanes(), n)
    if isinstance(X, Difference):
        s = support(X.a, n)
        return _Support(s.value, None if s.attained is not False else False)
    return _INF


# one-dimensional interval containment along a common line


def _interval(X, o, d):
    """Parameter interval of X along the line ``o + t d``, or None if not on it."""
    perp = (-d[1], d[0])

    def on_line(p):
        return abs((p[0] - o[0]) * perp[0] + (p[1] - o[1]) * perp[1]) <= EQ_EPS

    def param(p):
        return (p[0] - o[0]) * d[0] + (p[1] - o[1]) * d[1]

    if isinstance(X, SinglePoint):
        if not on_line(X.point):
            return None
        t = param(X.point)
        return (t, True, t, True)
    if isinstance(X, Segment):
        if not (on_line(X.start) and on_line(X.end)):
            return None
        a, b = param(X.start), param(X.end)
        if a <= b:
            return (a, X.closed_start, b, X.closed_end)
        return (b, X.closed_end, a, X.closed_start)
    if isinstance(X, (HalfLine, Line)):
        base = X.origin if isinstance(X, HalfLine) else X.through
        if not on_line(base) or abs(abs(X.direction[0] * d[0] + X.direction[1] * d[1]) - 1) > EQ_EPS:
            return None
        if isinstance(X, Line):
            return (-math.inf, False, math.inf, False)
        t = param(X.origin)
        if X.direction[0] * d[0] + X.direction[1] * d[1] > 0:
            return (t, X.include_origin, math.inf, False)
        return (-math.inf, False, t, X.include_origin)
    return None


def _interval_inside(ix, iy) -> bool:
    xlo, xlc, xhi, xhc = ix
    ylo, ylc, yhi, yhc = iy
    if abs(xlo - ylo) <= EQ_EPS and math.isfinite(xlo):
        lo_ok = ylc or not xlc
    else:
        lo_ok = ylo < xlo or ylo == -math.inf
    if abs(xhi - yhi) <= EQ_EPS and math.isfinite(xhi):
        hi_ok = yhc or not xhc
    else:
        hi_ok = yhi > xhi or yhi == math.inf
    return lo_ok and hi_ok


def _interval_witness(ix, iy, o, d):
    """A parameter in ix but outside iy, when one is easy to name."""
    xlo, xlc, xhi, xhc = ix
    ylo, ylc, yhi, yhc = iy
    cands = []
    if math.isfinite(xlo):
        cands.append(xlo if xlc else xlo + min(1e-3, (xhi - xlo) / 2 if math.isfinite(xhi) else 1e-3))
    if math.isfinite(xhi):
        cands.append(xhi if xhc else xhi - min(1e-3, (xhi - xlo) / 2 if math.isfinite(xlo) else 1e-3))
    if math.isfinite(ylo):
        cands.append(ylo - 1.0)
        cands.append(ylo)
    if math.isfinite(yhi):
        cands.append(yhi + 1.0)
        cands.append(yhi)
    if math.isfinite(xlo) and math.isfinite(ylo) and xlo < ylo:
        cands.append((xlo + ylo) / 2)
    return [(o[0] + t * d[0], o[1] + t * d[1]) for t in cands]


def _line_of(Y):
    if isinstance(Y, HalfLine):
        return Y.origin, Y.direction
    if isinstance(Y, Line):
        return Y.through, Y.direction
    if isinstance(Y, Segment):
        return Y.start, Y.direction
    return None


def _covered(ix, parts) -> bool:
    """Whether the union of the intervals ``parts`` covers the interval ``ix``."""
    xlo, xlc, xhi, xhc = ix
    pos, need = xlo, xlc and math.isfinite(xlo)
    while True:
        best = None
        for lo, lc, hi, hc in parts:
            starts = lo < pos or (lo == -math.inf) or (abs(lo - pos) <= EQ_EPS and (lc or not need))
            if not starts or hi < pos - EQ_EPS:
                continue
            if abs(hi - pos) <= EQ_EPS and not hc and math.isfinite(hi):
                continue
            if best is None or hi > best[0] + EQ_EPS or (abs(hi - best[0]) <= EQ_EPS and hc):
                best = (hi, hc)
        if best is None:
            return False
        hi, hc = best
        if hi == math.inf or hi > xhi + EQ_EPS or (abs(hi - xhi) <= EQ_EPS and (hc or not xhc)):
            return True
        if hi <= pos + EQ_EPS and not (need and hc):
            return False
        pos, need = hi, not hc


def _flatten(Y):
    if isinstance(Y, Union):
        for p in Y.parts:
            yield from _flatten(p)
    else:
        yield Y


# orbit index sets (truncation included)


def _has(F: OrbitFigure, k: int) -> bool:
    return F.has_index(k) and (F.truncation is None or k < F.truncation)


def _index_witness(X: OrbitFigure, Y: OrbitFigure):
    cands = list(range(X.index_from, Y.index_from)) + sorted(Y.exclude)
    if Y.truncation is not None:
        k = max(Y.truncation, X.index_from)
        while k in X.exclude:
            k += 1
        cands.append(k)
    for k in cands:
        if _has(X, k) and not _has(Y, k):
            return k
    return None


# the rules


def _member(Y, c, tol) -> bool:
    return Y._test(c, tol) is True


def _prove(X: Figure, Y: Figure, tol: float) -> bool:
    if isinstance(X, Union):
        return all(_prove(p, Y, tol) for p in X.parts)
    if isinstance(X, FiniteFigure):
        return all(_member(Y, p.coords, tol) for p in X.points)
    if isinstance(X, SinglePoint):
        return _member(Y, X.point, tol)
    if isinstance(X, Difference):
        # X \ Q is inside Y once X is inside Y u Q
        return _prove(X.a, Y, tol) or _prove(X.a, Union((Y, X.b)), tol)
    if isinstance(X, OrbitFigure) and X.same_family(Y):
        return _index_witness(X, Y) is None
    if isinstance(X, OrbitFigure) and X.truncation is not None:
        return all(_member(Y, X.coords(k), tol) for k in X.indices(X.truncation))

    if isinstance(Y, Union):
        if any(_prove(X, p, tol) for p in Y.parts):
            return True
        line = _line_of(X)
        if line is not None:
            ix = _interval(X, *line)
            pieces = [iv for iv in (_interval(p, *line) for p in _flatten(Y)) if iv is not None]
            return ix is not None and _covered(ix, pieces)
        return False
    if isinstance(Y, Complement):
        return _disjoint(X, Y.a, tol)
    if isinstance(Y, HalfPlane):
        s = support(X, Y.normal)
        if Y.closed:
            return s.value <= Y.offset + tol
        return s.value < Y.offset or (s.value <= Y.offset + EQ_EPS and s.attained is False)
    hps = halfplane_rep(Y)
    if hps is not None:
        return all(_prove(X, h, tol) for h in hps)
    if isinstance(Y, Difference):
        return _prove(X, Y.a, tol) and _disjoint(X, Y.b, tol)
    line = _line_of(Y)
    if line is not None:
        o, d = line
        ix, iy = _interval(X, o, d), _interval(Y, o, d)
        return ix is not None and iy is not None and _interval_inside(ix, iy)
    if isinstance(Y, Disc):
        if isinstance(X, Disc):
            gap = math.hypot(X.center[0] - Y.center[0], X.center[1] - Y.center[1]) + X.radius - Y.radius
            return gap <= tol if Y.closed else (gap < 0 or (abs(gap) <= EQ_EPS and not X.closed))
        if isinstance(X, Segment):
            return _member(Y, X.start, tol) and _member(Y, X.end, tol)
    if isinstance(Y, SinglePoint) and isinstance(X, SinglePoint):
        return _member(Y, X.point, tol)
    return False


def _disjoint(X: Figure, Q: Figure, tol: float) -> bool:
    if isinstance(Q, Complement):
        return _prove(X, Q.a, tol)
    if isinstance(Q, Union):
        return all(_disjoint(X, p, tol) for p in Q.parts)
    if isinstance(X, Union):
        return all(_disjoint(p, Q, tol) for p in X.parts)
    if isinstance(X, FiniteFigure):
        return all(Q._test(p.coords, tol) is False for p in X.points)
    if isinstance(X, SinglePoint):
        return Q._test(X.point, tol) is False
    if isinstance(Q, Difference):
        return _disjoint(X, Q.a, tol) or _prove(X, Q.b, tol)
    if isinstance(Q, Disc):
        # separate by the tangent line facing X
        pts = defining_points(X)
        if not pts:
            return False
        mx = sum(p[0] for p in pts) / len(pts)
        my = sum(p[1] for p in pts) / len(pts)
        dx, dy = Q.center[0] - mx, Q.center[1] - my
        size = math.hypot(dx, dy)
        if size <= Q.radius:
            return False
        n = (dx / size, dy / size)
        off = n[0] * Q.center[0] + n[1] * Q.center[1] - Q.radius
        return _prove(X, HalfPlane(n, off, not Q.closed, Q.geometry), tol)
    hps = halfplane_rep(Q)
    if hps is not None and len(hps) == 1:
        return _prove(X, hps[0].opposite(), tol)
    if hps is not None:
        return any(_prove(X, h.opposite(), tol) for h in hps)
    return False


def _rule_candidates(X, Y) -> list:
    out = []
    if isinstance(X, HalfPlane) and isinstance(Y, HalfPlane):
        n = X.normal
        same = abs(n[0] - Y.normal[0]) <= EQ_EPS and abs(n[1] - Y.normal[1]) <= EQ_EPS
        if same and X.offset > Y.offset:
            t = (X.offset + Y.offset) / 2
            out.append((n[0] * t, n[1] * t))
        elif same:
            out.append(X.foot)
    line = _line_of(Y)
    if line is not None:
        ix, iy = _interval(X, *line), _interval(Y, *line)
        if ix is not None and iy is not None:
            out += _interval_witness(ix, iy, *line)
    if isinstance(X, Union):
        for p in X.parts:
            out += _rule_candidates(p, Y)
    if isinstance(Y, Union):
        for p in Y.parts:
            out += _rule_candidates(X, p)
    return out


def check_subset(X: Figure, Y: Figure, tol: float = DEFAULT_TOL, max_samples: int = MAX_SAMPLES,
                 seed: int = 0) -> SubsetResult:
    """Decide ``X`` inside ``Y`` when a rule applies; otherwise try to refute."""
    require_same(X, Y)
    tol = check_tol(tol)
    if isinstance(X, OrbitFigure) and X.same_family(Y):
        k = _index_witness(X, Y)
        if k is None:
            return SubsetResult("proved", reason="orbit index sets nested")
        return SubsetResult("refuted", X.coords(k), reason=f"index {k} missing from the target orbit")
    if _prove(X, Y, tol):
        return SubsetResult("proved", reason="structural rules")
    g = X.geometry
    seen = 0
    for c in _rule_candidates(X, Y) + defining_points(X):
        c = tuple(float(v) + 0.0 for v in c)
        if len(c) == g.dim and _valid(g, c) and X._test(c, tol) is True and Y._test(c, tol) is False:
            return SubsetResult("refuted", c, reason="boundary witness")
    rng = np.random.default_rng(seed)
    while seen < max_samples:
        batch = sample_points(X, rng, min(2000, max_samples - seen))
        if not batch:
            break
        for c in batch[: max_samples - seen]:
            if Y._test(c, tol) is False:
                return SubsetResult("refuted", c, reason="sampled witness")
        seen += len(batch)
        if isinstance(X, (FiniteFigure, SinglePoint)):
            break
    undecided = any(Y._test(c, tol) is UNDECIDABLE for c in defining_points(X)[:4])
    why = "target membership undecidable; truncate first" if undecided else "no rule applies and sampling found no counterexample"
    return SubsetResult("unknown", reason=why)


def check_leq_symbolic(A: Figure, B: Figure, f, tol: float = DEFAULT_TOL, **kw) -> SubsetResult:
    """Check that the isometry ``f`` maps ``A`` into ``B``."""
    require_same(A, B)
    return check_subset(A.image(f), B, tol, **kw)
