"""Finite and symbolic figures.

A figure is an immutable expression tree.  Leaves are primitives
(half-planes, half-lines, segments, discs, angle wedges, lines, single
points, circular arcs), finite point sets, or orbit sets of an irrational
rotation; inner nodes are union, difference and complement.

Membership is exact on the primitive predicates: strict inequalities are
evaluated strictly and the tolerance only widens equality tests, so the
difference between an open and a closed boundary survives.  Orbit figures
without a truncation cannot answer arbitrary membership queries and return
:data:`UNDECIDABLE` instead.
"""

from __future__ import annotations

import functools
import itertools
import math
import sys
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .errors import ModelMismatchError, UnsupportedImageError
from .geometry import (
    DEFAULT_TOL,
    Geometry,
    Point,
    canonicalize_rows,
    dist,
    pairwise_dist,
)
from .isometry import Similarity, as_similarity, rotation_angle

EQ_EPS = 1e-12
PI_SQRT2 = "pi*sqrt2"


class _Undecidable:
    """Third membership verdict.  Refuses to be used as a boolean."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        raise TypeError("membership is undecidable; test `is UNDECIDABLE` first")

    def __repr__(self):
        return "UNDECIDABLE"


UNDECIDABLE = _Undecidable()


def _and(a, b):
    if a is False or b is False:
        return False
    if a is UNDECIDABLE or b is UNDECIDABLE:
        return UNDECIDABLE
    return True


def _not(a):
    return a if a is UNDECIDABLE else not a


def _cross(u, v) -> float:
    return u[0] * v[1] - u[1] * v[0]


def _dot(u, v) -> float:
    return u[0] * v[0] + u[1] * v[1]


def _norm(v) -> float:
    n = math.hypot(v[0], v[1])
    # already unit up to rounding: keep as is so normalising is idempotent
    return 1.0 if abs(n - 1.0) <= 4 * sys.float_info.epsilon else n


def _unit(v) -> tuple:
    n = _norm(v)
    if n < 1e-15:
        raise ValueError("direction vector must be nonzero")
    return (v[0] / n + 0.0, v[1] / n + 0.0)


def _pair(v) -> tuple:
    x, y = v
    return (float(x) + 0.0, float(y) + 0.0)


class Figure:
    """Base class; subclasses are frozen dataclasses."""

    geometry: Geometry

    def contains(self, p: Point, tol: float = DEFAULT_TOL):
        if p.geometry is not self.geometry:
            raise ModelMismatchError(
                f"{p.geometry.value} point tested against {self.geometry.value} figure")
        return self._test(p.coords, tol)

    def _test(self, c: tuple, tol: float):
        raise NotImplementedError

    def image(self, f) -> "Figure":
        if f.geometry is not self.geometry:
            raise ModelMismatchError(
                f"{f.geometry.value} isometry applied to {self.geometry.value} figure")
        return self._image(f)

    def _image(self, f):
        return self._image_sim(as_similarity(f))

    def _image_sim(self, s: Similarity):
        raise NotImplementedError

    def children(self) -> tuple:
        return ()

    def __or__(self, other):
        return union(self, other)

    def __sub__(self, other):
        return difference(self, other)

    def __invert__(self):
        return complement(self)


def _check_geometry(fig, allowed):
    if fig.geometry not in allowed:
        names = ", ".join(g.value for g in allowed)
        raise ModelMismatchError(f"{type(fig).__name__} is only defined for {names}")


_PLANAR = (Geometry.EUCLIDEAN, Geometry.HALF_PLANE)
_EUCLID = (Geometry.EUCLIDEAN,)


@dataclass(frozen=True)
class HalfPlane(Figure):
    """``{p : normal . p <= offset}`` (strict ``<`` when open)."""

    normal: tuple
    offset: float
    closed: bool = True
    geometry: Geometry = Geometry.EUCLIDEAN

    def __post_init__(self):
        n = _pair(self.normal)
        size = _norm(n)
        if size < 1e-15:
            raise ValueError("half-plane normal must be nonzero")
        object.__setattr__(self, "normal", _unit(n))
        object.__setattr__(self, "offset", float(self.offset) / size + 0.0)
        object.__setattr__(self, "closed", bool(self.closed))
        object.__setattr__(self, "geometry", Geometry.parse(self.geometry))
        _check_geometry(self, _PLANAR)

    def _test(self, c, tol):
        v = _dot(self.normal, c) - self.offset
        return v <= tol if self.closed else v < 0.0

    def _image_sim(self, s):
        n = s.vector(self.normal)
        return HalfPlane(n, s.scale * self.offset + _dot(n, s.translation), self.closed, self.geometry)

    def opposite(self) -> "HalfPlane":
        """The complementary half-plane."""
        return HalfPlane((-self.normal[0], -self.normal[1]), -self.offset, not self.closed, self.geometry)

    @property
    def foot(self) -> tuple:
        return (self.normal[0] * self.offset, self.normal[1] * self.offset)


@dataclass(frozen=True)
class HalfLine(Figure):
    """``{origin + t direction : t >= 0}`` (``t > 0`` without the origin)."""

    origin: tuple
    direction: tuple
    include_origin: bool = True
    geometry: Geometry = Geometry.EUCLIDEAN

    def __post_init__(self):
        object.__setattr__(self, "origin", _pair(self.origin))
        object.__setattr__(self, "direction", _unit(_pair(self.direction)))
        object.__setattr__(self, "include_origin", bool(self.include_origin))
        object.__setattr__(self, "geometry", Geometry.parse(self.geometry))
        _check_geometry(self, _EUCLID)

    def _test(self, c, tol):
        w = (c[0] - self.origin[0], c[1] - self.origin[1])
        if abs(_cross(self.direction, w)) > tol:
            return False
        t = _dot(self.direction, w)
        return t >= -tol if self.include_origin else t > 0.0

    def _image_sim(self, s):
        return HalfLine(s.point(self.origin), s.vector(self.direction), self.include_origin)


@dataclass(frozen=True)
class Line(Figure):
    through: tuple
    direction: tuple
    geometry: Geometry = Geometry.EUCLIDEAN

    def __post_init__(self):
        object.__setattr__(self, "through", _pair(self.through))
        object.__setattr__(self, "direction", _unit(_pair(self.direction)))
        object.__setattr__(self, "geometry", Geometry.parse(self.geometry))
        _check_geometry(self, _EUCLID)

    def _test(self, c, tol):
        w = (c[0] - self.through[0], c[1] - self.through[1])
        return abs(_cross(self.direction, w)) <= tol

    def _image_sim(self, s):
        return Line(s.point(self.through), s.vector(self.direction))


@dataclass(frozen=True)
class Segment(Figure):
    start: tuple
    end: tuple
    closed_start: bool = True
    closed_end: bool = True
    geometry: Geometry = Geometry.EUCLIDEAN

    def __post_init__(self):
        object.__setattr__(self, "start", _pair(self.start))
        object.__setattr__(self, "end", _pair(self.end))
        object.__setattr__(self, "closed_start", bool(self.closed_start))
        object.__setattr__(self, "closed_end", bool(self.closed_end))
        object.__setattr__(self, "geometry", Geometry.parse(self.geometry))
        _check_geometry(self, _EUCLID)
        if self.length < 1e-12:
            raise ValueError("segment endpoints coincide")

    @property
    def length(self) -> float:
        return math.hypot(self.end[0] - self.start[0], self.end[1] - self.start[1])

    @property
    def direction(self) -> tuple:
        return _unit((self.end[0] - self.start[0], self.end[1] - self.start[1]))

    def _test(self, c, tol):
        d = self.direction
        w = (c[0] - self.start[0], c[1] - self.start[1])
        if abs(_cross(d, w)) > tol:
            return False
        t = _dot(d, w)
        lo = t >= -tol if self.closed_start else t > 0.0
        hi = t <= self.length + tol if self.closed_end else t < self.length
        return lo and hi

    def _image_sim(self, s):
        return Segment(s.point(self.start), s.point(self.end), self.closed_start, self.closed_end)


@dataclass(frozen=True)
class Disc(Figure):
    center: tuple
    radius: float
    closed: bool = True
    geometry: Geometry = Geometry.EUCLIDEAN

    def __post_init__(self):
        object.__setattr__(self, "center", _pair(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "closed", bool(self.closed))
        object.__setattr__(self, "geometry", Geometry.parse(self.geometry))
        _check_geometry(self, _EUCLID)
        if not self.radius > 0:
            raise ValueError("disc radius must be positive")

    def _test(self, c, tol):
        r = math.hypot(c[0] - self.center[0], c[1] - self.center[1])
        return r <= self.radius + tol if self.closed else r < self.radius

    def _image_sim(self, s):
        return Disc(s.point(self.center), s.scale * self.radius, self.closed)


@dataclass(frozen=True)
class AngleWedge(Figure):
    """The angular region swept counter-clockwise from ``dir1`` to ``dir2``.

    The opening angle lies in (0, pi]; an open wedge is the interior.
    """

    vertex: tuple
    dir1: tuple
    dir2: tuple
    closed: bool = True
    geometry: Geometry = Geometry.EUCLIDEAN

    def __post_init__(self):
        object.__setattr__(self, "vertex", _pair(self.vertex))
        d1, d2 = _unit(_pair(self.dir1)), _unit(_pair(self.dir2))
        object.__setattr__(self, "dir1", d1)
        object.__setattr__(self, "dir2", d2)
        object.__setattr__(self, "closed", bool(self.closed))
        object.__setattr__(self, "geometry", Geometry.parse(self.geometry))
        _check_geometry(self, _EUCLID)
        if not (_cross(d1, d2) > EQ_EPS or self.is_straight):
            raise ValueError("wedge angle must lie in (0, pi] measured counter-clockwise")

    @property
    def is_straight(self) -> bool:
        return _dot(self.dir1, self.dir2) < -1 + EQ_EPS

    @property
    def opening(self) -> float:
        return math.atan2(_cross(self.dir1, self.dir2), _dot(self.dir1, self.dir2)) % (2 * math.pi) or math.pi

    def halfplanes(self) -> list:
        # left of dir1: cross(d1, w) >= 0  <=>  (d1y, -d1x) . w <= 0
        d1, d2, v = self.dir1, self.dir2, self.vertex
        left = HalfPlane((d1[1], -d1[0]), d1[1] * v[0] - d1[0] * v[1], self.closed)
        if self.is_straight:
            return [left]
        right = HalfPlane((-d2[1], d2[0]), -d2[1] * v[0] + d2[0] * v[1], self.closed)
        return [left, right]

    def _test(self, c, tol):
        return all(h._test(c, tol) for h in self.halfplanes())

    def _image_sim(self, s):
        d1, d2 = s.vector(self.dir1), s.vector(self.dir2)
        if s.reflect:
            d1, d2 = d2, d1
        return AngleWedge(s.point(self.vertex), d1, d2, self.closed)


@dataclass(frozen=True)
class SinglePoint(Figure):
    point: tuple
    geometry: Geometry = Geometry.EUCLIDEAN

    def __post_init__(self):
        object.__setattr__(self, "point", _pair(self.point))
        object.__setattr__(self, "geometry", Geometry.parse(self.geometry))
        _check_geometry(self, _PLANAR)
        Point(self.geometry, self.point)

    def as_point(self) -> Point:
        return Point(self.geometry, self.point)

    def _test(self, c, tol):
        return dist(self.as_point(), Point(self.geometry, c)) <= tol

    def _image(self, f):
        return SinglePoint(f.apply(self.as_point()).coords, self.geometry)


@dataclass(frozen=True)
class Arc(Figure):
    """Circular arc ``center + radius (cos t, sin t)`` for ``t`` from ``start`` to ``end``.

    Angles in radians with ``start < end < start + 2 pi``.
    """

    center: tuple
    radius: float
    start: float
    end: float
    closed_start: bool = True
    closed_end: bool = True
    geometry: Geometry = Geometry.EUCLIDEAN

    def __post_init__(self):
        object.__setattr__(self, "center", _pair(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "end", float(self.end))
        object.__setattr__(self, "closed_start", bool(self.closed_start))
        object.__setattr__(self, "closed_end", bool(self.closed_end))
        object.__setattr__(self, "geometry", Geometry.parse(self.geometry))
        _check_geometry(self, _PLANAR)
        if not self.radius > 0:
            raise ValueError("arc radius must be positive")
        if not 0 < self.end - self.start < 2 * math.pi:
            raise ValueError("arc span must lie in (0, 2 pi)")

    @property
    def span(self) -> float:
        return self.end - self.start

    def at(self, t: float) -> tuple:
        return (self.center[0] + self.radius * math.cos(t), self.center[1] + self.radius * math.sin(t))

    def endpoints(self) -> tuple:
        return self.at(self.start), self.at(self.end)

    def _test(self, c, tol):
        dx, dy = c[0] - self.center[0], c[1] - self.center[1]
        if abs(math.hypot(dx, dy) - self.radius) > tol:
            return False
        rel = (math.atan2(dy, dx) - self.start) % (2 * math.pi)
        # arclength slack on either side of the parameter range
        slack = tol / self.radius
        if rel > 2 * math.pi - slack:
            rel -= 2 * math.pi
        lo = rel >= -slack if self.closed_start else rel > 0.0
        hi = rel <= self.span + slack if self.closed_end else rel < self.span
        return lo and hi

    def _image_sim(self, s):
        phi = math.atan2(s.linear[1, 0], s.linear[0, 0])
        if s.reflect:
            a, b = phi - self.end, phi - self.start
            cs, ce = self.closed_end, self.closed_start
        else:
            a, b = phi + self.start, phi + self.end
            cs, ce = self.closed_start, self.closed_end
        shift = 2 * math.pi * math.floor(a / (2 * math.pi))
        return Arc(s.point(self.center), s.scale * self.radius, a - shift, b - shift, cs, ce, self.geometry)


def _dedupe(geometry, pts):
    if not pts:
        return ()
    arr = np.array([p.coords for p in pts])
    D = pairwise_dist(geometry, arr, arr)
    keep = []
    for i in range(len(pts)):
        if all(D[i, j] > EQ_EPS for j in keep):
            keep.append(i)
    return tuple(pts[i] for i in keep)


@dataclass(frozen=True)
class FiniteFigure(Figure):
    geometry: Geometry
    points: tuple = ()
    array: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        g = Geometry.parse(self.geometry)
        object.__setattr__(self, "geometry", g)
        pts = []
        for p in self.points:
            if not isinstance(p, Point):
                p = Point(g, p) if g is not Geometry.ELLIPTIC else Point.elliptic(*p)
            if p.geometry is not g:
                raise ModelMismatchError(f"{p.geometry.value} point in a {g.value} figure")
            pts.append(p)
        object.__setattr__(self, "points", _dedupe(g, pts))
        arr = np.array([p.coords for p in self.points]).reshape(len(self.points), g.dim)
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)

    @classmethod
    def from_array(cls, geometry, arr) -> "FiniteFigure":
        g = Geometry.parse(geometry)
        arr = np.asarray(arr, dtype=float)
        if g is Geometry.ELLIPTIC:
            arr = canonicalize_rows(arr)
        return cls(g, tuple(Point(g, row) for row in arr))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def _test(self, c, tol):
        if not self.points:
            return False
        d = pairwise_dist(self.geometry, np.array([c]), self.array)
        return bool(d.min() <= tol)

    def _image(self, f):
        if not self.points:
            return self
        return FiniteFigure.from_array(self.geometry, f.apply_array(self.array))


def finite(geometry, points) -> FiniteFigure:
    return FiniteFigure(Geometry.parse(geometry), tuple(points))


# orbit sets


@functools.lru_cache(maxsize=None)
def _omega_mp(token) -> mpmath.mpf:
    with mpmath.workdps(50):
        if isinstance(token, str):
            t = token.replace(" ", "").lower()
            if t.startswith("pi*sqrt"):
                arg = t[len("pi*sqrt"):].strip("()")
                return +(mpmath.pi * mpmath.sqrt(mpmath.mpf(arg)))
            raise ValueError(f"unknown omega token {token!r}")
        return mpmath.mpf(token)


def omega_value(token) -> float:
    return float(_omega_mp(token))


@functools.lru_cache(maxsize=100_000)
def orbit_angle(token, k: int) -> float:
    """``k * omega`` reduced to [0, 2 pi), evaluated in 50-digit arithmetic."""
    with mpmath.workdps(50):
        return float(mpmath.fmod(k * _omega_mp(token), 2 * mpmath.pi))


@functools.lru_cache(maxsize=100_000)
def orbit_cos_sin(token, k: int) -> tuple:
    """Correctly rounded ``(cos k omega, sin k omega)``."""
    with mpmath.workdps(50):
        t = k * _omega_mp(token)
        return float(mpmath.cos(t)), float(mpmath.sin(t))


_ORBIT_DEFAULT_RADIUS = {Geometry.EUCLIDEAN: 1.0, Geometry.DISC: 0.5, Geometry.ELLIPTIC: 0.5}


@dataclass(frozen=True)
class OrbitFigure(Figure):
    """``{a_k : k in index set}`` with ``a_k`` the ``k``-th rotation of a base point.

    The index set is ``{k >= index_from} \\ exclude``.  ``radius`` is the
    circle radius in the plane, the Euclidean radius ``b`` in the disc, and
    the horizontal radius on the hemisphere (height ``sqrt(1 - radius^2)``).
    ``truncation`` limits numeric realisation to indices below it.
    """

    geometry: Geometry
    omega: object = PI_SQRT2
    radius: float | None = None
    index_from: int = 0
    exclude: frozenset = frozenset()
    truncation: int | None = None

    def __post_init__(self):
        g = Geometry.parse(self.geometry)
        object.__setattr__(self, "geometry", g)
        _check_geometry(self, (Geometry.EUCLIDEAN, Geometry.DISC, Geometry.ELLIPTIC))
        r = _ORBIT_DEFAULT_RADIUS[g] if self.radius is None else float(self.radius)
        if not (r > 0 and (g is Geometry.EUCLIDEAN or r < 1)):
            raise ValueError(f"orbit radius {r} out of range for {g.value}")
        object.__setattr__(self, "radius", r)
        _omega_mp(self.omega)
        if int(self.index_from) < 0:
            raise ValueError("orbit indices are nonnegative")
        object.__setattr__(self, "index_from", int(self.index_from))
        object.__setattr__(self, "exclude", frozenset(int(k) for k in self.exclude if int(k) >= self.index_from))
        if self.truncation is not None:
            object.__setattr__(self, "truncation", int(self.truncation))

    @property
    def omega_value(self) -> float:
        return omega_value(self.omega)

    def has_index(self, k: int) -> bool:
        return k >= self.index_from and k not in self.exclude

    def indices(self, n: int) -> list:
        return [k for k in range(self.index_from, n) if k not in self.exclude]

    def coords(self, k: int) -> tuple:
        c, s = orbit_cos_sin(self.omega, k)
        r = self.radius
        if self.geometry is Geometry.ELLIPTIC:
            return (r * c, r * s, math.sqrt(1 - r * r))
        return (r * c, r * s)

    def point(self, k: int) -> Point:
        return Point(self.geometry, self.coords(k))

    def index_subset(self, other: "OrbitFigure") -> int | None:
        """None when this index set lies inside ``other``'s, else a witness index."""
        for k in range(self.index_from, other.index_from):
            if k not in self.exclude:
                return k
        for k in sorted(other.exclude):
            if self.has_index(k):
                return k
        return None

    def same_family(self, other) -> bool:
        return (isinstance(other, OrbitFigure) and other.geometry is self.geometry
                and other.omega == self.omega and other.radius == self.radius)

    def truncated(self, n: int) -> "OrbitFigure":
        return OrbitFigure(self.geometry, self.omega, self.radius, self.index_from, self.exclude, n)

    def _test(self, c, tol):
        if self.truncation is None:
            return UNDECIDABLE
        return realize(self, self.truncation)._test(c, tol)

    def shift_steps(self, f, max_steps: int = 4096) -> int | None:
        """Number of orbit steps ``f`` advances by, if it is such a rotation."""
        theta = rotation_angle(f)
        if theta is None:
            return None
        w = self.omega_value
        for j in sorted(range(-max_steps, max_steps + 1), key=abs):
            if abs(math.remainder(j * w - theta, 2 * math.pi)) <= 1e-9:
                return j
        return None

    def _image(self, f):
        j = self.shift_steps(f)
        if j is not None and self.index_from + j >= 0:
            trunc = None if self.truncation is None else self.truncation + j
            return OrbitFigure(self.geometry, self.omega, self.radius, self.index_from + j,
                               frozenset(k + j for k in self.exclude), trunc)
        if self.truncation is not None:
            return realize(self, self.truncation).image(f)
        raise UnsupportedImageError(
            "untruncated orbits only map under rotations by multiples of omega; truncate first")


def realize(F: OrbitFigure, n: int) -> FiniteFigure:
    """Numeric points for the indices of ``F`` below ``n``."""
    if n < 1:
        raise ValueError("realisation needs n >= 1")
    idx = F.indices(n)
    pts = tuple(F.point(k) for k in idx)
    fig = FiniteFigure(F.geometry, pts)
    if len(fig) != len(idx):
        raise AssertionError("orbit points coincide; omega / pi looks rational")
    return fig


# combinators


def _common_geometry(parts):
    g = parts[0].geometry
    for p in parts[1:]:
        if p.geometry is not g:
            raise ModelMismatchError(f"cannot combine {g.value} with {p.geometry.value}")
    return g


@dataclass(frozen=True)
class Union(Figure):
    parts: tuple
    geometry: Geometry = field(init=False)

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ValueError("union needs at least one part")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "geometry", _common_geometry(parts))

    def children(self):
        return self.parts

    def _test(self, c, tol):
        out = False
        for p in self.parts:
            r = p._test(c, tol)
            if r is True:
                return True
            if r is UNDECIDABLE:
                out = UNDECIDABLE
        return out

    def _image(self, f):
        return Union(tuple(p._image(f) for p in self.parts))


@dataclass(frozen=True)
class Difference(Figure):
    a: Figure
    b: Figure
    geometry: Geometry = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "geometry", _common_geometry((self.a, self.b)))

    def children(self):
        return (self.a, self.b)

    def _test(self, c, tol):
        return _and(self.a._test(c, tol), _not(self.b._test(c, tol)))

    def _image(self, f):
        return Difference(self.a._image(f), self.b._image(f))


@dataclass(frozen=True)
class Complement(Figure):
    a: Figure
    geometry: Geometry = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "geometry", self.a.geometry)

    def children(self):
        return (self.a,)

    def _test(self, c, tol):
        return _not(self.a._test(c, tol))

    def _image(self, f):
        return Complement(self.a._image(f))


def union(*parts) -> Union:
    return Union(tuple(parts))


def difference(a, b) -> Difference:
    return Difference(a, b)


def complement(a) -> Complement:
    return Complement(a)


def contains(F: Figure, p: Point, tol: float = DEFAULT_TOL):
    return F.contains(p, tol)


def image(F: Figure, f) -> Figure:
    return F.image(f)


# neighbour structure


def neighbor_counts(F: FiniteFigure, r: float, tol: float = DEFAULT_TOL) -> list:
    """Per point, how many other points lie at distance ``r`` (within ``tol``)."""
    if r <= 0:
        raise ValueError("neighbour distance must be positive")
    if not len(F):
        return []
    D = pairwise_dist(F.geometry, F.array, F.array)
    hits = np.abs(D - r) <= tol
    np.fill_diagonal(hits, False)
    return [int(v) for v in hits.sum(axis=1)]


def neighbor_signature(F: FiniteFigure, r: float, tol: float = DEFAULT_TOL) -> tuple:
    """Sorted multiset of :func:`neighbor_counts`."""
    return tuple(sorted(neighbor_counts(F, r, tol)))


# traversal helpers shared by the structural rules and samplers


def leaves(F: Figure):
    kids = F.children()
    if not kids:
        yield F
        return
    for k in kids:
        yield from leaves(k)


_RAY_T = (0.0, 1e-9, 1e-6, 1e-3, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1e4)


def defining_points(F: Figure) -> list:
    """Characteristic coordinates of the leaves: vertices, endpoints, centres."""
    out = []
    for leaf in leaves(F):
        if isinstance(leaf, HalfPlane):
            f = leaf.foot
            t = (-leaf.normal[1], leaf.normal[0])
            out += [f, (f[0] + t[0], f[1] + t[1]), (f[0] - t[0], f[1] - t[1])]
        elif isinstance(leaf, HalfLine):
            o, d = leaf.origin, leaf.direction
            out += [o, (o[0] + d[0], o[1] + d[1])]
        elif isinstance(leaf, Line):
            o, d = leaf.through, leaf.direction
            out += [o, (o[0] + d[0], o[1] + d[1]), (o[0] - d[0], o[1] - d[1])]
        elif isinstance(leaf, Segment):
            s, e = leaf.start, leaf.end
            out += [s, e, ((s[0] + e[0]) / 2, (s[1] + e[1]) / 2)]
        elif isinstance(leaf, Disc):
            c, r = leaf.center, leaf.radius
            out += [c] + [(c[0] + r * math.cos(a), c[1] + r * math.sin(a)) for a in (0, math.pi / 2, math.pi, 1.5 * math.pi)]
        elif isinstance(leaf, AngleWedge):
            v, d1, d2 = leaf.vertex, leaf.dir1, leaf.dir2
            out += [v, (v[0] + d1[0], v[1] + d1[1]), (v[0] + d2[0], v[1] + d2[1])]
        elif isinstance(leaf, SinglePoint):
            out.append(leaf.point)
        elif isinstance(leaf, Arc):
            out += [*leaf.endpoints(), leaf.at(leaf.start + leaf.span / 2)]
        elif isinstance(leaf, FiniteFigure):
            out += [p.coords for p in leaf.points[:64]]
        elif isinstance(leaf, OrbitFigure):
            n = leaf.truncation if leaf.truncation is not None else leaf.index_from + 16
            out += [leaf.coords(k) for k in leaf.indices(n)[:16]]
    return out


def _valid(geometry, c) -> bool:
    try:
        Point(geometry, c)
    except ValueError:
        return False
    return True


def _leaf_samples(leaf, rng, n) -> list:
    if isinstance(leaf, HalfPlane):
        f = leaf.foot
        t = (-leaf.normal[1], leaf.normal[0])
        depths = [0.0, 1e-9, 1e-6, 1e-3, 0.5, 1.0, 10.0, 1e3]
        spans = [0.0, 1e-6, -1e-3, 0.5, -1.0, 3.0, -10.0, 1e3]
        out = []
        for u, s in itertools.product(depths, spans):
            out.append((f[0] + s * t[0] - u * leaf.normal[0], f[1] + s * t[1] - u * leaf.normal[1]))
        for _ in range(n):
            u, s = rng.exponential(3.0), rng.normal(0, 5.0)
            out.append((f[0] + s * t[0] - u * leaf.normal[0], f[1] + s * t[1] - u * leaf.normal[1]))
        return out
    if isinstance(leaf, HalfLine):
        o, d = leaf.origin, leaf.direction
        ts = list(_RAY_T) + list(rng.exponential(5.0, size=n))
        return [(o[0] + t * d[0], o[1] + t * d[1]) for t in ts]
    if isinstance(leaf, Line):
        o, d = leaf.through, leaf.direction
        ts = [s * t for t in _RAY_T for s in (1, -1)] + list(rng.normal(0, 10.0, size=n))
        return [(o[0] + t * d[0], o[1] + t * d[1]) for t in ts]
    if isinstance(leaf, Segment):
        s, e = leaf.start, leaf.end
        ts = [0.0, 1.0, 1e-9, 1 - 1e-9, 1e-3, 0.5, 0.999] + list(rng.random(size=n))
        return [(s[0] + t * (e[0] - s[0]), s[1] + t * (e[1] - s[1])) for t in ts]
    if isinstance(leaf, Disc):
        c, r = leaf.center, leaf.radius
        out = [c]
        for _ in range(n):
            a = rng.random() * 2 * math.pi
            rho = r * math.sqrt(rng.random())
            out.append((c[0] + rho * math.cos(a), c[1] + rho * math.sin(a)))
        out += [(c[0] + r * math.cos(a), c[1] + r * math.sin(a)) for a in np.linspace(0, 2 * math.pi, 8, endpoint=False)]
        return out
    if isinstance(leaf, AngleWedge):
        v, d1, d2 = leaf.vertex, leaf.dir1, leaf.dir2
        if leaf.is_straight:
            d2 = (-d1[1], d1[0])
            coefs = [(s, t) for s in (-10.0, -1.0, 0.0, 1.0, 10.0) for t in (0.0, 1e-6, 1.0, 10.0)]
        else:
            coefs = [(s, t) for s in (0.0, 1e-6, 1.0, 10.0, 1e3) for t in (0.0, 1e-6, 1.0, 10.0, 1e3)]
        coefs += [tuple(rng.exponential(4.0, size=2)) for _ in range(n)]
        return [(v[0] + s * d1[0] + t * d2[0], v[1] + s * d1[1] + t * d2[1]) for s, t in coefs]
    if isinstance(leaf, SinglePoint):
        return [leaf.point]
    if isinstance(leaf, Arc):
        ts = [0.0, 1.0, 1e-9, 0.5, 1 - 1e-9] + list(rng.random(size=n))
        return [leaf.at(leaf.start + t * leaf.span) for t in ts]
    if isinstance(leaf, FiniteFigure):
        return [p.coords for p in leaf.points]
    if isinstance(leaf, OrbitFigure):
        stop = leaf.truncation if leaf.truncation is not None else leaf.index_from + n + len(leaf.exclude) + 1
        return [leaf.coords(k) for k in leaf.indices(stop)]
    return []


def sample_points(F: Figure, rng=None, n: int = 64) -> list:
    """Coordinates of points belonging to ``F`` (a refutation harness).

    Boundary-hugging and far-away points are included on purpose.  Every
    returned point is a member of ``F`` under :meth:`Figure.contains`.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    if isinstance(F, Union):
        cand = [c for p in F.parts for c in sample_points(p, rng, n)]
    elif isinstance(F, Difference):
        cand = sample_points(F.a, rng, n)
    elif isinstance(F, Complement):
        box = rng.uniform(-60, 60, size=(4 * n, 2))
        cand = [tuple(r) for r in box] + defining_points(F.a)
        cand += [(x + dx, y + dy) for x, y in defining_points(F.a) for dx, dy in ((1e-6, 0), (0, -1e-6), (1, 1))]
    else:
        cand = _leaf_samples(F, rng, n)
    g = F.geometry
    out = []
    for c in cand:
        c = tuple(float(v) + 0.0 for v in c)
        if _valid(g, c) and F._test(c, DEFAULT_TOL) is True:
            out.append(c)
    return out


# structural properties


@dataclass(frozen=True)
class StructuralProps:
    is_closed: bool | None
    is_open: bool | None
    is_bounded: bool | None
    is_regular_closed: bool | None
    is_convex: bool | None
    convexity_witness: tuple | None = None


_THIN = (HalfLine, Line, Segment, SinglePoint, Arc, FiniteFigure, OrbitFigure)
_SOLID = (HalfPlane, Disc, AngleWedge)


def _hp_equal(h, k) -> bool:
    return (abs(h.normal[0] - k.normal[0]) <= EQ_EPS and abs(h.normal[1] - k.normal[1]) <= EQ_EPS
            and abs(h.offset - k.offset) <= EQ_EPS and h.closed == k.closed)


def halfplane_rep(F: Figure) -> list | None:
    """Half-planes whose intersection is ``F``, when recognisable."""
    if F.geometry is not Geometry.EUCLIDEAN:
        return None
    if isinstance(F, HalfPlane):
        return [F]
    if isinstance(F, AngleWedge):
        return F.halfplanes()
    if isinstance(F, Complement):
        inner = halfplane_rep(F.a)
        return [inner[0].opposite()] if inner and len(inner) == 1 else None
    if isinstance(F, Difference):
        rp = halfplane_rep(F.a)
        if rp is None:
            return None
        Q = F.b
        if isinstance(Q, Complement):
            rr = halfplane_rep(Q.a)
            return rp + rr if rr is not None else None
        rq = halfplane_rep(Q)
        if rq is not None and len(rq) == 1:
            return rp + [rq[0].opposite()]
        if isinstance(Q, Difference):
            # P \ (P2 \ R) == P n R whenever P lies inside P2
            r2 = halfplane_rep(Q.a)
            rr = halfplane_rep(Q.b)
            if r2 is not None and rr is not None and all(any(_hp_equal(h, k) for k in rp) for h in r2):
                return rp + rr
        return None
    return None


def _chebyshev_radius(hps) -> float:
    """Radius of the largest disc inside the closed intersection (capped at 1e3)."""
    from scipy.optimize import linprog

    A = [[h.normal[0], h.normal[1], 1.0] for h in hps]
    b = [h.offset for h in hps]
    res = linprog([0, 0, -1], A_ub=A, b_ub=b, bounds=[(None, None), (None, None), (0, 1e3)])
    return float(res.x[2]) if res.status == 0 else 0.0


def _recession_trivial(hps) -> bool:
    rays = []
    for h in hps:
        t = (-h.normal[1], h.normal[0])
        rays += [t, (-t[0], -t[1])]
    rays += [(-h.normal[0], -h.normal[1]) for h in hps]
    return not any(all(_dot(h.normal, r) <= EQ_EPS for h in hps) for r in rays)


def _midpoint(g, p, q):
    if g is Geometry.EUCLIDEAN:
        return ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
    return None


def _convexity_witness(F: Figure, pool) -> tuple | None:
    g = F.geometry
    members = [c for c in pool if F._test(c, DEFAULT_TOL) is True][:60]
    for p, q in itertools.combinations(members, 2):
        m = _midpoint(g, p, q)
        if m is not None and F._test(m, DEFAULT_TOL) is False:
            return (p, q)
    return None


def _limit_candidates(P) -> list:
    """Points in the closure of a primitive that it may be missing."""
    if isinstance(P, HalfPlane) and not P.closed:
        f, t = P.foot, (-P.normal[1], P.normal[0])
        return [(f[0] + s * t[0], f[1] + s * t[1]) for s in (0.0, 1.0, -1.0, 10.0, -10.0)]
    if isinstance(P, HalfLine) and not P.include_origin:
        return [P.origin]
    if isinstance(P, Segment):
        return ([] if P.closed_start else [P.start]) + ([] if P.closed_end else [P.end])
    if isinstance(P, Arc):
        s, e = P.endpoints()
        return ([] if P.closed_start else [s]) + ([] if P.closed_end else [e])
    if isinstance(P, Disc) and not P.closed:
        c, r = P.center, P.radius
        return [(c[0] + r * math.cos(a), c[1] + r * math.sin(a)) for a in (0, math.pi / 2, math.pi, 1.5 * math.pi)]
    if isinstance(P, AngleWedge) and not P.closed:
        v, d1, d2 = P.vertex, P.dir1, P.dir2
        return [v, (v[0] + d1[0], v[1] + d1[1]), (v[0] + d2[0], v[1] + d2[1])]
    return []


def _thin_probe_points(P) -> list:
    if isinstance(P, HalfLine):
        return [(P.origin[0] + t * P.direction[0], P.origin[1] + t * P.direction[1]) for t in (1.0, 10.0, 1e3)]
    if isinstance(P, Line):
        return [(P.through[0] + t * P.direction[0], P.through[1] + t * P.direction[1]) for t in (0.0, 10.0, -10.0, 1e3, -1e3)]
    if isinstance(P, Segment):
        s, e = P.start, P.end
        return [(s[0] + t * (e[0] - s[0]), s[1] + t * (e[1] - s[1])) for t in (0.5, 0.25, 0.75, 0.999)]
    if isinstance(P, Arc):
        return [P.at(P.start + t * P.span) for t in (0.5, 0.25, 0.75)]
    if isinstance(P, SinglePoint):
        return [P.point]
    if isinstance(P, FiniteFigure):
        return [p.coords for p in P.points[:16]]
    return []


def _closure_of(P):
    """Closed version of a 2-D primitive."""
    if isinstance(P, HalfPlane):
        return HalfPlane(P.normal, P.offset, True, P.geometry)
    if isinstance(P, Disc):
        return Disc(P.center, P.radius, True)
    if isinstance(P, AngleWedge):
        return AngleWedge(P.vertex, P.dir1, P.dir2, True)
    return None


_LEAF_TABLE = {
    # kind: (closed, open, bounded, regular_closed, convex) with None meaning "use flags"
    Line: (True, False, False, False, True),
    SinglePoint: (True, False, True, False, True),
}


def _leaf_props(F) -> dict:
    euclid = F.geometry is Geometry.EUCLIDEAN
    if isinstance(F, HalfPlane):
        return dict(is_closed=F.closed, is_open=not F.closed, is_bounded=False,
                    is_regular_closed=F.closed, is_convex=True if euclid else None)
    if isinstance(F, (Disc, AngleWedge)):
        return dict(is_closed=F.closed, is_open=not F.closed, is_bounded=isinstance(F, Disc),
                    is_regular_closed=F.closed, is_convex=True)
    if isinstance(F, HalfLine):
        return dict(is_closed=F.include_origin, is_open=False, is_bounded=False,
                    is_regular_closed=False, is_convex=True)
    if isinstance(F, Segment):
        return dict(is_closed=F.closed_start and F.closed_end, is_open=False, is_bounded=True,
                    is_regular_closed=False, is_convex=True)
    if isinstance(F, Arc):
        return dict(is_closed=F.closed_start and F.closed_end, is_open=False, is_bounded=True,
                    is_regular_closed=False, is_convex=None)
    if type(F) in _LEAF_TABLE:
        keys = ("is_closed", "is_open", "is_bounded", "is_regular_closed", "is_convex")
        return dict(zip(keys, _LEAF_TABLE[type(F)]))
    if isinstance(F, FiniteFigure):
        empty = len(F) == 0
        convex = True if len(F) <= 1 else (None if not euclid else False)
        return dict(is_closed=True, is_open=empty, is_bounded=True,
                    is_regular_closed=empty, is_convex=convex)
    if isinstance(F, OrbitFigure):
        return dict(is_closed=None, is_open=False, is_bounded=True, is_regular_closed=False,
                    is_convex=False if euclid else None)
    raise TypeError(f"not a primitive: {type(F).__name__}")


def _all(values):
    values = list(values)
    if all(v is True for v in values):
        return True
    if any(v is False for v in values):
        return False
    return None


def _props(F) -> dict:
    if not F.children():
        return _leaf_props(F)
    euclid = F.geometry is Geometry.EUCLIDEAN
    hps = halfplane_rep(F)
    if hps is not None:
        closed = True if all(h.closed for h in hps) else None
        solid = _chebyshev_radius(hps) > 1e-9
        return dict(
            is_closed=closed,
            is_open=True if all(not h.closed for h in hps) else None,
            is_bounded=(_recession_trivial(hps) if solid else None),
            is_regular_closed=True if (closed and solid) else None,
            is_convex=True,
        )
    if isinstance(F, Union):
        sub = [_props(p) for p in F.parts]
        closed = True if all(s["is_closed"] is True for s in sub) else None
        if closed is None:
            for p in F.parts:
                if any(F._test(q, DEFAULT_TOL) is False for q in _limit_candidates(p)):
                    closed = False
                    break
        regc = True if all(s["is_regular_closed"] is True for s in sub) else None
        if regc is None and all(isinstance(p, _THIN + _SOLID) for p in F.parts):
            solids = [_closure_of(p) for p in F.parts if isinstance(p, _SOLID)]
            for p in F.parts:
                if not isinstance(p, _THIN):
                    continue
                for q in _thin_probe_points(p):
                    if F._test(q, DEFAULT_TOL) is True and all(s._test(q, 1e-9) is False for s in solids):
                        regc = False
                        break
                if regc is False:
                    break
        return dict(
            is_closed=closed,
            is_open=True if all(s["is_open"] is True for s in sub) else None,
            is_bounded=_all(s["is_bounded"] for s in sub),
            is_regular_closed=regc,
            is_convex=sub[0]["is_convex"] if len(sub) == 1 else None,
        )
    if isinstance(F, Difference):
        pa, pb = _props(F.a), _props(F.b)
        closed = True if (pa["is_closed"] is True and pb["is_open"] is True) else None
        is_open = True if (pa["is_open"] is True and pb["is_closed"] is True) else None
        bounded = True if pa["is_bounded"] is True else None
        if pa["is_bounded"] is False and pb["is_bounded"] is True:
            bounded = False
        return dict(is_closed=closed, is_open=is_open, is_bounded=bounded,
                    is_regular_closed=None, is_convex=None)
    if isinstance(F, Complement):
        pa = _props(F.a)
        bounded = None
        if pa["is_bounded"] is True or isinstance(F.a, (HalfPlane, Line, HalfLine, AngleWedge)):
            bounded = False
        regc = True if (isinstance(F.a, _SOLID) and not F.a.closed and euclid) else None
        return dict(is_closed=pa["is_open"], is_open=pa["is_closed"], is_bounded=bounded,
                    is_regular_closed=regc, is_convex=None)
    raise TypeError(f"unknown figure node {type(F).__name__}")


def structural_props(F: Figure) -> StructuralProps:
    """Closedness, openness, boundedness, regular-closedness and convexity.

    Each answer is True, False, or None for "no rule applies".  The rules
    are sound; a definite answer is never a guess.  A False convexity comes
    with a witness pair whose midpoint lies outside the figure.
    """
    d = _props(F)
    witness = None
    if d["is_convex"] is None and F.geometry is Geometry.EUCLIDEAN:
        pool = defining_points(F) + sample_points(F, np.random.default_rng(7), 16)
        witness = _convexity_witness(F, pool)
        if witness is not None:
            d["is_convex"] = False
    elif d["is_convex"] is False:
        if isinstance(F, FiniteFigure):
            D = pairwise_dist(F.geometry, F.array, F.array)
            np.fill_diagonal(D, np.inf)
            i, j = np.unravel_index(np.argmin(D), D.shape)
            witness = (F.points[i].coords, F.points[j].coords)
        elif isinstance(F, OrbitFigure):
            k0, k1 = F.indices(F.index_from + len(F.exclude) + 2)[:2]
            witness = (F.coords(k0), F.coords(k1))
    return StructuralProps(convexity_witness=witness, **d)


# corner angles of polygonal regions


def corner_angles(F: Figure, tol: float = 1e-9) -> tuple | None:
    """Sorted interior angles at the corners of a polygonal convex region.

    Returns None when ``F`` is not recognised as an intersection of
    half-planes.
    """
    hps = halfplane_rep(F)
    if hps is None:
        return None
    verts = []
    for h, k in itertools.combinations(hps, 2):
        det = _cross(h.normal, k.normal)
        if abs(det) < EQ_EPS:
            continue
        x = (h.offset * k.normal[1] - k.offset * h.normal[1]) / det
        y = (h.normal[0] * k.offset - k.normal[0] * h.offset) / det
        if all(_dot(m.normal, (x, y)) <= m.offset + tol for m in hps):
            if all(math.hypot(x - u, y - v) > tol for u, v in verts):
                verts.append((x, y))
    angles = []
    for v in verts:
        active = [h for h in hps if abs(_dot(h.normal, v) - h.offset) <= tol]
        rays = []
        for h in active:
            t = (-h.normal[1], h.normal[0])
            for r in (t, (-t[0], -t[1])):
                if all(_dot(m.normal, r) <= EQ_EPS for m in active):
                    rays.append(r)
        if len(rays) < 2:
            continue
        widest = max(math.atan2(abs(_cross(r, s)), _dot(r, s)) for r, s in itertools.combinations(rays, 2))
        if widest < math.pi - 1e-9:
            angles.append(round(widest, 12))
    return tuple(sorted(angles))
