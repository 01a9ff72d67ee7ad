"""Isometry groups of the plane models.

Every isometry is an immutable value with ``apply``, ``compose`` and
``inverse``.  ``f.compose(g)`` is ``f o g``: apply ``g`` first.

* :class:`EuclideanIsometry` - ``p -> R(angle) (mirror(p) if reflect else p) + t``
  with ``mirror(x, y) = (x, -y)``.
* :class:`MobiusIsometry` - disc maps ``z -> (a w + b)/(conj(b) w + conj(a))``
  where ``w = z`` or ``w = conj(z)`` for the orientation-reversing half.
* :class:`HalfPlaneIsometry` - ``z -> (a w + b)/(c w + d)`` with a real
  unimodular matrix and ``w = z`` or ``w = -conj(z)``.
* :class:`EllipticIsometry` - an orthogonal 3x3 matrix acting on lines
  through the origin; ``M`` and ``-M`` act identically.
* :class:`Isometry1D` - ``x -> s x + c`` on the real line.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInputError, ModelMismatchError, NoIsometryError, UnsupportedImageError
from .geometry import (
    DEFAULT_TOL,
    Geometry,
    Point,
    canonicalize_rows,
    check_tol,
    dist,
    elliptic_canonicalize,
    half_plane_to_disc,
    require_same,
)

_MIRROR = np.array([[1.0, 0.0], [0.0, -1.0]])
# Cayley map h(z) = (z - i)/(z + i) and its inverse as 2x2 matrices
_CAYLEY = np.array([[1, -1j], [1, 1j]])
_CAYLEY_INV = np.array([[1j, 1j], [-1, 1]])


def _unit_det(det: float, scale: float) -> bool:
    """True when ``det`` is 1 up to rounding at the given magnitude.

    Skipping renormalisation in that case makes constructors idempotent, so
    serialised witnesses read back bit for bit.
    """
    return abs(det - 1.0) <= 8 * sys.float_info.epsilon * max(scale, 1.0)


def _rot(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def _wrap(angle: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    a = math.remainder(angle, 2 * math.pi)
    return math.pi if a == -math.pi else a + 0.0


class _Base:
    geometry: Geometry

    def _same(self, other):
        if not isinstance(other, type(self)):
            raise ModelMismatchError(
                f"cannot compose {type(self).__name__} with {type(other).__name__}")
        return other

    def _check_point(self, p: Point):
        if p.geometry is not self.geometry:
            raise ModelMismatchError(
                f"{type(self).__name__} acts on {self.geometry.value}, got {p.geometry.value}")

    def __call__(self, p):
        return self.apply(p)


@dataclass(frozen=True)
class EuclideanIsometry(_Base):
    angle: float = 0.0
    reflect: bool = False
    translation: tuple = (0.0, 0.0)
    geometry: Geometry = field(default=Geometry.EUCLIDEAN, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "angle", _wrap(float(self.angle)))
        object.__setattr__(self, "reflect", bool(self.reflect))
        object.__setattr__(self, "translation", tuple(float(v) + 0.0 for v in self.translation))

    @classmethod
    def from_linear(cls, L: np.ndarray, t) -> "EuclideanIsometry":
        reflect = bool(np.linalg.det(L) < 0)
        M = L @ _MIRROR if reflect else L
        return cls(math.atan2(M[1, 0], M[0, 0]), reflect, tuple(t))

    @classmethod
    def translation_by(cls, dx, dy) -> "EuclideanIsometry":
        return cls(0.0, False, (dx, dy))

    @classmethod
    def rotation(cls, angle, center=(0.0, 0.0)) -> "EuclideanIsometry":
        c = np.asarray(center, dtype=float)
        return cls(angle, False, tuple(c - _rot(angle) @ c))

    @property
    def linear(self) -> np.ndarray:
        R = _rot(self.angle)
        return R @ _MIRROR if self.reflect else R

    def apply(self, p: Point) -> Point:
        self._check_point(p)
        x, y = self.linear @ np.array(p.coords) + np.array(self.translation)
        return Point.euclidean(x, y)

    def apply_array(self, arr: np.ndarray) -> np.ndarray:
        return np.asarray(arr, dtype=float) @ self.linear.T + np.array(self.translation)

    def compose(self, other: "EuclideanIsometry") -> "EuclideanIsometry":
        other = self._same(other)
        L = self.linear @ other.linear
        t = self.linear @ np.array(other.translation) + np.array(self.translation)
        return EuclideanIsometry.from_linear(L, t)

    def inverse(self) -> "EuclideanIsometry":
        Lt = self.linear.T
        return EuclideanIsometry.from_linear(Lt, -Lt @ np.array(self.translation))


@dataclass(frozen=True)
class MobiusIsometry(_Base):
    a: complex = 1.0
    b: complex = 0.0
    conjugate: bool = False
    geometry: Geometry = field(default=Geometry.DISC, init=False, repr=False, compare=False)

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        det = abs(a) ** 2 - abs(b) ** 2
        if not det > 1e-14:
            raise DegenerateInputError(f"|a|^2 - |b|^2 = {det} must be positive")
        s = 1.0 if _unit_det(det, abs(a) ** 2 + abs(b) ** 2) else 1.0 / math.sqrt(det)
        object.__setattr__(self, "a", a * s)
        object.__setattr__(self, "b", b * s)
        object.__setattr__(self, "conjugate", bool(self.conjugate))

    @classmethod
    def rotation(cls, angle: float) -> "MobiusIsometry":
        """z -> e^{i angle} z."""
        return cls(cmath.exp(0.5j * angle), 0.0)

    @classmethod
    def moving_to_origin(cls, w) -> "MobiusIsometry":
        """The disc translation z -> (z - w)/(1 - conj(w) z)."""
        w = complex(w)
        if abs(w) >= 1:
            raise ValueError(f"{w} is not inside the unit disc")
        return cls(1.0, -w)

    @property
    def normalization_error(self) -> float:
        return abs(abs(self.a) ** 2 - abs(self.b) ** 2 - 1.0)

    def _map(self, z):
        w = np.conj(z) if self.conjugate else z
        a, b = self.a, self.b
        return (a * w + b) / (b.conjugate() * w + a.conjugate())

    def apply(self, p: Point) -> Point:
        self._check_point(p)
        return Point.disc(self._map(p.z))

    def apply_complex(self, z):
        return self._map(z)

    def apply_array(self, arr: np.ndarray) -> np.ndarray:
        arr = np.asarray(arr, dtype=float)
        w = self._map(arr[:, 0] + 1j * arr[:, 1])
        return np.column_stack([w.real, w.imag])

    def compose(self, other: "MobiusIsometry") -> "MobiusIsometry":
        other = self._same(other)
        # conj o D(a, b) o conj == D(conj a, conj b)
        a2, b2 = other.a, other.b
        if self.conjugate:
            a2, b2 = a2.conjugate(), b2.conjugate()
        a1, b1 = self.a, self.b
        a = a1 * a2 + b1 * b2.conjugate()
        b = a1 * b2 + b1 * a2.conjugate()
        return MobiusIsometry(a, b, self.conjugate != other.conjugate)

    def inverse(self) -> "MobiusIsometry":
        if self.conjugate:
            return MobiusIsometry(self.a, -self.b.conjugate(), True)
        return MobiusIsometry(self.a.conjugate(), -self.b, False)

    def to_half_plane(self) -> "HalfPlaneIsometry":
        """Conjugate by the Cayley map; disc conjugation becomes z -> -conj(z)."""
        G = np.array([[self.a, self.b], [self.b.conjugate(), self.a.conjugate()]])
        return HalfPlaneIsometry.from_complex_matrix(_CAYLEY_INV @ G @ _CAYLEY, self.conjugate)


@dataclass(frozen=True)
class HalfPlaneIsometry(_Base):
    matrix: tuple = ((1.0, 0.0), (0.0, 1.0))
    reflect: bool = False
    geometry: Geometry = field(default=Geometry.HALF_PLANE, init=False, repr=False, compare=False)

    def __post_init__(self):
        M = np.array(self.matrix, dtype=float).reshape(2, 2)
        det = float(np.linalg.det(M))
        if not det > 1e-14:
            raise DegenerateInputError(f"matrix determinant {det} must be positive")
        if not _unit_det(det, float(np.abs(M).max()) ** 2):
            M = M / math.sqrt(det)
        # fix the overall sign so the representation is unique
        flat = M.ravel()
        lead = flat[np.flatnonzero(np.abs(flat) > 1e-15)[0]]
        if lead < 0:
            M = -M
        object.__setattr__(self, "matrix", tuple(tuple(float(v) + 0.0 for v in row) for row in M))
        object.__setattr__(self, "reflect", bool(self.reflect))

    @classmethod
    def from_complex_matrix(cls, G: np.ndarray, reflect: bool) -> "HalfPlaneIsometry":
        G = G / cmath.sqrt(np.linalg.det(G))
        flat = G.ravel()
        lead = flat[np.argmax(np.abs(flat))]
        G = G * (abs(lead) / lead)
        if np.max(np.abs(G.imag)) > 1e-9:
            raise ValueError("matrix is not conjugate to a real unimodular matrix")
        return cls(tuple(map(tuple, G.real)), reflect)

    @classmethod
    def translation_by(cls, t: float) -> "HalfPlaneIsometry":
        return cls(((1.0, float(t)), (0.0, 1.0)))

    @property
    def M(self) -> np.ndarray:
        return np.array(self.matrix)

    @property
    def is_affine(self) -> bool:
        return abs(self.matrix[1][0]) <= 1e-12

    def _map(self, z):
        (a, b), (c, d) = self.matrix
        w = -np.conj(z) if self.reflect else z
        return (a * w + b) / (c * w + d)

    def apply(self, p: Point) -> Point:
        self._check_point(p)
        return Point.half_plane(self._map(p.z))

    def apply_complex(self, z):
        return self._map(z)

    def apply_array(self, arr: np.ndarray) -> np.ndarray:
        arr = np.asarray(arr, dtype=float)
        w = self._map(arr[:, 0] + 1j * arr[:, 1])
        return np.column_stack([w.real, w.imag])

    def compose(self, other: "HalfPlaneIsometry") -> "HalfPlaneIsometry":
        other = self._same(other)
        M2 = other.M
        if self.reflect:
            # R o M o R with R(z) = -conj(z)
            M2 = M2 * np.array([[1.0, -1.0], [-1.0, 1.0]])
        return HalfPlaneIsometry(tuple(map(tuple, self.M @ M2)), self.reflect != other.reflect)

    def inverse(self) -> "HalfPlaneIsometry":
        (a, b), (c, d) = self.matrix
        Minv = np.array([[d, -b], [-c, a]])
        if self.reflect:
            Minv = Minv * np.array([[1.0, -1.0], [-1.0, 1.0]])
        return HalfPlaneIsometry(tuple(map(tuple, Minv)), self.reflect)

    def to_disc(self) -> MobiusIsometry:
        G = _CAYLEY @ self.M.astype(complex) @ _CAYLEY_INV
        G = G / cmath.sqrt(np.linalg.det(G))
        return MobiusIsometry(G[0, 0], G[0, 1], self.reflect)


@dataclass(frozen=True)
class EllipticIsometry(_Base):
    matrix: tuple = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
    geometry: Geometry = field(default=Geometry.ELLIPTIC, init=False, repr=False, compare=False)

    def __post_init__(self):
        M = np.array(self.matrix, dtype=float).reshape(3, 3)
        err = np.max(np.abs(M.T @ M - np.eye(3)))
        if err > 1e-12:
            raise ValueError(f"matrix is not orthogonal (max |M^T M - I| = {err:.3g})")
        object.__setattr__(self, "matrix", tuple(tuple(float(v) + 0.0 for v in row) for row in M))

    @classmethod
    def rotation_z(cls, angle: float) -> "EllipticIsometry":
        c, s = math.cos(angle), math.sin(angle)
        return cls(((c, -s, 0.0), (s, c, 0.0), (0.0, 0.0, 1.0)))

    @property
    def M(self) -> np.ndarray:
        return np.array(self.matrix)

    def apply(self, p: Point) -> Point:
        self._check_point(p)
        v = self.M @ np.array(p.coords)
        return elliptic_canonicalize(v)

    def apply_array(self, arr: np.ndarray) -> np.ndarray:
        return canonicalize_rows(np.asarray(arr, dtype=float) @ self.M.T)

    def compose(self, other: "EllipticIsometry") -> "EllipticIsometry":
        other = self._same(other)
        return EllipticIsometry(tuple(map(tuple, self.M @ other.M)))

    def inverse(self) -> "EllipticIsometry":
        return EllipticIsometry(tuple(map(tuple, self.M.T)))


ISOMETRY_1D_FORMS = ("identity", "negation", "negation_plus_c", "translation_c")


@dataclass(frozen=True)
class Isometry1D:
    form: str = "identity"
    c: float = 0.0

    def __post_init__(self):
        if self.form not in ISOMETRY_1D_FORMS:
            raise ValueError(f"unknown 1-D isometry form {self.form!r}")
        c = float(self.c) + 0.0
        needs_c = self.form in ("negation_plus_c", "translation_c")
        if needs_c and c == 0.0:
            raise ValueError(f"{self.form} requires c != 0")
        if not needs_c and c != 0.0:
            raise ValueError(f"{self.form} takes no offset")
        object.__setattr__(self, "c", c)

    @classmethod
    def from_affine(cls, sign: int, c: float) -> "Isometry1D":
        c = float(c) + 0.0
        if sign > 0:
            return cls("identity") if c == 0.0 else cls("translation_c", c)
        return cls("negation") if c == 0.0 else cls("negation_plus_c", c)

    @property
    def sign(self) -> int:
        return -1 if self.form.startswith("negation") else 1

    def apply(self, x: float) -> float:
        return self.sign * x + self.c

    __call__ = apply

    def compose(self, other: "Isometry1D") -> "Isometry1D":
        return Isometry1D.from_affine(self.sign * other.sign, self.sign * other.c + self.c)

    def inverse(self) -> "Isometry1D":
        return Isometry1D.from_affine(self.sign, -self.sign * self.c)


def classify_1d(f: Isometry1D) -> str:
    """Which of the four forms ``x``, ``-x``, ``-x + c`` or ``x + c`` ``f`` has."""
    return f.form


Isometry = EuclideanIsometry | MobiusIsometry | HalfPlaneIsometry | EllipticIsometry

_IDENTITY = {
    Geometry.EUCLIDEAN: EuclideanIsometry,
    Geometry.DISC: MobiusIsometry,
    Geometry.HALF_PLANE: HalfPlaneIsometry,
    Geometry.ELLIPTIC: EllipticIsometry,
}


def identity(geometry) -> Isometry:
    return _IDENTITY[Geometry.parse(geometry)]()


def apply(f, p):
    return f.apply(p)


def compose(f, g):
    """``f o g``."""
    return f.compose(g)


def inverse(f):
    return f.inverse()


def acts_as_identity(f, points, tol=1e-9) -> bool:
    return all(dist(f.apply(p), p) <= tol for p in points)


def rotation_angle(f) -> float | None:
    """Angle of ``f`` if it is a direct rotation about the model origin.

    The origin is (0, 0) in the plane, 0 in the disc and the north pole of
    the hemisphere.  Returns None for anything else.
    """
    if isinstance(f, EuclideanIsometry):
        if f.reflect or max(abs(v) for v in f.translation) > 1e-12:
            return None
        return f.angle
    if isinstance(f, MobiusIsometry):
        if f.conjugate or abs(f.b) > 1e-12:
            return None
        return _wrap(2 * cmath.phase(f.a))
    if isinstance(f, EllipticIsometry):
        M = f.M
        if M[2, 2] < 0:
            M = -M
        off = max(abs(M[0, 2]), abs(M[1, 2]), abs(M[2, 0]), abs(M[2, 1]))
        if off > 1e-12 or abs(M[2, 2] - 1) > 1e-12 or np.linalg.det(M[:2, :2]) < 0:
            return None
        return _wrap(math.atan2(M[1, 0], M[0, 0]))
    return None


@dataclass(frozen=True)
class Similarity:
    """Coordinate action ``v -> scale * L v + t`` with ``L`` orthogonal."""

    scale: float
    linear: np.ndarray
    translation: np.ndarray

    @property
    def reflect(self) -> bool:
        return bool(np.linalg.det(self.linear) < 0)

    def point(self, v) -> tuple:
        return tuple(float(x) + 0.0 for x in self.scale * (self.linear @ np.asarray(v, dtype=float)) + self.translation)

    def vector(self, v) -> tuple:
        return tuple(float(x) + 0.0 for x in self.linear @ np.asarray(v, dtype=float))


def as_similarity(f) -> Similarity:
    """Coordinate-level similarity realising ``f``, when one exists.

    Euclidean isometries always qualify; half-plane maps only when they are
    affine (``z -> k z + t`` possibly composed with ``z -> -conj(z)``); disc
    maps only when they fix the origin.
    """
    if isinstance(f, EuclideanIsometry):
        return Similarity(1.0, f.linear, np.array(f.translation))
    if isinstance(f, HalfPlaneIsometry) and f.is_affine:
        (a, b), (_, d) = f.matrix
        L = np.array([[-1.0, 0.0], [0.0, 1.0]]) if f.reflect else np.eye(2)
        return Similarity(a / d, L, np.array([b / d, 0.0]))
    if isinstance(f, MobiusIsometry) and abs(f.b) <= 1e-12:
        L = _rot(2 * cmath.phase(f.a))
        if f.conjugate:
            L = L @ _MIRROR
        return Similarity(1.0, L, np.zeros(2))
    raise UnsupportedImageError(f"{f!r} has no closed-form action on symbolic primitives")


# witness construction from anchor pairs


def _check_pairs(p1, p2, q1, q2, tol):
    g = require_same(p1, p2)
    require_same(p1, q1)
    require_same(q1, q2)
    dp, dq = dist(p1, p2), dist(q1, q2)
    if dp <= 1e-12 or dq <= 1e-12:
        raise DegenerateInputError("anchor points coincide")
    if abs(dp - dq) > tol:
        raise NoIsometryError(f"anchor distances differ: {dp!r} vs {dq!r}")
    return g


def euclid_from_pairs(p1, p2, q1, q2, reflect=False, tol=DEFAULT_TOL) -> EuclideanIsometry:
    """The isometry of the given chirality with ``p1 -> q1`` and ``p2 -> q2``."""
    if _check_pairs(p1, p2, q1, q2, check_tol(tol)) is not Geometry.EUCLIDEAN:
        raise ModelMismatchError("euclid_from_pairs needs Euclidean points")
    P1, P2 = np.array(p1.coords), np.array(p2.coords)
    Q1, Q2 = np.array(q1.coords), np.array(q2.coords)
    vp = P2 - P1
    if reflect:
        vp = _MIRROR @ vp
    vq = Q2 - Q1
    angle = math.atan2(vq[1], vq[0]) - math.atan2(vp[1], vp[0])
    f = EuclideanIsometry(angle, reflect)
    return EuclideanIsometry(angle, reflect, tuple(Q1 - f.linear @ P1))


def _disc_from_pairs(w1, w2, v1, v2, reflect):
    g1 = MobiusIsometry.moving_to_origin(w1)
    g2 = MobiusIsometry.moving_to_origin(v1)
    pw = g1.apply_complex(w2)
    pv = g2.apply_complex(v2)
    if reflect:
        rot = MobiusIsometry.rotation(cmath.phase(pv) + cmath.phase(pw))
        mid = rot.compose(MobiusIsometry(1.0, 0.0, True))
    else:
        mid = MobiusIsometry.rotation(cmath.phase(pv) - cmath.phase(pw))
    return g2.inverse().compose(mid).compose(g1)


def hyperbolic_from_pairs(p1, p2, q1, q2, reflect=False, tol=DEFAULT_TOL):
    """Hyperbolic isometry with ``p1 -> q1`` and ``p2 -> q2``.

    Disc points give a :class:`MobiusIsometry`; half-plane points are solved
    in the disc and the result is transported back.
    """
    g = _check_pairs(p1, p2, q1, q2, check_tol(tol))
    if g is Geometry.DISC:
        return _disc_from_pairs(p1.z, p2.z, q1.z, q2.z, reflect)
    if g is Geometry.HALF_PLANE:
        pts = [half_plane_to_disc(p).z for p in (p1, p2, q1, q2)]
        return _disc_from_pairs(*pts, reflect).to_half_plane()
    raise ModelMismatchError(f"hyperbolic_from_pairs needs hyperbolic points, got {g.value}")


def _frame(u, v, flip):
    e1 = u
    e2 = v - (u @ v) * u
    e2 = e2 / np.linalg.norm(e2)
    e3 = np.cross(e1, e2)
    return np.column_stack([e1, e2, -e3 if flip else e3])


def elliptic_from_frames(p1, p2, q1, q2, reflect=False, tol=DEFAULT_TOL) -> list:
    """Orthogonal maps sending the lines ``p1, p2`` to ``q1, q2``.

    Each lifted target representative may be negated, so up to four
    candidates come back; the caller tests each one.
    """
    if _check_pairs(p1, p2, q1, q2, check_tol(tol)) is not Geometry.ELLIPTIC:
        raise ModelMismatchError("elliptic_from_frames needs elliptic points")
    P1, P2 = np.array(p1.coords), np.array(p2.coords)
    Q1, Q2 = np.array(q1.coords), np.array(q2.coords)
    dp = P1 @ P2
    Fp = _frame(P1, P2, False)
    out = []
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            u, v = s1 * Q1, s2 * Q2
            dq = u @ v
            if dp * dq < 0 and min(abs(dp), abs(dq)) > 1e-9:
                continue
            M = _frame(u, v, reflect) @ Fp.T
            out.append(EllipticIsometry(tuple(map(tuple, M))))
    if not out:
        raise NoIsometryError("no sign choice aligns the anchor frames")
    return out
