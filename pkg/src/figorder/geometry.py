"""Points and metrics of the four plane models.

The models are the Euclidean plane, the Poincare disc, the upper half-plane
and the elliptic plane realised as the closed upper unit hemisphere with
antipodal equator points identified.  Points are immutable and always stored
in canonical form, so equal coordinates mean equal points.
"""

from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, ModelMismatchError

DEFAULT_TOL = 1e-9
MEMBERSHIP_SLACK = 1e-12
# beyond this the hyperbolic distance is reported as infinite
_ATANH_LIMIT = 1.0 - 1e-15


class Geometry(str, enum.Enum):
    EUCLIDEAN = "euclidean"
    DISC = "hyperbolic_disc"
    HALF_PLANE = "hyperbolic_half_plane"
    ELLIPTIC = "elliptic"

    @classmethod
    def parse(cls, tag) -> "Geometry":
        if isinstance(tag, Geometry):
            return tag
        try:
            return cls(tag)
        except ValueError:
            raise ValueError(f"unknown geometry {tag!r}") from None

    @property
    def dim(self) -> int:
        return 3 if self is Geometry.ELLIPTIC else 2


def check_tol(tol: float) -> float:
    tol = float(tol)
    if not tol >= 0.0:
        raise ValueError(f"tolerance must be nonnegative, got {tol}")
    return tol


def require_same(a, b) -> Geometry:
    """Return the shared geometry of two tagged objects or raise."""
    ga, gb = a.geometry, b.geometry
    if ga is not gb:
        raise ModelMismatchError(f"cannot combine {ga.value} with {gb.value}")
    return ga


@dataclass(frozen=True)
class Point:
    geometry: Geometry
    coords: tuple

    def __post_init__(self):
        g = self.geometry
        c = tuple(float(v) for v in self.coords)
        object.__setattr__(self, "coords", c)
        if len(c) != g.dim:
            raise ValueError(f"{g.value} points need {g.dim} coordinates, got {len(c)}")
        if not all(math.isfinite(v) for v in c):
            raise ValueError(f"non-finite coordinates {c}")
        if g is Geometry.DISC and c[0] ** 2 + c[1] ** 2 >= 1.0:
            raise ValueError(f"{c} is not inside the open unit disc")
        if g is Geometry.HALF_PLANE and c[1] <= 0.0:
            raise ValueError(f"{c} is not in the upper half-plane")
        if g is Geometry.ELLIPTIC:
            norm = math.sqrt(sum(v * v for v in c))
            if abs(norm - 1.0) > MEMBERSHIP_SLACK or c[2] < 0.0:
                raise ValueError(f"{c} is not a canonical hemisphere point")
            if c[2] == 0.0 and not (c[0] > 0.0 or (c[0] == 0.0 and c[1] > 0.0)):
                raise ValueError(f"{c} is not the canonical equator representative")

    # convenience constructors

    @classmethod
    def euclidean(cls, x, y) -> "Point":
        return cls(Geometry.EUCLIDEAN, (x, y))

    @classmethod
    def disc(cls, z) -> "Point":
        z = complex(z)
        return cls(Geometry.DISC, (z.real, z.imag))

    @classmethod
    def half_plane(cls, z) -> "Point":
        z = complex(z)
        return cls(Geometry.HALF_PLANE, (z.real, z.imag))

    @classmethod
    def elliptic(cls, x, y, z) -> "Point":
        return elliptic_canonicalize((x, y, z))

    @property
    def z(self) -> complex:
        """The point as a complex number (planar models only)."""
        if self.geometry is Geometry.ELLIPTIC:
            raise ModelMismatchError("elliptic points have no complex coordinate")
        return complex(self.coords[0], self.coords[1])

    def as_array(self) -> np.ndarray:
        return np.array(self.coords)

    def __repr__(self):
        body = ", ".join(f"{v:.12g}" for v in self.coords)
        return f"Point.{_SHORT[self.geometry]}({body})"


_SHORT = {
    Geometry.EUCLIDEAN: "euclidean",
    Geometry.DISC: "disc",
    Geometry.HALF_PLANE: "half_plane",
    Geometry.ELLIPTIC: "elliptic",
}


def _atanh2(t: float) -> float:
    if t >= _ATANH_LIMIT:
        return math.inf
    return math.log((1.0 + t) / (1.0 - t))  # == 2 * atanh(t)


def dist(p: Point, q: Point) -> float:
    """Distance in the shared model.

    Both hyperbolic models carry the factor 2, so the half-plane to disc map
    is an isometry.
    """
    g = require_same(p, q)
    if g is Geometry.EUCLIDEAN:
        return math.hypot(p.coords[0] - q.coords[0], p.coords[1] - q.coords[1])
    if g is Geometry.DISC:
        z1, z2 = p.z, q.z
        return _atanh2(abs(z2 - z1) / abs(1 - z1.conjugate() * z2))
    if g is Geometry.HALF_PLANE:
        z1, z2 = p.z, q.z
        return _atanh2(abs(z2 - z1) / abs(z2 - z1.conjugate()))
    a, b = np.array(p.coords), np.array(q.coords)
    # arccos|a.b| written with atan2 so that small distances stay accurate
    return math.atan2(float(np.linalg.norm(np.cross(a, b))), abs(float(a @ b)))


def half_plane_to_disc(p: Point) -> Point:
    """The Cayley map z -> (z - i)/(z + i)."""
    if p.geometry is not Geometry.HALF_PLANE:
        raise ModelMismatchError(f"expected a half-plane point, got {p.geometry.value}")
    z = p.z
    return Point.disc((z - 1j) / (z + 1j))


def disc_to_half_plane(p: Point) -> Point:
    if p.geometry is not Geometry.DISC:
        raise ModelMismatchError(f"expected a disc point, got {p.geometry.value}")
    w = p.z
    return Point.half_plane(1j * (1 + w) / (1 - w))


def _canonical_triple(v) -> tuple:
    x, y, z = (float(t) for t in v)
    norm = math.sqrt(x * x + y * y + z * z)
    if norm < 1e-12:
        raise DegenerateInputError("cannot normalise a zero vector onto the sphere")
    if abs(norm - 1.0) > 4 * sys.float_info.epsilon:  # keep unit input bit-exact
        x, y, z = x / norm, y / norm, z / norm
    if abs(z) <= 1e-15:
        z = 0.0
        if x < 0.0 or (x == 0.0 and y < 0.0):
            x, y = -x, -y
    elif z < 0.0:
        x, y, z = -x, -y, -z
    return (x + 0.0, y + 0.0, z + 0.0)


def elliptic_canonicalize(v) -> Point:
    """Hemisphere representative of the line through ``v``."""
    norm = math.sqrt(sum(float(t) ** 2 for t in v))
    if norm < 1e-12:
        raise DegenerateInputError("cannot normalise a zero vector onto the sphere")
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"{tuple(v)} is not a unit vector (norm {norm})")
    return Point(Geometry.ELLIPTIC, _canonical_triple(v))


def canonicalize_rows(arr: np.ndarray) -> np.ndarray:
    """Vectorised elliptic canonicalisation of an (n, 3) array of unit vectors."""
    norms = np.linalg.norm(arr, axis=1)[:, None]
    out = np.where(np.abs(norms - 1.0) > 4 * sys.float_info.epsilon, arr / norms, arr)
    z = out[:, 2]
    eq = np.abs(z) <= 1e-15
    out[eq, 2] = 0.0
    flip = (z < 0) & ~eq
    flip |= eq & ((out[:, 0] < 0) | ((out[:, 0] == 0) & (out[:, 1] < 0)))
    out[flip] *= -1.0
    return out + 0.0


def pairwise_dist(geometry: Geometry, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Distance matrix between two coordinate arrays of one model."""
    geometry = Geometry.parse(geometry)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if geometry is Geometry.EUCLIDEAN:
        diff = X[:, None, :] - Y[None, :, :]
        return np.hypot(diff[..., 0], diff[..., 1])
    if geometry is Geometry.ELLIPTIC:
        dots = np.abs(X @ Y.T)
        cross = np.linalg.norm(np.cross(X[:, None, :], Y[None, :, :]), axis=-1)
        return np.arctan2(cross, dots)
    z1 = (X[:, 0] + 1j * X[:, 1])[:, None]
    z2 = (Y[:, 0] + 1j * Y[:, 1])[None, :]
    if geometry is Geometry.DISC:
        t = np.abs(z2 - z1) / np.abs(1 - np.conj(z1) * z2)
    else:
        t = np.abs(z2 - z1) / np.abs(z2 - np.conj(z1))
    with np.errstate(divide="ignore"):
        out = np.log((1 + t) / (1 - t))
    out[t >= _ATANH_LIMIT] = np.inf
    return out
