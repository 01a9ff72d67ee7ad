"""Decision procedures for comparing finite figures.

``A <= B`` means some isometry maps A into B.  For finite figures this is
decidable: any embedding sends the farthest pair of A onto some pair of B at
the same distance, so trying every such pair (and both chiralities) is
exhaustive.  Every positive verdict carries its witness, which is re-checked
by an independent containment pass before being returned.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import DegenerateInputError, NoIsometryError, SizeCapError
from .figures import FiniteFigure
from .geometry import DEFAULT_TOL, Geometry, Point, check_tol, pairwise_dist, require_same
from .isometry import (
    EllipticIsometry,
    EuclideanIsometry,
    MobiusIsometry,
    elliptic_from_frames,
    euclid_from_pairs,
    hyperbolic_from_pairs,
    identity,
)

DEFAULT_CAP = 2000

DISTANCE_MULTISET = "distance-multiset"
EXHAUSTION = "exhaustion"
INVARIANT_MISMATCH = "invariant-mismatch"


@dataclass(frozen=True)
class ComparisonVerdict:
    """Outcome of ``A <= B`` (or ``A ~ B`` for :func:`equal_finite`)."""

    holds: bool
    witness: object = None
    certificate: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class LambdaVerdict:
    relation: str  # equal | strictly_less | strictly_greater | incomparable
    witness: object = None
    detail: str = ""


@dataclass(frozen=True)
class StronglyGoodReport:
    holds: bool
    explanation: str
    self_maps_checked: int


def _search_coords(geometry, arr):
    """Coordinates in which Euclidean distance never exceeds model distance."""
    if geometry is Geometry.HALF_PLANE:
        z = arr[:, 0] + 1j * arr[:, 1]
        w = (z - 1j) / (z + 1j)
        return np.column_stack([w.real, w.imag])
    return arr


class _Target:
    """Distance-indexed lookup into a finite figure."""

    def __init__(self, B: FiniteFigure, tol: float):
        self.B = B
        self.tol = tol
        self.search = _search_coords(B.geometry, B.array)
        self.tree = cKDTree(self.search)

    def match(self, img: np.ndarray):
        """Index of a B point within tol of each image point, or None if any misses."""
        g = self.B.geometry
        q = _search_coords(g, img)
        radius = self.tol * (1 + 1e-9) + 1e-15
        hits = self.tree.query_ball_point(q, radius)
        if g is Geometry.ELLIPTIC:
            flipped = self.tree.query_ball_point(-q, radius)
            hits = [a + b for a, b in zip(hits, flipped)]
        out = []
        for i, cand in enumerate(hits):
            if not cand:
                return None
            d = pairwise_dist(g, img[i:i + 1], self.B.array[cand])[0]
            j = int(np.argmin(d))
            if d[j] > self.tol:
                return None
            out.append(cand[j])
        return out


def _check_cap(cap, *figs):
    for F in figs:
        if len(F) > cap:
            raise SizeCapError(f"figure has {len(F)} points, above the cap of {cap}")


def _transport(p: Point, q: Point):
    """Some isometry with ``p -> q``."""
    g = p.geometry
    if g is Geometry.EUCLIDEAN:
        return EuclideanIsometry.translation_by(q.coords[0] - p.coords[0], q.coords[1] - p.coords[1])
    if g is Geometry.DISC:
        return MobiusIsometry.moving_to_origin(q.z).inverse().compose(MobiusIsometry.moving_to_origin(p.z))
    if g is Geometry.HALF_PLANE:
        w1 = (p.z - 1j) / (p.z + 1j)
        w2 = (q.z - 1j) / (q.z + 1j)
        f = MobiusIsometry.moving_to_origin(w2).inverse().compose(MobiusIsometry.moving_to_origin(w1))
        return f.to_half_plane()
    a, b = np.array(p.coords), np.array(q.coords)
    axis = np.cross(a, b)
    s, c = np.linalg.norm(axis), float(a @ b)
    if s < 1e-15:
        return EllipticIsometry()
    k = axis / s
    K = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    R = np.eye(3) + s * K + (1 - c) * (K @ K)
    return EllipticIsometry(tuple(map(tuple, R)))


def _anchor_pair(A: FiniteFigure):
    D = pairwise_dist(A.geometry, A.array, A.array)
    best = D.max()
    ties = [(i, j) for i, j in zip(*np.nonzero(D >= best - 1e-12)) if i != j]
    i, j = min(ties, key=lambda ij: (A.points[ij[0]].coords, A.points[ij[1]].coords))
    return int(i), int(j), float(D[i, j])


def _candidates(p1, p2, q1, q2, tol):
    g = p1.geometry
    for reflect in (False, True):
        try:
            if g is Geometry.EUCLIDEAN:
                yield euclid_from_pairs(p1, p2, q1, q2, reflect, tol)
            elif g is Geometry.ELLIPTIC:
                yield from elliptic_from_frames(p1, p2, q1, q2, reflect, tol)
            else:
                yield hyperbolic_from_pairs(p1, p2, q1, q2, reflect, tol)
        except (NoIsometryError, DegenerateInputError):
            continue


def _verified(f, A, B, tol, onto) -> bool:
    """Independent containment check with the full distance matrix."""
    img = f.apply_array(A.array)
    D = pairwise_dist(A.geometry, img, B.array)
    if not bool((D.min(axis=1) <= tol).all()):
        return False
    return not onto or bool((D.min(axis=0) <= tol).all())


def _embeddings(A: FiniteFigure, B: FiniteFigure, tol: float, onto: bool = False):
    """Witnesses of ``A <= B`` in deterministic order (all of them, lazily)."""
    if len(A) == 0:
        if not onto or len(B) == 0:
            yield identity(A.geometry)
        return
    if len(B) == 0:
        return
    target = _Target(B, tol)
    if len(A) == 1:
        for q in B.points:
            f = _transport(A.points[0], q)
            if _verified(f, A, B, tol, onto):
                yield f
        return
    i, j, d = _anchor_pair(A)
    p1, p2 = A.points[i], A.points[j]
    DB = pairwise_dist(B.geometry, B.array, B.array)
    us, vs = np.nonzero(np.abs(DB - d) <= 2 * tol)
    for u, v in zip(us, vs):
        if u == v:
            continue
        for f in _candidates(p1, p2, B.points[u], B.points[v], 2 * tol):
            hit = target.match(f.apply_array(A.array))
            if hit is None or (onto and len(set(hit)) != len(B)):
                continue
            if _verified(f, A, B, tol, onto):
                yield f


def _with_identity_first(A, B, tol, onto):
    e = identity(A.geometry)
    if len(A) and len(B) and _verified(e, A, B, tol, onto):
        yield e
    yield from _embeddings(A, B, tol, onto)


def _well_separated(A: FiniteFigure, tol: float) -> bool:
    if len(A) < 2:
        return True
    D = pairwise_dist(A.geometry, A.array, A.array)
    np.fill_diagonal(D, np.inf)
    return bool(D.min() > 2 * tol)


def leq_finite(A: FiniteFigure, B: FiniteFigure, tol: float = DEFAULT_TOL, cap: int = DEFAULT_CAP) -> ComparisonVerdict:
    """Decide ``A <= B``: is there an isometry mapping A into B?"""
    require_same(A, B)
    tol = check_tol(tol)
    _check_cap(cap, A, B)
    if len(A) > len(B) and _well_separated(A, tol):
        return ComparisonVerdict(False, certificate=INVARIANT_MISMATCH,
                                 detail=f"cardinality {len(A)} > {len(B)}")
    if len(A) >= 2:
        _, _, d = _anchor_pair(A)
        DB = pairwise_dist(B.geometry, B.array, B.array)
        if not bool((np.abs(DB - d) <= 2 * tol).any()):
            return ComparisonVerdict(False, certificate=DISTANCE_MULTISET,
                                     detail=f"no pair of B at distance {d:.12g}")
    for f in _with_identity_first(A, B, tol, onto=False):
        return ComparisonVerdict(True, witness=f)
    return ComparisonVerdict(False, certificate=EXHAUSTION, detail="every anchor alignment fails")


def equal_finite(A: FiniteFigure, B: FiniteFigure, tol: float = DEFAULT_TOL, cap: int = DEFAULT_CAP) -> ComparisonVerdict:
    """Decide ``A ~ B``: is there an isometry mapping A exactly onto B?"""
    require_same(A, B)
    tol = check_tol(tol)
    _check_cap(cap, A, B)
    if len(A) != len(B):
        return ComparisonVerdict(False, certificate=INVARIANT_MISMATCH,
                                 detail=f"cardinality {len(A)} != {len(B)}")
    if len(A) >= 2:
        da = np.sort(pairwise_dist(A.geometry, A.array, A.array), axis=None)
        db = np.sort(pairwise_dist(B.geometry, B.array, B.array), axis=None)
        if float(np.abs(da - db).max()) > 2 * tol:
            return ComparisonVerdict(False, certificate=DISTANCE_MULTISET,
                                     detail="sorted pairwise distances differ")
    for f in _with_identity_first(A, B, tol, onto=True):
        return ComparisonVerdict(True, witness=f)
    return ComparisonVerdict(False, certificate=EXHAUSTION, detail="every anchor alignment fails")


def lambda_compare(A: FiniteFigure, B: FiniteFigure, tol: float = DEFAULT_TOL, cap: int = DEFAULT_CAP) -> LambdaVerdict:
    """Place A and B in the order ``A lambda B  <=>  A ~ B  or  (A <= B and not B <= A)``."""
    eq = equal_finite(A, B, tol, cap)
    if eq:
        return LambdaVerdict("equal", eq.witness)
    ab, ba = leq_finite(A, B, tol, cap), leq_finite(B, A, tol, cap)
    if ab and not ba:
        return LambdaVerdict("strictly_less", ab.witness)
    if ba and not ab:
        return LambdaVerdict("strictly_greater", ba.witness)
    if ab and ba:
        # impossible for finite figures, which are compact; reported rather than hidden
        return LambdaVerdict("incomparable", detail="mutual embedding without congruence")
    return LambdaVerdict("incomparable", detail="neither embeds in the other")


def strongly_good_finite(A: FiniteFigure, tol: float = DEFAULT_TOL, limit: int = 10_000) -> StronglyGoodReport:
    """Every isometry with f(A) inside A is onto A.

    True for any finite set: an injective self-map of a finite set is a
    bijection.  The claim is also probed by enumerating the self-embeddings
    the search finds and checking each one is onto.
    """
    count = 0
    for f in itertools.islice(_embeddings(A, A, tol), limit):
        if not _verified(f, A, A, tol, onto=True):
            raise AssertionError(f"self-embedding {f!r} is not onto; the cardinality argument failed")
        count += 1
    return StronglyGoodReport(
        True,
        f"finite set of {len(A)} points: an injective self-map is onto; {count} self-embeddings checked",
        count,
    )


def self_embeddings(A: FiniteFigure, tol: float = DEFAULT_TOL, limit: int = 10_000) -> list:
    """All isometries mapping A into itself that the anchor search produces."""
    return list(itertools.islice(_embeddings(A, A, tol), limit))


def finite_images_distinct(A: FiniteFigure) -> float:
    """Smallest gap between points of A (used for injectivity spot checks)."""
    if len(A) < 2:
        return math.inf
    D = pairwise_dist(A.geometry, A.array, A.array)
    np.fill_diagonal(D, np.inf)
    return float(D.min())
