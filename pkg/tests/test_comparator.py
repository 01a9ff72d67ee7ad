import math

import numpy as np
import pytest

from figorder.comparator import (
    DISTANCE_MULTISET,
    EXHAUSTION,
    INVARIANT_MISMATCH,
    equal_finite,
    lambda_compare,
    leq_finite,
    self_embeddings,
    strongly_good_finite,
)
from figorder.errors import ModelMismatchError, SizeCapError
from figorder.figures import FiniteFigure, OrbitFigure, finite, realize
from figorder.geometry import Geometry, dist, pairwise_dist
from figorder.isometry import EuclideanIsometry, rotation_angle

import oracles
from strategies import random_isometry, random_point

ALL = list(Geometry)


def _contained(f, A, B, tol=1e-9):
    D = pairwise_dist(A.geometry, f.apply_array(A.array), B.array)
    return bool((D.min(axis=1) <= tol).all())


def _cloud(g, rng, n):
    return FiniteFigure(g, tuple(random_point(g, rng) for _ in range(n)))


EQUILATERAL = [(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)]


class TestLeqExamples:
    def test_triangle_in_triangle_plus_centroid(self):
        A = finite("euclidean", EQUILATERAL)
        B = finite("euclidean", EQUILATERAL + [(0.5, math.sqrt(3) / 6)])
        v = leq_finite(A, B)
        assert v.holds and v.witness.angle == 0 and not v.witness.reflect
        assert v.witness.translation == (0.0, 0.0)

    def test_distance_obstruction(self):
        A = finite("euclidean", [(0, 0), (2, 0)])
        B = finite("euclidean", [(0, 0), (1, 0), (0, 1), (1, 1)])
        v = leq_finite(A, B)
        assert not v.holds and v.certificate == DISTANCE_MULTISET

    def test_exhaustion(self):
        A = finite("euclidean", [(0, 0), (1, 0), (0, 2)])
        B = finite("euclidean", [(0, 0), (1, 0), (0, 3), (5, 5)])
        v = leq_finite(A, B)
        assert not v.holds and v.certificate in (DISTANCE_MULTISET, EXHAUSTION)

    def test_cardinality(self):
        v = leq_finite(finite("euclidean", [(0, 0), (1, 0), (2, 0)]), finite("euclidean", [(0, 0), (1, 0)]))
        assert not v.holds and v.certificate == INVARIANT_MISMATCH

    def test_empty_and_singleton(self):
        empty, one = finite("euclidean", []), finite("euclidean", [(3, 4)])
        assert leq_finite(empty, one).holds and leq_finite(empty, empty).holds
        assert leq_finite(one, finite("euclidean", [(-1, 2), (7, 7)])).holds
        assert not leq_finite(one, empty).holds

    def test_orbit_truncations(self):
        A = realize(OrbitFigure("euclidean"), 10)
        B = realize(OrbitFigure("euclidean", exclude={1}), 14)
        v = leq_finite(A, B)
        assert v.holds and _contained(v.witness, A, B)
        # image indices form a run of ten, shifted or reversed
        idx = [0] + list(range(2, 14))
        D = pairwise_dist(A.geometry, v.witness.apply_array(A.array), B.array)
        hit = sorted(idx[j] for j in D.argmin(axis=1))
        assert hit == list(range(hit[0], hit[0] + 10)) and hit[0] >= 2
        w = OrbitFigure("euclidean").omega_value
        assert _contained(EuclideanIsometry.rotation(2 * w), A, B)
        theta = rotation_angle(v.witness)
        if theta is not None:
            assert any(abs(math.remainder(j * w - theta, 2 * math.pi)) < 1e-9 for j in (2, 3, 4))

    def test_mismatch(self):
        with pytest.raises(ModelMismatchError):
            leq_finite(finite("euclidean", [(0, 0)]), FiniteFigure(Geometry.DISC, ()))

    def test_size_cap(self):
        big = finite("euclidean", [(k, 0) for k in range(30)])
        with pytest.raises(SizeCapError):
            leq_finite(big, big, cap=20)


@pytest.mark.parametrize("g", ALL, ids=lambda g: g.value)
class TestRecovery:
    def test_embedded_copy(self, g, rng):
        for _ in range(15):
            A = _cloud(g, rng, 6)
            f = random_isometry(g, rng)
            extra = [random_point(g, rng) for _ in range(3)]
            B = FiniteFigure(g, tuple(f.apply(p) for p in A.points) + tuple(extra))
            v = leq_finite(A, B)
            assert v.holds and _contained(v.witness, A, B)

    def test_congruent_clouds(self, g, rng):
        A = _cloud(g, rng, 20)
        B = A.image(random_isometry(g, rng))
        v = equal_finite(A, B)
        assert v.holds and _contained(v.witness, A, B) and _contained(v.witness.inverse(), B, A)
        smaller = FiniteFigure(g, B.points[:-1])
        w = equal_finite(A, smaller)
        assert not w.holds and w.certificate == INVARIANT_MISMATCH

    def test_perturbed_copy_rejected(self, g, rng):
        A = _cloud(g, rng, 5)
        B = A.image(random_isometry(g, rng))
        pts = list(B.points)
        pts[0] = random_point(g, rng)
        assert not leq_finite(A, FiniteFigure(g, tuple(pts))).holds


class TestEqual:
    def test_mirror_scalene(self):
        A = finite("euclidean", [(0, 0), (4, 0), (1, 2)])
        B = finite("euclidean", [(0, 0), (4, 0), (1, -2)])
        v = equal_finite(A, B)
        assert v.holds and v.witness.reflect

    def test_distance_multiset_mismatch(self):
        A = finite("euclidean", [(0, 0), (1, 0), (0, 1)])
        B = finite("euclidean", [(0, 0), (1, 0), (0, 2)])
        assert equal_finite(A, B).certificate == DISTANCE_MULTISET

    def test_homometric_sets_differ(self):
        # same distance multiset, not congruent
        A = finite("euclidean", [(x, 0) for x in (0, 1, 4, 10, 12, 17)])
        B = finite("euclidean", [(x, 0) for x in (0, 1, 8, 11, 13, 17)])
        v = equal_finite(A, B)
        assert not v.holds and v.certificate == EXHAUSTION


class TestLambda:
    def test_strictly_less(self):
        A = finite("euclidean", [(0, 0), (1, 0)])
        B = finite("euclidean", [(0, 0), (1, 0), (5, 5)])
        assert lambda_compare(A, B).relation == "strictly_less"
        assert lambda_compare(B, A).relation == "strictly_greater"

    def test_equal(self):
        A = finite("euclidean", EQUILATERAL)
        assert lambda_compare(A, A.image(random_isometry(Geometry.EUCLIDEAN, np.random.default_rng(3)))).relation == "equal"

    def test_incomparable(self):
        A = finite("euclidean", [(0, 0), (1, 0)])
        B = finite("euclidean", [(0, 0), (0, 5)])
        assert lambda_compare(A, B).relation == "incomparable"


class TestStronglyGood:
    def test_square_symmetries(self):
        A = finite("euclidean", [(0, 0), (1, 0), (1, 1), (0, 1)])
        rep = strongly_good_finite(A)
        assert rep.holds and rep.self_maps_checked == 8
        assert len(self_embeddings(A)) == 8

    def test_singleton(self):
        A = finite("euclidean", [(2, 3)])
        rep = strongly_good_finite(A)
        assert rep.holds
        for f in self_embeddings(A):
            assert dist(f.apply(A.points[0]), A.points[0]) <= 1e-12

    @pytest.mark.parametrize("g", ALL, ids=lambda g: g.value)
    def test_random(self, g, rng):
        assert strongly_good_finite(_cloud(g, rng, 7)).holds


class TestOracleAgreement:
    def test_small_grid_cases(self, rng):
        for _ in range(60):
            A = [tuple(rng.integers(0, 4, 2)) for _ in range(rng.integers(1, 5))]
            B = [tuple(rng.integers(0, 4, 2)) for _ in range(rng.integers(1, 7))]
            FA, FB = finite("euclidean", A), finite("euclidean", B)
            assert leq_finite(FA, FB).holds == oracles.oracle_leq(A, B)
            assert equal_finite(FA, FB).holds == oracles.oracle_equal(A, B)
