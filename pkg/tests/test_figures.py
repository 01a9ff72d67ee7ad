import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from figorder import catalog
from figorder.errors import ModelMismatchError, UnsupportedImageError
from figorder.figures import (
    UNDECIDABLE,
    AngleWedge,
    Arc,
    Complement,
    Difference,
    Disc,
    FiniteFigure,
    HalfLine,
    HalfPlane,
    Line,
    OrbitFigure,
    Segment,
    SinglePoint,
    Union,
    complement,
    corner_angles,
    defining_points,
    difference,
    finite,
    neighbor_counts,
    neighbor_signature,
    realize,
    sample_points,
    structural_props,
    union,
)
from figorder.geometry import Geometry, Point, dist
from figorder.isometry import EllipticIsometry, EuclideanIsometry, MobiusIsometry

import oracles
from strategies import random_isometry, random_point

E = Point.euclidean


def _notched_wedge():
    return catalog.build_entry("ex1.3").B


def _pool():
    """Assorted Euclidean figures for the randomized checks."""
    wedge = AngleWedge((0, 0), (1, 0), (0, 1))
    return [
        HalfPlane((1, 0), 0),
        HalfPlane((1, 1), 2, closed=False),
        HalfLine((0, 0), (1, 0)),
        HalfLine((1, 2), (0, -1), include_origin=False),
        Line((0, 1), (1, 1)),
        Segment((0, 0), (2, 1)),
        Segment((0, 0), (2, 1), closed_start=False),
        Disc((1, 1), 2),
        Disc((0, 0), 1, closed=False),
        wedge,
        AngleWedge((1, 1), (1, 0), (-1, 0), closed=False),
        SinglePoint((3, 4)),
        Arc((0, 0), 1, 0.5, 2.5),
        finite("euclidean", [(0, 0), (1, 2), (3, 1)]),
        union(HalfPlane((1, 0), 0), Segment((0, 2), (1, 2))),
        _notched_wedge(),
        complement(Disc((0, 0), 1)),
        difference(Disc((0, 0), 2), HalfLine((0, 0), (1, 0))),
    ]


def _robust(F, c, h=1e-11):
    """Membership of ``c`` is unchanged by perturbations of size ``h``."""
    here = F.contains(E(*c))
    return all(F.contains(E(c[0] + dx, c[1] + dy)) == here
               for dx, dy in ((h, 0), (-h, 0), (0, h), (0, -h)))


class TestMembership:
    def test_half_plane(self):
        assert HalfPlane((1, 0), 0).contains(E(-1, 7)) is True

    def test_open_half_line_misses_origin(self):
        B = HalfLine((0, 0), (1, 0), include_origin=False)
        assert B.contains(E(0, 0)) is False
        assert B.contains(E(1e-300, 0)) is True

    def test_notched_wedge_membership(self):
        B = _notched_wedge()
        assert B.contains(E(0.45, 0.45)) is False
        assert B.contains(E(1, 0)) is True
        assert B.contains(E(0.5, 0.5)) is True

    def test_strict_inequalities_ignore_tolerance(self):
        H = HalfPlane((1, 0), 0, closed=False)
        assert H.contains(E(0, 0), tol=1.0) is False
        assert HalfPlane((1, 0), 0).contains(E(1e-10, 0)) is True

    def test_model_mismatch(self):
        with pytest.raises(ModelMismatchError):
            HalfPlane((1, 0), 0).contains(Point.disc(0))
        with pytest.raises(ModelMismatchError):
            union(HalfPlane((1, 0), 0), OrbitFigure("elliptic"))

    def test_wedge_angle_range(self):
        with pytest.raises(ValueError):
            AngleWedge((0, 0), (0, 1), (1, 0))
        assert AngleWedge((0, 0), (1, 0), (-1, 0)).contains(E(3, 1e-3))

    def test_finite_dedupes(self):
        F = finite("euclidean", [(0, 0), (0, 1e-13), (1, 0)])
        assert len(F) == 2

    def test_elliptic_finite_identifies_antipodes(self):
        F = finite("elliptic", [(1, 0, 0), (-1, 0, 0), (0, 0, 1)])
        assert len(F) == 2


class TestUndecidable:
    def test_untruncated_orbit(self):
        A = OrbitFigure("euclidean")
        assert A.contains(E(1, 0)) is UNDECIDABLE
        with pytest.raises(TypeError):
            bool(A.contains(E(1, 0)))

    def test_kleene_union_and_difference(self):
        A = OrbitFigure("euclidean")
        H = HalfPlane((1, 0), 5)
        assert union(A, H).contains(E(1, 0)) is True
        assert union(A, HalfPlane((1, 0), -5)).contains(E(1, 0)) is UNDECIDABLE
        assert difference(H, A).contains(E(1, 0)) is UNDECIDABLE
        assert difference(HalfPlane((1, 0), -5), A).contains(E(1, 0)) is False

    def test_truncated_orbit_decides(self):
        A = OrbitFigure("euclidean", truncation=5)
        assert A.contains(E(1, 0)) is True
        assert A.contains(A.point(7)) is False


class TestImages:
    def test_half_plane_shift(self):
        img = HalfPlane((1, 0), 2).image(EuclideanIsometry.translation_by(-3, 0))
        assert img == HalfPlane((1, 0), -1)

    def test_orbit_shift(self):
        A = OrbitFigure("euclidean")
        T = EuclideanIsometry.rotation(2 * A.omega_value)
        img = A.image(T)
        assert isinstance(img, OrbitFigure) and img.index_from == 2 and not img.exclude

    def test_orbit_shift_disc_and_elliptic(self):
        for g, T in ((Geometry.DISC, MobiusIsometry(complex(math.cos(math.pi * 2**0.5), math.sin(math.pi * 2**0.5)), 0)),
                     (Geometry.ELLIPTIC, EllipticIsometry.rotation_z(2 * math.pi * 2**0.5))):
            assert OrbitFigure(g).image(T).index_from == 2

    def test_finite_rotation(self):
        F = finite("euclidean", [(0, 0), (1, 0)]).image(EuclideanIsometry.rotation(math.pi / 2))
        assert sorted(np.round(F.array, 12).tolist()) == [[0.0, 0.0], [0.0, 1.0]]

    def test_unsupported_orbit_image(self):
        with pytest.raises(UnsupportedImageError):
            OrbitFigure("euclidean").image(EuclideanIsometry.translation_by(1, 0))
        assert len(OrbitFigure("euclidean", truncation=5).image(EuclideanIsometry.translation_by(1, 0))) == 5

    def test_membership_commutes(self, rng):
        pool = _pool()
        checked = skipped = 0
        while checked < 1000:
            F = pool[int(rng.integers(len(pool)))]
            f = random_isometry(Geometry.EUCLIDEAN, rng)
            img = F.image(f)
            members = sample_points(F, rng, 4)
            cands = [tuple(rng.uniform(-4, 4, 2)) for _ in range(3)] + members[:3]
            for c in cands:
                p = E(*c)
                checked += 1
                if not _robust(F, c):
                    skipped += 1
                    continue
                assert img.contains(f.apply(p)) == F.contains(p), (F, f, c)
        # strict boundaries are exact, so points within rounding distance of one may flip
        assert skipped <= checked // 10

    def test_half_plane_model_image(self):
        entry = catalog.build_entry("ex2.2")
        gH = entry.extras["g_H"]
        img = entry.B.image(gH)
        for x in (-2.5, -2.0, -1.5, 0.0):
            p = Point.half_plane(complex(x, 0.7))
            assert img.contains(p) == entry.B.contains(gH.inverse().apply(p))


class TestBooleanAlgebra:
    @pytest.mark.parametrize("F", _pool(), ids=lambda F: type(F).__name__)
    def test_identities(self, F, rng):
        G = Disc((0.5, 0), 1.5)
        pts = [E(*rng.uniform(-3, 3, 2)) for _ in range(100)] + [E(*c) for c in defining_points(F)]
        for p in pts:
            assert complement(complement(F)).contains(p) == F.contains(p)
            assert union(F, difference(G, F)).contains(p) == union(F, G).contains(p)
            assert (F | G).contains(p) == (F.contains(p) or G.contains(p))
            assert (F - G).contains(p) == (F.contains(p) and not G.contains(p))
            assert (~F).contains(p) == (not F.contains(p))


class TestOrbits:
    def test_first_points(self):
        F = realize(OrbitFigure("euclidean"), 2)
        assert F.points[0].coords == (1.0, 0.0)
        assert F.points[1].coords == pytest.approx((oracles.COS_OMEGA, oracles.SIN_OMEGA), abs=1e-15)

    def test_chord(self):
        A = OrbitFigure("euclidean")
        assert dist(A.point(0), A.point(1)) == pytest.approx(oracles.CHORD_R, abs=1e-14)

    def test_elliptic_steps(self):
        A = OrbitFigure("elliptic")
        dots = [abs(float(np.dot(A.coords(k), A.coords(k + 1)))) for k in range(50)]
        assert max(dots) - min(dots) <= 1e-12
        assert dots[0] == pytest.approx(oracles.ELLIPTIC_DOT, abs=1e-12)
        assert dist(A.point(3), A.point(4)) == pytest.approx(oracles.ELLIPTIC_STEP, abs=1e-12)
        assert A.coords(0) == pytest.approx((0.5, 0.0, math.sqrt(3) / 2))

    def test_disc_steps(self):
        A = OrbitFigure("hyperbolic_disc")
        for k in range(50):
            assert dist(A.point(k), A.point(k + 1)) == pytest.approx(oracles.DISC_STEP, abs=1e-12)

    def test_large_index_accuracy(self):
        # 50-digit reduction keeps k * omega mod 2 pi accurate for large k
        A = OrbitFigure("euclidean")
        for k in (10**6, 10**9):
            assert dist(A.point(k), A.point(k + 1)) == pytest.approx(oracles.CHORD_R, abs=1e-12)

    def test_coordinates_correctly_rounded(self):
        assert OrbitFigure("euclidean").coords(1) == (oracles.COS_OMEGA, oracles.SIN_OMEGA)

    @pytest.mark.parametrize("n", [2, 12, 80, 400])
    def test_realized_points_distinct(self, n):
        F = realize(OrbitFigure("euclidean"), n)
        assert len(F) == n

    def test_numeric_omega_rational_collides(self):
        with pytest.raises(AssertionError):
            realize(OrbitFigure("euclidean", omega=math.pi / 2), 8)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 4), st.sets(st.integers(0, 9), max_size=4),
           st.integers(0, 4), st.sets(st.integers(0, 9), max_size=4))
    def test_index_subset_matches_realization(self, k1, ex1, k2, ex2):
        O1 = OrbitFigure("euclidean", index_from=k1, exclude=ex1)
        O2 = OrbitFigure("euclidean", index_from=k2, exclude=ex2)
        if not O1.indices(20):
            return
        R1, R2 = realize(O1, 20), realize(O2, 20) if O2.indices(20) else finite("euclidean", [])
        realized = all(R2.contains(p) for p in R1.points)
        assert (O1.index_subset(O2) is None) == realized

    def test_shift_of_excluded_set(self):
        B = OrbitFigure("euclidean", exclude={1})
        T = EuclideanIsometry.rotation(2 * B.omega_value)
        img = B.image(T)
        assert img.index_from == 2 and img.exclude == frozenset({3})


class TestNeighborSignature:
    r = oracles.CHORD_R

    def test_full_orbit(self):
        counts = neighbor_counts(realize(OrbitFigure("euclidean"), 12), self.r, 1e-6)
        assert counts == [1] + [2] * 10 + [1]

    def test_excluded_orbit(self):
        F = realize(OrbitFigure("euclidean", exclude={1}), 12)
        counts = neighbor_counts(F, self.r, 1e-6)
        assert counts[0] == 0 and len(F) == 11

    def test_two_points(self):
        F = finite("euclidean", [(0, 0), (self.r, 0)])
        assert neighbor_signature(F, self.r) == (1, 1)

    def test_invalid_radius(self):
        with pytest.raises(ValueError):
            neighbor_signature(finite("euclidean", [(0, 0)]), 0)

    @pytest.mark.parametrize("g", [Geometry.EUCLIDEAN, Geometry.DISC, Geometry.HALF_PLANE, Geometry.ELLIPTIC],
                             ids=lambda g: g.value)
    def test_invariance(self, g, rng):
        for _ in range(30):
            pts = [random_point(g, rng) for _ in range(8)]
            F = FiniteFigure(g, tuple(pts))
            r = dist(pts[0], pts[1])
            f = random_isometry(g, rng)
            assert neighbor_signature(F.image(f), r, 1e-7) == neighbor_signature(F, r, 1e-7)


class TestStructuralProps:
    def test_half_lines(self):
        assert structural_props(HalfLine((0, 0), (1, 0))).is_closed is True
        assert structural_props(HalfLine((0, 0), (1, 0), include_origin=False)).is_closed is False

    def test_regular_closedness_of_plane_with_segment(self):
        e = catalog.build_entry("ex1.2")
        assert structural_props(e.A).is_regular_closed is False
        assert structural_props(e.B).is_regular_closed is True

    def test_convexity_of_notched_wedge(self):
        e = catalog.build_entry("ex1.3")
        assert structural_props(e.A).is_convex is True
        pb = structural_props(e.B)
        assert pb.is_convex is False
        p, q = pb.convexity_witness
        m = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
        assert e.B.contains(E(*p)) and e.B.contains(E(*q)) and not e.B.contains(E(*m))

    def test_convexity_stored_witness(self):
        B = _notched_wedge()
        assert B.contains(E(0.9, 0)) and B.contains(E(0, 0.9)) and not B.contains(E(0.45, 0.45))

    def test_boundedness(self):
        assert structural_props(Disc((0, 0), 1)).is_bounded is True
        assert structural_props(HalfPlane((1, 0), 0)).is_bounded is False
        assert structural_props(finite("euclidean", [(0, 0), (5, 5)])).is_bounded is True

    def test_open_disc(self):
        p = structural_props(Disc((0, 0), 1, closed=False))
        assert p.is_open is True and p.is_closed is False

    def test_corner_angles(self):
        tri = difference(AngleWedge((0, 0), (1, 0), (0, 1)), HalfPlane((-1, -1), -1, closed=False))
        assert corner_angles(tri) == pytest.approx(sorted([math.pi / 4, math.pi / 4, math.pi / 2]))

    @pytest.mark.parametrize("F", _pool() + [catalog.build_entry(i).A for i in ("ex1.1", "ex1.5", "ex1.6")],
                             ids=lambda F: type(F).__name__)
    def test_sampling_cannot_refute(self, F):
        """Definite answers survive a 10k-point refutation harness."""
        rng = np.random.default_rng(99)
        props = structural_props(F)
        members = sample_points(F, rng, 400)
        if props.is_convex is True and len(members) > 1:
            idx = rng.integers(len(members), size=(10_000, 2))
            for i, j in idx:
                p, q = members[i], members[j]
                assert F.contains(E((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)) is True, (p, q)
        if props.is_bounded is True:
            assert max(math.hypot(*c) for c in members) < 1e3
        # limit points: members approaching a defining point force it into a closed figure,
        # and a member of an open figure keeps a full neighbourhood (checked only where
        # rounding cannot move the point across a strict boundary)
        dirs = [(math.cos(t), math.sin(t)) for t in np.linspace(0, 2 * math.pi, 16, endpoint=False)]
        for c in defining_points(F):
            approached = any(
                all(F.contains(E(c[0] + s * d[0], c[1] + s * d[1])) is True for s in (1e-4, 1e-6, 1e-8))
                for d in dirs)
            if props.is_closed is True and approached:
                assert F.contains(E(*c)) is True, c
            if props.is_open is True and F.contains(E(*c)) is True and _robust(F, c, 1e-8):
                assert all(F.contains(E(c[0] + 1e-9 * d[0], c[1] + 1e-9 * d[1])) is True for d in dirs), c
