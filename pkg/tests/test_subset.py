import math

import numpy as np
import pytest

from figorder import catalog
from figorder.errors import UnsupportedImageError
from figorder.figures import (
    AngleWedge,
    Arc,
    Difference,
    Disc,
    HalfLine,
    HalfPlane,
    Line,
    OrbitFigure,
    Segment,
    SinglePoint,
    complement,
    difference,
    finite,
    sample_points,
    union,
)
from figorder.geometry import Geometry, Point
from figorder.isometry import EuclideanIsometry, HalfPlaneIsometry
from figorder.subset import check_leq_symbolic, check_subset

from strategies import random_isometry

E = Point.euclidean
T = EuclideanIsometry.translation_by


class TestWitnessedContainments:
    def test_half_plane_with_segment_shift(self):
        e = catalog.build_entry("ex1.2")
        assert check_leq_symbolic(e.B, e.A, T(-3, 0)).proved
        assert check_subset(e.A, e.B).proved

    def test_axis_plus_half_line_shift(self):
        e = catalog.build_entry("ex1.6")
        assert check_leq_symbolic(e.A, e.B, T(1, 0)).proved
        res = check_leq_symbolic(e.A, e.B, T(0, 0))
        assert res.refuted and res.witness == pytest.approx((0.0, 1.0))

    def test_half_planes(self):
        res = check_subset(HalfPlane((1, 0), 2), HalfPlane((1, 0), 0))
        assert res.refuted and res.witness == pytest.approx((1.0, 0.0))
        assert check_subset(HalfPlane((1, 0), 0), HalfPlane((2, 0), 1)).proved

    def test_open_closed_offsets(self):
        closed, opened = HalfPlane((1, 0), 0), HalfPlane((1, 0), 0, closed=False)
        assert check_subset(opened, closed).proved
        res = check_subset(closed, opened)
        assert res.refuted and res.witness[0] == 0.0
        assert check_subset(HalfLine((-1, 0), (-1, 0)), opened).proved
        assert check_subset(Segment((-2, 0), (0, 0), closed_end=False), opened).proved
        assert check_subset(Segment((-2, 0), (0, 0)), opened).refuted

    def test_wedge_shift_into_notched_wedge(self):
        e = catalog.build_entry("ex1.3")
        assert check_leq_symbolic(e.A, e.B, T(2, 0)).proved
        assert check_subset(e.B, e.A).proved
        assert check_subset(e.A, e.B).refuted

    def test_union_coverage(self):
        line = Line((0, 0), (1, 0))
        cover = union(HalfLine((0, 0), (1, 0)), HalfLine((0.5, 0), (-1, 0)))
        assert check_subset(line, cover).proved
        gap = union(HalfLine((1, 0), (1, 0)), HalfLine((0, 0), (-1, 0)))
        assert check_subset(line, gap).refuted

    def test_finite_and_points(self):
        assert check_subset(finite("euclidean", [(0, 0), (-1, 3)]), HalfPlane((1, 0), 0)).proved
        assert check_subset(SinglePoint((1, 0)), HalfPlane((1, 0), 0)).refuted

    def test_complement_target(self):
        assert check_subset(Disc((5, 0), 1), complement(Disc((0, 0), 1))).proved
        assert check_subset(Disc((1.5, 0), 1), complement(Disc((0, 0), 1))).refuted

    def test_orbit_index_arithmetic(self):
        A, B = OrbitFigure("euclidean"), OrbitFigure("euclidean", exclude={1})
        Tw = EuclideanIsometry.rotation(2 * A.omega_value)
        assert check_leq_symbolic(A, B, Tw).proved
        assert check_subset(B, A).proved
        res = check_subset(A, B)
        assert res.refuted

    def test_orbit_unsupported(self):
        with pytest.raises(UnsupportedImageError):
            check_leq_symbolic(OrbitFigure("euclidean"), OrbitFigure("euclidean"), T(1, 0))

    def test_half_plane_model(self):
        e = catalog.build_entry("ex2.2")
        gH = HalfPlaneIsometry.translation_by(-3)
        assert check_subset(e.A, e.B.image(gH)).proved
        assert check_leq_symbolic(e.B, e.A, HalfPlaneIsometry()).proved

    def test_unknown_outside_rules(self):
        res = check_subset(Disc((0, 0), 1), union(HalfPlane((1, 0), 0.5), HalfPlane((-1, 0), 0)))
        assert res.status == "unknown"


def _pool():
    return [
        HalfPlane((1, 0), 0),
        HalfPlane((1, 0), 1, closed=False),
        HalfPlane((0, 1), 0),
        HalfLine((0, 0), (1, 0)),
        HalfLine((0, 0), (1, 0), include_origin=False),
        Line((0, 0), (1, 0)),
        Segment((0, 0), (1, 0)),
        Segment((-1, -1), (0, 0), closed_end=False),
        Disc((0, 0), 1),
        Disc((-2, 0), 1, closed=False),
        AngleWedge((0, 0), (1, 0), (0, 1)),
        AngleWedge((-1, 0), (-1, 0), (0, -1), closed=False),
        Arc((0, 0), 1, 0.0, math.pi / 2),
        SinglePoint((0, 0)),
        finite("euclidean", [(0, 0), (-1, -1)]),
        union(HalfPlane((1, 0), 0), Segment((0, 2), (1, 2))),
        difference(AngleWedge((0, 0), (1, 0), (0, 1)), HalfPlane((-1, -1), -1, closed=False)),
    ]


class TestSoundness:
    """Every verdict is consistent with independent membership sampling."""

    def test_random_pairs(self, rng):
        pool = _pool()
        counts = {"proved": 0, "refuted": 0, "unknown": 0}
        for _ in range(400):
            X = pool[int(rng.integers(len(pool)))]
            Y = pool[int(rng.integers(len(pool)))]
            if rng.uniform() < 0.5:
                X = X.image(random_isometry(Geometry.EUCLIDEAN, rng) if rng.uniform() < 0.3 else
                            T(*rng.integers(-2, 3, 2)))
            res = check_subset(X, Y, max_samples=2000)
            counts[res.status] += 1
            if res.proved:
                for c in sample_points(X, rng, 50):
                    if all(X.contains(E(c[0] + dx, c[1] + dy)) for dx, dy in ((1e-10, 0), (-1e-10, 0), (0, 1e-10), (0, -1e-10))):
                        assert Y.contains(E(*c)) is True, (X, Y, c)
            elif res.refuted:
                assert X.contains(E(*res.witness)) is True
                assert Y.contains(E(*res.witness)) is False
        assert counts["proved"] > 20 and counts["refuted"] > 20

    def test_difference_identities(self):
        e = catalog.build_entry("ex1.5")
        L, M = e.extras["L"], e.extras["M"]
        LM = Difference(L, complement(M))
        assert check_subset(LM, e.A).proved and check_subset(e.A, LM).proved
