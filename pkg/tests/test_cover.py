import itertools

import pytest

from coarse_lab.action import ThetaAction, theta
from coarse_lab.cover import (
    bfs_ball_pairs,
    cover_at_infinity,
    diagonal_of,
    entourage,
    geodesic_word,
    orbit_pairs,
)
from coarse_lab.generators import cycles_family, sl2_family
from coarse_lab.graphs import Point, distance
from coarse_lab.orientation import EdgeLabelling, LabelledEdge, orient_labelling
from coarse_lab.words import IDENTITY, FreeWord


def brute_cross(X, R):
    pts = X.points()
    return {(p, q) for p, q in itertools.product(pts, repeat=2)
            if p.component != q.component and distance(X, p, q) <= R}


@pytest.fixture(scope="module")
def cycles():
    return ThetaAction(orient_labelling(cycles_family(range(5, 15))))


@pytest.fixture(scope="module")
def sl2():
    return ThetaAction(orient_labelling(sl2_family([3, 5])))


class TestEntourage:
    def test_r0_diagonal(self):
        X = cycles_family([3, 4])
        assert entourage(X, 0).pairs == {(p, p) for p in X.points()}

    def test_cross_pairs_appear(self):
        X = cycles_family([3, 4])
        E = entourage(X, 6)
        assert all((p, q) in E.pairs for p in X.points(0) for q in X.points(1))
        assert not any(p.component != q.component for p, q in entourage(X, 5).pairs)

    def test_r1_c4(self):
        X = cycles_family([4])
        E = entourage(X, 1)
        assert len(E) == 4 + 8

    def test_symmetric(self):
        E = entourage(sl2_family([3]), 2)
        assert all((q, p) in E.pairs for p, q in E.pairs)


class TestDiagonal:
    def test_identity(self, cycles):
        assert diagonal_of(cycles, IDENTITY) == {(p, p) for p in cycles.space.points()}

    def test_rotation(self, cycles):
        assert diagonal_of(cycles, FreeWord.gen(1)) == set(theta(cycles, FreeWord.gen(1)).pairs)

    def test_empty(self):
        X = cycles_family([5])
        act = ThetaAction(EdgeLabelling(X, 2, tuple(LabelledEdge(0, v, (v + 1) % 5, 1 if v < 4 else 2) for v in range(5))))
        assert diagonal_of(act, FreeWord.gen(1, 5)) == set()


class TestCover:
    def test_cycles(self, cycles):
        rep = cover_at_infinity(cycles, 3, 1)
        assert rep.verdict == "PASS"
        assert set(rep.words_used) <= {FreeWord.gen(1, m) for m in range(-3, 4) if m}
        assert rep.covered + len(rep.exceptional_pairs) + rep.diagonal == len(entourage(cycles.space, 3))

    def test_sl2(self, sl2):
        rep = cover_at_infinity(sl2, 2, 1)
        assert rep.verdict == "PASS" and all(len(w) <= 2 for w in rep.words_used)
        assert rep.exceptional_pairs == brute_cross(sl2.space, 2)

    def test_cross_pairs_in_F(self):
        act = ThetaAction(orient_labelling(cycles_family([3, 4, 5])))
        # spacing (2, 4, 6): C_3-C_4 pairs at 6, C_3-C_5 at 8
        rep = cover_at_infinity(act, 8, 1)
        assert rep.verdict == "PASS"
        assert rep.exceptional_pairs == brute_cross(act.space, 8)
        assert len(rep.exceptional_pairs) == 2 * (3 * 4 + 3 * 5)

    def test_replay(self, sl2):
        X = sl2.space
        for c in range(len(X)):
            for x, y in [(0, 5), (3, 17), (2, 1)]:
                if y < X.sizes[c] and X.components[c].distance_matrix[x, y] <= 3:
                    w = geodesic_word(sl2, c, x, y)
                    assert theta(sl2, w)(Point(c, x)) == Point(c, y)
                    assert len(w) == X.components[c].distance_matrix[x, y]

    def test_uncovered_below_i0_goes_to_F(self):
        # component 0 has one unlabelled edge; with i0 = 2 that debris is allowed
        X = cycles_family([5, 6, 7])
        edges = [LabelledEdge(c, v, (v + 1) % n, 1) for c, n in enumerate(X.sizes) for v in range(n) if (c, v) != (0, 4)]
        act = ThetaAction(EdgeLabelling(X, 1, tuple(edges)))
        assert cover_at_infinity(act, 2, 2).verdict == "PASS"
        rep = cover_at_infinity(act, 2, 1)
        assert rep.verdict == "FAIL" and rep.witnesses


class TestOrbit:
    def test_l0(self, sl2):
        assert orbit_pairs(sl2, 1, 0) == {(p, p) for p in sl2.space.points(1)}

    def test_l1(self, sl2):
        X = sl2.space
        expected = {(p, p) for p in X.points(0)}
        for e in sl2.labelling.edges:
            if e.c == 0:
                expected |= {(Point(0, e.tail), Point(0, e.head)), (Point(0, e.head), Point(0, e.tail))}
        assert orbit_pairs(sl2, 0, 1) == expected

    @pytest.mark.parametrize("L", [2, 3, 4])
    def test_bfs_oracle(self, sl2, L):
        assert orbit_pairs(sl2, 0, L) == bfs_ball_pairs(sl2.space, 0, L)

    def test_diameter_reaches_all(self, sl2):
        X = sl2.space
        assert len(orbit_pairs(sl2, 0, 4)) == X.sizes[0] ** 2

    def test_monotone(self, cycles):
        assert orbit_pairs(cycles, 3, 2) <= orbit_pairs(cycles, 3, 3)
