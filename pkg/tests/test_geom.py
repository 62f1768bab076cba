import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minranklab.algebra import GF, QQ, RR, Matrix, mat_rank, real_rank
from minranklab.errors import InputError, ShapeError
from minranklab.geom import (
    PointConfig,
    SphereConfig,
    fit_from_coloring,
    orthogonal_rep_from_cover,
    pgraph_factorize,
    pgraph_matrix,
    regular_simplex,
    simplex_distances,
    touching_spheres_matrix,
    touching_spheres_parts,
    unit_distance_matrix,
    unit_distance_points,
)
from minranklab.graph import Coloring, Graph, chromatic_number, clique_cover_exact, complement, is_fit
from minranklab.poly import MultiPoly

from strategies import graphs

C5 = Graph.cycle(5)


def close(A, B, tol=1e-12):
    return all(abs(a - b) <= tol for ra, rb in zip(A.rows, B.rows) for a, b in zip(ra, rb))


def add(*Ms):
    return Matrix(Ms[0].domain, [[sum(vals) for vals in zip(*rows)] for rows in zip(*(M.rows for M in Ms))])


class TestFits:
    def test_examples(self):
        assert fit_from_coloring(Graph.empty(2), Coloring((0, 1))) == Matrix.identity(GF(2), 2)
        J = fit_from_coloring(Graph.complete(3), Coloring((0, 0, 0)))
        assert J == Matrix.ones(GF(2), 3) and mat_rank(J) == 1
        c, cover = clique_cover_exact(C5)
        M = fit_from_coloring(C5, cover)
        assert c == 3 and mat_rank(M) == 3 and is_fit(M, C5)

    def test_improper_rejected(self):
        with pytest.raises(InputError, match=r"\(0, 1\)"):
            fit_from_coloring(Graph.empty(2), Coloring((0, 0)))

    @given(graphs(max_n=8))
    def test_rank_is_color_count(self, G):
        c, cover = clique_cover_exact(G)
        for dom in (GF(2), GF(3), QQ):
            M = fit_from_coloring(G, cover, dom)
            assert is_fit(M, G) and mat_rank(M) == c

    @given(graphs(max_n=8))
    def test_orthogonal_rep(self, G):
        c, cover = clique_cover_exact(G)
        vecs, gram = orthogonal_rep_from_cover(G, cover)
        assert all(len(v) == c and any(v) for v in vecs)
        for i, j in complement(G).sorted_edges():
            assert sum(a * b for a, b in zip(vecs[i], vecs[j])) == 0
        assert real_rank(gram) == c

    def test_orthogonal_examples(self):
        vecs, gram = orthogonal_rep_from_cover(Graph.empty(3), Coloring((0, 1, 2)))
        assert vecs == [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
        _, gram = orthogonal_rep_from_cover(Graph.complete(4), Coloring((0,) * 4))
        assert gram == Matrix.ones(RR, 4)


class TestSimplex:
    def test_examples(self):
        assert regular_simplex(2).points == ((0.0,), (1.0,))
        pts = regular_simplex(3).points
        assert pts[:2] == ((0.0, 0.0), (1.0, 0.0))
        assert pts[2] == pytest.approx((0.5, math.sqrt(3) / 2), abs=1e-15)

    @pytest.mark.parametrize("d", range(1, 16))
    def test_unit_distances(self, d):
        dists = simplex_distances(regular_simplex(d))
        assert len(dists) == d * (d - 1) // 2
        assert all(abs(x - 1) <= 1e-12 for x in dists)

    def test_unit_distance_points(self):
        chi, col = chromatic_number(C5)
        pts = unit_distance_points(C5, col)
        assert chi == 3 and pts.dim == 2
        for i, j in C5.sorted_edges():
            assert math.dist(pts.points[i], pts.points[j]) == pytest.approx(1, abs=1e-9)
        pts = unit_distance_points(Graph.complete(2), Coloring((0, 1)))
        assert math.dist(*pts.points) == pytest.approx(1)
        pts = unit_distance_points(Graph.empty(3), Coloring((0, 0, 0)))
        assert len(set(pts.points)) == 1
        with pytest.raises(InputError):
            unit_distance_points(C5, Coloring((0, 1, 0, 1, 0)))


class TestUnitDistanceMatrix:
    def test_examples(self):
        M = unit_distance_matrix(PointConfig(1, ((0.0,), (1.0,))))[0]
        assert M == Matrix.identity(RR, 2)
        M = unit_distance_matrix(PointConfig(3, ((0.0, 0.0, 0.0),) * 4))[0]
        assert M == Matrix.ones(RR, 4) and real_rank(M) == 1

    def test_random_float(self):
        rng = random.Random(1)
        for _ in range(20):
            d = rng.randint(1, 4)
            pts = PointConfig(d, tuple(tuple(rng.uniform(-2, 2) for _ in range(d)) for _ in range(20)))
            M, A, B, C = unit_distance_matrix(pts)
            assert close(M, add(A, B, C))
            assert real_rank(A) <= 1 and real_rank(B) <= 1 and real_rank(C) <= d
            assert real_rank(M) <= d + 2

    @given(st.integers(1, 4), st.lists(st.tuples(st.integers(-9, 9), st.integers(1, 9)), min_size=4, max_size=40))
    def test_exact_rational(self, d, coords):
        vals = [Fraction(a, b) for a, b in coords]
        n = len(vals) // d
        pts = PointConfig(d, tuple(tuple(vals[i * d:(i + 1) * d]) for i in range(n)))
        M, A, B, C = unit_distance_matrix(pts, QQ)
        assert M == add(A, B, C)
        assert mat_rank(M) <= d + 2


class TestSpheres:
    def test_examples(self):
        M = touching_spheres_matrix(SphereConfig(1, ((0.0,), (1.0,)), (0.5, 0.5)))
        assert M == Matrix.identity(RR, 2)
        M = touching_spheres_matrix(SphereConfig(2, ((1.0, 1.0),) * 3, (1.0,) * 3))
        assert M == Matrix(RR, [[4.0] * 3] * 3) and real_rank(M) == 1
        with pytest.raises(InputError):
            SphereConfig(1, ((0.0,),), (0.0,))
        with pytest.raises(ShapeError):
            SphereConfig(1, ((0.0,),), (1.0, 2.0))

    def test_random_float(self):
        rng = random.Random(2)
        for _ in range(20):
            d = rng.randint(1, 4)
            cfg = SphereConfig(d, tuple(tuple(rng.uniform(-2, 2) for _ in range(d)) for _ in range(15)),
                               tuple(rng.uniform(0.1, 2) for _ in range(15)))
            M, *parts = touching_spheres_parts(cfg)
            assert close(M, add(*parts))
            assert all(M.rows[i][i] == pytest.approx((2 * cfg.radii[i]) ** 2) for i in range(15))
            assert real_rank(M) <= d + 3

    @given(st.integers(1, 3), st.lists(st.tuples(st.integers(-9, 9), st.integers(1, 9)), min_size=6, max_size=30))
    def test_exact_rational(self, d, coords):
        vals = [Fraction(a, b) for a, b in coords]
        n = len(vals) // (d + 1)
        centers = tuple(tuple(vals[i * (d + 1):i * (d + 1) + d]) for i in range(n))
        radii = tuple(abs(vals[i * (d + 1) + d]) + 1 for i in range(n))
        M, *parts = touching_spheres_parts(SphereConfig(d, centers, radii), QQ)
        assert M == add(*parts)
        assert mat_rank(M) <= d + 3

    def test_half_radii_reduce_to_unit_distance(self):
        rng = random.Random(3)
        pts = tuple(tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(2)) for _ in range(6))
        S = touching_spheres_matrix(SphereConfig(2, pts, (Fraction(1, 2),) * 6), QQ)
        U = unit_distance_matrix(PointConfig(2, pts), QQ)[0]
        assert S == U


def _sym_poly(d, rng, dom):
    """Random symmetric polynomial of degree <= 3 in (x, y), built as Q(x, y) + Q(y, x)."""
    n = 2 * d
    terms = {}
    for _ in range(rng.randint(1, 6)):
        e = [0] * n
        for _ in range(rng.randint(0, 3)):
            e[rng.randrange(n)] += 1
        terms[tuple(e)] = rng.randint(1, 4)
    Q = MultiPoly(dom, n, terms)
    swapped = MultiPoly(dom, n, {e[d:] + e[:d]: c for e, c in Q.terms.items()})
    return Q + swapped


class TestPGraph:
    def test_xy(self):
        x, y = MultiPoly.variables(QQ, 2)
        fact = pgraph_factorize(x * y, 1)
        assert fact.c == 0 and fact.g.is_zero()
        assert fact.as_polynomial() == x * y

    def test_unit_distance_polynomial(self):
        d = 3
        v = MultiPoly.variables(QQ, 2 * d)
        P = 1 - sum(((v[i] - v[d + i]) ** 2 for i in range(d)), MultiPoly(QQ, 2 * d))
        fact = pgraph_factorize(P, d)
        assert fact.c == 1
        assert fact.g == -sum((MultiPoly.variable(QQ, d, i) ** 2 for i in range(d)), MultiPoly(QQ, d))
        assert all(h.is_zero() for h in fact.F[2 + d:])
        assert fact.trimmed().length <= d + 2

    def test_gf2_example(self):
        x1, x2, y1, y2 = MultiPoly.variables(GF(2), 4)
        P = (1 + x1 + y1) * (1 + x2 + y2)
        fact = pgraph_factorize(P, 2)
        assert fact.length == 6
        for pt in [(a, b, c, e) for a in (0, 1) for b in (0, 1) for c in (0, 1) for e in (0, 1)]:
            assert fact.as_polynomial()(pt) == P(pt)
        reps = [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert pgraph_matrix(fact, reps) == Matrix.identity(GF(2), 4)

    def test_errors(self):
        x, y = MultiPoly.variables(QQ, 2)
        with pytest.raises(InputError, match="degree too high"):
            pgraph_factorize(x**2 * y**2, 1)
        with pytest.raises(InputError, match="not symmetric"):
            pgraph_factorize(x, 1)
        with pytest.raises(ShapeError):
            pgraph_factorize(x * y, 2)

    @pytest.mark.parametrize("dom", [QQ, GF(2), GF(5)], ids=lambda d: d.name)
    def test_random_identities_and_rank(self, dom):
        rng = random.Random(7)
        for _ in range(60):
            d = rng.randint(1, 3)
            P = _sym_poly(d, rng, dom)
            if P.degree > 3:
                continue
            fact = pgraph_factorize(P, d)
            assert fact.as_polynomial() == P
            assert fact.length <= 2 * d + 2
            if fact.g.is_zero():
                assert fact.length <= 2 * d + 1
            reps = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(rng.randint(1, 12))]
            M = pgraph_matrix(fact, reps)
            assert M == Matrix(dom, [[P(a + b) for b in reps] for a in reps])
            assert mat_rank(M) <= fact.length

    def test_small_matrices(self):
        x, y = MultiPoly.variables(QQ, 2)
        fact = pgraph_factorize(x * y + 1, 1)
        assert pgraph_matrix(fact, [(2,)]) == Matrix(QQ, [[5]])
        assert mat_rank(pgraph_matrix(fact, [(2,)] * 4)) == 1
        fact0 = pgraph_factorize(x * y, 1)
        assert mat_rank(pgraph_matrix(fact0, [(0,)] * 3)) == 0
        with pytest.raises(ShapeError):
            pgraph_matrix(fact, [(1, 2)])
