"""Constructive upper bounds: fits from colourings, orthogonal
representations, unit-distance and touching-spheres matrices, and bilinear
factorisations of low-degree symmetric polynomials.

Float constructions (simplices) are checked with :func:`real_rank`; the
same matrix builders accept rational coordinates with ``domain=QQ`` so rank
claims can also be checked exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Sequence

from .algebra import GF, RR, Domain, Matrix
from .errors import InputError, ShapeError
from .graph import Coloring, Graph, complement
from .poly import MultiPoly


def _check_cover(G: Graph, coloring: Coloring) -> None:
    if coloring.n != G.n:
        raise InputError(f"colouring has {coloring.n} vertices, graph has {G.n}")
    bad = coloring.violation(complement(G))
    if bad is not None:
        raise InputError(f"improper colouring of the complement: non-edge {bad} inside one class")


def fit_from_coloring(G: Graph, coloring: Coloring, domain: Domain = GF(2)) -> Matrix:
    """0/1 matrix with ``M_ij = 1`` iff i and j share a class; rank = number of classes."""
    _check_cover(G, coloring)
    c = coloring.class_of
    return Matrix(domain, [[int(c[i] == c[j]) for j in range(G.n)] for i in range(G.n)])


def orthogonal_rep_from_cover(G: Graph, coloring: Coloring) -> tuple[list[tuple[float, ...]], Matrix]:
    """Vertex i -> standard basis vector of its class, with the Gram matrix."""
    _check_cover(G, coloring)
    labels = sorted(set(coloring.class_of))
    index = {c: t for t, c in enumerate(labels)}
    dim = len(labels)
    vecs = []
    for c in coloring.class_of:
        v = [0.0] * dim
        v[index[c]] = 1.0
        vecs.append(tuple(v))
    gram = Matrix(RR, [[sum(a * b for a, b in zip(u, v)) for v in vecs] for u in vecs])
    return vecs, gram


@dataclass(frozen=True)
class PointConfig:
    dim: int
    points: tuple[tuple[Any, ...], ...]

    def __post_init__(self):
        for pt in self.points:
            if len(pt) != self.dim:
                raise ShapeError(f"point {pt} is not in R^{self.dim}")
            if any(isinstance(x, float) and not math.isfinite(x) for x in pt):
                raise InputError("non-finite coordinate")

    def to_json(self) -> dict:
        return {"dim": self.dim, "points": [[float(x) for x in p] for p in self.points]}

    @classmethod
    def from_json(cls, obj: dict | str) -> PointConfig:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["dim"]), tuple(tuple(float(x) for x in p) for p in obj["points"]))


@dataclass(frozen=True)
class SphereConfig:
    dim: int
    centers: tuple[tuple[Any, ...], ...]
    radii: tuple[Any, ...]

    def __post_init__(self):
        if len(self.centers) != len(self.radii):
            raise ShapeError("one radius per centre")
        if any(r <= 0 for r in self.radii):
            raise InputError("radii must be positive")
        PointConfig(self.dim, self.centers)

    def to_json(self) -> dict:
        return {"dim": self.dim, "centers": [[float(x) for x in c] for c in self.centers],
                "radii": [float(r) for r in self.radii]}

    @classmethod
    def from_json(cls, obj: dict | str) -> SphereConfig:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["dim"]), tuple(tuple(float(x) for x in c) for c in obj["centers"]),
                   tuple(float(r) for r in obj["radii"]))


def regular_simplex(d: int) -> PointConfig:
    """``d`` points with all pairwise distances 1, in R^max(d-1, 1).

    Each new vertex sits above the centroid of the previous ones at the
    height that puts it at distance 1 from all of them.
    """
    if d < 1:
        raise InputError("simplex needs d >= 1")
    dim = max(d - 1, 1)
    pts = [[0.0] * dim]
    for m in range(1, d):
        centroid = [sum(p[t] for p in pts) / m for t in range(dim)]
        # circumradius of a regular (m-1)-simplex with unit edges
        r2 = (m - 1) / (2 * m)
        centroid[m - 1] = math.sqrt(1 - r2)
        pts.append(centroid)
    return PointConfig(dim, tuple(tuple(p) for p in pts))


def unit_distance_points(G: Graph, coloring: Coloring) -> PointConfig:
    """Place each colour class of a proper colouring of G on one simplex vertex."""
    if coloring.n != G.n:
        raise InputError("colouring size does not match the graph")
    bad = coloring.violation(G)
    if bad is not None:
        raise InputError(f"improper colouring: edge {bad} inside one class")
    labels = sorted(set(coloring.class_of))
    index = {c: t for t, c in enumerate(labels)}
    simplex = regular_simplex(len(labels))
    return PointConfig(simplex.dim, tuple(simplex.points[index[c]] for c in coloring.class_of))


def _sq(v: Sequence) -> Any:
    return sum(x * x for x in v)


def _dotp(u: Sequence, v: Sequence) -> Any:
    return sum(a * b for a, b in zip(u, v))


def _coords(points, domain: Domain):
    return [[domain.coerce(x) for x in p] for p in points]


def unit_distance_matrix(pts: PointConfig, domain: Domain = RR) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """``M_ij = 1 - |u_i - u_j|^2`` and the parts A + B + C = M.

    ``A_ij = 1 - |u_i|^2`` (constant rows), ``B_ij = -|u_j|^2`` (constant
    columns) and ``C_ij = 2 <u_i, u_j>`` (a Gram matrix of rank <= d).
    """
    u = _coords(pts.points, domain)
    n = len(u)
    M = [[1 - _sq([a - b for a, b in zip(u[i], u[j])]) for j in range(n)] for i in range(n)]
    A = [[1 - _sq(u[i]) for _ in range(n)] for i in range(n)]
    B = [[-_sq(u[j]) for j in range(n)] for _ in range(n)]
    C = [[2 * _dotp(u[i], u[j]) for j in range(n)] for i in range(n)]
    return tuple(Matrix(domain, X) for X in (M, A, B, C))


def touching_spheres_parts(cfg: SphereConfig, domain: Domain = RR) -> tuple[Matrix, ...]:
    """``(M, P1, P2, P3, P4)`` with ``M_ij = (r_i + r_j)^2 - |u_i - u_j|^2``.

    The parts are ``r_i^2 - |u_i|^2``, ``r_j^2 - |u_j|^2``, ``2 r_i r_j``
    and ``2 <u_i, u_j>``; the first three have rank <= 1.
    """
    u = _coords(cfg.centers, domain)
    r = [domain.coerce(x) for x in cfg.radii]
    n = len(u)
    M = [[(r[i] + r[j]) ** 2 - _sq([a - b for a, b in zip(u[i], u[j])]) for j in range(n)] for i in range(n)]
    P1 = [[r[i] ** 2 - _sq(u[i]) for _ in range(n)] for i in range(n)]
    P2 = [[r[j] ** 2 - _sq(u[j]) for j in range(n)] for _ in range(n)]
    P3 = [[2 * r[i] * r[j] for j in range(n)] for i in range(n)]
    P4 = [[2 * _dotp(u[i], u[j]) for j in range(n)] for i in range(n)]
    return tuple(Matrix(domain, X) for X in (M, P1, P2, P3, P4))


def touching_spheres_matrix(cfg: SphereConfig, domain: Domain = RR) -> Matrix:
    return touching_spheres_parts(cfg, domain)[0]


@dataclass(frozen=True)
class BilinearFactorization:
    """``P(x, y) = <F(x), H(y)>`` for a symmetric polynomial of degree <= 3.

    ``F`` and ``H`` are polynomials in d variables.  ``g`` is the pure-x part
    of degree >= 2 and ``c`` the constant term.
    """

    d: int
    c: Any
    g: MultiPoly
    F: tuple[MultiPoly, ...]
    H: tuple[MultiPoly, ...]

    @property
    def length(self) -> int:
        return len(self.F)

    @property
    def domain(self) -> Domain:
        return self.g.domain

    def as_polynomial(self) -> MultiPoly:
        """``sum_k F_k(x) H_k(y)`` in the 2d variables ``(x, y)``."""
        total = MultiPoly(self.domain, 2 * self.d)
        for f, h in zip(self.F, self.H):
            total = total + f.embed(2 * self.d, 0) * h.embed(2 * self.d, self.d)
        return total

    def trimmed(self) -> BilinearFactorization:
        """Drop coordinates where F_k or H_k is identically zero."""
        keep = [t for t, (f, h) in enumerate(zip(self.F, self.H)) if not (f.is_zero() or h.is_zero())]
        return BilinearFactorization(self.d, self.c, self.g,
                                     tuple(self.F[t] for t in keep), tuple(self.H[t] for t in keep))

    def to_json(self) -> dict:
        return {"d": self.d, "c": self.domain.to_json(self.c), "g": self.g.to_json(),
                "F": [f.to_json() for f in self.F], "H": [h.to_json() for h in self.H]}


def _swap_halves(P: MultiPoly, d: int) -> MultiPoly:
    return MultiPoly(P.domain, P.num_vars, {e[d:] + e[:d]: c for e, c in P.terms.items()})


def pgraph_factorize(P: MultiPoly, d: int) -> BilinearFactorization:
    """Split a symmetric ``P(x, y)`` of degree <= 3 into ``<F(x), H(y)>``.

    Monomials are bucketed by their x-degree and y-degree: constant -> c;
    x-degree 1 -> ``f_i(y)``; y-degree 1 otherwise -> ``h_j(x)``; pure x of
    degree >= 2 -> ``g(x)`` (its mirror image in y is the same g, by
    symmetry).  Then ``F(x) = (1, g(x), x, h(x))`` and
    ``H(y) = (c + g(y), 1, f(y), y)``; the g slot is omitted when g = 0,
    giving length 2d + 1.
    """
    if P.num_vars != 2 * d:
        raise ShapeError(f"P has {P.num_vars} variables, expected 2d = {2 * d}")
    if P.degree > 3:
        raise InputError(f"degree too high: {P.degree} > 3")
    if _swap_halves(P, d) != P:
        raise InputError("not symmetric: P(x, y) != P(y, x)")
    dom = P.domain
    c = dom.zero
    g_terms: dict = {}
    f_terms: list[dict] = [{} for _ in range(d)]
    h_terms: list[dict] = [{} for _ in range(d)]
    for e, coef in P.terms.items():
        ex, ey = e[:d], e[d:]
        dx, dy = sum(ex), sum(ey)
        if dx == 0 and dy == 0:
            c = coef
        elif dx == 1:
            f_terms[ex.index(1)][ey] = coef
        elif dy == 1:
            h_terms[ey.index(1)][ex] = coef
        elif dy == 0:
            g_terms[ex] = coef
        # remaining case dx == 0, dy >= 2 is the mirror of g, supplied by g(y)
    g = MultiPoly(dom, d, g_terms)
    one = MultiPoly.constant(dom, d, 1)
    xs = MultiPoly.variables(dom, d)
    f = [MultiPoly(dom, d, t) for t in f_terms]
    h = [MultiPoly(dom, d, t) for t in h_terms]
    const = MultiPoly.constant(dom, d, c)
    if g.is_zero():
        F = (one, *xs, *h)
        H = (const, *f, *xs)
    else:
        F = (one, g, *xs, *h)
        H = (const + g, one, *f, *xs)
    fact = BilinearFactorization(d, c, g, tuple(F), tuple(H))
    if fact.as_polynomial() != P:
        # unreachable for symmetric P of degree <= 3; guards the bucketing
        raise AssertionError("bilinear identity failed")
    return fact


def pgraph_matrix(fact: BilinearFactorization, reps: Sequence[Sequence[Any]]) -> Matrix:
    """``M_ij = <F(x_i), H(x_j)>`` (equal to ``P(x_i, x_j)``)."""
    if any(len(x) != fact.d for x in reps):
        raise ShapeError(f"representation vectors must have length {fact.d}")
    dom = fact.domain
    Fv = [[f.evaluate(x) for f in fact.F] for x in reps]
    Hv = [[h.evaluate(x) for h in fact.H] for x in reps]
    rows = []
    for a in Fv:
        row = []
        for b in Hv:
            acc = dom.zero
            for s, t in zip(a, b):
                acc = dom.add(acc, dom.mul(s, t))
            row.append(acc)
        rows.append(row)
    return Matrix(dom, rows)


def simplex_distances(pts: PointConfig) -> list[float]:
    out = []
    for i in range(len(pts.points)):
        for j in range(i + 1, len(pts.points)):
            out.append(math.dist(pts.points[i], pts.points[j]))
    return out

