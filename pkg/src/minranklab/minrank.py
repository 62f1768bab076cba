"""Exact minrank over prime fields, with certificates and sandwich bounds.

The decision search assigns rows vertex by vertex (ascending degree).  Row
``i`` has a 1 on the diagonal (row scaling loses nothing), zeros off the
closed neighbourhood, and free entries on neighbours.  Only the span ``S``
of the rows chosen so far matters for the rest of the search, so a vertex
either takes a row already in ``S`` (one branch) or extends ``S`` by a new
coset ``v + S``.  Failed ``(depth, S)`` states are memoised, and a
lower bound from independent sets prunes spans that cannot stay small.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from . import _kernels
from .algebra import GF, Domain, Matrix, mat_rank
from .errors import InputError, InstanceTooLarge, ShapeError, Undecided
from .graph import (
    Graph,
    chromatic_number,
    clique_cover_exact,
    complement,
    independence_number,
    is_fit,
    maximum_independent_set,
)

DEFAULT_BUDGET = 10**8
MAX_CUTS = 24


def exact_limit(q: int) -> int:
    return 14 if q == 2 else 8


@dataclass(frozen=True)
class MinrankResult:
    """Outcome of :func:`minrank_exact`.

    When ``exact`` is false the search ran out of budget: ``value`` and
    ``witness`` are ``None`` and ``[lower, upper]`` brackets the minrank.
    """

    q: int
    lower: int
    lower_source: str
    upper: int
    upper_source: str
    value: int | None
    witness: Matrix | None
    nodes: int = 0

    @property
    def exact(self) -> bool:
        return self.value is not None

    @property
    def status(self) -> str:
        return "exact" if self.exact else "undecided"


def _search_order(G: Graph) -> list[int]:
    return sorted(range(G.n), key=lambda v: (G.degree(v), v))


def _independent_cuts(G: Graph) -> list[int]:
    """A handful of large independent sets: one maximum, plus greedy maximal ones."""
    cuts = []
    if G.n <= 24:
        cuts.append(maximum_independent_set(G))
    for start in _search_order(G):
        mask = 0
        blocked = 0
        for v in [start] + _search_order(G):
            if not (blocked >> v & 1):
                mask |= 1 << v
                blocked |= G.adj[v] | (1 << v)
        if mask not in cuts and bin(mask).count("1") > 1:
            cuts.append(mask)
        if len(cuts) >= MAX_CUTS:
            break
    return cuts


def _run_search(G: Graph, q: int, k: int, budget: int) -> tuple[int, Matrix | None, int]:
    order = _search_order(G)
    cuts = _independent_cuts(G)
    if q == 2:
        status, rows, nodes = _kernels.gf2_minrank_search(G.n, list(G.adj), order, k, budget, cuts)
        if rows is not None:
            rows = [[r >> j & 1 for j in range(G.n)] for r in rows]
    else:
        status, rows, nodes = _kernels.gfq_minrank_search(G.n, list(G.adj), order, k, budget, q, cuts)
    mat = Matrix(GF(q), rows) if rows is not None else None
    return status, mat, nodes


def minrank_decision(G: Graph, q: int, k: int, budget: int = DEFAULT_BUDGET) -> Matrix | None:
    """A fit of ``G`` over GF(q) with rank at most ``k``, or ``None`` if none exists.

    Raises :class:`Undecided` when ``budget`` search nodes are spent first.
    """
    GF(q)  # validates q
    if not 1 <= k <= G.n:
        raise InputError(f"k={k} outside 1..{G.n}")
    status, mat, nodes = _run_search(G, q, k, budget)
    if status == _kernels.UNDECIDED:
        raise Undecided(f"undecided: budget of {budget} nodes exhausted at k={k}", nodes)
    return mat


def sandwich(G: Graph) -> tuple[int, int]:
    """``(alpha(G), clique cover number)``; alpha <= minrank <= cc over every field."""
    return independence_number(G), clique_cover_exact(G)[0]


def minrank_exact(G: Graph, q: int = 2, budget: int = DEFAULT_BUDGET,
                  limit: int | None = None) -> MinrankResult:
    """Exact minrank by iterative deepening between the sandwich bounds."""
    domain = GF(q)
    limit = exact_limit(q) if limit is None else limit
    if G.n > limit:
        raise InstanceTooLarge(f"instance too large: n={G.n} > minrank limit {limit} for q={q}")
    from .geom import fit_from_coloring

    alpha = independence_number(G)
    chi = chromatic_number(G)[0]
    # minrank(G) * minrank(co-G) >= n and minrank(co-G) <= chi(G)
    product_lb = math.ceil(G.n / chi)
    lower, lower_source = (alpha, "independence") if alpha >= product_lb else (product_lb, "product-inequality")
    cc, cover = clique_cover_exact(G)
    cover_fit = fit_from_coloring(G, cover, domain)
    if lower >= cc:
        return MinrankResult(q, lower, lower_source, cc, "clique-cover", cc, cover_fit)

    spent = 0
    for k in range(lower, cc):
        status, mat, nodes = _run_search(G, q, k, budget - spent)
        spent += nodes
        if status == _kernels.UNDECIDED:
            return MinrankResult(q, k, "search" if k > lower else lower_source,
                                 cc, "clique-cover", None, None, spent)
        if status == _kernels.FOUND:
            return MinrankResult(q, lower, lower_source, k, "search", mat_rank(mat), mat, spent)
    return MinrankResult(q, lower, lower_source, cc, "clique-cover", cc, cover_fit, spent)


def verify_certificate(G: Graph, M: Matrix, claimed: int) -> bool:
    """True iff ``M`` fits ``G`` and has rank at most ``claimed``."""
    if M.shape != (G.n, G.n):
        raise ShapeError(f"matrix shape {M.shape} does not match n={G.n}")
    return is_fit(M, G) and mat_rank(M) <= claimed


def certificate_json(G: Graph, M: Matrix, claimed: int) -> dict:
    return {"graph": G.to_json(), "matrix": M.to_json(), "claimed_rank": claimed, "field": M.domain.name}


def load_certificate(obj: dict | str) -> tuple[Graph, Matrix, int, Domain]:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        G = Graph.from_json(obj["graph"])
        M = Matrix.from_json(obj["matrix"])
        claimed = int(obj["claimed_rank"])
        field = Domain.parse(obj.get("field", M.domain.name))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed certificate: {exc}") from exc
    if field != M.domain:
        raise InputError(f"certificate field {field.name} disagrees with matrix domain {M.domain.name}")
    return G, M, claimed, field


def product_witness_check(G: Graph, q: int = 2, budget: int = DEFAULT_BUDGET) -> tuple[int, int, int]:
    """Solve G and its complement; return ``(mr(G), mr(co-G), rank of the Hadamard product)``."""
    from .algebra import hadamard

    a = minrank_exact(G, q, budget)
    b = minrank_exact(complement(G), q, budget)
    if not (a.exact and b.exact):
        raise Undecided("product check needs both sides decided", a.nodes + b.nodes)
    return a.value, b.value, mat_rank(hadamard(a.witness, b.witness))
