"""Zero-patterns: polynomial families, (n, k, s)-matrices and their census.

An (n, k, s)-matrix is an n x n matrix of rank k with s nonzero entries
that has a row basis and a column basis whose 2k vectors carry at most
``4ks/n`` nonzeros in total.  Since bases of a matrix form a matroid, the
cheapest row basis (and column basis) is found greedily by sorting rows
by nonzero count, so witness search is polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

from . import _kernels
from .algebra import GF, Matrix, ZeroPattern, _Echelon, _require_exact, mat_rank, principal_submatrix
from .errors import InputError, InstanceTooLarge, LemmaCounterexample, ShapeError
from .poly import MultiPoly, poly_eval  # noqa: F401  (re-exported)

ENUM_LIMIT = 1 << 20
NKS_LIMIT = 10
LEMMA22_LIMIT = 8
CENSUS_LIMIT = 1 << 26


def zero_patterns_of_family(polys: Sequence[MultiPoly], q: int, limit: int = ENUM_LIMIT) -> set[ZeroPattern]:
    """All zero-patterns of ``polys`` over GF(q), by evaluating at every point."""
    field = GF(q)
    if not polys:
        return {ZeroPattern(())}
    N = polys[0].num_vars
    if any(p.num_vars != N for p in polys):
        raise InputError("all polynomials must share the same variables")
    if q**N > limit:
        raise InstanceTooLarge(f"q^N = {q}^{N} exceeds enumeration limit {limit}")
    polys = [p.over(field) for p in polys]
    return {ZeroPattern(tuple(p.evaluate(x) != 0 for p in polys))
            for x in product(range(q), repeat=N)}


def rbg_bound(m: int, d: int, N: int) -> int:
    """Upper bound ``C(md + N, N)`` on the number of zero-patterns of m polynomials."""
    if min(m, d, N) < 0:
        raise InputError("m, d, N must be nonnegative")
    return math.comb(m * d + N, N)


@dataclass(frozen=True)
class NksWitness:
    n: int
    k: int
    s: int
    row_basis: tuple[int, ...]
    col_basis: tuple[int, ...]
    basis_nonzeros: int

    @property
    def holds(self) -> bool:
        """``basis_nonzeros <= 4ks/n``, compared exactly."""
        return self.n * self.basis_nonzeros <= 4 * self.k * self.s


def _cheapest_basis(vectors: Sequence[Sequence], M: Matrix) -> list[int]:
    weights = [sum(1 for x in v if x != 0) for v in vectors]
    ech = _Echelon(M.domain)
    return sorted(i for i in sorted(range(len(vectors)), key=lambda i: (weights[i], i))
                  if ech.add(vectors[i]))


def nks_witness(M: Matrix, limit: int = NKS_LIMIT) -> NksWitness | None:
    """Cheapest (row basis, column basis) pair if it meets ``4ks/n``, else None.

    A zero matrix yields the empty witness (k = s = 0).
    """
    _require_exact(M, "nks_witness")
    if not M.is_square:
        raise ShapeError("(n, k, s)-matrices are square")
    n = M.n_rows
    if n > limit:
        raise InstanceTooLarge(f"n={n} exceeds witness limit {limit}")
    cols = list(zip(*M.rows))
    rb = _cheapest_basis(M.rows, M)
    cb = _cheapest_basis(cols, M)
    weight = sum(1 for i in rb for x in M.rows[i] if x != 0) + sum(1 for j in cb for x in cols[j] if x != 0)
    w = NksWitness(n, len(rb), M.nonzeros(), tuple(rb), tuple(cb), weight)
    return w if w.holds else None


def verify_nks_witness(M: Matrix, w: NksWitness) -> bool:
    """Re-check a witness from scratch against ``M``."""
    n = M.n_rows
    if (w.n, w.s, w.k) != (n, M.nonzeros(), mat_rank(M)):
        return False
    if len(w.row_basis) != w.k or len(w.col_basis) != w.k:
        return False
    if w.k:
        rows = Matrix(M.domain, [M.rows[i] for i in w.row_basis])
        cols = Matrix(M.domain, [M.column(j) for j in w.col_basis])
        if mat_rank(rows) != w.k or mat_rank(cols) != w.k:
            return False
    recount = (sum(1 for i in w.row_basis for x in M.rows[i] if x != 0)
               + sum(1 for j in w.col_basis for x in M.column(j) if x != 0))
    return recount == w.basis_nonzeros and w.holds


def find_nks_principal_submatrix(M: Matrix, limit: int = LEMMA22_LIMIT) -> tuple[tuple[int, ...], NksWitness]:
    """First principal submatrix (by size, then lexicographically) that is an
    (n', k', s')-matrix with ``k'/n' <= k/n``.

    Raises :class:`LemmaCounterexample` if there is none; that would
    contradict the submatrix lemma and is treated as fatal.
    """
    _require_exact(M, "find_nks_principal_submatrix")
    n = M.n_rows
    if not M.is_square:
        raise ShapeError("principal submatrices need a square matrix")
    if n > limit:
        raise InstanceTooLarge(f"n={n} exceeds principal-submatrix search limit {limit}")
    k = mat_rank(M)
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            sub = principal_submatrix(M, S)
            w = nks_witness(sub, limit=max(limit, NKS_LIMIT))
            if w is not None and w.k * n <= k * size:
                return S, w
    raise LemmaCounterexample(f"lemma-counterexample: no qualifying principal submatrix in {M!r}")


def random_rank_matrix(n: int, r: int, q: int, seed: int, unit_diagonal: bool = False) -> Matrix:
    """Seeded n x n matrix over GF(q) of rank exactly ``r``.

    Draws ``A (n x r) @ B (r x n)`` from one splitmix64 stream (entries are
    ``u mod q``) until the product has rank ``r`` (and, with
    ``unit_diagonal``, a diagonal free of zeros).
    """
    from .graph import SplitMix64

    field = GF(q)
    if not 0 <= r <= n:
        raise InputError(f"rank {r} outside 0..{n}")
    if unit_diagonal and r == 0 and n:
        raise InputError("a nonzero diagonal forces rank >= 1")
    rng = SplitMix64(seed)
    while True:
        A = Matrix(field, [[next(rng) % q for _ in range(r)] for _ in range(n)]) if r else None
        B = Matrix(field, [[next(rng) % q for _ in range(n)] for _ in range(r)]) if r else None
        M = A @ B if r else Matrix.zeros(field, n)
        if unit_diagonal and any(M.rows[i][i] == 0 for i in range(n)):
            continue
        if mat_rank(M) == r:
            return M


def lemma24_bound(n: int, k: int, s: int) -> float:
    """Natural log of ``C(n, k)^2 * n^(20ks/n)``."""
    if not 1 <= k <= n or not 0 <= s <= n * n:
        raise InputError(f"need 1 <= k <= n and 0 <= s <= n^2, got n={n} k={k} s={s}")
    return 2 * math.log(math.comb(n, k)) + 20 * k * s / n * math.log(n)


@lru_cache(maxsize=None)
def _census(n: int, q: int) -> tuple[tuple[tuple[int, int], int], ...]:
    return tuple(sorted(_kernels.nks_census(n, q).items()))


def nks_census(n: int, q: int, limit: int = CENSUS_LIMIT) -> dict[tuple[int, int], int]:
    """Number of distinct zero-patterns of (n, k, s)-matrices over GF(q), keyed by (k, s)."""
    GF(q)
    if q ** (n * n) > limit:
        raise InstanceTooLarge(f"q^(n^2) = {q}^{n * n} exceeds enumeration limit {limit}")
    return dict(_census(n, q))


def count_nks_zero_patterns(n: int, k: int, s: int, q: int, limit: int = CENSUS_LIMIT) -> int:
    return nks_census(n, q, limit).get((k, s), 0)


def census_records(n: int, q: int) -> list[dict]:
    """One JSON-ready record per (k, s) with k >= 1, including the log bound."""
    table = nks_census(n, q)
    out = []
    for k in range(1, n + 1):
        for s in range(0, n * n + 1):
            count = table.get((k, s), 0)
            out.append({"n": n, "k": k, "s": s, "q": q, "count": count,
                        "log_bound": lemma24_bound(n, k, s)})
    return out


def turan_min_nonzeros(n: int, k: int) -> Fraction:
    """Minimum nonzero count ``n^2/(4k)`` of a rank-k matrix with nonzero diagonal."""
    if k < 1:
        raise InputError("k must be positive")
    return Fraction(n * n, 4 * k)
