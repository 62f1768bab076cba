"""Threshold and union-bound evaluators for minrank of G(n, p), in log space.

All logarithms are natural.  The threshold ``n log(1/p) / (80 log n)`` is
a ratio of logarithms, so the base does not matter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class BoundParams:
    n: int
    p: float
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise InputError("n must be positive")
        if not 0 < self.p <= 1:
            raise InputError(f"p must lie in (0, 1], got {self.p}")
        if not 1 <= self.k <= self.n:
            raise InputError(f"k must lie in 1..n, got k={self.k}, n={self.n}")


def minrank_lower_threshold(n: int, p: float, base: float | None = None) -> float:
    """``n log(1/p) / (80 log n)``; ``base`` exists only to show base invariance."""
    if n < 2:
        raise InputError("threshold needs n >= 2")
    if not 0 < p <= 1:
        raise InputError(f"p must lie in (0, 1], got {p}")
    log = math.log if base is None else (lambda x: math.log(x, base))
    return n * log(1 / p) / (80 * log(n))


def envelope(n: int, p: float) -> tuple[float, float]:
    """``(threshold, n log(1/p) / log n)``; the second value is the Theta-scale."""
    lower = minrank_lower_threshold(n, p)
    return lower, n * math.log(1 / p) / math.log(n)


def default_k(n: int, p: float) -> int:
    """``max(1, floor(threshold))``: the largest k the threshold covers, kept >= 1."""
    return max(1, math.floor(minrank_lower_threshold(n, p)))


def _log1mexp(x: float) -> float:
    """``log(1 - exp(x))`` for ``x < 0``."""
    if x > -math.log(2):
        return math.log(-math.expm1(x))
    return math.log1p(-math.exp(x))


def log_geometric_sum(a: float, b: float, lo: int, hi: int) -> float:
    """``log sum_{s=lo}^{hi} exp(a + b s)`` without overflow."""
    count = hi - lo + 1
    if count <= 0:
        return -math.inf
    if b == 0:
        return a + math.log(count)
    if count == 1:
        return a + b * lo
    if b < 0:
        return a + b * lo + _log1mexp(b * count) - _log1mexp(b)
    return a + b * hi + _log1mexp(-b * count) - _log1mexp(-b)


def _log_comb(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def logsumexp(values) -> float:
    arr = np.asarray(list(values), dtype=float)
    if arr.size == 0:
        return -math.inf
    top = float(arr.max())
    if top == -math.inf:
        return top
    return top + math.log(float(np.sum(np.exp(arr - top))))


def union_bound_log(params: BoundParams) -> float:
    """Log of the union bound on ``Pr[minrank(G(n, p)) <= k]``.

    Sums over principal-submatrix size n', rank k' <= floor(n' k / n) and
    nonzero count s' from ceil(n' n / (4k)) to n'^2 of
    ``C(n, n') C(n', k')^2 n'^(20 k' s' / n') p^((s' - n') / 2)``.  The
    exponent is affine in s', so each inner sum is a geometric series
    summed exactly in log space.  Returns ``-inf`` for an empty sum.
    """
    n, p, k = params.n, params.p, params.k
    if p >= 1:
        raise InputError("union bound is vacuous at p = 1")
    lnp = math.log(p)
    terms = []
    for n1 in range(1, n + 1):
        kmax = n1 * k // n
        if kmax == 0:
            continue
        lo = -(-n1 * n // (4 * k))
        hi = n1 * n1
        if lo > hi:
            continue
        base = _log_comb(n, n1) - n1 / 2 * lnp
        ln_n1 = math.log(n1)
        for k1 in range(1, kmax + 1):
            a = base + 2 * _log_comb(n1, k1)
            b = 20 * k1 / n1 * ln_n1 + lnp / 2
            terms.append(log_geometric_sum(a, b, lo, hi))
    return logsumexp(terms)


def bounds_report(n: int, p: float, k: int | None = None) -> dict:
    threshold, scale = envelope(n, p)
    if k is None:
        k = default_k(n, p)
    log_ub = union_bound_log(BoundParams(n, p, k)) if p < 1 else None
    if log_ub is not None and math.isinf(log_ub):
        log_ub = None
    return {"n": n, "p": p, "k": k, "threshold": threshold,
            "log_union_bound": log_ub, "reference_scale": scale}
