"""Pure-Python implementations of the hot kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same
signature and the same results; this module is used when the compiled
extension is missing or ``MINRANKLAB_PURE=1`` is set.

Vectors over GF(2) are int bitmasks (bit j = coordinate j).
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

FOUND, NONE, UNDECIDED = 1, 0, -1
MEMO_LIMIT = 1 << 21


def gf2_rank(rows: Sequence[int]) -> int:
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def gfq_rank(rows: Sequence[Sequence[int]], q: int) -> int:
    if q == 2:
        return gf2_rank([sum(1 << j for j, x in enumerate(r) if x % 2) for r in rows])
    a = [[x % q for x in r] for r in rows]
    m = len(a)
    ncols = len(a[0]) if m else 0
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, m) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, q)
        prow = [x * inv % q for x in a[rank]]
        a[rank] = prow
        for r in range(rank + 1, m):
            f = a[r][c]
            if f:
                a[r] = [(x - f * y) % q for x, y in zip(a[r], prow)]
        rank += 1
        if rank == m:
            break
    return rank


class _BudgetOut(Exception):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _submasks_by_weight(mask: int) -> list[int]:
    bits = [1 << j for j in range(mask.bit_length()) if mask >> j & 1]
    subs = [0]
    for b in bits:
        subs += [s | b for s in subs]
    subs.sort(key=lambda s: (_popcount(s), s))
    return subs


def _rref_insert(basis: tuple[int, ...], red: int) -> tuple[int, ...]:
    """Insert a reduced nonzero vector into a fully reduced GF(2) basis."""
    lead = 1 << (red.bit_length() - 1)
    out = [b ^ red if b & lead else b for b in basis]
    out.append(red)
    out.sort(reverse=True)
    return tuple(out)


def _reduce(v: int, basis: tuple[int, ...]) -> int:
    for b in basis:
        lead = 1 << (b.bit_length() - 1)
        if v & lead:
            v ^= b
    return v


def _span_member(basis: tuple[int, ...], bit: int, forbid: int) -> int:
    """Some w in span(basis) with ``w & bit`` set and ``w & forbid == 0``, else 0."""
    w = 0
    r = len(basis)
    for g in range(1, 1 << r):
        # Gray-code walk: flip the basis vector indexed by the lowest set bit of g
        w ^= basis[(g & -g).bit_length() - 1]
        if w & bit and not w & forbid:
            return w
    return 0


def gf2_minrank_search(
    n: int,
    nbr: Sequence[int],
    order: Sequence[int],
    k: int,
    budget: int,
    cuts: Sequence[int] = (),
) -> tuple[int, list[int] | None, int]:
    """Search for a GF(2) fit of rank <= k.

    ``nbr[i]`` is the open neighbourhood mask of vertex i, ``order`` the
    vertex processing order and ``cuts`` a list of independent-set masks
    used for the lower bound ``|I| + dim S - rank(S restricted to I)``.

    Returns ``(status, rows, nodes)`` with status FOUND / NONE / UNDECIDED;
    ``rows[i]`` is the bitmask of row i when found.
    """
    full = (1 << n) - 1
    forbid = [full & ~(nbr[i] | (1 << i)) for i in range(n)]
    cands = [_submasks_by_weight(nbr[i]) for i in range(n)]
    cut_sizes = [_popcount(c) for c in cuts]
    rows = [0] * n
    failed: set = set()
    nodes = 0

    def lower_bound(basis):
        r = len(basis)
        best = r
        for cut, size in zip(cuts, cut_sizes):
            lb = size + r - gf2_rank([b & cut for b in basis])
            if lb > best:
                best = lb
        return best

    def dfs(t: int, basis: tuple[int, ...]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetOut
        if t == n:
            return True
        key = (t, basis)
        if key in failed:
            return False
        if cuts and lower_bound(basis) > k:
            if len(failed) < MEMO_LIMIT:
                failed.add(key)
            return False
        i = order[t]
        bit = 1 << i
        w = _span_member(basis, bit, forbid[i])
        if w:
            rows[i] = w
            if dfs(t + 1, basis):
                return True
        if len(basis) < k:
            seen = set()
            for sub in cands[i]:
                v = sub | bit
                red = _reduce(v, basis)
                if not red or red in seen:
                    continue
                seen.add(red)
                rows[i] = v
                if dfs(t + 1, _rref_insert(basis, red)):
                    return True
        if len(failed) < MEMO_LIMIT:
            failed.add(key)
        return False

    try:
        ok = dfs(0, ())
    except _BudgetOut:
        return UNDECIDED, None, nodes
    return (FOUND, rows, nodes) if ok else (NONE, None, nodes)


def _gfq_reduce(v: list[int], basis: list[tuple[int, list[int]]], q: int) -> list[int]:
    for piv, b in basis:
        c = v[piv]
        if c:
            v = [(x - c * y) % q for x, y in zip(v, b)]
    return v


def gfq_minrank_search(
    n: int,
    nbr: Sequence[int],
    order: Sequence[int],
    k: int,
    budget: int,
    q: int,
    cuts: Sequence[int] = (),
) -> tuple[int, list[tuple[int, ...]] | None, int]:
    """GF(q) analogue of :func:`gf2_minrank_search`; rows come back as tuples."""
    neigh = [[j for j in range(n) if nbr[i] >> j & 1] for i in range(n)]
    rows: list[tuple[int, ...] | None] = [None] * n
    failed: set = set()
    nodes = 0

    def cands(i):
        free = neigh[i]
        vals = sorted(product(range(q), repeat=len(free)),
                      key=lambda t: (sum(1 for x in t if x), t))
        for t in vals:
            v = [0] * n
            v[i] = 1
            for j, x in zip(free, t):
                v[j] = x
            yield v

    def member(basis, i):
        # solve for coefficients c with (sum c_b b)[i] = 1 and zero off N[i]
        allowed = set(neigh[i]) | {i}
        r = len(basis)
        eqs = []
        for j in range(n):
            if j == i or j not in allowed:
                eqs.append([b[j] for _, b in basis] + [1 if j == i else 0])
        sol = _solve_mod(eqs, r, q)
        if sol is None:
            return None
        w = [0] * n
        for c, (_, b) in zip(sol, basis):
            if c:
                w = [(x + c * y) % q for x, y in zip(w, b)]
        return tuple(w)

    def insert(basis, red):
        piv = next(j for j, x in enumerate(red) if x)
        inv = pow(red[piv], -1, q)
        red = [x * inv % q for x in red]
        out = []
        for p, b in basis:
            c = b[piv]
            if c:
                b = [(x - c * y) % q for x, y in zip(b, red)]
            out.append((p, tuple(b)))
        out.append((piv, tuple(red)))
        out.sort()
        return tuple(out)

    def lower_bound(basis):
        r = len(basis)
        best = r
        for cut in cuts:
            idx = [j for j in range(n) if cut >> j & 1]
            restricted = [[b[j] for j in idx] for _, b in basis]
            lb = len(idx) + r - (gfq_rank(restricted, q) if restricted else 0)
            best = max(best, lb)
        return best

    def dfs(t, basis):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetOut
        if t == n:
            return True
        key = (t, basis)
        if key in failed:
            return False
        if cuts and lower_bound(basis) > k:
            failed.add(key)
            return False
        i = order[t]
        w = member(basis, i)
        if w is not None:
            rows[i] = w
            if dfs(t + 1, basis):
                return True
        if len(basis) < k:
            seen = set()
            for v in cands(i):
                red = tuple(_gfq_reduce(v, basis, q))
                if not any(red):
                    continue
                if red in seen:
                    continue
                seen.add(red)
                rows[i] = tuple(v)
                if dfs(t + 1, insert(basis, red)):
                    return True
        if len(failed) < MEMO_LIMIT:
            failed.add(key)
        return False

    try:
        ok = dfs(0, ())
    except _BudgetOut:
        return UNDECIDED, None, nodes
    return (FOUND, list(rows), nodes) if ok else (NONE, None, nodes)


def _solve_mod(eqs: list[list[int]], nvars: int, q: int) -> list[int] | None:
    """One solution of an augmented linear system over GF(q), or None."""
    a = [row[:] for row in eqs]
    m = len(a)
    pivots = []
    r = 0
    for c in range(nvars):
        piv = next((i for i in range(r, m) if a[i][c] % q), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, q)
        a[r] = [x * inv % q for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % q for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    if any(a[i][nvars] % q for i in range(r, m)):
        return None
    sol = [0] * nvars
    for i, c in enumerate(pivots):
        sol[c] = a[i][nvars]
    return sol


def _min_basis_weight(vectors: list[list[int]], q: int) -> int:
    """Smallest total support of a basis of span(vectors) drawn from them."""
    order = sorted(range(len(vectors)), key=lambda i: (sum(1 for x in vectors[i] if x), i))
    basis: list[tuple[int, list[int]]] = []
    total = 0
    for i in order:
        v = _gfq_reduce(list(vectors[i]), basis, q)
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            continue
        inv = pow(v[piv], -1, q)
        v = [x * inv % q for x in v]
        basis = [(p, [(x - b[piv] * y) % q for x, y in zip(b, v)]) for p, b in basis]
        basis.append((piv, v))
        total += sum(1 for x in vectors[i] if x)
    return total


def _spanning_forest(n: int, positions: list[int]) -> list[bool]:
    """Mark positions that lie on a spanning forest of the row/column graph."""
    parent = list(range(2 * n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    for p in positions:
        a, b = find(p // n), find(n + p % n)
        if a != b:
            parent[a] = b
            tree.append(True)
        else:
            tree.append(False)
    return tree


def nks_census(n: int, q: int) -> dict[tuple[int, int], int]:
    """Count distinct zero-patterns of (n, k, s)-matrices over GF(q), by (k, s).

    Row and column scaling by nonzero constants preserves the support, the
    rank and which index sets are bases, so for each support only the
    entries off a spanning forest of its row/column graph are enumerated.
    """
    counts: dict[tuple[int, int], int] = {}
    cells = n * n
    for Z in range(1 << cells):
        positions = [p for p in range(cells) if Z >> p & 1]
        s = len(positions)
        tree = _spanning_forest(n, positions)
        free = [p for p, t in zip(positions, tree) if not t]
        fixed = [p for p, t in zip(positions, tree) if t]
        found: set[int] = set()
        for vals in product(range(1, q), repeat=len(free)):
            flat = [0] * cells
            for p in fixed:
                flat[p] = 1
            for p, x in zip(free, vals):
                flat[p] = x
            mat = [flat[r * n:(r + 1) * n] for r in range(n)]
            k = gfq_rank(mat, q)
            if k in found:
                continue
            cols = [list(c) for c in zip(*mat)]
            weight = _min_basis_weight(mat, q) + _min_basis_weight(cols, q)
            if n * weight <= 4 * k * s:
                found.add(k)
        for k in found:
            counts[(k, s)] = counts.get((k, s), 0) + 1
    return counts
