# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
# distutils: language = c++
"""Compiled twins of the kernels in ``_pykernels``.

Same signatures, same results, same node counts.  GF(2) vectors are
``uint64_t`` bitmasks, so the search handles n <= 64 (the stamp table for
coset deduplication is sized 2^n, so callers keep n <= STAMP_BITS).
"""

from libc.stdint cimport uint64_t, uint32_t, int64_t
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memset
from libcpp.string cimport string
from libcpp.unordered_set cimport unordered_set

from . import _pykernels

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

FOUND, NONE, UNDECIDED = 1, 0, -1
STAMP_BITS = 22
cdef size_t MEMO_LIMIT = _pykernels.MEMO_LIMIT


cdef inline int _popc(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline uint64_t _lead(uint64_t x) nogil:
    return (<uint64_t>1) << (63 - __builtin_clzll(x))


cdef int _rank64(uint64_t* rows, int m) nogil:
    cdef uint64_t piv[64]
    cdef int r = 0, i, b
    cdef uint64_t v
    memset(piv, 0, sizeof(piv))
    for i in range(m):
        v = rows[i]
        while v:
            b = 63 - __builtin_clzll(v)
            if piv[b] == 0:
                piv[b] = v
                r += 1
                break
            v ^= piv[b]
    return r


def gf2_rank(rows):
    cdef int m = len(rows), i
    if m == 0:
        return 0
    for x in rows:
        if x < 0 or x.bit_length() > 64:
            return _pykernels.gf2_rank(rows)
    cdef uint64_t* buf = <uint64_t*>malloc(m * sizeof(uint64_t))
    try:
        for i in range(m):
            buf[i] = rows[i]
        return _rank64(buf, m)
    finally:
        free(buf)


cdef int _rank_mod(int64_t* a, int m, int ncols, int64_t q) nogil:
    """Rank of the m x ncols matrix ``a`` (row-major, entries in [0, q)); destroys ``a``."""
    cdef int rank = 0, c, r, piv, j
    cdef int64_t inv, f, t
    for c in range(ncols):
        if rank == m:
            break
        piv = -1
        for r in range(rank, m):
            if a[r * ncols + c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(ncols):
                t = a[rank * ncols + j]
                a[rank * ncols + j] = a[piv * ncols + j]
                a[piv * ncols + j] = t
        inv = _inv_mod(a[rank * ncols + c], q)
        for j in range(c, ncols):
            a[rank * ncols + j] = a[rank * ncols + j] * inv % q
        for r in range(rank + 1, m):
            f = a[r * ncols + c]
            if f != 0:
                for j in range(c, ncols):
                    a[r * ncols + j] = (a[r * ncols + j] - f * a[rank * ncols + j]) % q
                    if a[r * ncols + j] < 0:
                        a[r * ncols + j] += q
        rank += 1
    return rank


cdef int64_t _inv_mod(int64_t a, int64_t q) nogil:
    # extended Euclid; q prime and a != 0 mod q
    cdef int64_t t = 0, newt = 1, r = q, newr = a % q, quo, tmp
    while newr != 0:
        quo = r // newr
        tmp = t - quo * newt
        t = newt
        newt = tmp
        tmp = r - quo * newr
        r = newr
        newr = tmp
    if t < 0:
        t += q
    return t


def gfq_rank(rows, int q):
    cdef int m = len(rows)
    if m == 0:
        return 0
    cdef int ncols = len(rows[0]), i, j
    if q == 2 and ncols <= 64:
        return gf2_rank([sum(1 << j for j, x in enumerate(r) if x % 2) for r in rows])
    cdef int64_t* a = <int64_t*>malloc(m * ncols * sizeof(int64_t))
    try:
        for i in range(m):
            row = rows[i]
            for j in range(ncols):
                a[i * ncols + j] = row[j] % q
        return _rank_mod(a, m, ncols, q)
    finally:
        free(a)


# ---------------------------------------------------------------- search

cdef struct Search:
    int n
    int k
    int64_t budget
    int64_t nodes
    uint64_t* forbid
    uint64_t** cands
    int* ncands
    int* order
    uint64_t* cuts
    int* cut_sizes
    int ncuts
    uint64_t* rows
    uint32_t* stamp
    uint32_t stamp_ctr
    size_t stamp_len


cdef inline uint64_t _reduce(uint64_t v, uint64_t* basis, int r) nogil:
    cdef int j
    for j in range(r):
        if v & _lead(basis[j]):
            v ^= basis[j]
    return v


cdef inline uint64_t _span_member(uint64_t* basis, int r, uint64_t bit, uint64_t forbid) nogil:
    cdef uint64_t w = 0, g
    cdef uint64_t top = (<uint64_t>1) << r
    g = 1
    while g < top:
        w ^= basis[__builtin_ctzll(g)]
        if (w & bit) and not (w & forbid):
            return w
        g += 1
    return 0


cdef inline int _rref_insert(uint64_t* basis, int r, uint64_t red, uint64_t* out) nogil:
    cdef uint64_t lead = _lead(red), b, t
    cdef int i, j, m = 0
    for j in range(r):
        b = basis[j]
        if b & lead:
            b ^= red
        out[m] = b
        m += 1
    out[m] = red
    m += 1
    # insertion sort, descending
    for j in range(1, m):
        t = out[j]
        i = j - 1
        while i >= 0 and out[i] < t:
            out[i + 1] = out[i]
            i -= 1
        out[i + 1] = t
    return m


cdef int _lower_bound(Search* S, uint64_t* basis, int r) nogil:
    cdef uint64_t tmp[64]
    cdef int best = r, c, j, lb
    for c in range(S.ncuts):
        for j in range(r):
            tmp[j] = basis[j] & S.cuts[c]
        lb = S.cut_sizes[c] + r - _rank64(tmp, r)
        if lb > best:
            best = lb
    return best


cdef string _key(int t, uint64_t* basis, int r):
    cdef uint64_t buf[65]
    cdef int j
    buf[0] = <uint64_t>t
    for j in range(r):
        buf[j + 1] = basis[j]
    return string(<char*>buf, (r + 1) * sizeof(uint64_t))


cdef int _dfs(Search* S, unordered_set[string]* failed, int t, uint64_t* basis, int r) except -2:
    cdef int i, res, c, cnt, nc
    cdef uint64_t bit, w, v, red
    cdef uint64_t nb[64]
    cdef uint64_t* cand
    cdef uint64_t* buf
    cdef string key
    S.nodes += 1
    if S.nodes > S.budget:
        return -1
    if t == S.n:
        return 1
    key = _key(t, basis, r)
    if failed.count(key):
        return 0
    if S.ncuts and _lower_bound(S, basis, r) > S.k:
        if failed.size() < MEMO_LIMIT:
            failed.insert(key)
        return 0
    i = S.order[t]
    bit = (<uint64_t>1) << i
    w = _span_member(basis, r, bit, S.forbid[i])
    if w:
        S.rows[i] = w
        res = _dfs(S, failed, t + 1, basis, r)
        if res != 0:
            return res
    if r < S.k:
        nc = S.ncands[i]
        cand = S.cands[i]
        buf = <uint64_t*>malloc(2 * nc * sizeof(uint64_t))
        if buf == NULL:
            raise MemoryError()
        S.stamp_ctr += 1
        if S.stamp_ctr == 0:
            memset(S.stamp, 0, S.stamp_len * sizeof(uint32_t))
            S.stamp_ctr = 1
        cnt = 0
        for c in range(nc):
            v = cand[c] | bit
            red = _reduce(v, basis, r)
            if red == 0 or S.stamp[red] == S.stamp_ctr:
                continue
            S.stamp[red] = S.stamp_ctr
            buf[2 * cnt] = v
            buf[2 * cnt + 1] = red
            cnt += 1
        try:
            for c in range(cnt):
                S.rows[i] = buf[2 * c]
                _rref_insert(basis, r, buf[2 * c + 1], nb)
                res = _dfs(S, failed, t + 1, nb, r + 1)
                if res != 0:
                    return res
        finally:
            free(buf)
    if failed.size() < MEMO_LIMIT:
        failed.insert(key)
    return 0


def gf2_minrank_search(int n, nbr, order, int k, int64_t budget, cuts=()):
    """Compiled twin of ``_pykernels.gf2_minrank_search``."""
    if n > STAMP_BITS:
        return _pykernels.gf2_minrank_search(n, nbr, order, k, budget, cuts)
    cdef Search S
    cdef unordered_set[string] failed
    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef int i, c
    cdef uint64_t root[1]
    memset(&S, 0, sizeof(S))
    S.n = n
    S.k = k
    S.budget = budget
    S.ncuts = len(cuts)
    S.stamp_len = (<size_t>1) << n
    S.forbid = <uint64_t*>calloc(n, sizeof(uint64_t))
    S.cands = <uint64_t**>calloc(n, sizeof(uint64_t*))
    S.ncands = <int*>calloc(n, sizeof(int))
    S.order = <int*>calloc(n, sizeof(int))
    S.rows = <uint64_t*>calloc(n, sizeof(uint64_t))
    S.cuts = <uint64_t*>calloc(S.ncuts + 1, sizeof(uint64_t))
    S.cut_sizes = <int*>calloc(S.ncuts + 1, sizeof(int))
    S.stamp = <uint32_t*>calloc(S.stamp_len, sizeof(uint32_t))
    try:
        for i in range(n):
            S.forbid[i] = full & ~(<uint64_t>nbr[i] | ((<uint64_t>1) << i))
            S.order[i] = order[i]
            subs = _pykernels._submasks_by_weight(nbr[i])
            S.ncands[i] = len(subs)
            S.cands[i] = <uint64_t*>malloc(len(subs) * sizeof(uint64_t))
            for c in range(len(subs)):
                S.cands[i][c] = subs[c]
        for c in range(S.ncuts):
            S.cuts[c] = cuts[c]
            S.cut_sizes[c] = _popc(cuts[c])
        res = _dfs(&S, &failed, 0, root, 0)
        if res < 0:
            return UNDECIDED, None, S.nodes
        if res == 0:
            return NONE, None, S.nodes
        return FOUND, [S.rows[i] for i in range(n)], S.nodes
    finally:
        for i in range(n):
            free(S.cands[i])
        free(S.forbid)
        free(S.cands)
        free(S.ncands)
        free(S.order)
        free(S.rows)
        free(S.cuts)
        free(S.cut_sizes)
        free(S.stamp)


# ---------------------------------------------------------------- census

cdef int _basis_weight(int64_t* mat, int n, int by_rows, int64_t q, int64_t* work, int64_t* widx) nogil:
    """Total support of the cheapest basis among the rows (or columns) of ``mat``."""
    cdef int i, j, a, b, t, nb = 0, total = 0, piv
    cdef int weight[8]
    cdef int order[8]
    cdef int pivcol[8]
    cdef int64_t x, f, inv
    for i in range(n):
        weight[i] = 0
        for j in range(n):
            x = mat[i * n + j] if by_rows else mat[j * n + i]
            if x != 0:
                weight[i] += 1
        order[i] = i
    # stable insertion sort by (weight, index)
    for a in range(1, n):
        t = order[a]
        b = a - 1
        while b >= 0 and weight[order[b]] > weight[t]:
            order[b + 1] = order[b]
            b -= 1
        order[b + 1] = t
    for a in range(n):
        i = order[a]
        for j in range(n):
            widx[j] = mat[i * n + j] if by_rows else mat[j * n + i]
        for b in range(nb):
            f = widx[pivcol[b]]
            if f != 0:
                for j in range(n):
                    widx[j] = (widx[j] - f * work[b * n + j]) % q
                    if widx[j] < 0:
                        widx[j] += q
        piv = -1
        for j in range(n):
            if widx[j] != 0:
                piv = j
                break
        if piv < 0:
            continue
        inv = _inv_mod(widx[piv], q)
        for j in range(n):
            work[nb * n + j] = widx[j] * inv % q
        # keep earlier basis rows reduced at the new pivot
        for b in range(nb):
            f = work[b * n + piv]
            if f != 0:
                for j in range(n):
                    work[b * n + j] = (work[b * n + j] - f * work[nb * n + j]) % q
                    if work[b * n + j] < 0:
                        work[b * n + j] += q
        pivcol[nb] = piv
        nb += 1
        total += weight[i]
    return total


cdef int _find(int* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def nks_census(int n, int q):
    """Compiled twin of ``_pykernels.nks_census`` (n <= 6)."""
    if n > 6 or n < 1:
        return _pykernels.nks_census(n, q)
    cdef int cells = n * n
    cdef uint64_t Z, total = (<uint64_t>1) << cells
    cdef int positions[36]
    cdef int freepos[36]
    cdef int vals[36]
    cdef int parent[12]
    cdef int64_t mat[36]
    cdef int64_t scratch[36]
    cdef int64_t work[64]
    cdef int64_t widx[8]
    cdef int s, p, nfree, a, b, k, found, weight, j
    cdef int64_t counts[7 * 37]
    memset(counts, 0, sizeof(counts))
    with nogil:
        Z = 0
        while Z < total:
            s = 0
            for p in range(cells):
                if (Z >> p) & 1:
                    positions[s] = p
                    s += 1
            for a in range(2 * n):
                parent[a] = a
            nfree = 0
            for j in range(cells):
                mat[j] = 0
            for j in range(s):
                p = positions[j]
                a = _find(parent, p // n)
                b = _find(parent, n + p % n)
                if a != b:
                    parent[a] = b
                    mat[p] = 1
                else:
                    freepos[nfree] = p
                    nfree += 1
            for j in range(nfree):
                vals[j] = 1
            found = 0
            while True:
                for j in range(nfree):
                    mat[freepos[j]] = vals[j]
                for j in range(cells):
                    scratch[j] = mat[j]
                k = _rank_mod(scratch, n, n, q)
                if not (found >> k) & 1:
                    weight = (_basis_weight(mat, n, 1, q, work, widx)
                              + _basis_weight(mat, n, 0, q, work, widx))
                    if n * weight <= 4 * k * s:
                        found |= 1 << k
                # odometer over values 1..q-1 of the free positions
                j = 0
                while j < nfree:
                    vals[j] += 1
                    if vals[j] < q:
                        break
                    vals[j] = 1
                    j += 1
                if j == nfree:
                    break
            for k in range(n + 1):
                if (found >> k) & 1:
                    counts[k * 37 + s] += 1
            Z += 1
    out = {}
    for k in range(n + 1):
        for s in range(cells + 1):
            if counts[k * 37 + s]:
                out[(k, s)] = counts[k * 37 + s]
    return out
