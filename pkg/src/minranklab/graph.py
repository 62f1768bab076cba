"""Simple graphs, seeded G(n, p), and the alpha / clique-cover sandwich.

Vertex sets are ``0..n-1``; neighbourhoods are kept as int bitmasks so the
exact searches (maximum independent set, chromatic number of the
complement) work on machine words.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .algebra import Matrix
from .errors import InputError, InstanceTooLarge, ShapeError

MASK64 = (1 << 64) - 1
ALPHA_LIMIT = 24
CLIQUE_COVER_LIMIT = 18


class SplitMix64:
    """The splitmix64 generator (64-bit outputs, wrapping state)."""

    GAMMA = 0x9E3779B97F4A7C15

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def __iter__(self) -> Iterator[int]:
        return self

    def __next__(self) -> int:
        self.state = (self.state + self.GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


def splitmix64(x: int) -> int:
    """First output of splitmix64 seeded with ``x``; used as a seed mixer."""
    return next(SplitMix64(x))


def trial_seed(seed: int, trial_index: int) -> int:
    return splitmix64((seed ^ trial_index) & MASK64)


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]
    adj: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"n must be a positive integer, got {self.n!r}")
        adj = [0] * self.n
        for e in self.edges:
            i, j = e
            if not (0 <= i < j < self.n):
                raise InputError(f"bad edge {e} for n={self.n}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        object.__setattr__(self, "adj", tuple(adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> Graph:
        norm = set()
        for e in edges:
            i, j = e
            if i == j:
                raise InputError(f"self-loop at {i}")
            norm.add((min(i, j), max(i, j)))
        return cls(n, frozenset(norm))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, frozenset())

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def from_adjacency(cls, adj: Iterable[int]) -> Graph:
        adj = list(adj)
        return cls(len(adj), frozenset((i, j) for i, a in enumerate(adj)
                                       for j in range(i + 1, len(adj)) if a >> j & 1))

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def degree(self, i: int) -> int:
        return _popcount(self.adj[i])

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.n) if self.adj[i] >> j & 1]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, obj: dict | str) -> Graph:
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            n, edges = obj["n"], obj["edges"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed graph JSON: {exc}") from exc
        pairs = [tuple(e) for e in edges]
        if any(len(e) != 2 or e[0] >= e[1] for e in pairs):
            raise InputError("graph JSON edges must be [i, j] with i < j")
        if len(set(pairs)) != len(pairs):
            raise InputError("duplicate edges in graph JSON")
        return cls(n, frozenset(pairs))


def gnp(n: int, p: float, seed: int) -> Graph:
    """Seeded G(n, p).

    Pairs ``i < j`` are visited in lexicographic order and each consumes one
    splitmix64 output ``u``; the edge is kept iff ``p >= 1`` or
    ``u < floor(p * 2**64)``.  Using one stream per seed couples different
    ``p``, so edge sets grow monotonically with ``p``.
    """
    if not 0 <= p <= 1:
        raise InputError(f"p must lie in [0, 1], got {p}")
    rng = SplitMix64(seed)
    threshold = math.floor(Fraction(p) * (1 << 64))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            u = next(rng)
            if p >= 1 or u < threshold:
                edges.append((i, j))
    return Graph(n, frozenset(edges))


def complement(G: Graph) -> Graph:
    full = (1 << G.n) - 1
    return Graph.from_adjacency([full & ~(a | (1 << i)) for i, a in enumerate(G.adj)])


@dataclass(frozen=True)
class Coloring:
    """Vertex colouring with colours ``0..num_colors-1``."""

    class_of: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.class_of)

    @property
    def num_colors(self) -> int:
        return len(set(self.class_of))

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.class_of):
            out.setdefault(c, []).append(v)
        return [out[c] for c in sorted(out)]

    def violation(self, target: Graph) -> tuple[int, int] | None:
        """First edge of ``target`` with both ends in one class, if any."""
        for i, j in target.sorted_edges():
            if self.class_of[i] == self.class_of[j]:
                return i, j
        return None

    def is_proper(self, target: Graph) -> bool:
        return self.violation(target) is None

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> Coloring:
        class_of = [-1] * n
        for c, members in enumerate(classes):
            for v in members:
                class_of[v] = c
        if -1 in class_of:
            raise InputError("every vertex needs a colour")
        return cls(tuple(class_of))


def maximum_independent_set(G: Graph, limit: int = ALPHA_LIMIT) -> int:
    """Bitmask of a maximum independent set (branch and bound)."""
    if G.n > limit:
        raise InstanceTooLarge(f"instance too large: n={G.n} > alpha limit {limit}")
    adj = G.adj
    best_mask = 0
    best = 0

    def rec(cand: int, chosen: int, size: int) -> None:
        nonlocal best, best_mask
        # absorb vertices of candidate-degree <= 1: some maximum set contains them
        while cand:
            low = None
            c = cand
            while c:
                b = c & -c
                v = b.bit_length() - 1
                if _popcount(adj[v] & cand) <= 1:
                    low = v
                    break
                c ^= b
            if low is None:
                break
            chosen |= 1 << low
            size += 1
            cand &= ~(adj[low] | (1 << low))
        if not cand:
            if size > best:
                best, best_mask = size, chosen
            return
        if size + _popcount(cand) <= best:
            return
        # pivot on the candidate of largest degree inside cand
        v = max((u for u in range(G.n) if cand >> u & 1),
                key=lambda u: (_popcount(adj[u] & cand), -u))
        rec(cand & ~(adj[v] | (1 << v)), chosen | (1 << v), size + 1)
        rec(cand & ~(1 << v), chosen, size)

    rec((1 << G.n) - 1, 0, 0)
    return best_mask


def independence_number(G: Graph, limit: int = ALPHA_LIMIT) -> int:
    return _popcount(maximum_independent_set(G, limit))


def _greedy_color(adj: tuple[int, ...]) -> list[int]:
    n = len(adj)
    order = sorted(range(n), key=lambda v: (-_popcount(adj[v]), v))
    colors = [-1] * n
    for v in order:
        used = {colors[u] for u in range(n) if adj[v] >> u & 1 and colors[u] >= 0}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return colors


def _exact_color(adj: tuple[int, ...], lower: int) -> list[int]:
    """Minimum colouring by DSATUR branch and bound."""
    n = len(adj)
    best = _greedy_color(adj)
    best_k = max(best) + 1 if n else 0
    if best_k <= lower:
        return best
    colors = [-1] * n
    class_masks: list[int] = []

    def rec(colored: int) -> bool:
        nonlocal best, best_k
        if colored == n:
            best, best_k = colors[:], len(class_masks)
            return best_k <= lower
        # most saturated uncoloured vertex, ties by degree then index
        v = -1
        key = None
        for u in range(n):
            if colors[u] < 0:
                sat = sum(1 for m in class_masks if m & adj[u])
                kk = (sat, _popcount(adj[u]), -u)
                if key is None or kk > key:
                    key, v = kk, u
        for c, m in enumerate(class_masks):
            if not m & adj[v]:
                colors[v] = c
                class_masks[c] |= 1 << v
                if rec(colored + 1):
                    return True
                class_masks[c] &= ~(1 << v)
                colors[v] = -1
        if len(class_masks) + 1 < best_k:
            colors[v] = len(class_masks)
            class_masks.append(1 << v)
            if rec(colored + 1):
                return True
            class_masks.pop()
            colors[v] = -1
        return False

    rec(0)
    return best


def clique_cover_exact(G: Graph, limit: int = CLIQUE_COVER_LIMIT) -> tuple[int, Coloring]:
    """Minimum clique cover of G as a proper colouring of its complement."""
    if G.n > limit:
        raise InstanceTooLarge(f"instance too large: n={G.n} > clique-cover limit {limit}")
    comp = complement(G)
    # a clique of the complement is an independent set of G
    lower = independence_number(G, limit=max(limit, ALPHA_LIMIT))
    colors = _exact_color(comp.adj, lower)
    col = Coloring(tuple(colors))
    return col.num_colors, col


def greedy_clique_cover(G: Graph) -> tuple[int, Coloring]:
    """Greedy colouring of the complement, descending degree, index tie-break."""
    col = Coloring(tuple(_greedy_color(complement(G).adj)))
    return col.num_colors, col


def chromatic_number(G: Graph, limit: int = CLIQUE_COVER_LIMIT) -> tuple[int, Coloring]:
    """Exact chromatic number of G (the clique cover number of its complement)."""
    return clique_cover_exact(complement(G), limit)


def is_fit(M: Matrix, G: Graph) -> bool:
    """Nonzero diagonal, and zeros at both (i, j) and (j, i) for every non-edge."""
    if M.shape != (G.n, G.n):
        raise ShapeError(f"matrix shape {M.shape} does not match n={G.n}")
    rows = M.rows
    for i in range(G.n):
        if rows[i][i] == 0:
            return False
        a = G.adj[i]
        for j in range(G.n):
            if j != i and not a >> j & 1 and rows[i][j] != 0:
                return False
    return True
