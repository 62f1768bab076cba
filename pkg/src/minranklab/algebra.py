"""Scalar domains and dense matrices over GF(q), the rationals and float64.

Exact domains (prime fields, rationals) support rank, bases, determinants
and Cramer solves by exact Gaussian elimination.  The float domain only
supports :func:`real_rank`, which uses a relative pivot tolerance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import DomainError, ShapeError, SingularError

MAX_PRIME = 1 << 16
DEFAULT_TOL = 1e-9


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def field_inverse(q: int, a: int) -> int:
    """Multiplicative inverse of ``a`` in GF(q)."""
    if not is_prime(q):
        raise DomainError(f"{q} is not prime")
    a %= q
    if a == 0:
        raise ZeroDivisionError("no inverse")
    return pow(a, -1, q)


@dataclass(frozen=True)
class Domain:
    """A scalar domain: ``gf`` (with prime ``q``), ``rational`` or ``float``."""

    kind: str
    q: int | None = None

    def __post_init__(self):
        if self.kind == "gf":
            if self.q is None or not is_prime(self.q):
                raise DomainError(f"GF(q) needs a prime q, got {self.q!r}")
            if self.q > MAX_PRIME:
                raise DomainError(f"q={self.q} exceeds supported limit {MAX_PRIME}")
        elif self.kind in ("rational", "float"):
            if self.q is not None:
                raise DomainError(f"{self.kind} domain takes no modulus")
        else:
            raise DomainError(f"unknown domain kind {self.kind!r}")

    @property
    def exact(self) -> bool:
        return self.kind != "float"

    @property
    def name(self) -> str:
        return f"gf:{self.q}" if self.kind == "gf" else self.kind

    @classmethod
    def parse(cls, text: str) -> Domain:
        text = text.strip().lower()
        if text.startswith("gf:"):
            try:
                return GF(int(text[3:]))
            except ValueError as exc:
                raise DomainError(f"bad domain {text!r}") from exc
        if text in ("rational", "qq"):
            return QQ
        if text in ("float", "rr"):
            return RR
        raise DomainError(f"bad domain {text!r}")

    def __repr__(self) -> str:
        return f"Domain({self.name})"

    @property
    def zero(self):
        return {"gf": 0, "rational": Fraction(0), "float": 0.0}[self.kind]

    @property
    def one(self):
        return {"gf": 1, "rational": Fraction(1), "float": 1.0}[self.kind]

    def coerce(self, x: Any):
        """Map ``x`` (int, Fraction, float or ``"a/b"`` string) into the domain."""
        if self.kind == "float":
            if isinstance(x, str):
                x = Fraction(x)
            return float(x)
        if isinstance(x, float):
            if not math.isfinite(x):
                raise DomainError("non-finite input")
            x = Fraction(x)
        elif isinstance(x, str):
            x = Fraction(x)
        elif isinstance(x, (bool, np.integer)):
            x = int(x)
        if self.kind == "rational":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.q == 0:
                raise DomainError(f"{x} has no image in GF({self.q})")
            return x.numerator * pow(x.denominator, -1, self.q) % self.q
        if isinstance(x, int):
            return x % self.q
        raise DomainError(f"cannot coerce {x!r} into {self.name}")

    def add(self, a, b):
        return (a + b) % self.q if self.kind == "gf" else a + b

    def sub(self, a, b):
        return (a - b) % self.q if self.kind == "gf" else a - b

    def mul(self, a, b):
        return a * b % self.q if self.kind == "gf" else a * b

    def neg(self, a):
        return -a % self.q if self.kind == "gf" else -a

    def inv(self, a):
        if self.kind == "gf":
            return field_inverse(self.q, a)
        if a == 0:
            raise ZeroDivisionError("no inverse")
        return 1 / a if self.kind == "float" else Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def to_json(self, a):
        if self.kind == "rational":
            return str(a) if a.denominator != 1 else str(a.numerator)
        return a


def GF(q: int) -> Domain:
    return Domain("gf", q)


QQ = Domain("rational")
RR = Domain("float")


class Matrix:
    """Immutable dense matrix over a :class:`Domain`.

    Entries are coerced on construction, so GF(q) entries are residues in
    ``[0, q)`` and rationals are reduced ``Fraction`` objects.
    """

    __slots__ = ("domain", "rows", "_hash")

    def __init__(self, domain: Domain, rows: Iterable[Iterable[Any]]):
        rows = tuple(tuple(domain.coerce(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise ShapeError("matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, domain: Domain, n: int) -> Matrix:
        return cls(domain, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, domain: Domain, n_rows: int, n_cols: int | None = None) -> Matrix:
        return cls(domain, [[0] * (n_cols or n_rows) for _ in range(n_rows)])

    @classmethod
    def ones(cls, domain: Domain, n_rows: int, n_cols: int | None = None) -> Matrix:
        return cls(domain, [[1] * (n_cols or n_rows) for _ in range(n_rows)])

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> Matrix:
        return Matrix(self.domain, zip(*self.rows))

    def nonzeros(self) -> int:
        return sum(1 for r in self.rows for x in r if x != 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.domain == other.domain and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.domain, self.rows)))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.domain.name}, [{body}])"

    def __matmul__(self, other: Matrix) -> Matrix:
        _check_same_domain(self, other)
        if self.n_cols != other.n_rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        d = self.domain
        cols = list(zip(*other.rows))
        return Matrix(d, [[_dot(d, r, c) for c in cols] for r in self.rows])

    def apply(self, vec: Sequence[Any]) -> tuple:
        """Matrix-vector product."""
        d = self.domain
        if len(vec) != self.n_cols:
            raise ShapeError("vector length does not match column count")
        vec = [d.coerce(x) for x in vec]
        return tuple(_dot(d, r, vec) for r in self.rows)

    def to_json(self) -> dict:
        d = self.domain
        return {"domain": d.name, "rows": [[d.to_json(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict | str) -> Matrix:
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            domain = Domain.parse(obj["domain"])
            rows = obj["rows"]
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed matrix JSON: {exc}") from exc
        if domain.kind == "gf":
            for r in rows:
                for x in r:
                    if not isinstance(x, int) or not 0 <= x < domain.q:
                        raise DomainError(f"field element {x!r} not in [0, {domain.q})")
        return cls(domain, rows)


def _dot(d: Domain, a: Sequence[Any], b: Sequence[Any]):
    acc = d.zero
    for x, y in zip(a, b):
        acc = acc + x * y
    return acc % d.q if d.kind == "gf" else acc


def _check_same_domain(a: Matrix, b: Matrix) -> None:
    if a.domain != b.domain:
        raise DomainError(f"domain mismatch: {a.domain.name} vs {b.domain.name}")


def _require_exact(M: Matrix, what: str) -> None:
    if not M.domain.exact:
        raise DomainError(f"{what} needs an exact domain; use real_rank for floats")


class _Echelon:
    """Incremental row echelon basis over an exact domain.

    ``reduce`` returns the canonical remainder of a vector modulo the span;
    ``add`` inserts a vector if it is independent of the current basis.
    """

    def __init__(self, domain: Domain):
        self.d = domain
        self.basis: list[tuple[int, list]] = []  # (pivot column, row with pivot 1)

    def reduce(self, v: Sequence[Any]) -> list:
        d = self.d
        v = list(v)
        for piv, b in self.basis:
            c = v[piv]
            if c != 0:
                v = [d.sub(x, d.mul(c, y)) for x, y in zip(v, b)]
        return v

    def add(self, v: Sequence[Any]) -> bool:
        d = self.d
        v = self.reduce(v)
        piv = next((j for j, x in enumerate(v) if x != 0), None)
        if piv is None:
            return False
        inv = d.inv(v[piv])
        v = [d.mul(inv, x) for x in v]
        # keep the basis fully reduced so that ``reduce`` is a single pass
        new_basis = []
        for p, b in self.basis:
            c = b[piv]
            if c != 0:
                b = [d.sub(x, d.mul(c, y)) for x, y in zip(b, v)]
            new_basis.append((p, b))
        new_basis.append((piv, v))
        self.basis = new_basis
        return True

    @property
    def rank(self) -> int:
        return len(self.basis)


def _independent_prefix_indices(vectors: Sequence[Sequence[Any]], domain: Domain) -> list[int]:
    ech = _Echelon(domain)
    return [i for i, v in enumerate(vectors) if ech.add(v)]


def mat_rank(M: Matrix) -> int:
    """Exact rank over GF(q) or the rationals."""
    _require_exact(M, "mat_rank")
    if M.domain.kind == "gf":
        return _kernels.gfq_rank(M.rows, M.domain.q)
    return len(_independent_prefix_indices(M.rows, M.domain))


def real_rank(M: Matrix, tol: float = DEFAULT_TOL) -> int:
    """Numerical rank by partial-pivoting elimination.

    A pivot counts as zero when ``|pivot| <= tol * max|M_ij|`` (the zero
    matrix uses a scale of 1).
    """
    if tol < 0:
        raise DomainError("tol must be nonnegative")
    a = np.array([[float(x) for x in r] for r in M.rows], dtype=float)
    if not np.all(np.isfinite(a)):
        raise DomainError("non-finite input")
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        scale = 1.0
    thresh = tol * scale
    m, n = a.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        piv = rank + int(np.argmax(np.abs(a[rank:, col])))
        if abs(a[piv, col]) <= thresh:
            continue
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        a[rank + 1:] -= np.outer(a[rank + 1:, col] / a[rank, col], a[rank])
        rank += 1
    return rank


def row_col_bases(M: Matrix) -> tuple[list[int], list[int]]:
    """Lexicographically first row basis and column basis (index lists).

    Greedy insertion in index order yields the lexicographically first
    basis of any matroid, so a single pass per side suffices.
    """
    _require_exact(M, "row_col_bases")
    rows = _independent_prefix_indices(M.rows, M.domain)
    cols = _independent_prefix_indices(list(zip(*M.rows)), M.domain)
    return rows, cols


def determinant(M: Matrix):
    _require_exact(M, "determinant")
    if not M.is_square:
        raise ShapeError(f"shape error: determinant of {M.shape} matrix")
    d = M.domain
    a = [list(r) for r in M.rows]
    n = len(a)
    det = d.one
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return d.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = d.neg(det)
        p = a[c][c]
        det = d.mul(det, p)
        inv = d.inv(p)
        for r in range(c + 1, n):
            f = a[r][c]
            if f != 0:
                f = d.mul(f, inv)
                a[r] = [d.sub(x, d.mul(f, y)) for x, y in zip(a[r], a[c])]
    return det


def _replace_column(A: Matrix, j: int, b: Sequence[Any]) -> Matrix:
    return Matrix(A.domain, [r[:j] + (b[i],) + r[j + 1:] for i, r in enumerate(A.rows)])


def cramer_solve(A: Matrix, b: Sequence[Any]) -> tuple:
    """Solve ``A x = b`` with Cramer's rule: ``x_j = det(A_j) / det(A)``."""
    _require_exact(A, "cramer_solve")
    if not A.is_square:
        raise ShapeError("shape error: Cramer's rule needs a square matrix")
    if len(b) != A.n_rows:
        raise ShapeError("right-hand side length does not match")
    d = A.domain
    b = tuple(d.coerce(x) for x in b)
    det = determinant(A)
    if det == 0:
        raise SingularError("singular system")
    return tuple(d.div(determinant(_replace_column(A, j, b)), det) for j in range(A.n_cols))


def column_expansion_check(M: Matrix, k: int) -> bool:
    """Check that every column beyond the first ``k`` is recovered from them.

    The coefficients for column ``l`` come from a Cramer solve against the
    leading ``k x k`` block; the identity is then checked on every row.
    """
    _require_exact(M, "column_expansion_check")
    if not 1 <= k <= min(M.shape):
        raise ShapeError(f"k={k} outside 1..{min(M.shape)}")
    d = M.domain
    lead = Matrix(d, [r[:k] for r in M.rows[:k]])
    if determinant(lead) == 0:
        raise SingularError("singular leading block")
    for ell in range(k, M.n_cols):
        coef = cramer_solve(lead, [M.rows[i][ell] for i in range(k)])
        for row in M.rows:
            if _dot(d, coef, row[:k]) != row[ell]:
                return False
    return True


def hadamard(A: Matrix, B: Matrix) -> Matrix:
    _check_same_domain(A, B)
    if A.shape != B.shape:
        raise ShapeError(f"shape mismatch {A.shape} vs {B.shape}")
    d = A.domain
    return Matrix(d, [[d.mul(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(A.rows, B.rows)])


def principal_submatrix(M: Matrix, S: Sequence[int]) -> Matrix:
    if not M.is_square:
        raise ShapeError("principal submatrix of a non-square matrix")
    S = sorted(S)
    if not S:
        raise ShapeError("empty index set")
    if S[0] < 0 or S[-1] >= M.n_rows:
        raise ShapeError(f"index set {S} out of range for n={M.n_rows}")
    return Matrix(M.domain, [[M.rows[i][j] for j in S] for i in S])


@dataclass(frozen=True)
class ZeroPattern:
    """Support signature: ``True`` marks a nonzero (``*``), ``False`` a zero."""

    symbols: tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return "".join("*" if s else "0" for s in self.symbols)

    @classmethod
    def parse(cls, text: str) -> ZeroPattern:
        return cls(tuple(c == "*" for c in text if c in "0*"))

    def count(self) -> int:
        return sum(self.symbols)


def zero_pattern(M: Matrix) -> ZeroPattern:
    return ZeroPattern(tuple(x != 0 for r in M.rows for x in r))
