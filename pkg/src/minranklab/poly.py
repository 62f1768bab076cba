"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

import json
from typing import Any, Iterable, Mapping, Sequence

from .algebra import QQ, Domain
from .errors import InputError, ShapeError

Exps = tuple[int, ...]


class MultiPoly:
    """Polynomial in ``num_vars`` variables over an exact domain.

    ``terms`` maps exponent tuples to nonzero coefficients.  The zero
    polynomial has no terms and degree 0.
    """

    __slots__ = ("domain", "num_vars", "terms")

    def __init__(self, domain: Domain, num_vars: int, terms: Mapping[Sequence[int], Any] | None = None):
        if not domain.exact:
            raise InputError("polynomials need an exact coefficient domain")
        if num_vars < 0:
            raise InputError("num_vars must be nonnegative")
        clean: dict[Exps, Any] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars or any(e < 0 for e in exps):
                raise ShapeError(f"exponent vector {exps} does not fit {num_vars} variables")
            c = domain.add(clean.get(exps, domain.zero), domain.coerce(c))
            if c == 0:
                clean.pop(exps, None)
            else:
                clean[exps] = c
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def constant(cls, domain: Domain, num_vars: int, c: Any) -> MultiPoly:
        return cls(domain, num_vars, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, domain: Domain, num_vars: int, i: int) -> MultiPoly:
        exps = [0] * num_vars
        exps[i] = 1
        return cls(domain, num_vars, {tuple(exps): 1})

    @classmethod
    def variables(cls, domain: Domain, num_vars: int) -> list[MultiPoly]:
        return [cls.variable(domain, num_vars, i) for i in range(num_vars)]

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.domain != self.domain or other.num_vars != self.num_vars:
                raise InputError("polynomials live in different rings")
            return other
        return MultiPoly.constant(self.domain, self.num_vars, other)

    def __add__(self, other) -> MultiPoly:
        other = self._lift(other)
        terms = dict(self.terms)
        d = self.domain
        for e, c in other.terms.items():
            terms[e] = d.add(terms.get(e, d.zero), c)
        return MultiPoly(d, self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        d = self.domain
        return MultiPoly(d, self.num_vars, {e: d.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> MultiPoly:
        other = self._lift(other)
        d = self.domain
        out: dict[Exps, Any] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = d.add(out.get(e, d.zero), d.mul(c1, c2))
        return MultiPoly(d, self.num_vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise InputError("negative power")
        out = MultiPoly.constant(self.domain, self.num_vars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.domain, self.num_vars, self.terms) == (other.domain, other.num_vars, other.terms)

    def __hash__(self) -> int:
        return hash((self.domain, self.num_vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            mono = "*".join(f"x{i + 1}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(e) if p)
            c = self.terms[e]
            parts.append(f"{c}*{mono}" if mono and c != 1 else (mono or str(c)))
        return " + ".join(parts)

    def evaluate(self, point: Sequence[Any]):
        if len(point) != self.num_vars:
            raise ShapeError(f"arity mismatch: {len(point)} values for {self.num_vars} variables")
        d = self.domain
        point = [d.coerce(x) for x in point]
        acc = d.zero
        for e, c in self.terms.items():
            t = c
            for x, p in zip(point, e):
                if p:
                    t = d.mul(t, x if p == 1 else (pow(x, p, d.q) if d.kind == "gf" else x**p))
            acc = d.add(acc, t)
        return acc

    __call__ = evaluate

    def over(self, domain: Domain) -> MultiPoly:
        """Same polynomial with coefficients mapped into ``domain``."""
        if domain == self.domain:
            return self
        return MultiPoly(domain, self.num_vars, self.terms)

    def embed(self, num_vars: int, offset: int = 0) -> MultiPoly:
        """View as a polynomial in ``num_vars`` variables, shifted by ``offset``."""
        if offset + self.num_vars > num_vars:
            raise ShapeError("embedding does not fit")
        pad_right = num_vars - offset - self.num_vars
        return MultiPoly(self.domain, num_vars,
                         {(0,) * offset + e + (0,) * pad_right: c for e, c in self.terms.items()})

    def to_json(self) -> dict:
        d = self.domain
        terms = [{"exps": list(e), "coef": d.to_json(c)} for e, c in sorted(self.terms.items())]
        return {"num_vars": self.num_vars, "domain": d.name, "terms": terms}

    @classmethod
    def from_json(cls, obj: dict | str, domain: Domain | None = None) -> MultiPoly:
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            if domain is None:
                domain = Domain.parse(obj.get("domain", "rational"))
            terms: dict[Exps, Any] = {}
            for t in obj["terms"]:
                e = tuple(t["exps"])
                terms[e] = domain.add(terms.get(e, domain.zero), domain.coerce(t["coef"]))
            return cls(domain, int(obj["num_vars"]), terms)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed polynomial JSON: {exc}") from exc


def poly_eval(P: MultiPoly, point: Sequence[Any], domain: Domain | None = None):
    """Evaluate ``P`` at ``point``, first mapping coefficients into ``domain`` if given."""
    if domain is not None:
        P = P.over(domain)
    return P.evaluate(point)


def polys_from_json(obj: list | str, domain: Domain | None = None) -> list[MultiPoly]:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return [MultiPoly.from_json(p, domain) for p in obj]


def rational_poly(num_vars: int, terms: Iterable[tuple[Sequence[int], Any]]) -> MultiPoly:
    return MultiPoly(QQ, num_vars, dict((tuple(e), c) for e, c in terms))
