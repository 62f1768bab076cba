from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from minranklab.algebra import GF, QQ, RR
from minranklab.errors import InputError, ShapeError
from minranklab.poly import MultiPoly, poly_eval, polys_from_json, rational_poly


def x(i, n=2, dom=QQ):
    return MultiPoly.variable(dom, n, i)


def test_examples():
    F2 = GF(2)
    assert poly_eval(x(0, 1, F2), [0]) == 0
    P = x(0, 1, F2) ** 2 + x(0, 1, F2)
    assert all(P([t]) == 0 for t in (0, 1))
    x1, x2, y1, y2 = MultiPoly.variables(F2, 4)
    Q = (1 + x1 + y1) * (1 + x2 + y2)
    assert Q([0, 0, 0, 1]) == 0
    assert all(Q([a, b, a, b]) == 1 for a in (0, 1) for b in (0, 1))


def test_no_zero_terms_and_degree():
    P = x(0) * x(1) - x(1) * x(0)
    assert P.is_zero() and P.terms == {} and P.degree == 0
    assert (x(0) ** 3 + x(1)).degree == 3


def test_arity_and_domain():
    with pytest.raises(ShapeError, match="arity"):
        x(0).evaluate([1])
    with pytest.raises(InputError):
        MultiPoly(RR, 1)
    with pytest.raises(InputError):
        x(0) + x(0, 3)


@given(st.lists(st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3)), max_size=5),
       st.lists(st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3)), max_size=5),
       st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_ring_homomorphism(a, b, pt):
    P, Q = rational_poly(2, a), rational_poly(2, b)
    assert (P * Q)(pt) == P(pt) * Q(pt)
    assert (P + Q)(pt) == P(pt) + Q(pt)
    assert (P - Q)(pt) == P(pt) - Q(pt)
    assert MultiPoly.from_json(P.to_json()) == P


def test_json_rational_coefficients():
    P = rational_poly(1, [((1,), Fraction(1, 3)), ((0,), 2)])
    obj = P.to_json()
    assert {"exps": [1], "coef": "1/3"} in obj["terms"]
    assert polys_from_json([obj]) == [P]
    with pytest.raises(InputError):
        MultiPoly.from_json({"terms": []})


def test_over_and_embed():
    P = rational_poly(1, [((1,), 3)])
    assert P.over(GF(2))([1]) == 1
    E = P.embed(3, 1)
    assert E([5, 2, 7]) == 6
