import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from khtwist.errors import (InexactDivision, MalformedSyntax, UnitMismatch,
                            ZeroPolynomial)
from khtwist.laurent import (LaurentPoly, exact_divide, substitute,
                             to_half_units)


def poly_strategy(var="q", unit=1):
    return st.dictionaries(
        st.integers(min_value=-12, max_value=12),
        st.integers(min_value=-9, max_value=9),
        max_size=6,
    ).map(lambda d: LaurentPoly(d, var, unit))


@given(poly_strategy(), poly_strategy(), poly_strategy())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + LaurentPoly.zero() == a
    assert a * LaurentPoly.one() == a
    assert a - a == LaurentPoly.zero()


@given(poly_strategy())
def test_render_parse_round_trip(a):
    assert LaurentPoly.parse(a.render(), var="q", unit=1) == a


@given(poly_strategy(var="t", unit=2))
def test_render_parse_round_trip_half_units(a):
    assert LaurentPoly.parse(a.render(), var="t", unit=2) == a


@given(poly_strategy(), st.integers(min_value=0, max_value=5))
def test_pow_matches_repeated_product(a, n):
    expected = LaurentPoly.one()
    for _ in range(n):
        expected = expected * a
    assert a ** n == expected


def test_mdeg_mindeg():
    p = LaurentPoly({3: 1, -2: 4}, "t", 2)
    assert p.mdeg() == Fraction(3, 2)
    assert p.mindeg() == Fraction(-1)
    with pytest.raises(ZeroPolynomial):
        LaurentPoly.zero().mdeg()
    with pytest.raises(ZeroPolynomial):
        LaurentPoly.zero().mindeg()


@given(poly_strategy(), poly_strategy())
def test_exact_divide_inverts_product(a, b):
    if b.is_zero():
        return
    assert exact_divide(a * b, b) == a


def test_exact_divide_remainder_raises():
    q = LaurentPoly({1: 1}, "q", 1)
    # note (q + 1) / q = 1 + q^(-1) IS exact for Laurent polynomials;
    # q / (q + 1) is not
    assert exact_divide(q + 1, q) == LaurentPoly({0: 1, -1: 1}, "q", 1)
    with pytest.raises(InexactDivision):
        exact_divide(q, q + 1)
    with pytest.raises(ZeroPolynomial):
        exact_divide(q, LaurentPoly.zero("q", 1))


def test_unit_mismatch():
    q = LaurentPoly({1: 1}, "q", 1)
    t = LaurentPoly({1: 1}, "t", 2)
    with pytest.raises(UnitMismatch):
        q + t
    with pytest.raises(UnitMismatch):
        q * t


def test_substitute_kauffman_rule():
    # A^(-4) - A^4  ->  t - t^(-1)
    p = LaurentPoly({-4: 1, 4: -1}, "A", 1)
    out = substitute(p, "A->t^(-1/4)")
    assert out.var == "t" and out.unit == 4
    assert out == LaurentPoly({4: 1, -4: -1}, "t", 4)
    assert to_half_units(out) == LaurentPoly({2: 1, -2: -1}, "t", 2)


def test_substitute_euler_rule():
    # q -> -t^(1/2): odd exponents flip sign
    p = LaurentPoly({1: 1, 2: 1}, "q", 1)
    out = substitute(p, "q->-t^(1/2)")
    assert out == LaurentPoly({1: -1, 2: 1}, "t", 2)


def test_to_half_units_rejects_odd_quarters():
    p = LaurentPoly({1: 1}, "t", 4)
    with pytest.raises(UnitMismatch):
        to_half_units(p)


def test_parse_rejects_garbage():
    with pytest.raises(MalformedSyntax):
        LaurentPoly.parse("q^^2 +", var="q", unit=1)
