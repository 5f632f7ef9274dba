from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcmult.diffpoly import (
    DMono,
    DPoly,
    DVar,
    NEG_INF,
    POS_INF,
    OrderKind,
    compare,
    derive,
    leading_monomial,
    substitute_sum,
)

X = DPoly.var(DVar(0, 0))
X1 = DPoly.var(DVar(0, 1))
X2 = DPoly.var(DVar(0, 2))


def mono(*orders, base=0):
    return DMono.from_orders(orders, base=base)


# -- strategies ---------------------------------------------------------------

small_monos = st.lists(
    st.integers(min_value=0, max_value=3), min_size=0, max_size=3
).map(lambda hs: DMono.from_orders(hs))

small_coeffs = st.fractions(
    min_value=-4, max_value=4, max_denominator=3
).filter(lambda c: c != 0)

small_polys = st.lists(
    st.tuples(small_monos, small_coeffs), min_size=0, max_size=4
).map(DPoly)

orders_under_test = st.sampled_from(
    [OrderKind.LEX, OrderKind.DEGLEX, OrderKind.WLEX]
)

# monomials over two base variables, for admissibility tests
two_base_monos = st.lists(
    st.tuples(st.integers(0, 1), st.integers(0, 3), st.integers(1, 3)),
    min_size=0,
    max_size=3,
).map(lambda triples: DMono([(DVar(b, o), e) for b, o, e in triples]))


# -- DVar / DMono basics ------------------------------------------------------


def test_dvar_total_order_is_order_major():
    assert DVar(0, 0) < DVar(0, 1) < DVar(0, 2)
    # orders interleave bases: all order-0 variables below all order-1 ones
    assert DVar(1, 0) < DVar(0, 1)
    assert DVar(0, 1) < DVar(1, 1)


def test_mono_statistics():
    m = mono(0, 1, 1)  # x*(x')^2
    assert m.deg == 3
    assert m.tord == 2
    assert m.ord == 1
    assert m.lord == 0


def test_mono_one_sentinels():
    one = DMono.one()
    assert one.deg == 0
    assert one.tord == 0
    assert one.ord == NEG_INF
    assert one.lord == POS_INF
    assert one.is_one()


def test_mono_mul_div():
    a = mono(0, 1)
    b = mono(1, 2)
    p = a * b
    assert p == mono(0, 1, 1, 2)
    assert a.divides(p)
    assert p / a == b
    assert not mono(3).divides(p)
    with pytest.raises(ValueError):
        p / mono(3)


@given(small_monos, small_monos)
def test_mono_stats_multiplicative(a, b):
    p = a * b
    assert p.deg == a.deg + b.deg
    assert p.tord == a.tord + b.tord
    assert p.ord == max(a.ord, b.ord)
    assert p.lord == min(a.lord, b.lord)


# -- DPoly arithmetic ---------------------------------------------------------


def test_poly_canonical_and_exact():
    p = X * X + X * X
    assert p == 2 * X**2
    assert (p - p).is_zero()
    q = DPoly.constant(Fraction(1, 3)) * X
    assert (q + q + q) == X


def test_poly_equality_is_term_map_equality():
    assert X * X1 == X1 * X
    assert X != X1
    assert DPoly.zero() == 0
    assert DPoly.one() == 1


# -- derive -------------------------------------------------------------------


def test_derive_square_once():
    assert derive(X**2, 1) == 2 * X * X1


def test_derive_square_twice():
    # repeated product rule by hand: (x^2)'' = 2xx'' + 2(x')^2
    assert derive(X**2, 2) == 2 * X * X2 + 2 * X1**2


def test_derive_kills_constants():
    assert derive(DPoly.constant(7), 1).is_zero()
    assert derive(DPoly.constant(Fraction(3, 2)), 1).is_zero()


def test_derive_zero_times_is_identity():
    p = 3 * X**2 * X1 - X2
    assert derive(p, 0) == p


@given(small_polys, small_polys)
@settings(max_examples=100)
def test_leibniz(p, q):
    assert derive(p * q) == derive(p) * q + p * derive(q)


@given(small_polys, small_polys, small_coeffs)
def test_derive_linear(p, q, c):
    assert derive(p + q) == derive(p) + derive(q)
    assert derive(c * p) == c * derive(p)


# -- orderings ----------------------------------------------------------------


def test_wdeginvlex_paper_anchors():
    assert compare(mono(0), mono(1), OrderKind.WDEGINVLEX) < 0  # x < x'
    assert compare(mono(1), mono(2), OrderKind.WDEGINVLEX) < 0
    # x*x'' < (x')^2
    assert compare(mono(0, 2), mono(1, 1), OrderKind.WDEGINVLEX) < 0


@given(small_monos, st.sampled_from(list(OrderKind)))
def test_compare_reflexive(m, o):
    assert compare(m, m, o) == 0


@given(two_base_monos, two_base_monos, orders_under_test)
def test_compare_total_and_antisymmetric(a, b, o):
    c = compare(a, b, o)
    assert compare(b, a, o) == -c
    assert (c == 0) == (a == b)


@given(two_base_monos, two_base_monos, two_base_monos, orders_under_test)
@settings(max_examples=300)
def test_admissibility(a, b, c, o):
    # multiplicative: a < b implies a*c < b*c; and 1 <= a
    if compare(a, b, o) < 0:
        assert compare(a * c, b * c, o) < 0
    assert compare(DMono.one(), a, o) <= 0


@given(two_base_monos, two_base_monos, two_base_monos, orders_under_test)
@settings(max_examples=200)
def test_order_transitive(a, b, c, o):
    if compare(a, b, o) <= 0 and compare(b, c, o) <= 0:
        assert compare(a, c, o) <= 0


def test_lex_is_elimination_order():
    # any monomial mentioning an order->h variable beats anything of order <= h
    high = mono(3)
    low = mono(2, 2, 2, 2, 2)
    assert compare(high, low, OrderKind.LEX) > 0


# -- leading monomials ---------------------------------------------------------


def test_leading_monomial_deglex():
    p = 2 * X * X2 + X1**2
    m, c = leading_monomial(p, OrderKind.DEGLEX)
    assert m == mono(0, 2)
    assert c == 2


def test_leading_monomial_single_var():
    for o in OrderKind:
        m, c = leading_monomial(X, o)
        assert m == mono(0)
        assert c == 1


def test_leading_monomial_zero_errors():
    with pytest.raises(ValueError, match="no leading term"):
        leading_monomial(DPoly.zero(), OrderKind.LEX)


def test_leading_monomial_cube_fourth_derivative():
    # (x^3)^(4) under the weighted inverse ordering: h = 4 = 1*3 + 1,
    # so the leading monomial is (x')^2 * x''
    p = derive(X**3, 4)
    m, c = leading_monomial(p, OrderKind.WDEGINVLEX)
    assert m == mono(1, 1, 2)
    assert c == p.coeff(mono(1, 1, 2))
    assert c != 0


@pytest.mark.parametrize("m_exp", [1, 2, 3, 4])
def test_power_derivative_leading_monomial_closed_form(m_exp):
    p = DPoly.var(DVar(0, 0)) ** m_exp
    for h in range(13):
        q, r = divmod(h, m_exp)
        expected = DMono.from_orders([q] * (m_exp - r) + [q + 1] * r)
        got, _ = leading_monomial(derive(p, h), OrderKind.WDEGINVLEX)
        assert got == expected, (m_exp, h)


# -- substitute_sum -------------------------------------------------------------


def test_substitute_sum_linear():
    y1p = DPoly.var(DVar(0, 1))
    y2p = DPoly.var(DVar(1, 1))
    assert substitute_sum(X1, 2) == y1p + y2p


def test_substitute_sum_square():
    y1 = DPoly.var(DVar(0, 0))
    y2 = DPoly.var(DVar(1, 0))
    assert substitute_sum(X**2, 2) == y1**2 + 2 * y1 * y2 + y2**2


def test_substitute_sum_rejects_multivariate():
    y = DPoly.var(DVar(1, 0))
    with pytest.raises(ValueError):
        substitute_sum(X * y, 2)


@given(small_polys, small_polys, st.integers(1, 3))
@settings(max_examples=60)
def test_substitute_sum_is_homomorphism(p, q, s):
    assert substitute_sum(p * q, s) == substitute_sum(p, s) * substitute_sum(q, s)
    assert substitute_sum(p + q, s) == substitute_sum(p, s) + substitute_sum(q, s)
