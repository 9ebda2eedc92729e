from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wdwb import Monomial, Scalar, current_session, parse_scalar, render_scalar, session
from wdwb.errors import NotInvertible, OrderMismatch, ParseError


def S(text):
    return parse_scalar(text)


def test_zeta_squared_times_q():
    a = S("z4^1*q^(1/2)")
    assert a * a == -Scalar.q(1)


def test_invert_monomial():
    assert S("q^(-1)").inverse() == Scalar.q(1)


def test_conj_fixes_q():
    with session(8):
        assert S("z8^1*q").conj() == S("z8^7*q")


def test_invert_zero_and_multiterm():
    with pytest.raises(NotInvertible):
        Scalar.zero().inverse()
    with pytest.raises(NotInvertible):
        S("1 + q").inverse()


def test_parse_examples():
    assert S("1/2*z4^1*q^(1/2)") == Scalar.zeta(4) * Scalar.rational(Fraction(1, 2)) * Scalar.q(Fraction(1, 2))
    zero = S("0")
    assert zero.is_zero() and zero.terms == {}
    assert render_scalar(S("q^(-1) + 1")) == "1 + q^(-1)"


def test_parse_errors():
    with pytest.raises(ParseError) as exc:
        S("1 + * q")
    assert exc.value.position is not None
    with pytest.raises(OrderMismatch):
        S("z3^1")
    with pytest.raises(OrderMismatch):
        S("q^(1/3)")


def test_session_restored():
    before = current_session()
    with session(12, 6):
        assert current_session().m == 12
        assert S("z3^1") ** 3 == Scalar.one()
    assert current_session() == before


def test_monomial_parts():
    m = Monomial(1, Fraction(1, 2))
    assert m.root_order == 4
    assert m.elliptic * m.hyperbolic == m
    assert (m * m.inverse()).to_scalar() == Scalar.one()


# ---------------------------------------------------------------------------
# field laws on random sparse elements

exponents = st.sampled_from([Fraction(k, 2) for k in range(-4, 5)])
coeffs = st.integers(-3, 3)
roots = st.integers(0, 3)


@st.composite
def scalars(draw):
    s = Scalar.zero()
    for _ in range(draw(st.integers(0, 3))):
        s = s + Scalar.rational(draw(coeffs)) * Scalar.zeta(4, draw(roots)) * Scalar.q(draw(exponents))
    return s


@settings(max_examples=150, deadline=None)
@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == Scalar.zero()
    assert (a * b).conj() == a.conj() * b.conj()


@settings(max_examples=150, deadline=None)
@given(scalars())
def test_render_parse_roundtrip(a):
    assert parse_scalar(render_scalar(a)) == a


@settings(max_examples=100, deadline=None)
@given(roots, exponents)
def test_monomial_inverse(k, e):
    m = Scalar.zeta(4, k) * Scalar.q(e)
    assert m * m.inverse() == Scalar.one()
    assert m.as_monomial() == Monomial(k, e)
