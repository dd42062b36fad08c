"""
Tests for exact Laurent scalars and fraction-free linear algebra.
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from algebra.scalars import (
    ONE,
    ZERO,
    InexactDivisionError,
    LaurentScalar,
    QgrError,
    ScalarContext,
    dot,
    ff_kernel,
    ff_rank,
    monomial_ratio,
    normalize_vector,
    same_span,
    scalar_arith,
    specialized_rank,
)

scalars = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=4).map(LaurentScalar)


def L(text: str) -> LaurentScalar:
    return LaurentScalar.parse(text)


def test_text_form():
    x = LaurentScalar({-2: -1, 0: 3, 4: 2})
    assert str(x) == "-1*u^-2 + 3 + 2*u^4"
    assert L("-1*u^-2 + 3 + 2*u^4") == x
    assert str(ZERO) == "0"
    assert str(ONE) == "1"


def test_parse_shorthand():
    assert L("u") == LaurentScalar.monomial(1)
    assert L("-u^-3") == LaurentScalar.monomial(-3, -1)
    assert L("1 - 1*u^4") == LaurentScalar({0: 1, 4: -1})
    with pytest.raises(ValueError):
        L("")
    with pytest.raises(ValueError):
        L("2*v")


def test_zero_terms_dropped():
    assert LaurentScalar({3: 0}) == ZERO
    assert LaurentScalar({1: 2}) - LaurentScalar({1: 2}) == ZERO
    assert not (L("u") - L("u"))


def test_q_and_p_for_gr24():
    ctx = ScalarContext(2, 4)
    assert ctx.q == LaurentScalar.monomial(2)
    assert ctx.p == LaurentScalar.monomial(2)
    assert ctx.p_pow(-2) == LaurentScalar.monomial(-4)
    assert ctx.constraint_holds()


@pytest.mark.parametrize("m,n", [(1, 3), (2, 4), (2, 5), (3, 5), (3, 6)])
def test_constraint_p_m_equals_q_squared(m, n):
    assert ScalarContext(m, n).constraint_holds()


def test_context_bounds():
    with pytest.raises(QgrError):
        ScalarContext(0, 3)
    with pytest.raises(ValueError):
        ScalarContext(4, 3)


def test_q_minus_q_inverse():
    ctx = ScalarContext(2, 4)
    assert ctx.q_minus_q_inverse() == ctx.q - ctx.q_pow(-1)


def test_divexact():
    a = L("1 - 1*u^4")
    b = L("1 - 1*u^2")
    assert a.divexact(b) == L("1 + u^2")
    with pytest.raises(InexactDivisionError):
        b.divexact(a)
    with pytest.raises(InexactDivisionError):
        L("3").divexact(2)
    with pytest.raises(ZeroDivisionError):
        a.divexact(ZERO)


def test_inverse_only_for_units():
    assert L("-u^3").inverse() == L("-u^-3")
    with pytest.raises(InexactDivisionError):
        L("2").inverse()
    with pytest.raises(InexactDivisionError):
        L("1 + u").inverse()
    assert isinstance(InexactDivisionError("x"), ArithmeticError)


def test_pow_and_negative_pow():
    q = ScalarContext(2, 4).q
    assert q ** 3 == LaurentScalar.monomial(6)
    assert q ** -2 == LaurentScalar.monomial(-4)
    assert L("1 + u") ** 0 == ONE


def test_evaluate_exact():
    assert L("-1*u^-2 + 3 + 2*u^4").evaluate(2) == Fraction(-1, 4) + 3 + 32
    assert L("1 - 1*u^4").evaluate(1) == 0


def test_monomial_ratio():
    ctx = ScalarContext(2, 4)
    a = L("1 + u^2")
    assert monomial_ratio(a, a.shift(4), ctx) == 2
    assert monomial_ratio(a, a.shift(-2), ctx) == -1
    assert monomial_ratio(a, a.shift(1), ctx) is None
    assert monomial_ratio(a, a + a, ctx) is None


def test_scalar_arith_dispatch():
    a, b = L("u"), L("1 + u")
    assert scalar_arith(a, b, "add") == L("1 + 2*u")
    assert scalar_arith(a, b, "mul") == L("u + u^2")
    assert scalar_arith(a, None, "neg") == L("-u")
    with pytest.raises(ValueError):
        scalar_arith(a, b, "div")


@given(scalars, scalars, scalars)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO


@given(scalars, scalars)
def test_divexact_inverts_multiplication(a, b):
    if b:
        assert (a * b).divexact(b) == a


@given(scalars)
def test_text_round_trip(a):
    assert LaurentScalar.parse(str(a)) == a


def test_kernel_of_simple_matrix():
    q = ScalarContext(2, 4).q
    # [1, -q] annihilated by (q, 1)
    mat = [[ONE, -q]]
    basis = ff_kernel(mat, 2)
    assert basis.dimension == 1
    assert basis.annihilates(mat)
    assert basis.vectors[0] == (q, ONE)


def test_kernel_rank_nullity_and_specialization():
    q = ScalarContext(1, 3).q
    mat = [
        [ONE, q, q * q],
        [q, q * q, q ** 3],
        [ONE, ONE, ONE],
    ]
    assert ff_rank(mat, 3) == 2
    assert specialized_rank(mat, 2) == 2
    basis = ff_kernel(mat, 3)
    assert basis.dimension == 1
    assert basis.annihilates(mat)
    assert all(dot(row, basis.vectors[0]) == ZERO for row in mat)


def test_kernel_full_rank_is_empty():
    mat = [[ONE, ZERO], [ZERO, ONE]]
    assert ff_kernel(mat, 2).dimension == 0


def test_normalize_vector_is_primitive_and_positive():
    vec = [L("-2 - 2*u^2"), L("-2*u^-2 - 2")]
    out = normalize_vector(vec)
    assert out == (L("u^2"), ONE)


def test_same_span():
    q = ScalarContext(2, 4).q
    mat = [[ONE, -q, ZERO]]
    a = ff_kernel(mat, 3)
    assert same_span(a, a)
    other = ff_kernel([[ONE, ZERO, ZERO]], 3)
    assert not same_span(a, other)
