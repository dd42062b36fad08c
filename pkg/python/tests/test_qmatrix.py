"""
Tests for the quantum matrix rewriting system.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.qmatrix import (
    GeneratorIndex,
    MatrixContext,
    NCPoly,
    format_word,
    is_normal,
    nc_mul,
    normal_form,
    parse_expression,
    parse_word,
    permutation_length,
    proportionality,
    quantum_minor,
    quasi_commutation_exponent,
)
from algebra.scalars import ONE, ZERO, ContextError, LaurentScalar, ScalarContext


@pytest.fixture
def ctx22():
    return MatrixContext(2, 2, ScalarContext(2, 2))


def X(i, j):
    return GeneratorIndex(i, j)


def test_same_row_rule(ctx22):
    q = ctx22.q
    assert normal_form(ctx22, [X(1, 2), X(1, 1)]) == NCPoly(ctx22, {(X(1, 1), X(1, 2)): q ** -1})


def test_same_column_rule(ctx22):
    q = ctx22.q
    assert normal_form(ctx22, [X(2, 1), X(1, 1)]) == NCPoly(ctx22, {(X(1, 1), X(2, 1)): q ** -1})


def test_antidiagonal_commutes(ctx22):
    assert normal_form(ctx22, [X(2, 1), X(1, 2)]) == NCPoly(ctx22, {(X(1, 2), X(2, 1)): ONE})


def test_diagonal_rule(ctx22):
    q = ctx22.q
    expected = NCPoly(
        ctx22,
        {
            (X(1, 1), X(2, 2)): ONE,
            (X(1, 2), X(2, 1)): -(q - q ** -1),
        },
    )
    assert normal_form(ctx22, [X(2, 2), X(1, 1)]) == expected


def test_normal_word_is_fixed(ctx22):
    word = (X(1, 1), X(1, 2), X(2, 2))
    assert is_normal(word)
    assert normal_form(ctx22, word) == NCPoly(ctx22, {word: ONE})


def test_quantum_determinant_is_central(ctx22):
    det = quantum_minor(ctx22, [1, 2], [1, 2])
    for g in ctx22.generators():
        x = NCPoly.generator(ctx22, g.row, g.col)
        assert nc_mul(det, x) == nc_mul(x, det)


def test_quantum_minor_expansion(ctx22):
    q = ctx22.q
    det = quantum_minor(ctx22, [1, 2], [1, 2])
    assert det.coefficient((X(1, 1), X(2, 2))) == ONE
    assert det.coefficient((X(1, 2), X(2, 1))) == -q
    assert len(det) == 2


def test_out_of_range_generator(ctx22):
    with pytest.raises(ContextError):
        ctx22.generator(3, 1)
    with pytest.raises(ContextError):
        normal_form(ctx22, [X(1, 3)])


def test_word_text_forms(ctx22):
    word = parse_word(ctx22, "X[1,2]X[2,1]")
    assert word == (X(1, 2), X(2, 1))
    assert format_word(word) == "X[1,2]X[2,1]"
    assert parse_word(ctx22, "1") == ()
    assert format_word(()) == "1"
    with pytest.raises(ValueError):
        parse_word(ctx22, "X[1,2]Y")


def test_parse_expression(ctx22):
    coeff, word = parse_expression(ctx22, "(1 - 1*u^4) * X[2,2]X[1,1]")
    assert coeff == LaurentScalar({0: 1, 4: -1})
    assert word == (X(2, 2), X(1, 1))
    assert parse_expression(ctx22, "3 * X[1,1]") == (LaurentScalar({0: 3}), (X(1, 1),))
    assert parse_expression(ctx22, "X[2,1]") == (ONE, (X(2, 1),))


def test_text_form_of_polynomial(ctx22):
    assert str(normal_form(ctx22, [X(1, 2), X(1, 1)])) == "(1*u^-2) * X[1,1]X[1,2]"
    assert str(NCPoly(ctx22)) == "0"


def test_quasi_commutation(ctx22):
    x11 = NCPoly.generator(ctx22, 1, 1)
    x12 = NCPoly.generator(ctx22, 1, 2)
    x22 = NCPoly.generator(ctx22, 2, 2)
    assert quasi_commutation_exponent(x11, x12) == -1
    assert quasi_commutation_exponent(x12, x11) == 1
    assert quasi_commutation_exponent(x11, x22) is None
    with pytest.raises(ValueError):
        quasi_commutation_exponent(NCPoly(ctx22), x11)


def test_proportionality(ctx22):
    det = quantum_minor(ctx22, [1, 2], [1, 2])
    q = ctx22.q
    assert proportionality(det.scale(q ** 3), det) == q ** 3
    assert proportionality(NCPoly(ctx22), det) == ZERO
    assert proportionality(NCPoly.generator(ctx22, 1, 1), det) is None


def test_classical_specialization(ctx22):
    value = normal_form(ctx22, [X(2, 2), X(1, 1)])
    assert value.specialize(1) == {(X(1, 1), X(2, 2)): Fraction(1)}


def test_homogeneous_parts(ctx22):
    mixed = NCPoly.generator(ctx22, 1, 1) + NCPoly.generator(ctx22, 1, 2)
    assert not mixed.is_homogeneous()
    parts = mixed.homogeneous_parts()
    assert set(parts) == {(1, 0), (0, 1)}
    assert quantum_minor(ctx22, [1, 2], [1, 2]).is_homogeneous()


def test_permutation_length():
    assert permutation_length((0, 1, 2)) == 0
    assert permutation_length((2, 1, 0)) == 3


def _word_strategy(rows, cols):
    gens = [X(i, j) for i in range(1, rows + 1) for j in range(1, cols + 1)]
    return st.lists(st.sampled_from(gens), max_size=4)


@pytest.mark.parametrize("rows,cols", [(2, 2), (2, 3), (3, 3)])
def test_rewriting_is_associative(rows, cols):
    ctx = MatrixContext(rows, cols, ScalarContext(min(rows, cols), max(rows, cols)))

    @settings(max_examples=60, deadline=None)
    @given(_word_strategy(rows, cols), _word_strategy(rows, cols), _word_strategy(rows, cols))
    def check(a, b, c):
        A, B, C = (normal_form(ctx, w) for w in (a, b, c))
        assert nc_mul(nc_mul(A, B), C) == nc_mul(A, nc_mul(B, C))

    check()


@settings(max_examples=60, deadline=None)
@given(_word_strategy(2, 3), _word_strategy(2, 3))
def test_normal_form_of_concatenation(a, b):
    ctx = MatrixContext(2, 3, ScalarContext(2, 3))
    assert normal_form(ctx, a + b) == nc_mul(normal_form(ctx, a), normal_form(ctx, b))
