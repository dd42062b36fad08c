"""
Tests for index sets, quantum Plücker coordinates and degree-2 relations.
"""

import random

import pytest

from algebra.grassmann import (
    GrassmannContext,
    IndexSet,
    QuadRelation,
    consecutive_data,
    consecutive_set,
    content,
    evaluation_matrix,
    minor,
    muir_extend,
    muir_window,
    product,
    quadratic_relations,
    recode_q,
    shift_set,
    tilde,
    w0_set,
)
from algebra.qmatrix import GeneratorIndex, NCPoly
from algebra.scalars import ONE, ContextError, LaurentScalar, RelationError, ff_kernel, same_span, specialized_rank


@pytest.fixture
def gr24():
    return GrassmannContext(2, 4)


def X(i, j):
    return GeneratorIndex(i, j)


def test_index_set_forms():
    assert IndexSet([4, 2]) == (2, 4)
    assert str(IndexSet([2, 4])) == "[2,4]"
    assert IndexSet.parse("[2,4]") == IndexSet.parse("2,4") == IndexSet.parse("24") == (2, 4)
    assert IndexSet.parse("[10, 12]") == (10, 12)
    with pytest.raises(ContextError):
        IndexSet([1, 1])
    with pytest.raises(ContextError):
        IndexSet([0, 2])


def test_cyclic_helpers():
    assert tilde(5, 4) == 1
    assert tilde(0, 4) == 4
    assert shift_set([3, 4], 1, 4) == (1, 4)
    assert shift_set([1, 2], -1, 4) == (1, 4)
    assert w0_set([1, 2], 4) == (3, 4)
    assert content([2, 4], 4) == (0, 1, 0, 1)


def test_context_bounds(gr24):
    assert len(gr24.subsets()) == 6
    assert gr24.subsets()[0] == (1, 2)
    with pytest.raises(ContextError):
        GrassmannContext(0, 4)
    with pytest.raises(ContextError):
        GrassmannContext(5, 4)
    with pytest.raises(ContextError):
        gr24.check_set([1, 5])
    with pytest.raises(ContextError):
        gr24.check_set([1, 2, 3])


def test_minor_expansions(gr24):
    q = gr24.q
    assert minor(gr24, [1, 2]) == NCPoly(gr24.matrix, {(X(1, 1), X(2, 2)): ONE, (X(1, 2), X(2, 1)): -q})
    assert minor(gr24, [1, 3]) == NCPoly(gr24.matrix, {(X(1, 1), X(2, 3)): ONE, (X(1, 3), X(2, 1)): -q})


def test_minor_outside_range(gr24):
    with pytest.raises(ContextError):
        minor(gr24, [2, 5])


def test_relation_count_gr24(gr24):
    relations = quadratic_relations(gr24)
    assert len(relations) == 16
    assert all(rel.holds() for rel in relations)


@pytest.mark.parametrize("value", [2, 3, 5, -7])
def test_relation_count_matches_specialized_rank(gr24, value):
    mat, products, _ = evaluation_matrix(gr24)
    assert len(products) == 36
    rank = specialized_rank(mat, value)
    assert rank == 20
    assert len(products) - rank == len(quadratic_relations(gr24))


@pytest.mark.slow
def test_kernel_span_ignores_row_order(gr24):
    mat, products, _ = evaluation_matrix(gr24)
    shuffled = list(mat)
    random.Random(24).shuffle(shuffled)
    kernel = ff_kernel(mat, len(products))
    assert kernel.dimension == 16
    assert same_span(kernel, ff_kernel(shuffled, len(products)))


@pytest.mark.parametrize("n", [3, 4])
def test_relation_count_gr1n(n):
    ctx = GrassmannContext(1, n)
    assert len(quadratic_relations(ctx)) == n * (n - 1) // 2


def test_gr13_commutation_relation():
    ctx = GrassmannContext(1, 3)
    q = ctx.q
    for rel in quadratic_relations(ctx):
        pairs = {(left, right): c for c, left, right in rel.terms}
        if set(pairs) == {(IndexSet([1]), IndexSet([2])), (IndexSet([2]), IndexSet([1]))}:
            assert pairs[(IndexSet([2]), IndexSet([1]))] == -q * pairs[(IndexSet([1]), IndexSet([2]))]
            break
    else:
        pytest.fail("no relation between [1][2] and [2][1]")


def test_relation_text_and_json(gr24):
    rel = QuadRelation(gr24, ((ONE, IndexSet([1, 2]), IndexSet([3, 4])),))
    assert str(rel) == "(1) [1,2][3,4] = 0"
    assert rel.to_json() == [{"coeff": "1", "left": [1, 2], "right": [3, 4]}]
    assert not rel.holds()


def test_product_is_cached_normal_form(gr24):
    I, J = IndexSet([1, 2]), IndexSet([3, 4])
    assert product(gr24, I, J) == minor(gr24, I) * minor(gr24, J)


def _commutation_in_gr14():
    ctx = GrassmannContext(1, 4)
    q = ctx.q
    return QuadRelation(ctx, ((ONE, IndexSet([1]), IndexSet([3])), (-q, IndexSet([3]), IndexSet([1]))))


def test_muir_extension_to_gr24():
    rel = _commutation_in_gr14()
    assert rel.holds()
    wide = muir_extend(rel, [1, 2, 3])
    assert wide.ctx == GrassmannContext(2, 4)
    assert wide.holds()
    assert [(left, right) for _, left, right in wide.terms] == [
        (IndexSet([1, 4]), IndexSet([3, 4])),
        (IndexSet([3, 4]), IndexSet([1, 4])),
    ]
    assert wide.terms[1][0] == -wide.ctx.q


def test_muir_extension_to_gr34():
    wide = muir_extend(_commutation_in_gr14(), [1, 3])
    assert wide.ctx == GrassmannContext(3, 4)
    assert wide.holds()
    assert wide.terms[0][1] == (1, 2, 4)


def test_muir_rejects_uncontained_sets():
    with pytest.raises(ContextError):
        muir_extend(_commutation_in_gr14(), [1, 2])


def test_muir_with_full_set_is_identity():
    rel = _commutation_in_gr14()
    assert muir_extend(rel, [1, 2, 3, 4]) is rel


@pytest.mark.parametrize("seed", range(5))
def test_muir_extends_every_gr14_relation(seed):
    rng = random.Random(seed)
    relations = quadratic_relations(GrassmannContext(1, 4))
    assert len(relations) == 6
    for rel in relations:
        target_m = rng.randint(1, 3)
        P = muir_window(rel, target_m, rng)
        assert all(set(s) <= set(P) for s in rel.index_sets())
        wide = muir_extend(rel, P)
        assert wide.ctx == GrassmannContext(target_m, 4)
        assert wide.holds()


def test_muir_window_sizes():
    rel = _commutation_in_gr14()
    assert muir_window(rel, 1, random.Random(0)) == (1, 2, 3, 4)
    assert muir_window(rel, 3, random.Random(0)) == (1, 3)
    assert set(muir_window(rel, 2, random.Random(0))) in ({1, 2, 3}, {1, 3, 4})
    with pytest.raises(ContextError):
        muir_window(rel, 4, random.Random(0))


def test_recode_q():
    assert recode_q(LaurentScalar({1: -1}), 1, 2) == LaurentScalar({2: -1})
    assert recode_q(LaurentScalar({0: 1, -2: 3}), 2, 3) == LaurentScalar({0: 1, -3: 3})
    with pytest.raises(RelationError):
        recode_q(LaurentScalar({1: 1}), 2, 3)


def test_consecutive_data(gr24):
    first = consecutive_data(gr24, 1)
    assert first.M == (1, 2)
    assert first.w == (2, 1)
    assert first.z == (3, 4)
    third = consecutive_data(gr24, 3)
    assert third.M == (3, 4)
    assert third.w == (4, 3)
    assert third.z == (1, 2)
    assert third.w_at(1) == 4
    assert third.z_at(2) == 2


def test_consecutive_set_wraps():
    assert consecutive_set(GrassmannContext(3, 5), 4) == (1, 4, 5)
