"""
Tests for vanishing patterns, Le-diagram counts and dihedral orbits.
"""

from concurrent.futures import ThreadPoolExecutor

import pytest

from algebra.grassmann import GrassmannContext, IndexSet
from algebra.scalars import ContextError, RelationError
from combinatorics.hspec import (
    Generator,
    LeDiagram,
    UnionFind,
    VanishingPattern,
    act_on_pattern,
    count_le_diagrams,
    dihedral_orbits,
    enumerate_tnn_vanishing_patterns,
    generator_relations_check,
    h_spectrum,
    pattern_of,
    separability_invariance_check,
    shapes_in_box,
    single_minor_patterns,
    weakly_separated,
)
from combinatorics.tnn import RationalMatrix, identity_padded


@pytest.fixture(scope="module")
def gr24():
    return GrassmannContext(2, 4)


@pytest.fixture(scope="module")
def spectrum24(gr24):
    return h_spectrum(gr24, grid_bound=1)


def test_act_on_pattern(gr24):
    P = VanishingPattern.of([[3, 4]])
    assert act_on_pattern(gr24, Generator.C, P) == VanishingPattern.of([[1, 4]])
    assert act_on_pattern(gr24, "w0", P) == VanishingPattern.of([[1, 2]])
    assert act_on_pattern(gr24, "c", VanishingPattern.of([])) == VanishingPattern.of([])
    with pytest.raises(ValueError):
        act_on_pattern(gr24, "s1", P)


def test_act_rejects_bad_sets(gr24):
    with pytest.raises(ContextError):
        act_on_pattern(gr24, Generator.C, VanishingPattern.of([[1, 2, 3]]))


def test_pattern_text():
    assert str(VanishingPattern.of([[2, 4], [1, 3]])) == "{13,24}"
    assert VanishingPattern.of([[1, 3]]).to_json() == [[1, 3]]
    ctx = GrassmannContext(1, 2)
    assert VanishingPattern.augmentation(ctx).to_json() == "augmentation"
    assert str(VanishingPattern.augmentation(ctx)) == "{all}"


def test_pattern_of_matrix(gr24):
    A = identity_padded(2, 4)
    assert pattern_of(gr24, A) == VanishingPattern.of([[1, 3], [1, 4], [2, 3], [2, 4], [3, 4]])
    with pytest.raises(ContextError):
        pattern_of(gr24, identity_padded(2, 5))


def test_le_counts():
    assert count_le_diagrams(1, 2) == 3
    assert count_le_diagrams(2, 4) == 33
    with pytest.raises(ContextError):
        count_le_diagrams(3, 2)


def test_shapes_in_box():
    assert shapes_in_box(1, 2) == [(), (1,), (2,)]
    assert len(shapes_in_box(2, 2)) == 6


def test_le_condition():
    assert LeDiagram((2, 2), ((1, 1), (1, 1))).is_le()
    assert not LeDiagram((2, 2), ((0, 1), (1, 0))).is_le()
    assert LeDiagram((2, 2), ((1, 0), (0, 1))).is_le()
    with pytest.raises(ContextError):
        LeDiagram((1, 2), ((1,), (1, 1)))


def test_gr12_patterns():
    patterns = enumerate_tnn_vanishing_patterns(GrassmannContext(1, 2), grid_bound=1)
    assert patterns == [
        VanishingPattern.of([]),
        VanishingPattern.of([[1]]),
        VanishingPattern.of([[2]]),
    ]


@pytest.mark.parametrize("m,n", [(1, 3), (2, 3)])
def test_pooled_scan_matches_serial_scan(m, n):
    ctx = GrassmannContext(m, n)
    with ThreadPoolExecutor(max_workers=2) as pool:
        pooled = enumerate_tnn_vanishing_patterns(ctx, grid_bound=1, pool=pool)
    assert pooled == enumerate_tnn_vanishing_patterns(ctx, grid_bound=1)
    assert len(pooled) == count_le_diagrams(m, n)


def test_gr24_patterns_match_le_count(gr24, spectrum24):
    patterns = spectrum24[:-1]
    assert len(patterns) == 33
    assert patterns[0] == VanishingPattern.of([])
    assert VanishingPattern.of(gr24.subsets()) not in patterns
    assert spectrum24[-1] == VanishingPattern.augmentation(gr24)
    assert len(spectrum24) == 34


def test_grid_bound_must_be_positive(gr24):
    with pytest.raises(ContextError):
        enumerate_tnn_vanishing_patterns(gr24, grid_bound=0)


def test_generator_relations(gr24, spectrum24):
    assert generator_relations_check(gr24, spectrum24)


def test_gr24_orbit_counts(gr24, spectrum24):
    assert len(dihedral_orbits(gr24, spectrum24, ["c"])) == 11
    assert len(dihedral_orbits(gr24, spectrum24, ["c", "w0"])) == 10


def test_single_minor_orbits(gr24):
    partition = dihedral_orbits(gr24, single_minor_patterns(gr24))
    assert len(partition) == 2
    assert sorted(partition.sizes) == [2, 4]
    body = partition.to_json(single_minor_patterns(gr24))
    assert body["count"] == 2
    assert body["generators"] == ["c"]
    assert body["patterns"][0] == ["{12}", "{14}", "{23}", "{34}"]


def test_orbits_need_closed_input(gr24):
    with pytest.raises(RelationError):
        dihedral_orbits(gr24, [VanishingPattern.of([[1, 2]])])
    P = VanishingPattern.of([])
    with pytest.raises(ContextError):
        dihedral_orbits(gr24, [P, P])


def test_union_find():
    uf = UnionFind(range(5))
    uf.union(0, 1)
    uf.union(3, 4)
    uf.union(1, 4)
    assert uf.find(0) == uf.find(3)
    assert uf.find(2) != uf.find(0)


def test_weak_separation():
    assert weakly_separated([1, 2], [3, 4], 4)
    assert weakly_separated([1, 2], [2, 3], 4)
    assert not weakly_separated([1, 3], [2, 4], 4)
    assert weakly_separated([1, 2, 4], [2, 3, 5], 5) is False
    assert weakly_separated([1, 2], [1, 2], 4)
    with pytest.raises(ContextError):
        weakly_separated([1], [1, 2], 4)


@pytest.mark.parametrize("m,n", [(2, 4), (2, 5), (3, 6)])
def test_separability_is_dihedral_invariant(m, n):
    assert separability_invariance_check(GrassmannContext(m, n))


def test_pattern_of_totally_positive_point(gr24):
    A = RationalMatrix.from_rows([[1, 1, 0, -1], [0, 1, 1, 1]])
    assert pattern_of(gr24, A) == VanishingPattern.of([])
    assert IndexSet([1, 2]) not in pattern_of(gr24, A).vanishing
