from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hurwitz_ring import InsufficientData, InvalidInput
from hurwitz_ring.braid import equivalent, orbit_members, random_product_one_tuple
from hurwitz_ring.group_core import Permutation, symmetric_group_spec
from hurwitz_ring.monoid import MonoidTable
from hurwitz_ring.symmetric import (
    Multigraph,
    Signature,
    census_count,
    check_signature_bijection,
    component_census_sd,
    component_signature,
    finite_differences_degree,
    hf_closed_form,
    is_squares_form,
    leading_coefficient,
    monomial_tuple,
    rewriting_classes,
    seven_gamma_v_tuples,
    signature,
    stirling2,
    tuple_to_multigraph,
    verify_presentation,
)


def test_tuple_to_multigraph_examples():
    m = tuple_to_multigraph(3, [(1, 2), (1, 2)])
    assert m.edges == (((1, 2), 2),)
    m = tuple_to_multigraph(3, [Permutation.parse(c, 3) for c in ("(1 2)", "(2 3)", "(1 2)", "(2 3)")])
    assert m.multiplicity(1, 2) == 2 and m.multiplicity(2, 3) == 2
    assert tuple_to_multigraph(3, []).n_edges == 0
    with pytest.raises(InvalidInput):
        tuple_to_multigraph(3, [Permutation.parse("(1 2 3)", 3)])
    with pytest.raises(InvalidInput):
        Multigraph(3, (((2, 2), 1),))


def test_signature_examples():
    s = signature(Multigraph.from_pairs(3, [(1, 2), (1, 2)]))
    assert s == Signature(((1, 2), (3,)), (2, 0))
    s = signature(Multigraph.from_pairs(3, [(1, 2), (2, 3)]))
    assert s == Signature(((1, 2, 3),), (2,))
    s = signature(Multigraph.from_pairs(4, [(1, 2)] + [(3, 4)] * 3))
    assert s.edge_counts == (1, 3) and len(s.blocks) == 2


def test_census_examples():
    c = component_census_sd(3, 4)
    assert len(c) == 4
    assert sorted(s.nontrivial()[0] for s, _ in c) == [((1, 2), 2), ((1, 2, 3), 2), ((1, 3), 2), ((2, 3), 2)]
    assert len(component_census_sd(4, 6)) == 17
    assert component_census_sd(3, 5) == []
    assert component_census_sd(4, 0)[0][1] == "1"


@pytest.mark.parametrize("d", range(1, 7))
def test_census_count_matches_listing(d):
    for n in range(0, 13, 2):
        assert census_count(d, n) == len(component_census_sd(d, n))


def test_stirling_values():
    assert [stirling2(5, k) for k in range(6)] == [0, 1, 15, 25, 10, 1]
    assert stirling2(0, 0) == 1 and stirling2(3, 4) == 0


@pytest.mark.parametrize("d", range(2, 7))
def test_closed_formula_matches_census(d):
    for n in range(1, 9):
        assert hf_closed_form(d, n) == census_count(d, 2 * n), (d, n)


def test_closed_formula_at_zero():
    # valid for n >= 1; at n = 0 the census has the empty component and the formula has none
    assert [hf_closed_form(d, 0) for d in range(2, 6)] == [0, 0, 0, 0]
    assert census_count(4, 0) == 1


def test_hilbert_shapes():
    assert census_count(3, 2) == 3 and all(census_count(3, 2 * n) == 4 for n in range(2, 9))
    assert all(census_count(4, 2 * n) == 3 * n + 8 for n in range(3, 12))
    assert census_count(4, 4) == 13 != 3 * 2 + 8


@pytest.mark.parametrize("d", range(2, 8))
def test_polynomial_degree_and_leading_coefficient(d):
    dp = d // 2
    vals = [census_count(d, 2 * n) for n in range(d - 1, d - 1 + dp + 3)]
    assert finite_differences_degree(vals) == dp - 1
    # (dp-1)-th difference equals (dp-1)! times the leading coefficient
    diffs = vals
    for _ in range(dp - 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    import math

    assert diffs[0] == pytest.approx(math.factorial(dp - 1) * leading_coefficient(d))


@pytest.mark.parametrize("d", [3, 4, 5])
def test_unique_full_component(d):
    for n in range(0, 17):
        full = sum(1 for s, _ in component_census_sd(d, n) if len(s.blocks) == 1)
        assert full == (1 if n % 2 == 0 and n >= 2 * d - 2 else 0)


@pytest.mark.parametrize("d,top", [(2, 10), (3, 10), (4, 8)])
def test_signature_bijection(d, top):
    table = MonoidTable(symmetric_group_spec(d), top)
    for n in range(top + 1):
        rep = check_signature_bijection(table, n)
        assert rep.ok, rep


@given(seed=st.integers(0, 2**32 - 1), half=st.integers(1, 4))
def test_squares_normal_form(seed, half):
    spec = symmetric_group_spec(4)
    rng = np.random.default_rng(seed)
    t = random_product_one_tuple(spec.group, 2 * half, rng, spec.classes.union())
    assert any(is_squares_form(m) for m in orbit_members(t))


@given(seed=st.integers(0, 2**32 - 1))
def test_signature_is_braid_invariant(seed):
    spec = symmetric_group_spec(5)
    rng = np.random.default_rng(seed)
    t = random_product_one_tuple(spec.group, 6, rng, spec.classes.union())
    sig = component_signature(5, t.perms())
    for m in orbit_members(t)[::97]:
        assert component_signature(5, [spec.group.element(e) for e in m]) == sig


@pytest.mark.parametrize("ijk", list(itertools.permutations((1, 2, 3))) + [(1, 3, 4), (2, 4, 1)])
def test_seven_gamma_v_moves(ijk):
    spec = symmetric_group_spec(4)
    start, gamma, vee = seven_gamma_v_tuples(spec, *ijk)
    for t in gamma + vee:
        assert equivalent(start, t)


def test_presentation_examples(s4_table):
    spec = s4_table.spec
    key = lambda *pairs: s4_table.component_of_tuple(monomial_tuple(spec, list(pairs)))
    assert key((1, 2), (3, 4)) != key((1, 2), (1, 3))
    assert key((1, 2), (3, 4)) == key((3, 4), (1, 2))
    assert key((1, 2), (2, 3)) == key((1, 3), (2, 3)) == key((1, 2), (1, 3))


def test_presentation_s3_relation_is_the_full_component(s3_table):
    spec = s3_table.spec
    k = s3_table.component_of_tuple(monomial_tuple(spec, [(1, 2), (2, 3)]))
    assert s3_table.subgroup(k).order == 6
    assert sorted(len(c) for c in rewriting_classes(3, 4)) == [1, 1, 1, 3]


@pytest.mark.parametrize("d", [3, 4])
def test_verify_presentation(d, s3_table, s4_table):
    rep = verify_presentation(d, {3: s3_table, 4: s4_table}[d])
    assert rep.ok, rep.details


def test_verify_presentation_needs_degree_six(s4):
    with pytest.raises(InsufficientData):
        verify_presentation(4, MonoidTable(s4, 4))
