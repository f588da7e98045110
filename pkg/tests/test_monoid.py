from __future__ import annotations

import itertools
import json
from importlib.resources import files

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from hurwitz_ring import CapExceeded, Caps
from hurwitz_ring.braid import GTuple
from hurwitz_ring.group_core import Permutation, symmetric_group_spec
from hurwitz_ring.monoid import (
    MonoidTable,
    count_product_one,
    factor,
    hilbert_table,
    in_I,
    in_I_star,
    in_J,
    in_J_star,
    in_R,
    lemma_degree_bound,
    non_factorizable,
)
from hurwitz_ring.symmetric import census_count


def _oracle_components(spec, name, n):
    data = json.loads((files("hurwitz_ring") / "data" / f"{name}.json").read_text())
    d = data["degree"]

    def conv(g):
        return Permutation.parse(g, d).images if isinstance(g, str) else Permutation.from_cycles(g, d).images

    gens = [conv(g) for g in data["generators"]]
    reps = [conv(r) for r in data["classes"]]
    return oracles.components(gens, reps, list(spec.classes.xi), d, n)


@pytest.mark.parametrize("name,top", [("s3", 6), ("s4", 6), ("d4", 4), ("q8", 4)])
def test_components_match_bruteforce_oracle(name, top):
    from conftest import fixture_group

    spec = fixture_group(name)
    table = MonoidTable(spec, top)
    g = spec.group
    for n in range(top + 1):
        ref = _oracle_components(spec, name, n)
        got = table.components(n)
        assert len(got) == len(ref)
        assert [tuple(g.element(e).images for e in k.canonical) for k in got] == [r[0] for r in ref]
        assert [table.subgroup(k).element_set for k in got] == [
            frozenset(g.index(Permutation(p)) for p in r[1]) for r in ref]


def test_s3_small_degrees(s3_table):
    assert [len(s3_table.components(n)) for n in range(7)] == [1, 0, 3, 0, 4, 0, 4]
    assert sorted(s3_table.subgroup(k).order for k in s3_table.components(2)) == [2, 2, 2]
    assert sorted(s3_table.subgroup(k).order for k in s3_table.components(4)) == [2, 2, 2, 6]


def test_degree_mu_and_canonical_invariants(s4_table):
    g = s4_table.group
    for n in range(s4_table.max_enumerated + 1):
        for k in s4_table.components(n):
            t = GTuple(g, k.canonical)
            assert t.product == g.identity
            assert sum(t.class_vector) == n
            assert sum(k.mu) == n


def test_identity_and_commutativity(s4_table):
    e = s4_table.identity
    assert e.degree == 0 and e.canonical == ()
    small = [k for n in range(1, 5) for k in s4_table.components(n)]
    for a in small:
        assert s4_table.multiply(a, e) == a
    for a, b in itertools.product(small, repeat=2):
        assert s4_table.multiply(a, b) == s4_table.multiply(b, a)


def test_multiplication_agrees_with_orbit_lookup(s4_table):
    for a, b in itertools.product(s4_table.components(2), s4_table.components(4)):
        assert s4_table.multiply(a, b) == s4_table.multiply_by_orbit(a, b)


@given(st.data())
def test_associativity_sample(s4_table, data):
    comps = [k for n in (2, 4, 6) for k in s4_table.components(n)]
    a, b, c = (data.draw(st.sampled_from(comps)) for _ in range(3))
    m = s4_table.multiply
    assert m(m(a, b), c) == m(a, m(b, c))


def test_product_example_s3(s3_table):
    g = s3_table.group
    x12 = s3_table.component_of_tuple(GTuple.parse(g, ["(1 2)", "(1 2)"]))
    x23 = s3_table.component_of_tuple(GTuple.parse(g, ["(2 3)", "(2 3)"]))
    prod = s3_table.multiply(x12, x23)
    assert prod.degree == 4 and s3_table.subgroup(prod).order == 6


def test_every_component_is_a_product_of_generators(s4_table):
    for k in s4_table.all_components():
        assert s4_table.from_multiset(s4_table.multiset(k)) == k


@pytest.mark.parametrize("d", [3, 4, 5])
def test_non_factorizable_symmetric(d, s3_table, s4_table, s5_table):
    table = {3: s3_table, 4: s4_table, 5: s5_table}[d]
    nf = non_factorizable(table)
    assert len(nf.components) == d * (d - 1) // 2
    assert all(k.degree == 2 for k in nf.components)
    assert table.identity not in nf.components


def test_factor_examples(s3_table):
    y = [k for k in s3_table.components(6) if s3_table.subgroup(k).order == 6][0]
    x = s3_table.component_of_tuple(GTuple.parse(s3_table.group, ["(1 2)", "(1 2)"]))
    z = factor(s3_table, y, x)
    assert z is not None and z.degree == 4 and z.subgroup_id == y.subgroup_id
    assert factor(s3_table, y, y) == s3_table.identity


def test_hilbert_examples(s3_table, s4_table, s4_hilbert):
    hs3 = hilbert_table(s3_table)
    top = s3_table.registry.whole.id
    assert hs3.series(top) == [1 if n % 2 == 0 and n >= 4 else 0 for n in range(17)]
    assert hs3.series(0) == [1] + [0] * 16
    g = s4_table.group
    h = s4_table.registry.generated_by([g.index(Permutation.parse("(1 2)", 4)), g.index(Permutation.parse("(3 4)", 4))])
    assert [s4_hilbert.hf(h.id, n) for n in (4, 6, 8)] == [1, 2, 3]


def test_hilbert_partition(s4_table, s4_hilbert):
    for n in range(s4_table.max_degree + 1):
        assert sum(s4_hilbert.hf(h.id, n) for h in s4_table.registry) == s4_hilbert.totals[n]
    ids = {h.id for h in s4_table.registry}
    assert all(k.subgroup_id in ids for k in s4_table.all_components())


def test_closure_degrees_against_census(s3_table, s4_table):
    assert s3_table.max_enumerated == 15
    assert s3_table.generators_certified and s3_table.degree_status(16) == "closure-exact"
    assert s4_table.max_enumerated == 11
    for n in range(12, 21):
        assert len(s4_table.components(n)) == census_count(4, n)
        assert s4_table.degree_status(n) in {"closure-separated", "closure-exact"}


def test_closure_consistency_reaches_stability(s4_table):
    stable = s4_table.closure_stable_from()
    assert stable is not None and stable <= 6


def test_count_product_one_matches_bruteforce(s3):
    g = s3.group
    letters = [int(x) for x in s3.classes.union()]
    for n in range(6):
        brute = sum(1 for t in itertools.product(letters, repeat=n) if g.product(t) == g.identity)
        assert count_product_one(s3, n) == brute


def test_lemma_bound(s3, s4):
    # max(exp, (exp - 1) * prod |c|^xi)
    assert lemma_degree_bound(s3) == max(6, 5 * 3)
    assert lemma_degree_bound(s4) == max(12, 11 * 6)


def test_explicit_enumeration_cap(s4):
    with pytest.raises(CapExceeded):
        MonoidTable(s4, 8, Caps(max_orbit=1000), max_enumerated=8)
    table = MonoidTable(s4, 8, Caps(max_orbit=1000))
    # degree 5 has no product-1 tuples at all, so it is enumerated for free
    assert table.max_enumerated == 5 and table.degree_status(6) != "enumerated"


def test_ideal_identities(s4_table):
    reg = s4_table.registry
    comps = s4_table.all_components()
    for h in reg:
        for k in comps:
            gx = s4_table.subgroup(k)
            assert in_I_star(h, gx) == (in_I(h, gx) and in_J_star(h, gx))
            assert in_J(h, gx) == (in_I(h, gx) or in_J_star(h, gx))
            assert in_R(h, gx) != in_J_star(h, gx)


def test_symmetric_fixture_table_sizes(s4_table):
    assert [len(s4_table.components(n)) for n in range(0, 21, 2)] == [1, 6, 13, 17, 20, 23, 26, 29, 32, 35, 38]
    assert symmetric_group_spec(4).group.order == 24
