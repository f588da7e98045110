from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from hurwitz_ring import CapExceeded, Caps, InvalidInput, NotAMember
from hurwitz_ring.group_core import (
    ClassData,
    GroupContext,
    Permutation,
    class_splitting,
    enumerate_elements,
    load_group,
    symmetric_group_spec,
)


def P(text, d):
    return Permutation.parse(text, d)


def test_composition_convention():
    a, b = P("(1 2)", 3), P("(2 3)", 3)
    # (a*b)(x) = a(b(x)): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
    ab = a * b
    assert ab.images == tuple(a.images[b.images[x]] for x in range(3))
    assert ab == P("(1 2 3)", 3)
    assert a.conjugate(b) == b * a * b.inverse()


def test_cycle_strings_roundtrip():
    p = P("(1 3 2)(4 5)", 5)
    assert P(p.to_cycle_string(), 5) == p
    assert P("()", 4).is_identity()
    assert p.order() == 6
    with pytest.raises(InvalidInput):
        Permutation((0, 0, 1))
    with pytest.raises(InvalidInput):
        P("1 2", 3)


@pytest.mark.parametrize("gens,d,order", [
    (["(1 2)"], 2, 2),
    (["(1 2)", "(2 3)"], 3, 6),
    (["(1 2)(3 4)", "(1 3)(2 4)"], 4, 4),
    (["(1 2)", "(1 2 3 4 5)"], 5, 120),
])
def test_enumerate_elements(gens, d, order):
    rows = enumerate_elements([P(g, d) for g in gens])
    assert len(rows) == order
    ref = oracles.closure([P(g, d).images for g in gens], d)
    assert {tuple(r) for r in rows.tolist()} == ref


def test_identity_has_id_zero_and_order_cap():
    g = GroupContext([P("(1 2)", 4), P("(1 2 3 4)", 4)])
    assert g.element(0).is_identity()
    with pytest.raises(CapExceeded):
        GroupContext([P("(1 2)", 6), P("(1 2 3 4 5 6)", 6)], Caps(max_order=100))


def test_classes():
    s3 = symmetric_group_spec(3).group
    assert sorted(len(c) for c in s3.classes) == [1, 2, 3]
    s4 = symmetric_group_spec(4).group
    assert len(s4.classes) == 5
    t = s4.index(P("(1 2)", 4))
    assert len(s4.classes[s4.class_of[t]]) == 6
    trivial = GroupContext([Permutation.identity(3)])
    assert [len(c) for c in trivial.classes] == [1]


def test_exponent_kills_every_element():
    g = symmetric_group_spec(4).group
    assert g.exponent == 12
    for x in range(g.order):
        y = g.identity
        for _ in range(g.exponent):
            y = g.mul(y, x)
        assert y == g.identity


def test_class_data_validation():
    g = symmetric_group_spec(3).group
    with pytest.raises(InvalidInput):
        ClassData.from_representatives(g, [Permutation.identity(3)], [1])
    with pytest.raises(InvalidInput):
        ClassData.from_representatives(g, [P("(1 2 3)", 3)], [1])  # does not generate
    with pytest.raises(InvalidInput):
        ClassData.from_representatives(g, [P("(1 2)", 3)], [0])


def test_class_splitting_examples(s3, s4):
    g = s4.group
    h = s4.registry.generated_by([g.index(P("(1 2)", 4)), g.index(P("(3 4)", 4))])
    assert len(h.d_h) == 2 and h.omega == 1
    whole = s4.registry.whole
    assert whole.omega == 0 and len(whole.d_h) == 1
    k = s3.registry.generated_by([s3.group.index(P("(1 2)", 3))])
    assert k.omega == 0 and [len(c) for c in k.d_h] == [1]


def test_registry_sizes_are_bell_numbers():
    # D-generated subgroups of S_d with transpositions are the products of S_A over set partitions
    for d, bell in ((3, 5), (4, 15), (5, 52)):
        assert len(symmetric_group_spec(d).registry) == bell


def test_registry_s3_members(s3):
    orders = sorted(h.order for h in s3.registry)
    assert orders == [1, 2, 2, 2, 6]
    assert s3.registry[0].order == 1


def test_abelianization(s3):
    g = s3.group
    whole = s3.registry.whole
    assert whole.abelianization_order == 2
    assert whole.abelianization_coset(g.index(P("(1 2)", 3))) != 0
    assert whole.abelianization_coset(g.index(P("(1 2 3)", 3))) == 0


def test_abelian_subgroup_cosets_are_elements(s4):
    h = s4.registry.generated_by([s4.group.index(P("(1 2)", 4)), s4.group.index(P("(3 4)", 4))])
    assert h.abelianization_order == h.order == 4
    assert len({h.abelianization_coset(int(x)) for x in h.elements}) == 4


@given(st.data())
def test_abelianization_is_a_homomorphism(data):
    spec = symmetric_group_spec(4)
    h = data.draw(st.sampled_from(list(spec.registry)))
    els = [int(x) for x in h.elements]
    x = data.draw(st.sampled_from(els))
    y = data.draw(st.sampled_from(els))
    xy = spec.group.mul(x, y)
    assert h.abelianization_coset(xy) == h.coset_mul(h.abelianization_coset(x), h.abelianization_coset(y))


@given(st.data())
def test_splitting_refines_along_inclusion(data):
    spec = symmetric_group_spec(4)
    regs = [h for h in spec.registry if h.omega is not None]
    a = data.draw(st.sampled_from(regs))
    b = data.draw(st.sampled_from([h for h in regs if a.is_subgroup_of(h)]))
    assert a.omega >= 0 and b.omega >= 0
    for cl in a.d_h:
        assert len({b.dh_index(int(x)) for x in cl}) == 1


def test_omega_zero_iff_tau_bijective(s4):
    for h in s4.registry:
        if h.omega is None:
            continue
        assert (h.omega == 0) == (len(set(h.tau)) == len(h.tau) == len(s4.classes.classes))


def test_load_group_errors(tmp_path):
    with pytest.raises(InvalidInput):
        load_group({"degree": 3, "generators": ["(1 2)"]})
    with pytest.raises(InvalidInput):
        load_group({"degree": 3, "generators": ["(1 2)", "(1 2 3)"], "classes": ["(1 2)"], "xi": {"0": 0}})
    p = tmp_path / "g.json"
    p.write_text('{"degree": 3, "generators": [[[1, 2]], [[1, 2, 3]]], "classes": [[[1, 2]]]}')
    spec = load_group(p)
    assert spec.group.order == 6 and spec.name == "g"


def test_membership():
    g = symmetric_group_spec(3).group
    with pytest.raises(NotAMember):
        g.index(P("(1 2)", 4))


def test_subgroup_count_matches_bruteforce_s4(s4):
    # every subgroup generated by transpositions, found by brute force over subsets
    g = s4.group
    trans = [int(x) for x in s4.classes.union()]
    found = set()
    for mask in range(1, 1 << len(trans)):
        ids = [t for i, t in enumerate(trans) if mask >> i & 1]
        found.add(frozenset(int(x) for x in g.closure(ids)))
    found.add(frozenset([g.identity]))
    assert {h.element_set for h in s4.registry} == found
    assert math.comb(4, 2) == len(trans)
    assert np.all(np.diff([h.order for h in s4.registry]) >= 0)
