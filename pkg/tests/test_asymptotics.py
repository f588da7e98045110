from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hurwitz_ring import InsufficientData, OmegaUndefined, SettingViolated
from hurwitz_ring.asymptotics import (
    average_leading_coefficient,
    count_likely_maps,
    enumerate_likely_maps,
    enumerate_really_likely,
    leading_constant,
    multidiscriminant_census,
    non_splitter_period,
    stabilization_report,
)
from hurwitz_ring.group_core import Permutation
from hurwitz_ring.monoid import MonoidTable


def klein_like(spec):
    g = spec.group
    return spec.registry.generated_by([g.index(Permutation.parse("(1 2)", 4)), g.index(Permutation.parse("(3 4)", 4))])


def test_count_examples(s4):
    whole = s4.registry.whole
    assert [count_likely_maps(whole, s4.classes, n) for n in range(5)] == [1] * 5
    h = klein_like(s4)
    assert [count_likely_maps(h, s4.classes, n) for n in range(6)] == [1, 2, 3, 4, 5, 6]
    assert leading_constant(h, s4.classes) == Fraction(1)


def test_omega_undefined(s4):
    with pytest.raises(OmegaUndefined):
        count_likely_maps(s4.registry.trivial, s4.classes, 2)


def test_really_likely_example(s4):
    h = klein_like(s4)
    psis = [m.psi for m in enumerate_really_likely(h, s4.classes, 4)]
    assert psis == [(0, 4), (2, 2), (4, 0)]


@given(st.data())
def test_formula_matches_enumeration(data):
    spec = data.draw(st.sampled_from(["s4", "d4"]))
    from conftest import fixture_group

    spec = fixture_group(spec)
    h = data.draw(st.sampled_from([h for h in spec.registry if h.omega is not None]))
    n = data.draw(st.integers(0, 12))
    assert count_likely_maps(h, spec.classes, n) == len(enumerate_likely_maps(h, spec.classes, n))


def test_non_splitter_period_and_really_likely(s4):
    for h in s4.registry:
        if h.omega != 0:
            continue
        k = non_splitter_period(h, s4.classes)
        assert k == 2
        for n in range(9):
            assert bool(enumerate_really_likely(h, s4.classes, n)) == (n % k == 0)
    with pytest.raises(SettingViolated):
        non_splitter_period(klein_like(s4), s4.classes)


def test_census_observed_maps_are_really_likely(s4_table):
    for h in s4_table.registry:
        if h.omega is None:
            continue
        census = multidiscriminant_census(s4_table, h)
        assert census.all_likely and census.exact_really_likely


def test_stabilization_non_splitters(s4_table, s4_hilbert):
    for h in s4_table.registry:
        if h.omega != 0 or h.order == 1:
            continue
        rep = stabilization_report(s4_table, h, s4_hilbert)
        assert rep.period == 2 and rep.value == 1
        assert rep.sandwich_ok


def test_stabilization_symmetric_threshold(s4_table, s4_hilbert):
    rep = stabilization_report(s4_table, s4_table.registry.whole, s4_hilbert)
    assert (rep.period, rep.value, rep.threshold) == (2, 1, 6)


def test_trivial_group_report(s4_table, s4_hilbert):
    rep = stabilization_report(s4_table, s4_table.registry.trivial, s4_hilbert)
    assert rep.value == 0 and rep.series[0] == 1


def test_splitter_growth(s4_table, s4_hilbert):
    h = klein_like(s4_table.spec)
    rep = stabilization_report(s4_table, h, s4_hilbert)
    assert rep.series[4:21:2] == list(range(1, 10))
    assert 0.25 <= rep.ratio_min <= rep.ratio_max <= 0.5
    assert rep.sandwich_ok and rep.psi_value == 1


def test_insufficient_window(s4):
    small = MonoidTable(s4, 4)
    with pytest.raises(InsufficientData):
        stabilization_report(small, klein_like(s4))
    with pytest.raises(InsufficientData):
        average_leading_coefficient(small, klein_like(s4))


def test_average_leading_coefficient(s4_table, s4_hilbert):
    h = klein_like(s4_table.spec)
    est = average_leading_coefficient(s4_table, h, s4_hilbert, n=20)
    assert est.s == 2 and est.h_ab == 4
    assert est.expected == 1 and est.relative_error <= 0.25
    whole = average_leading_coefficient(s4_table, s4_table.registry.whole, s4_hilbert, n=20, expected=1)
    assert whole.s == 1 and whole.h_ab == 2 and abs(whole.estimate - 1) <= 0.25


def test_average_leading_coefficient_setting(d4):
    table = MonoidTable(d4, 8)
    with pytest.raises(SettingViolated):
        average_leading_coefficient(table, d4.registry.whole)
