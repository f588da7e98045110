"""The twelve acceptance criteria, one test each. Every test records a PASS/FAIL
line that is printed in the terminal summary."""

from __future__ import annotations

import json
import math
import time

import numpy as np
import pytest

from conftest import fixture_group, record
from hurwitz_ring import checks
from hurwitz_ring.asymptotics import (
    average_leading_coefficient,
    count_likely_maps,
    enumerate_likely_maps,
    stabilization_report,
)
from hurwitz_ring.braid import GTuple, apply_word, multidiscriminant, random_braid_word, random_tuple
from hurwitz_ring.cli import run
from hurwitz_ring.group_core import Permutation, symmetric_group_spec
from hurwitz_ring.monoid import MonoidTable, factor, factorization_hypothesis, hilbert_table
from hurwitz_ring.spectrum import spec_description, spec_sd
from hurwitz_ring.symmetric import (
    census_count,
    check_signature_bijection,
    component_census_sd,
    hf_closed_form,
    verify_presentation,
)

GROUPS = ("s3", "s4", "d4", "q8")


def klein_like(spec):
    g = spec.group
    return spec.registry.generated_by([g.index(Permutation.parse("(1 2)", 4)), g.index(Permutation.parse("(3 4)", 4))])


def test_criterion_01_braid_invariance():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    failures = 0
    cases = 0
    for name in GROUPS:
        spec = fixture_group(name)
        g = spec.group
        letters = spec.classes.union()
        whole = spec.registry.whole
        for _ in range(2500):
            t = random_tuple(g, int(rng.integers(2, 9)), rng, letters)
            w = random_braid_word(int(rng.integers(0, 51)), len(t), rng)
            u = apply_word(w, t)
            subgroups = [whole]
            own = spec.registry.lookup(t.generated)
            if own is not None and own.omega is not None:
                subgroups.append(own)
            ok = (u.product == t.product and u.generated == t.generated
                  and all(multidiscriminant(h, u) == multidiscriminant(h, t) for h in subgroups))
            failures += not ok
            cases += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and cases == 10_000 and elapsed < 30
    record(1, ok, f"{cases} pairs, {failures} failures, {elapsed:.1f}s")
    assert ok


def test_criterion_02_braid_lemmas():
    start = time.perf_counter()
    results = [checks.braid_lemmas(fixture_group(name), 1000, np.random.default_rng(7 + i), max_length=8)
               for i, name in enumerate(GROUPS)]
    elapsed = time.perf_counter() - start
    failures = sum(len(r.failures) for r in results)
    ok = failures == 0 and elapsed < 120
    record(2, ok, f"4 x 1000 tuples (rotation, commutation, conjugation), {failures} failures, {elapsed:.1f}s")
    assert ok, [r.failures[:3] for r in results]


def test_criterion_03_hurwitz_uniqueness(s3_table, s4_table):
    bad = []
    for d, table in ((3, s3_table), (4, s4_table)):
        hil = hilbert_table(table)
        top = table.registry.whole.id
        for n in range(15):
            want = 1 if n % 2 == 0 and n >= 2 * d - 2 else 0
            if hil.hf(top, n) != want:
                bad.append((d, n, hil.hf(top, n)))
    # S_4 degrees 12 and 14 come from the closure strategy; cross-check with the census
    for n in (12, 14):
        full = sum(1 for s, _ in component_census_sd(4, n) if len(s.blocks) == 1)
        if full != 1 or len(s4_table.components(n)) != census_count(4, n):
            bad.append((4, n, "census"))
    for n in range(15):
        full = sum(1 for s, _ in component_census_sd(5, n) if len(s.blocks) == 1)
        if full != (1 if n % 2 == 0 and n >= 8 else 0):
            bad.append((5, n, full))
    record(3, not bad, f"d = 3, 4 (tables), d = 5 (census), n <= 14; mismatches {bad}")
    assert not bad


def test_criterion_04_signature_bijection():
    # tables are built inside the timed region so the limit covers enumeration
    start = time.perf_counter()
    tables = [(MonoidTable(symmetric_group_spec(d), top), top) for d, top in ((2, 10), (3, 10), (4, 10), (5, 8))]
    bad = []
    checked = 0
    for table, top in tables:
        for n in range(top + 1):
            assert table.degree_status(n) == "enumerated"
            rep = check_signature_bijection(table, n)
            checked += 1
            if not rep.ok:
                bad.append((table.group.degree, n))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 600
    record(4, ok, f"{checked} (d, n) pairs, d <= 4 n <= 10 and d = 5 n <= 8, failures {bad}, {elapsed:.1f}s")
    assert ok


def test_criterion_05_closed_formula():
    bad = [(d, n) for d in range(1, 6) for n in range(1, 9) if hf_closed_form(d, n) != census_count(d, 2 * n)]
    linear = all(census_count(4, 2 * n) == 3 * n + 8 for n in range(3, 9))
    dp = 2
    lead = math.factorial(4) // (2 ** dp * math.factorial(dp) * math.factorial(dp - 1))
    slope = census_count(4, 2 * 9) - census_count(4, 2 * 8)
    ok = not bad and linear and lead == 3 == slope
    record(5, ok, f"formula vs census d <= 5, 1 <= n/2 <= 8: mismatches {bad}; d = 4 HF(2n) = 3n + 8 "
                  f"for n >= 3: {linear}; leading coefficient {slope}")
    assert ok


def test_criterion_06_growth_law(s4_table, s4_hilbert):
    h = klein_like(s4_table.spec)
    assert h.omega == 1
    series = [s4_hilbert.hf(h.id, 2 * m) for m in range(2, 11)]
    exact = series == [m - 1 for m in range(2, 11)]
    top_half = range(5, 11)
    sandwich = all(0.5 * m <= s4_hilbert.hf(h.id, 2 * m) <= 1.0 * m for m in top_half)
    ok = exact and sandwich
    record(6, ok, f"HF_H(2m) for m = 2..10: {series}; 0.5 m <= HF <= m on m = 5..10: {sandwich}")
    assert ok


def test_criterion_07_non_splitter_stabilization(s3_table, s4_table, s4_hilbert):
    rows = []
    for table, hil in ((s3_table, hilbert_table(s3_table)), (s4_table, s4_hilbert)):
        for h in table.registry:
            if h.omega != 0 or h.order == 1:
                continue
            rep = stabilization_report(table, h, hil)
            rows.append((table.group.degree, h.id, rep.period, rep.value))
    ok = bool(rows) and all(p == 2 and v == 1 for _, _, p, v in rows)
    record(7, ok, f"{len(rows)} non-splitters, (period, value) = {sorted({(p, v) for *_, p, v in rows})}")
    assert ok


def test_criterion_08_average_leading_coefficient(s4_table, s4_hilbert):
    h = klein_like(s4_table.spec)
    est = average_leading_coefficient(s4_table, h, s4_hilbert, n=20, expected=1)
    ok = abs(est.estimate - 1) <= 0.25
    record(8, ok, f"estimate {est.estimate:.3f} at n = 20 (s = {est.s}, |H^ab| = {est.h_ab})")
    assert ok


def test_criterion_09_likely_formula(s3, s4):
    cases = 0
    bad = []
    for spec in (s3, s4):
        for h in spec.registry:
            if h.omega is None:
                continue
            for n in range(31):
                cases += 1
                if count_likely_maps(h, spec.classes, n) != len(enumerate_likely_maps(h, spec.classes, n)):
                    bad.append((spec.name, h.id, n))
    record(9, not bad, f"{cases} (H, n) cases, mismatches {bad}")
    assert not bad


def test_criterion_10_factorization(s3_table, s4_table):
    pairs = 0
    failures = []
    for table in (s3_table, s4_table):
        comps = table.all_components()
        for y in comps:
            for x in comps:
                if x.degree > y.degree or not factorization_hypothesis(table, y, x):
                    continue
                pairs += 1
                z = factor(table, y, x)
                if z is None or (z.degree and z.subgroup_id != y.subgroup_id):
                    failures.append((table.spec.name, y.canonical, x.canonical))
    ok = pairs > 0 and not failures
    record(10, ok, f"{pairs} pairs satisfying the hypothesis, {len(failures)} failures")
    assert ok


def test_criterion_11_spectrum(capsys, s4_table, s4_hilbert):
    code = run(["spectrum", "--symmetric", "3"])
    out = json.loads(capsys.readouterr().out)
    strata_ok = code == 0 and out["n_strata"] == 4
    krull_ok = all(spec_sd(d).krull_dimension == d // 2 for d in range(2, 9))
    desc = spec_description(s4_table, s4_hilbert)
    omegas = [h.omega for h in s4_table.registry if h.omega is not None]
    generic_ok = desc.krull_dimension == max(omegas) + 1 == 2
    ok = strata_ok and krull_ok and generic_ok
    record(11, ok, f"S_3 strata {out['n_strata']}; Krull = floor(d/2) for d <= 8: {krull_ok}; "
                   f"S_4 generic max Omega + 1 = {desc.krull_dimension}")
    assert ok


def test_criterion_12_presentation(s3_table, s4_table, s5_table):
    reports = [verify_presentation(d, t) for d, t in ((3, s3_table), (4, s4_table), (5, s5_table))]
    ok = all(r.ok for r in reports)
    record(12, ok, "d = 3, 4, 5 at degree <= 6: " + ", ".join(
        f"d={r.d} relations={r.relations_ok} rewriting={r.completeness_ok}" for r in reports))
    assert ok
