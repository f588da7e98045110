"""Property checks shared by ``hurwitz-ring verify`` and the test suite.

Each check returns a :class:`CheckResult`; failures carry short human-readable
descriptions of the offending inputs.
"""

from __future__ import annotations

import dataclasses
import itertools

import numpy as np

from .asymptotics import count_likely_maps, enumerate_likely_maps
from .braid import (
    GTuple,
    apply_word,
    equivalent,
    multidiscriminant,
    orbit_members,
    random_braid_word,
    random_product_one_tuple,
    random_tuple,
)
from .group_core import GroupSpec
from .kernels import active_backend
from .monoid import MonoidTable, factor, factorization_hypothesis, hilbert_table


@dataclasses.dataclass
class CheckResult:
    name: str
    cases: int
    failures: list[str] = dataclasses.field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"name": self.name, "cases": self.cases, "ok": self.ok, "failures": self.failures[:20]}


def _letters(spec: GroupSpec) -> np.ndarray:
    return np.array(sorted(spec.classes.union()), dtype=np.int64)


def feasible_lengths(spec: GroupSpec, max_length: int, min_length: int = 2) -> list[int]:
    """Lengths at which a tuple of letters from D can have product 1."""
    g = spec.group
    letters = _letters(spec)
    reach = {g.identity}
    out = []
    for n in range(1, max_length + 1):
        reach = {g.mul(int(a), int(b)) for a in reach for b in letters}
        if n >= min_length and g.identity in reach:
            out.append(n)
    return out


def sample_product_one(spec: GroupSpec, rng: np.random.Generator, lengths: list[int]) -> GTuple:
    n = lengths[int(rng.integers(len(lengths)))]
    return random_product_one_tuple(spec.group, n, rng, _letters(spec))


def braid_invariance(spec: GroupSpec, samples: int, rng: np.random.Generator,
                     max_word: int = 50, max_length: int = 8) -> CheckResult:
    """Product, generated subgroup and multidiscriminant survive random braid words."""
    group = spec.group
    letters = _letters(spec)
    whole = spec.registry.whole
    res = CheckResult("braid_invariance", samples)
    for _ in range(samples):
        t = random_tuple(group, int(rng.integers(2, max_length + 1)), rng, letters)
        w = random_braid_word(int(rng.integers(0, max_word + 1)), len(t), rng)
        u = apply_word(w, t)
        if (u.product != t.product or u.generated != t.generated
                or multidiscriminant(whole, u) != multidiscriminant(whole, t)):
            res.failures.append(f"{t!r} under {w}")
    return res


def braid_lemmas(spec: GroupSpec, samples: int, rng: np.random.Generator,
                 max_length: int = 6) -> CheckResult:
    """Rotation, commutation of product-1 blocks and conjugation by ``<t>``."""
    lengths = feasible_lengths(spec, max_length)
    half = [n for n in lengths if n <= max(lengths[0], max_length // 2)]
    res = CheckResult("rotation_commutation_conjugation", samples)
    for _ in range(samples):
        t = sample_product_one(spec, rng, lengths)
        if not equivalent(t, t.rotate(1)):
            res.failures.append(f"rotation of {t!r}")
        a = sample_product_one(spec, rng, half)
        b = sample_product_one(spec, rng, half)
        if not equivalent(a + b, b + a):
            res.failures.append(f"commutation of {a!r} and {b!r}")
        inside = sorted(t.generated)
        h = inside[int(rng.integers(len(inside)))]
        if not equivalent(t, t.conjugate(h)):
            res.failures.append(f"conjugation of {t!r} by {h}")
    return res


def backend_agreement(spec: GroupSpec, samples: int, rng: np.random.Generator,
                      max_length: int = 6) -> CheckResult:
    """The numba and numpy orbit kernels return identical orbits."""
    res = CheckResult("backend_agreement", samples)
    if active_backend() != "numba":
        res.cases = 0
        return res
    lengths = feasible_lengths(spec, max_length)
    for _ in range(samples):
        t = sample_product_one(spec, rng, lengths)
        if orbit_members(t, backend="numba") != orbit_members(t, backend="numpy"):
            res.failures.append(repr(t))
    return res


def likely_formula(spec: GroupSpec, max_n: int) -> CheckResult:
    """Binomial product for the number of likely maps against enumeration."""
    res = CheckResult("likely_map_formula", 0)
    for h in spec.registry:
        if h.omega is None:
            continue
        for n in range(max_n + 1):
            res.cases += 1
            a = count_likely_maps(h, spec.classes, n)
            b = len(enumerate_likely_maps(h, spec.classes, n))
            if a != b:
                res.failures.append(f"H{h.id} n={n}: {a} vs {b}")
    return res


def hilbert_consistency(table: MonoidTable) -> CheckResult:
    """Per-subgroup counts add up to the totals and to the component lists."""
    hil = hilbert_table(table)
    res = CheckResult("hilbert_consistency", table.max_degree + 1)
    for n in range(table.max_degree + 1):
        per = sum(hil.hf(h.id, n) for h in table.registry)
        if per != hil.totals[n] or per != len(table.components(n)):
            res.failures.append(f"degree {n}: {per} vs {hil.totals[n]}")
    return res


def multiplication_consistency(table: MonoidTable) -> CheckResult:
    """Multiset products agree with concatenating orbit representatives."""
    res = CheckResult("multiplication_consistency", 0)
    top = table.max_enumerated
    for n in range(1, top + 1):
        for m in range(1, top - n + 1):
            for a, b in itertools.product(table.components(n), table.components(m)):
                res.cases += 1
                if table.multiply(a, b) != table.multiply_by_orbit(a, b):
                    res.failures.append(f"{a.canonical} * {b.canonical}")
    return res


def factorization(table: MonoidTable) -> CheckResult:
    """Every pair satisfying the factorization hypothesis factors inside ``<y>``."""
    res = CheckResult("factorization", 0)
    comps = table.all_components()
    for y in comps:
        for x in comps:
            if x.degree > y.degree or not factorization_hypothesis(table, y, x):
                continue
            res.cases += 1
            z = factor(table, y, x)
            if z is None or z.subgroup_id != y.subgroup_id:
                res.failures.append(f"y={y.canonical} x={x.canonical}")
    return res


def symmetric_checks(table: MonoidTable) -> list[CheckResult]:
    """Signature bijection and the closed formula, for ``S_d`` with transpositions."""
    from .symmetric import census_count, check_signature_bijection, hf_closed_form

    d = table.group.degree
    bij = CheckResult("signature_bijection", table.max_enumerated + 1)
    for n in range(table.max_enumerated + 1):
        rep = check_signature_bijection(table, n)
        if not rep.ok:
            bij.failures.append(f"degree {n}: {rep}")
    formula = CheckResult("closed_formula", 0)
    for n in range(1, table.max_degree // 2 + 1):
        formula.cases += 1
        a, b = hf_closed_form(d, n), census_count(d, 2 * n)
        if a != b or len(table.components(2 * n)) != b:
            formula.failures.append(f"n={n}: formula {a}, census {b}, table {len(table.components(2 * n))}")
    return [bij, formula]


def is_symmetric_transpositions(spec: GroupSpec) -> bool:
    import math

    g = spec.group
    if g.order != math.factorial(g.degree) or len(spec.classes.classes) != 1 or spec.classes.xi != (1,):
        return False
    rep = g.element(int(g.classes[spec.classes.classes[0]][0]))
    cyc = rep.cycles()
    return len(cyc) == 1 and len(cyc[0]) == 2
