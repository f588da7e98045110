"""Likely maps, growth of ``HF_H`` and stabilization for non-splitters.

A map ``psi: D_H -> Z>=0`` is H-likely of degree n when the entries over each
class c of D sum to ``n * xi(c)``; it is really-likely when the product of the
abelianization images ``prod c~^psi(c)`` is trivial in ``H^ab``.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from fractions import Fraction

from .braid import GTuple, multidiscriminant
from .errors import InsufficientData, OmegaUndefined, SettingViolated
from .group_core import ClassData, SubgroupRecord
from .monoid import HilbertTable, MonoidTable, hilbert_table

TOLERANCE = 0.25


@dataclasses.dataclass(frozen=True)
class LikelyMap:
    psi: tuple[int, ...]
    degree: int
    is_really_likely: bool


def _fibers(h: SubgroupRecord) -> list[list[int]]:
    """For each class position of D, the indices of D_H mapping to it."""
    if h.omega is None:
        raise OmegaUndefined(f"subgroup of order {h.order} misses some class of D")
    fib: list[list[int]] = [[] for _ in range(h.n_classes)]
    for i, t in enumerate(h.tau):
        fib[t].append(i)
    return fib


def count_likely_maps(h: SubgroupRecord, classes: ClassData, n: int) -> int:
    """``prod_c binom(n xi(c) + f_c - 1, f_c - 1)`` with ``f_c = |tau^-1(c)|``."""
    fib = _fibers(h)
    return math.prod(math.comb(n * x + len(f) - 1, len(f) - 1) for f, x in zip(fib, classes.xi))


def leading_constant(h: SubgroupRecord, classes: ClassData) -> Fraction:
    """``C_H = prod_c xi(c)^(f_c - 1) / (f_c - 1)!``, so that ``|L_n| ~ C_H n^Omega``."""
    fib = _fibers(h)
    out = Fraction(1)
    for f, x in zip(fib, classes.xi):
        out *= Fraction(x ** (len(f) - 1), math.factorial(len(f) - 1))
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def pi_tilde(h: SubgroupRecord, psi: tuple[int, ...]) -> int:
    """Coset id in ``H^ab`` of ``prod_c c~^psi(c)``."""
    acc = 0
    for cl, k in zip(h.d_h, psi):
        base = h.abelianization_coset(int(cl[0]))
        for _ in range(k % h.coset_order(base) if base else 0):
            acc = h.coset_mul(acc, base)
    return acc


def enumerate_likely_maps(h: SubgroupRecord, classes: ClassData, n: int) -> list[LikelyMap]:
    """Every H-likely map of degree n, by brute force over compositions."""
    fib = _fibers(h)
    per_class = [list(_compositions(n * x, len(f))) for f, x in zip(fib, classes.xi)]
    out = []
    for choice in itertools.product(*per_class):
        psi = [0] * len(h.d_h)
        for f, parts in zip(fib, choice):
            for i, v in zip(f, parts):
                psi[i] = v
        psi = tuple(psi)
        out.append(LikelyMap(psi, n, pi_tilde(h, psi) == 0))
    out.sort(key=lambda m: m.psi)
    return out


def enumerate_really_likely(h: SubgroupRecord, classes: ClassData, n: int) -> list[LikelyMap]:
    return [m for m in enumerate_likely_maps(h, classes, n) if m.is_really_likely]


def is_likely(h: SubgroupRecord, classes: ClassData, psi: tuple[int, ...], n: int) -> bool:
    fib = _fibers(h)
    return all(sum(psi[i] for i in f) == n * x for f, x in zip(fib, classes.xi))


def non_splitter_period(h: SubgroupRecord, classes: ClassData) -> int:
    """Order ``k`` of ``pi~(xi o tau^-1)`` in ``H^ab`` for a non-splitter."""
    if h.omega != 0:
        raise SettingViolated("period is defined for non-splitters only")
    psi = [0] * len(h.d_h)
    for i, t in enumerate(h.tau):
        psi[i] = classes.xi[t]
    base = pi_tilde(h, tuple(psi))
    return h.coset_order(base) if base else 1


@dataclasses.dataclass
class Census:
    """Per-degree counts of components by their H-multidiscriminant."""

    subgroup_id: int
    within: dict[int, dict[tuple[int, ...], int]]   # components with group inside H
    exact: dict[int, dict[tuple[int, ...], int]]    # components with group exactly H
    all_likely: bool
    exact_really_likely: bool


def multidiscriminant_census(table: MonoidTable, h: SubgroupRecord) -> Census:
    within: dict[int, dict[tuple[int, ...], int]] = {}
    exact: dict[int, dict[tuple[int, ...], int]] = {}
    all_likely = True
    exact_rl = True
    for n in range(table.max_degree + 1):
        for c in table.components(n):
            sub = table.subgroup(c)
            if not sub.is_subgroup_of(h):
                continue
            mu = multidiscriminant(h, GTuple(table.group, c.canonical))
            within.setdefault(n, {})
            within[n][mu] = within[n].get(mu, 0) + 1
            if h.omega is not None and not is_likely(h, table.classes, mu, n):
                all_likely = False
            if sub.element_set == h.element_set:
                exact.setdefault(n, {})
                exact[n][mu] = exact[n].get(mu, 0) + 1
                if pi_tilde(h, mu) != 0:
                    exact_rl = False
    return Census(h.id, within, exact, all_likely, exact_rl)


@dataclasses.dataclass
class GrowthReport:
    subgroup_id: int
    subgroup_order: int
    omega: int | None
    series: list[int]
    window: tuple[int, int]
    period: int | None = None
    threshold: int | None = None
    value: int | None = None
    ratio_min: float | None = None
    ratio_max: float | None = None
    sandwich_constant: int | None = None
    sandwich_ok: bool | None = None
    psi_value: int | None = None
    psi_threshold: int | None = None
    per_class_threshold: list[int] | None = None
    degree_status: list[str] = dataclasses.field(default_factory=list)
    notes: list[str] = dataclasses.field(default_factory=list)

    def to_json(self) -> dict:
        return dataclasses.asdict(self)


def _eventual_constant(points: list[tuple[int, int]]) -> tuple[int, int, int] | None:
    """(threshold, value, run length) of the constant tail of ``points``."""
    if not points:
        return None
    value = points[-1][1]
    start = len(points) - 1
    while start > 0 and points[start - 1][1] == value:
        start -= 1
    return points[start][0], value, len(points) - start


def _psi_stabilization(exact: dict[int, dict[tuple[int, ...], int]], rl_maps: dict[int, list[LikelyMap]]):
    """Uniform threshold M and value V such that every tabulated really-likely psi
    with ``min psi >= M`` carries exactly V components, plus a per-class vector."""
    rows = []
    for n, maps in rl_maps.items():
        for m in maps:
            rows.append((m.psi, exact.get(n, {}).get(m.psi, 0)))
    if not rows:
        return None
    top = max(min(p) for p, _ in rows)
    value = None
    threshold = None
    for cut in range(top, -1, -1):
        vals = {c for p, c in rows if min(p) >= cut}
        if len(vals) != 1:
            break
        value = vals.pop()
        threshold = cut
    if value is None or value == 0:
        return None
    nclass = len(rows[0][0])
    per_class = []
    for c in range(nclass):
        best = threshold
        for cut in range(threshold, -1, -1):
            sel = [cnt for p, cnt in rows if p[c] >= cut and all(p[j] >= threshold for j in range(nclass) if j != c)]
            if sel and all(v == value for v in sel):
                best = cut
            else:
                break
        per_class.append(best)
    support = sum(1 for p, _ in rows if min(p) >= threshold)
    return threshold, value, per_class, support


def stabilization_report(table: MonoidTable, h: SubgroupRecord, hilbert: HilbertTable | None = None) -> GrowthReport:
    """Growth of ``HF_H`` over the tabulated window.

    Non-splitters: zero off ``kN`` and eventually constant V on it; V is the
    empirical ``|H_2(H, c_H)|``. Splitters: ratios ``HF_H(n)/n^Omega`` over the
    top half of the window and the sandwich ``HF_H(n) <= C |L_n|``.
    """
    hilbert = hilbert or hilbert_table(table)
    series = hilbert.series(h.id)
    n_max = table.max_degree
    rep = GrowthReport(h.id, h.order, h.omega, series, (0, n_max), degree_status=list(hilbert.strategies))
    if h.order == 1:
        rep.period, rep.threshold, rep.value = 1, 1, 0
        rep.notes.append("trivial group: only the empty component")
        return rep
    nonzero = [n for n, v in enumerate(series) if v]
    if len(nonzero) < 3:
        raise InsufficientData(f"subgroup {h.id}: only {len(nonzero)} nonzero values up to degree {n_max}")
    classes = table.classes
    rl = {n: enumerate_really_likely(h, classes, n) for n in range(n_max + 1)}
    census = multidiscriminant_census(table, h)
    if not census.exact_really_likely:
        rep.notes.append("a component of group H has a multidiscriminant that is not really-likely")
    if not census.all_likely:
        rep.notes.append("a multidiscriminant is not H-likely")

    # sandwich HF_H(n) <= C |L_n|
    per_psi = [cnt for n in census.exact for cnt in census.exact[n].values()]
    c_max = max(per_psi, default=0)
    rep.sandwich_constant = c_max
    rep.sandwich_ok = all(series[n] <= c_max * count_likely_maps(h, classes, n) for n in range(n_max + 1))

    stab = _psi_stabilization(census.exact, rl)
    if stab is not None:
        rep.psi_threshold, rep.psi_value, rep.per_class_threshold, _ = stab

    if h.omega == 0:
        k = non_splitter_period(h, classes)
        rep.period = k
        off = [n for n in range(1, n_max + 1) if n % k and series[n]]
        if off:
            rep.notes.append(f"nonzero values off the progression {k}N at degrees {off}")
        points = [(n, series[n]) for n in range(k, n_max + 1, k)]
        tail = _eventual_constant(points)
        if tail is None or tail[2] < 2 or tail[1] == 0:
            raise InsufficientData(f"subgroup {h.id}: no stable run on {k}N up to degree {n_max}")
        rep.threshold, rep.value = tail[0], tail[1]
        rep.ratio_min = rep.ratio_max = float(rep.value)
        return rep

    # splitter: sandwich ratios against n^Omega on the top half of the window
    k = math.gcd(*nonzero) if len(nonzero) > 1 else nonzero[0]
    rep.period = k
    lo = n_max // 2
    window = [n for n in range(max(lo, 1), n_max + 1) if n % k == 0]
    ratios = [series[n] / n ** h.omega for n in window]
    if not ratios:
        raise InsufficientData(f"subgroup {h.id}: empty top-half window")
    rep.window = (window[0], window[-1])
    rep.ratio_min, rep.ratio_max = min(ratios), max(ratios)
    if rep.psi_value is not None:
        rep.value = rep.psi_value
        rep.threshold = rep.psi_threshold
    return rep


@dataclasses.dataclass
class LeadingCoefficient:
    subgroup_id: int
    n: int
    s: int
    h_ab: int
    cumulative: int
    estimate: float
    expected: int | None
    relative_error: float | None
    verdict: str

    def to_json(self) -> dict:
        return dataclasses.asdict(self)


def average_leading_coefficient(table: MonoidTable, h: SubgroupRecord, hilbert: HilbertTable | None = None,
                                n: int | None = None, expected: int | None = None,
                                min_window: int = 6) -> LeadingCoefficient:
    """``sum_{k<=n} HF_H(k) * s! * |H^ab| / n^s`` with ``s = Omega + 1``.

    The estimate approaches ``|H_2(H, c cap H)|``. It is compared with ``expected``
    when given, and otherwise with the per-multidiscriminant constant inferred by
    :func:`stabilization_report` (the components over one big really-likely map).
    """
    classes = table.classes
    if len(classes.classes) != 1 or classes.xi != (1,):
        raise SettingViolated("average leading coefficient needs a single class with xi = 1")
    if h.omega is None:
        raise OmegaUndefined("subgroup misses the class of D")
    hilbert = hilbert or hilbert_table(table)
    n = table.max_degree if n is None else n
    if n < min_window or n > table.max_degree:
        raise InsufficientData(f"window {n} outside [{min_window}, {table.max_degree}]")
    s = h.omega + 1
    cumulative = sum(hilbert.hf(h.id, k) for k in range(n + 1))
    est = cumulative * math.factorial(s) * h.abelianization_order / n ** s
    if expected is None:
        try:
            expected = stabilization_report(table, h, hilbert).value
        except InsufficientData:
            expected = None
    if not expected:
        return LeadingCoefficient(h.id, n, s, h.abelianization_order, cumulative, est, None, None,
                                  "no reference value")
    err = abs(est - expected) / expected
    verdict = "consistent within tolerance" if err <= TOLERANCE else "inconsistent"
    return LeadingCoefficient(h.id, n, s, h.abelianization_order, cumulative, est, expected, err, verdict)
