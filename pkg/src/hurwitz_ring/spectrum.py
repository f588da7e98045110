"""Strata of the spectrum of the ring of components.

Points over an algebraically closed field k of characteristic 0 are described
symbolically: coordinates are indexed by the non-factorizable components
``p_1..p_N`` (the monoid generators) and a stratum is given by basis vectors with
0/1 entries, the generator degrees, and whether the span is strict (all
parameters nonzero).
"""

from __future__ import annotations

import dataclasses
import itertools

from .group_core import GroupSpec, SubgroupRecord
from .monoid import HilbertTable, MonoidTable, hilbert_table
from .errors import CapExceeded, InvalidInput
from .config import DEFAULT_CAPS, Caps

NON_SPLITTER = "non-splitter"
FACTORED = "factored-splitter"
UNRESOLVED = "unresolved"
TRIVIAL = "trivial"


@dataclasses.dataclass
class Classification:
    subgroup_id: int
    kind: str
    family: list[int] = dataclasses.field(default_factory=list)
    criterion_holds: bool | None = None
    notes: list[str] = dataclasses.field(default_factory=list)


@dataclasses.dataclass
class WeightedSpan:
    """``{ sum_i sum_j lambda_j^d(i) basis[j][i] e_i }``; strict means every
    ``lambda_j`` is nonzero. An empty basis is the origin."""

    basis: list[tuple[int, ...]]
    degrees: tuple[int, ...]
    strict: bool = True
    complete: bool = True   # False: the set is only known to contain this span

    @property
    def dim(self) -> int:
        return len(self.basis)

    def supports(self) -> list[frozenset[int]]:
        return [frozenset(i for i, v in enumerate(b) if v) for b in self.basis]

    def monomial_exponents(self, multiset: tuple[int, ...]) -> tuple[int, ...] | None:
        """Exponent vector in the parameters of the monomial ``prod x_i`` over the
        multiset of generator indices, or None when it vanishes identically.

        Requires pairwise disjoint supports, so each coordinate is a single
        ``lambda_j^d(i)``.
        """
        owner = {}
        for j, sup in enumerate(self.supports()):
            for i in sup:
                owner[i] = j
        exps = [0] * self.dim
        for i in multiset:
            j = owner.get(i)
            if j is None:
                return None
            exps[j] += self.degrees[i]
        return tuple(exps)

    def to_json(self) -> dict:
        return {"basis": [list(b) for b in self.basis], "degrees": list(self.degrees),
                "strict": self.strict, "complete": self.complete, "dim": self.dim}


@dataclasses.dataclass
class Stratum:
    subgroup_id: int
    subgroup_order: int
    omega: int | None
    classification: Classification
    span: WeightedSpan
    unique_per_degree: bool | None = None

    def to_json(self) -> dict:
        return {
            "subgroup_id": self.subgroup_id,
            "subgroup_order": self.subgroup_order,
            "omega": self.omega,
            "kind": self.classification.kind,
            "family": self.classification.family,
            "span": self.span.to_json(),
            "unique_per_degree": self.unique_per_degree,
            "notes": self.classification.notes,
        }


@dataclasses.dataclass
class SpectrumDescription:
    strata: list[Stratum]
    krull_dimension: int
    complete: bool
    verified_up_to: int | None = None
    audit: dict = dataclasses.field(default_factory=dict)
    labels: list[str] = dataclasses.field(default_factory=list)

    def nontrivial(self) -> list[Stratum]:
        return [s for s in self.strata if s.span.dim > 0]

    @property
    def proj_points(self) -> int:
        return sum(1 for s in self.strata if s.span.dim == 1)

    def to_json(self) -> dict:
        return {
            "krull_dimension": self.krull_dimension,
            "complete": self.complete,
            "verified_up_to": self.verified_up_to,
            "strata": [s.to_json() for s in self.strata],
            "proj_points": self.proj_points,
            "coordinates": self.labels,
            "audit": self.audit,
        }

    def to_dot(self) -> str:
        """Incidence structure of Proj: vertices are 1-dim strata, edges join the
        vertices whose directions span a higher stratum."""
        lines = ["graph proj {"]
        vertex = {}
        for s in self.strata:
            if s.span.dim == 1:
                name = f"v{s.subgroup_id}"
                vertex[s.span.supports()[0]] = name
                lines.append(f'  {name} [label="H{s.subgroup_id}"];')
        for s in self.strata:
            if s.span.dim >= 2:
                names = [vertex.get(sup) for sup in s.span.supports()]
                for a, b in itertools.combinations(names, 2):
                    if a and b:
                        lines.append(f'  {a} -- {b} [label="H{s.subgroup_id}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# subgroup families ------------------------------------------------------------------

def _commute(spec: GroupSpec, a: SubgroupRecord, b: SubgroupRecord) -> bool:
    g = spec.group
    return all(g.mul(x, y) == g.mul(y, x) for x in a.generators for y in b.generators)


def is_free_family(spec: GroupSpec, family: list[SubgroupRecord]) -> bool:
    """Pairwise commuting, and ``<H_A> cap <H_B> = 1`` for disjoint index sets A, B."""
    for a, b in itertools.combinations(family, 2):
        if not _commute(spec, a, b):
            return False
    k = len(family)
    g = spec.group
    spans = {}
    for r in range(1, k + 1):
        for sub in itertools.combinations(range(k), r):
            gens = [x for i in sub for x in family[i].generators]
            spans[sub] = frozenset(int(x) for x in g.closure(gens))
    for sub_a in spans:
        rest = [i for i in range(k) if i not in sub_a]
        for r in range(1, len(rest) + 1):
            for sub_b in itertools.combinations(rest, r):
                if len(spans[sub_a] & spans[sub_b]) > 1:
                    return False
    return True


def factor_family_criterion(spec: GroupSpec, h: SubgroupRecord, family: list[SubgroupRecord]) -> bool:
    """Group-theoretic sufficient condition for a factor family when |D| = 1:
    ``H_i cap <H_j, j != i> = 1`` for each i and ``c cap H`` is the disjoint union
    of the ``c cap H_j``."""
    classes = spec.classes
    if len(classes.classes) != 1:
        return False
    g = spec.group
    for i, hi in enumerate(family):
        others = [x for j, hj in enumerate(family) if j != i for x in hj.generators]
        if len(hi.element_set & frozenset(int(x) for x in g.closure(others))) > 1:
            return False
    c = frozenset(int(x) for x in classes.union())
    pieces = [c & hj.element_set for hj in family]
    union = frozenset().union(*pieces)
    if sum(len(p) for p in pieces) != len(union):
        return False
    return union == (c & h.element_set)


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def classify_subgroup(table: MonoidTable, h: SubgroupRecord) -> Classification:
    """Non-splitter, factored splitter (with its free factor family) or unresolved.

    The candidate family is read off the generators of the table: generator groups
    inside H are linked when they fail to commute or meet nontrivially, and the
    joins of the linked blocks are the finest possible factor family. Coarsenings
    are tried when the finest one is not free.
    """
    spec = table.spec
    registry = spec.registry
    if h.order == 1:
        return Classification(h.id, TRIVIAL)
    if h.omega == 0:
        return Classification(h.id, NON_SPLITTER)
    gens = [k for k in table.generator_keys() if table.subgroup(k).is_subgroup_of(h)]
    groups = []
    for k in gens:
        rec = table.subgroup(k)
        if rec not in groups:
            groups.append(rec)
    if not groups:
        return Classification(h.id, UNRESOLVED, notes=["no generator inside H"])
    n = len(groups)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for i, j in itertools.combinations(range(n), 2):
        a, b = groups[i], groups[j]
        if len(a.element_set & b.element_set) > 1 or not _commute(spec, a, b):
            parent[find(j)] = find(i)
    blocks: dict[int, list[int]] = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    blocks_list = list(blocks.values())
    candidates = sorted(_set_partitions(list(range(len(blocks_list)))), key=lambda p: -len(p))
    notes = []
    if not table.generators_certified:
        notes.append(f"generator list complete only up to degree {table.max_enumerated}")
    for part in candidates:
        if len(part) < 2:
            break
        family = []
        for piece in part:
            members = [groups[i] for b in piece for i in blocks_list[b]]
            family.append(registry.generated_by([x for m in members for x in m.generators]))
        if any(f.id < 0 for f in family):
            continue
        joined = registry.generated_by([x for f in family for x in f.generators])
        if joined.element_set != h.element_set:
            continue
        if not is_free_family(spec, family):
            continue
        family.sort(key=lambda f: f.id)
        crit = factor_family_criterion(spec, h, family) if len(spec.classes.classes) == 1 else None
        return Classification(h.id, FACTORED, [f.id for f in family], crit, notes)
    return Classification(h.id, UNRESOLVED, notes=notes + ["no free factor family of size >= 2"])


# strata ------------------------------------------------------------------------------

def e_vector(table: MonoidTable, h: SubgroupRecord) -> tuple[int, ...]:
    """``e_H``: coordinate i is 1 iff the group of generator i lies in H."""
    return tuple(1 if table.subgroup(k).is_subgroup_of(h) else 0 for k in table.generator_keys())


def _unique_per_degree(hilbert: HilbertTable, sid: int) -> bool:
    return all(v <= 1 for v in hilbert.series(sid))


def gamma_description(table: MonoidTable, h: SubgroupRecord, classification: Classification | None = None,
                      hilbert: HilbertTable | None = None) -> WeightedSpan:
    """The stratum of H: the origin, the strict span of ``e_H`` or of the ``e_{H_j}``
    of a free factor family of non-splitters; otherwise the guaranteed line
    through ``e_H`` marked incomplete."""
    hilbert = hilbert or hilbert_table(table)
    classification = classification or classify_subgroup(table, h)
    degrees = tuple(k.degree for k in table.generator_keys())
    if classification.kind == TRIVIAL:
        return WeightedSpan([], degrees)
    line = WeightedSpan([e_vector(table, h)], degrees, strict=True, complete=False)
    if classification.kind == NON_SPLITTER:
        line.complete = _unique_per_degree(hilbert, h.id)
        return line
    if classification.kind == FACTORED:
        factors = [table.registry[i] for i in classification.family]
        if all(f.omega == 0 and _unique_per_degree(hilbert, f.id) for f in factors):
            return WeightedSpan([e_vector(table, f) for f in factors], degrees, strict=True, complete=True)
    return line


def spec_description(table: MonoidTable, hilbert: HilbertTable | None = None) -> SpectrumDescription:
    """One stratum per D-generated subgroup, the Krull dimension ``max Omega + 1`` and
    an audit of the hypotheses used."""
    hilbert = hilbert or hilbert_table(table)
    registry = table.registry
    strata = []
    for h in registry:
        cls = classify_subgroup(table, h)
        span = gamma_description(table, h, cls, hilbert)
        uniq = _unique_per_degree(hilbert, h.id) if cls.kind == NON_SPLITTER else None
        strata.append(Stratum(h.id, h.order, h.omega, cls, span, uniq))
    omegas = [h.omega for h in registry if h.omega is not None]
    krull = max(omegas) + 1 if omegas else 0
    complete = all(s.span.complete for s in strata)
    audit = {
        "non_splitters": [s.subgroup_id for s in strata if s.classification.kind == NON_SPLITTER],
        "factored_splitters": [s.subgroup_id for s in strata if s.classification.kind == FACTORED],
        "unresolved": [s.subgroup_id for s in strata if s.classification.kind == UNRESOLVED],
        "generators_certified": table.generators_certified,
        "dimension_matches_omega": all(s.span.dim - 1 == s.omega for s in strata
                                       if s.span.complete and s.omega is not None and s.span.dim),
        "distinct_supports": len({frozenset(s.span.supports()) for s in strata}) == len(strata),
        "relations_hold": all(relations_hold(s.span, table.relations) for s in strata),
    }
    labels = [f"p{i}(deg {k.degree}, H{k.subgroup_id})" for i, k in enumerate(table.generator_keys())]
    return SpectrumDescription(strata, krull, complete, table.max_degree, audit, labels)


def relations_hold(span: WeightedSpan, relations) -> bool:
    """Every monoid relation between generator monomials holds on the span, compared
    as exponent vectors in the parameters."""
    if span.dim == 0:
        return True   # relations have positive degree and vanish at the origin
    return all(span.monomial_exponents(u) == span.monomial_exponents(v) for u, v in relations)


# symmetric groups ---------------------------------------------------------------------------

def disjoint_families(d: int) -> list[tuple[frozenset[int], ...]]:
    """Nonempty families of pairwise disjoint subsets of {1..d}, each of size >= 2."""
    subsets = [frozenset(c) for r in range(2, d + 1) for c in itertools.combinations(range(1, d + 1), r)]
    subsets.sort(key=lambda s: (min(s), len(s), sorted(s)))
    out = []

    def rec(start: int, used: frozenset, chosen: list):
        if chosen:
            out.append(tuple(chosen))
        for i in range(start, len(subsets)):
            s = subsets[i]
            if used & s:
                continue
            if chosen and min(s) < min(chosen[-1]):
                continue
            rec(i + 1, used | s, chosen + [s])

    rec(0, frozenset(), [])
    out.sort(key=lambda f: (len(f), [sorted(a) for a in f]))
    return out


@dataclasses.dataclass
class SymmetricSpectrum:
    d: int
    coordinates: list[tuple[int, int]]     # the generators X_ij, i < j
    strata: list[tuple[frozenset[int], ...]]
    krull_dimension: int

    def span(self, family) -> WeightedSpan:
        basis = [tuple(1 if (i in a and j in a) else 0 for i, j in self.coordinates) for a in family]
        return WeightedSpan(basis, tuple(2 for _ in self.coordinates))

    def maximal_strata(self) -> list[tuple[frozenset[int], ...]]:
        fams = [frozenset(f) for f in self.strata]
        return [f for f, s in zip(self.strata, fams) if not any(s < t for t in fams)]

    @property
    def proj_points(self) -> int:
        return sum(1 for f in self.strata if len(f) == 1)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "krull_dimension": self.krull_dimension,
            "coordinates": [f"X{i}{j}" if self.d < 10 else f"X{i},{j}" for i, j in self.coordinates],
            "strata": [{"family": [sorted(a) for a in f], "dim": len(f)} for f in self.strata],
            "maximal_strata": [[sorted(a) for a in f] for f in self.maximal_strata()],
            "proj_points": self.proj_points,
        }

    def to_dot(self) -> str:
        lines = ["graph proj {"]
        name = {}
        for f in self.strata:
            if len(f) == 1:
                a = f[0]
                name[a] = "v" + "_".join(map(str, sorted(a)))
                lines.append(f'  {name[a]} [label="{{{",".join(map(str, sorted(a)))}}}"];')
        for f in self.strata:
            if len(f) == 2:
                lines.append(f"  {name[f[0]]} -- {name[f[1]]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def spec_sd(d: int, caps: Caps = DEFAULT_CAPS) -> SymmetricSpectrum:
    """Spectrum of the ring of components of ``S_d`` with transpositions: the union
    of the spans of ``e_{A_1}, .., e_{A_k}`` over families of disjoint subsets of
    size >= 2. The origin (the trivial group) is not listed."""
    if d < 2:
        raise InvalidInput("d must be at least 2")
    if d > caps.max_sym_degree:
        raise CapExceeded("max_sym_degree", caps.max_sym_degree, f"d = {d}")
    coords = list(itertools.combinations(range(1, d + 1), 2))
    fams = disjoint_families(d)
    return SymmetricSpectrum(d, coords, fams, d // 2)


def symmetric_family_of(spec: GroupSpec, classification: Classification, h: SubgroupRecord) -> tuple[frozenset[int], ...]:
    """Translate a stratum of ``S_d`` into its family of supports (1-based points)."""
    registry = spec.registry
    members = [registry[i] for i in classification.family] if classification.kind == FACTORED else [h]
    out = []
    for m in members:
        moved = set()
        for x in m.elements:
            perm = spec.group.perms[x]
            moved.update(int(p) + 1 for p in range(len(perm)) if perm[p] != p)
        out.append(frozenset(moved))
    return tuple(sorted(out, key=lambda s: (min(s), len(s))))
