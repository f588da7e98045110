"""The graded monoid of components up to a degree cap.

Degrees are handled by one of two strategies:

* **enumerated** degrees: every product-1 tuple with G-multidiscriminant ``n*xi``
  is generated by a scan kernel and split into braid orbits. Components are
  exact and keyed by their lexicographically minimal tuple. The scan size is
  cross-checked against an independent dynamic-programming count.
* **closure** degrees (beyond the largest enumerable degree): components are
  multisets of known non-factorizable components modulo the relations observed
  at enumerated degrees. The result is an upper bound on the true count when the
  generator list is complete; it is exact when distinct classes are also
  separated by the braid invariants (group and H-multidiscriminant).
"""

from __future__ import annotations

import dataclasses
import functools
import logging
import math
from collections.abc import Iterable, Sequence

import numpy as np

from . import kernels
from .braid import GTuple, alphabet_for, multidiscriminant
from .config import DEFAULT_CAPS, Caps
from .errors import CapExceeded, InvalidInput
from .group_core import GroupSpec, SubgroupRecord

log = logging.getLogger(__name__)

ENUMERATED = "enumerated"
CLOSURE = "closure"


@dataclasses.dataclass(frozen=True)
class ComponentKey:
    """A component of degree ``degree``.

    ``canonical`` is the lexicographically minimal tuple of the orbit at
    enumerated degrees and the concatenation of the generator representatives of
    its minimal multiset at closure degrees. ``mu`` is the multidiscriminant
    relative to the component's own group.
    """

    degree: int
    canonical: tuple[int, ...]
    subgroup_id: int
    mu: tuple[int, ...]

    def to_json(self, table: "MonoidTable") -> dict:
        g = table.spec.group
        return {
            "canonical_tuple": [g.element(e).to_cycle_string() for e in self.canonical],
            "subgroup_id": self.subgroup_id,
            "subgroup_order": table.registry[self.subgroup_id].order,
            "multidiscriminant": list(self.mu),
        }


@dataclasses.dataclass
class DegreeData:
    degree: int
    strategy: str
    components: list[ComponentKey]
    # multiset (sorted generator indices) -> component index
    multiset_map: dict[tuple[int, ...], int]
    representative: list[tuple[int, ...]]
    tuple_count: int | None = None
    codes: np.ndarray | None = None
    labels: np.ndarray | None = None
    invariants_separate: bool | None = None


@dataclasses.dataclass
class HilbertTable:
    cap: int
    counts: dict[tuple[int, int], int]
    totals: list[int]
    strategies: list[str]

    def hf(self, sid: int, n: int) -> int:
        return self.counts.get((sid, n), 0)

    def series(self, sid: int) -> list[int]:
        return [self.hf(sid, n) for n in range(self.cap + 1)]

    def to_csv(self, registry) -> str:
        lines = ["subgroup_id,subgroup_order," + ",".join(f"n{n}" for n in range(self.cap + 1))]
        for rec in registry:
            lines.append(f"{rec.id},{rec.order}," + ",".join(str(v) for v in self.series(rec.id)))
        lines.append("total,," + ",".join(str(v) for v in self.totals))
        return "\n".join(lines) + "\n"


def count_product_one(spec: GroupSpec, n: int, exact: bool = True) -> int:
    """Number of tuples with product 1 and G-multidiscriminant ``n*xi``.

    Dynamic programming over (class counts so far, running product); independent
    of the scan kernel. With ``exact=False`` only zero/nonzero is tracked.
    """
    group, classes = spec.group, spec.classes
    target = tuple(n * x for x in classes.xi)
    letters = [np.asarray(group.classes[c]) for c in classes.classes]
    dtype = object if exact else bool
    start = np.zeros(group.order, dtype=dtype)
    start[group.identity] = 1 if exact else True
    states = {tuple(0 for _ in target): start}
    for _ in range(sum(target)):
        nxt: dict[tuple[int, ...], np.ndarray] = {}
        for counts, vec in states.items():
            support = np.flatnonzero(vec)
            for ci, lets in enumerate(letters):
                if counts[ci] >= target[ci]:
                    continue
                key = counts[:ci] + (counts[ci] + 1,) + counts[ci + 1:]
                acc = nxt.get(key)
                if acc is None:
                    acc = nxt[key] = np.zeros(group.order, dtype=dtype)
                for a in lets:
                    dest = group.mul_many(support, np.full(len(support), int(a)))
                    if exact:
                        acc[dest] += vec[support]
                    else:
                        acc[dest] = True
        states = nxt
    final = states.get(target)
    if final is None:
        return 0
    return int(final[group.identity])


def lemma_degree_bound(spec: GroupSpec) -> int:
    """``max(exp(G), (exp(G) - 1) * A)`` with ``A = prod |c|^xi(c)``."""
    e = spec.group.exponent
    a = math.prod(len(spec.group.classes[c]) ** x for c, x in zip(spec.classes.classes, spec.classes.xi))
    return max(e, (e - 1) * a)


def _multisets(gen_degrees: Sequence[int], n: int) -> list[tuple[int, ...]]:
    """All nondecreasing index tuples whose generator degrees sum to ``n``."""
    ng = len(gen_degrees)

    @functools.lru_cache(maxsize=None)
    def rec(start: int, remaining: int) -> tuple[tuple[int, ...], ...]:
        if remaining == 0:
            return ((),)
        out = []
        for g in range(start, ng):
            dg = gen_degrees[g]
            if 0 < dg <= remaining:
                for rest in rec(g, remaining - dg):
                    out.append((g,) + rest)
        return tuple(out)

    return list(rec(0, n))


def _merge(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(a + b))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


class MonoidTable:
    """Components of degree 0..``max_degree`` with products and generators.

    ``max_enumerated`` bounds the degrees handled by exhaustive orbit
    enumeration; by default it is the largest degree whose product-1 tuple count
    fits ``caps.max_orbit``.
    """

    def __init__(self, spec: GroupSpec, max_degree: int, caps: Caps = DEFAULT_CAPS,
                 max_enumerated: int | None = None, backend: str | None = None,
                 keep_codes: bool = True):
        if max_degree < 0:
            raise InvalidInput("max_degree must be >= 0")
        self.spec = spec
        self.group = spec.group
        self.classes = spec.classes
        self.registry = spec.registry
        self.caps = caps
        self.backend = backend
        self.max_degree = max_degree
        self.keep_codes = keep_codes
        self.degrees: list[DegreeData] = []
        self.generators: list[tuple[int, int]] = []   # (degree, index within degree)
        self.relations: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        self._letters = self.classes.union()
        self._alpha = alphabet_for(self.group, self.classes.classes)
        self._mt = self.group.right_mult_table(self._alpha.letters)
        self._cls = np.array([self.classes.d_index_array[x] for x in self._alpha.letters], dtype=np.int64)
        self._pos_of = np.full(self.group.order, -1, dtype=np.int64)
        self._pos_of[self._alpha.letters] = np.arange(self._alpha.m)
        limit = max_degree if max_enumerated is None else min(max_degree, max_enumerated)
        self.max_enumerated = -1
        for n in range(max_degree + 1):
            if n <= limit and self._try_enumerate(n):
                self.max_enumerated = n
                continue
            if max_enumerated is not None and n <= limit:
                # an explicitly requested brute-force degree could not be enumerated
                raise CapExceeded("max_orbit", self.caps.max_orbit,
                                  f"degree {n} has {count_product_one(spec, n)} product-1 tuples")
            self._closure_degree(n)

    # construction ---------------------------------------------------------------------------
    def _try_enumerate(self, n: int) -> bool:
        length = n * self.classes.size
        m = self._alpha.m
        if n > 0 and not kernels.code_fits(m, length):
            return False
        if self.degrees and self.degrees[-1].strategy != ENUMERATED:
            return False
        total = count_product_one(self.spec, n)
        if total > self.caps.max_orbit:
            return False
        if n == 0:
            codes = np.zeros(1, dtype=np.int64)
            labels = np.zeros(1, dtype=np.int64)
            nlab = 1
        else:
            target = np.array([n * x for x in self.classes.xi], dtype=np.int64)
            codes = kernels.scan_product_one(self._mt, self._cls, target, self._pos_of, self.group.inverse,
                                             self.group.identity, m, length, max(total, 1), self.backend)
            if len(codes) != total:
                raise RuntimeError(f"scan found {len(codes)} tuples at degree {n}, expected {total}")
            labels, nlab = kernels.label_orbits(codes, self._alpha.fwd, self._alpha.bwd, m, length, self.backend)
            if nlab < 0:
                raise RuntimeError("braid move left the product-1 tuple set")
        first = np.unique(labels, return_index=True)[1] if nlab else np.empty(0, dtype=np.int64)
        comps = []
        for k in range(nlab):
            entries = self._alpha.decode(int(codes[first[k]]), length) if length else ()
            comps.append(self._make_key(n, entries))
        data = DegreeData(n, ENUMERATED, comps, {}, [() for _ in comps], tuple_count=total)
        if self.keep_codes or n == 0:
            data.codes, data.labels = codes, labels
        self.degrees.append(data)
        self._factor_enumerated(n, codes, labels)
        if not self.keep_codes and n > 0:
            data.codes = data.labels = None
        return True

    def _make_key(self, n: int, entries: tuple[int, ...]) -> ComponentKey:
        rec = self.registry.generated_by(entries)
        if rec.id < 0:
            raise RuntimeError("component group is not D-generated")
        return ComponentKey(n, tuple(entries), rec.id, multidiscriminant(rec, GTuple(self.group, tuple(entries))))

    def _lookup_code(self, n: int, entries: tuple[int, ...], codes, labels) -> int:
        code = self._alpha.encode(entries)
        j = int(np.searchsorted(codes, code))
        if j >= len(codes) or codes[j] != code:
            raise RuntimeError("concatenation is not a degree-n component tuple")
        return int(labels[j])

    def _factor_enumerated(self, n: int, codes, labels) -> None:
        data = self.degrees[n]
        if n == 0:
            data.multiset_map[()] = 0
            data.representative[0] = ()
            return
        gdeg = [d for d, _ in self.generators]
        fibers: dict[int, list[tuple[int, ...]]] = {}
        for ms in _multisets(gdeg, n):
            last = ms[-1]
            rest = ms[:-1]
            rdeg = n - gdeg[last]
            left = self.degrees[rdeg].components[self.degrees[rdeg].multiset_map[rest]].canonical
            gd, gi = self.generators[last]
            entries = left + self.degrees[gd].components[gi].canonical
            comp = self._lookup_code(n, entries, codes, labels)
            data.multiset_map[ms] = comp
            fibers.setdefault(comp, []).append(ms)
        for comp, members in fibers.items():
            members.sort()
            data.representative[comp] = members[0]
            for other in members[1:]:
                self.relations.append((members[0], other))
        for comp in range(len(data.components)):
            if comp not in fibers:
                gidx = len(self.generators)
                self.generators.append((n, comp))
                data.multiset_map[(gidx,)] = comp
                data.representative[comp] = (gidx,)

    def _closure_classes(self, n: int, relations, gens: Sequence[int]):
        """Multisets of degree n over ``gens`` grouped by the congruence of ``relations``."""
        gdeg = [self.generators[g][0] for g in gens]
        local = _multisets(gdeg, n)
        mss = [tuple(gens[i] for i in ms) for ms in local]
        index = {ms: i for i, ms in enumerate(mss)}
        uf = _UnionFind(len(mss))
        ng = len(self.generators)
        if mss:
            arr = np.zeros((len(mss), ng), dtype=np.int64)
            for i, ms in enumerate(mss):
                for g in ms:
                    arr[i, g] += 1
            for u, v in relations:
                uvec = np.bincount(np.array(u, dtype=np.int64), minlength=ng)
                vvec = np.bincount(np.array(v, dtype=np.int64), minlength=ng)
                rows = np.flatnonzero(np.all(arr >= uvec[None, :], axis=1))
                if len(rows) == 0:
                    continue
                moved = arr[rows] - uvec[None, :] + vvec[None, :]
                for r, vec in zip(rows, moved):
                    ms = tuple(np.repeat(np.arange(ng), vec).tolist())
                    j = index.get(ms)
                    if j is not None:
                        uf.union(int(r), j)
        groups: dict[int, list[int]] = {}
        for i in range(len(mss)):
            groups.setdefault(uf.find(i), []).append(i)
        return [[mss[i] for i in members] for members in groups.values()]

    def _closure_degree(self, n: int) -> None:
        classes = self._closure_classes(n, self.relations, list(range(len(self.generators))))
        keyed = []
        for members in classes:
            members.sort()
            rep = members[0]
            entries: tuple[int, ...] = ()
            for g in rep:
                gd, gi = self.generators[g]
                entries += self.degrees[gd].components[gi].canonical
            keyed.append((entries, members))
        keyed.sort(key=lambda t: t[0])
        comps, mmap, reps = [], {}, []
        for idx, (entries, members) in enumerate(keyed):
            comps.append(self._make_key(n, entries))
            reps.append(members[0])
            for ms in members:
                mmap[ms] = idx
        data = DegreeData(n, CLOSURE, comps, mmap, reps)
        data.invariants_separate = len({(c.subgroup_id, c.mu) for c in comps}) == len(comps)
        self.degrees.append(data)

    # queries ------------------------------------------------------------------------------
    def components(self, n: int) -> list[ComponentKey]:
        return self.degrees[n].components

    def all_components(self) -> list[ComponentKey]:
        return [c for d in self.degrees for c in d.components]

    @property
    def identity(self) -> ComponentKey:
        return self.degrees[0].components[0]

    def _index(self, key: ComponentKey) -> int:
        data = self.degrees[key.degree]
        cache = data.__dict__.setdefault("_pos", {c: i for i, c in enumerate(data.components)})
        try:
            return cache[key]
        except KeyError:
            raise InvalidInput("component is not in this table") from None

    def multiset(self, key: ComponentKey) -> tuple[int, ...]:
        """A factorization of ``key`` into generators (sorted generator indices)."""
        return self.degrees[key.degree].representative[self._index(key)]

    def from_multiset(self, ms: Iterable[int]) -> ComponentKey:
        ms = tuple(sorted(ms))
        n = sum(self.generators[g][0] for g in ms)
        if n > self.max_degree:
            raise CapExceeded("max_degree", self.max_degree, f"product of degree {n}")
        data = self.degrees[n]
        return data.components[data.multiset_map[ms]]

    def multiply(self, a: ComponentKey, b: ComponentKey) -> ComponentKey:
        """Product of two components (the class of the concatenation)."""
        return self.from_multiset(self.multiset(a) + self.multiset(b))

    def multiply_by_orbit(self, a: ComponentKey, b: ComponentKey) -> ComponentKey:
        """Product computed by locating the concatenated tuple among enumerated
        orbits; independent of the generator bookkeeping."""
        n = a.degree + b.degree
        data = self.degrees[n]
        if data.strategy != ENUMERATED or data.codes is None:
            raise InvalidInput(f"degree {n} is not enumerated")
        if n == 0:
            return data.components[0]
        return data.components[self._lookup_code(n, a.canonical + b.canonical, data.codes, data.labels)]

    def component_of_tuple(self, t: GTuple) -> ComponentKey:
        """Component containing a product-1 tuple of an enumerated degree."""
        if t.product != self.group.identity:
            raise InvalidInput("tuple does not have product 1")
        size = self.classes.size
        n, rem = divmod(len(t), size)
        if rem or n > self.max_degree:
            raise InvalidInput("tuple length is not a tabulated degree")
        data = self.degrees[n]
        if data.strategy != ENUMERATED or data.codes is None:
            raise InvalidInput(f"degree {n} is not enumerated")
        if n == 0:
            return data.components[0]
        try:
            return data.components[self._lookup_code(n, t.entries, data.codes, data.labels)]
        except (KeyError, RuntimeError):
            raise InvalidInput("tuple does not have G-multidiscriminant n*xi") from None

    def subgroup(self, key: ComponentKey) -> SubgroupRecord:
        return self.registry[key.subgroup_id]

    def generator_keys(self) -> list[ComponentKey]:
        return [self.degrees[d].components[i] for d, i in self.generators]

    # certification --------------------------------------------------------------------------
    @functools.cached_property
    def lemma_bound(self) -> int:
        return lemma_degree_bound(self.spec)

    @functools.cached_property
    def generators_certified(self) -> bool:
        """True when no non-factorizable component can exist beyond the enumerated range:
        either enumeration reaches the degree bound, or every degree in between has no
        product-1 tuple at all."""
        if self.max_enumerated >= self.lemma_bound:
            return True
        return all(count_product_one(self.spec, n, exact=False) == 0
                   for n in range(self.max_enumerated + 1, self.lemma_bound + 1))

    def degree_status(self, n: int) -> str:
        data = self.degrees[n]
        if data.strategy == ENUMERATED:
            return "enumerated"
        if self.generators_certified and data.invariants_separate:
            return "closure-exact"
        if data.invariants_separate:
            return "closure-separated"
        return "closure-upper-bound"

    def closure_consistency(self) -> list[dict]:
        """Predict each enumerated degree k >= 1 from generators and relations of
        degree < k alone.

        ``predicted`` counts classes of degree-k multisets of older generators plus
        the new generators of degree k. A mismatch means degree k carries new
        relations; the closure strategy is trustworthy once the last enumerated
        degrees all match (see :meth:`closure_stable_from`).
        """
        out = []
        for k in range(1, self.max_enumerated + 1):
            gens = [i for i, (d, _) in enumerate(self.generators) if d < k]
            rels = [(u, v) for u, v in self.relations if sum(self.generators[g][0] for g in u) < k]
            predicted = len(self._closure_classes(k, rels, gens)) + sum(1 for d, _ in self.generators if d == k)
            actual = len(self.degrees[k].components)
            out.append({"degree": k, "predicted": predicted, "enumerated": actual, "ok": predicted == actual})
        return out

    def closure_stable_from(self) -> int | None:
        """Smallest k such that every enumerated degree in [k, max_enumerated] is
        predicted without new relations, or None if the top degree needs one."""
        rows = self.closure_consistency()
        stable = None
        for row in reversed(rows):
            if not row["ok"]:
                break
            stable = row["degree"]
        return stable


def enumerate_components(spec: GroupSpec, max_degree: int, caps: Caps = DEFAULT_CAPS, **kwargs) -> MonoidTable:
    return MonoidTable(spec, max_degree, caps, **kwargs)


def multiply(table: MonoidTable, a: ComponentKey, b: ComponentKey) -> ComponentKey:
    return table.multiply(a, b)


@dataclasses.dataclass
class NonFactorizable:
    components: list[ComponentKey]
    certified: bool
    bound: int
    max_observed_degree: int


def non_factorizable(table: MonoidTable) -> NonFactorizable:
    gens = table.generator_keys()
    return NonFactorizable(gens, table.generators_certified, table.lemma_bound,
                           max((g.degree for g in gens), default=0))


def kappa(h: SubgroupRecord) -> int:
    """``max |c| * ord(c)`` over the H-classes in ``D_H``."""
    g = h.group
    return max((len(c) * int(g.element_orders[c[0]]) for c in h.d_h), default=0)


def factorization_hypothesis(table: MonoidTable, y: ComponentKey, x: ComponentKey) -> bool:
    """``<x> <= <y> = H`` and ``mu_H(y) >= mu_H(x) + kappa * N(mu_H(x))``."""
    h = table.subgroup(y)
    hx = table.subgroup(x)
    if not hx.is_subgroup_of(h):
        return False
    k = kappa(h)
    mux = multidiscriminant(h, GTuple(table.group, x.canonical))
    return all(a >= b + (k if b > 0 else 0) for a, b in zip(y.mu, mux))


def factor(table: MonoidTable, y: ComponentKey, x: ComponentKey) -> ComponentKey | None:
    """A component z with ``y = z x`` and ``<z> = <y>``, or None if the table has none."""
    if x.degree > y.degree:
        raise InvalidInput(f"degree mismatch: deg x = {x.degree} > deg y = {y.degree}")
    if x.degree == y.degree:
        return table.identity if x == y else None
    for z in table.components(y.degree - x.degree):
        if z.subgroup_id == y.subgroup_id and table.multiply(z, x) == y:
            return z
    return None


def hilbert_table(table: MonoidTable) -> HilbertTable:
    counts: dict[tuple[int, int], int] = {}
    totals = []
    for data in table.degrees:
        for c in data.components:
            counts[(c.subgroup_id, data.degree)] = counts.get((c.subgroup_id, data.degree), 0) + 1
        totals.append(len(data.components))
    return HilbertTable(table.max_degree, counts, totals,
                        [table.degree_status(d.degree) for d in table.degrees])


# ideals and subrings, as predicates on the group of a spanning component ---------------------

def in_I(h: SubgroupRecord, group_of_x: SubgroupRecord) -> bool:
    """Spanning components of I_H: group contains H."""
    return h.is_subgroup_of(group_of_x)


def in_I_star(h: SubgroupRecord, group_of_x: SubgroupRecord) -> bool:
    """Spanning components of I*_H: group strictly contains H."""
    return h.is_subgroup_of(group_of_x) and h.element_set != group_of_x.element_set


def in_J(h: SubgroupRecord, group_of_x: SubgroupRecord) -> bool:
    """Spanning components of J_H: group not strictly contained in H."""
    return not (group_of_x.is_subgroup_of(h) and h.element_set != group_of_x.element_set)


def in_J_star(h: SubgroupRecord, group_of_x: SubgroupRecord) -> bool:
    """Spanning components of J*_H: group not contained in H."""
    return not group_of_x.is_subgroup_of(h)


def in_R(h: SubgroupRecord, group_of_x: SubgroupRecord) -> bool:
    """Spanning components of the subring R^H: group contained in H."""
    return group_of_x.is_subgroup_of(h)
