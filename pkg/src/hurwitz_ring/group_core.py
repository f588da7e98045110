"""Finite permutation groups: elements, conjugacy classes, class splitting,
D-generated subgroups and abelianization cosets.

Conventions
-----------
Points are 0-based internally; all text I/O uses 1-based cycle notation.
Composition is ``(a*b)(x) = a(b(x))`` and conjugation is ``g^h = h g h^{-1}``.
Elements of a :class:`GroupContext` are numbered by the lexicographic order of
their image arrays, so the identity always has id 0.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import json
import math
import re
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np

from .config import DEFAULT_CAPS, Caps
from .errors import CapExceeded, InvalidInput, NotAMember

_FULL_TABLE_LIMIT = 2048


@functools.total_ordering
@dataclasses.dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0, ..., d-1}`` stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise InvalidInput(f"not a permutation: {self.images}")

    @property
    def d(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(tuple(range(d)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], d: int, one_based: bool = True) -> "Permutation":
        images = list(range(d))
        shift = 1 if one_based else 0
        seen: set[int] = set()
        for cycle in cycles:
            pts = [int(p) - shift for p in cycle]
            for p in pts:
                if not 0 <= p < d:
                    raise InvalidInput(f"point {p + shift} outside 1..{d}" if one_based else f"point {p} outside 0..{d - 1}")
                if p in seen:
                    raise InvalidInput(f"point {p + shift} repeated in cycles {cycles!r}")
                seen.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, d: int) -> "Permutation":
        """Parse 1-based cycle notation such as ``"(1 2)(3 4)"`` or ``"()"``."""
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            pts = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
            if pts:
                cycles.append(pts)
        if not cycles and text.strip() not in {"()", ""}:
            raise InvalidInput(f"cannot parse permutation {text!r}")
        return cls.from_cycles(cycles, d)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.d != self.d:
            raise InvalidInput("degree mismatch")
        return Permutation(tuple(self.images[x] for x in other.images))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def inverse(self) -> "Permutation":
        inv = [0] * self.d
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(tuple(inv))

    def conjugate(self, h: "Permutation") -> "Permutation":
        """Return ``self^h = h self h^{-1}``."""
        return h * self * h.inverse()

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based, each starting at its smallest point."""
        seen = [False] * self.d
        out = []
        for start in range(self.d):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def to_cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self.to_cycle_string()})"


def _encode_rows(rows: np.ndarray, d: int) -> np.ndarray:
    weights = d ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return rows.astype(np.int64) @ weights


def enumerate_elements(generators: Sequence[Permutation], caps: Caps = DEFAULT_CAPS) -> np.ndarray:
    """Closure of ``generators`` under composition as a lexicographically sorted
    ``(order, d)`` array of image rows."""
    if not generators:
        raise InvalidInput("at least one generator is required")
    d = generators[0].d
    if any(g.d != d for g in generators):
        raise InvalidInput("generators have different degrees")
    if d > caps.max_degree_points:
        raise CapExceeded("max_degree_points", caps.max_degree_points, f"degree {d}")
    gens = np.array([g.images for g in generators], dtype=np.int16)
    ident = np.arange(d, dtype=np.int16)[None, :]
    known = _encode_rows(ident, d)
    frontier = ident
    chunks = [ident]
    while len(frontier):
        # right-multiply every frontier element by every generator: (f*g)(x) = f[g[x]]
        cand = frontier[:, gens].reshape(-1, d)
        codes = _encode_rows(cand, d)
        codes, idx = np.unique(codes, return_index=True)
        fresh = ~np.isin(codes, known, assume_unique=True)
        frontier = cand[idx[fresh]]
        if len(frontier):
            known = np.union1d(known, codes[fresh])
            chunks.append(frontier)
            if len(known) > caps.max_order:
                raise CapExceeded("max_order", caps.max_order, f"group order exceeds {caps.max_order}")
    rows = np.concatenate(chunks)
    order = np.argsort(_encode_rows(rows, d), kind="stable")
    return rows[order]


class GroupContext:
    """A finite permutation group with all elements enumerated.

    Elements are referred to by integer ids (row index into :attr:`perms`).
    """

    def __init__(self, generators: Sequence[Permutation], caps: Caps = DEFAULT_CAPS):
        self.caps = caps
        self.generators = tuple(generators)
        self.degree = self.generators[0].d
        self.perms = enumerate_elements(self.generators, caps)
        self.order = len(self.perms)
        self._codes = _encode_rows(self.perms, self.degree)
        self.identity = 0
        inv_rows = np.argsort(self.perms, axis=1).astype(np.int16)
        self.inverse = self.ids_of(inv_rows)
        self._table = None
        if self.order <= _FULL_TABLE_LIMIT:
            # table[a, b] = id of a*b
            comp = self.perms[:, self.perms].transpose(1, 0, 2)  # [b, a, x] -> a[b[x]]
            comp = self.perms[np.arange(self.order)[:, None, None], self.perms[None, :, :]]
            self._table = self.ids_of(comp.reshape(-1, self.degree)).reshape(self.order, self.order)
        self.generator_ids = tuple(self.index(g) for g in self.generators)
        self._closure_cache: dict[frozenset, np.ndarray] = {}
        self._classes = None

    # element access ---------------------------------------------------------
    def ids_of(self, rows: np.ndarray) -> np.ndarray:
        codes = _encode_rows(np.asarray(rows), self.degree)
        pos = np.searchsorted(self._codes, codes)
        pos_c = np.minimum(pos, self.order - 1)
        if np.any(self._codes[pos_c] != codes):
            raise NotAMember("permutation not in group")
        return pos.astype(np.int64)

    def index(self, perm: Permutation) -> int:
        if perm.d != self.degree:
            raise NotAMember(f"degree {perm.d} != {self.degree}")
        return int(self.ids_of(np.array([perm.images]))[0])

    def element(self, i: int) -> Permutation:
        return Permutation(tuple(int(x) for x in self.perms[i]))

    def contains(self, perm: Permutation) -> bool:
        try:
            self.index(perm)
        except NotAMember:
            return False
        return True

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return int(self._table[a, b])
        return int(self.ids_of(self.perms[a][self.perms[b]][None, :])[0])

    def mul_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        if self._table is not None:
            return self._table[a, b]
        rows = np.take_along_axis(self.perms[a], self.perms[b].astype(np.int64), axis=1)
        return self.ids_of(rows)

    def conj(self, g: int, h: int) -> int:
        """Id of ``h g h^{-1}``."""
        return self.mul(self.mul(h, g), int(self.inverse[h]))

    def product(self, ids: Iterable[int]) -> int:
        acc = self.identity
        for x in ids:
            acc = self.mul(acc, int(x))
        return acc

    def element_order(self, g: int) -> int:
        n, acc = 1, g
        while acc != self.identity:
            acc = self.mul(acc, g)
            n += 1
        return n

    @functools.cached_property
    def element_orders(self) -> np.ndarray:
        return np.array([self.element(i).order() for i in range(self.order)], dtype=np.int64)

    @functools.cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in np.unique(self.element_orders)))

    # tables restricted to an alphabet ---------------------------------------
    def conjugation_tables(self, alphabet: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Local tables on a conjugation-closed ``alphabet`` of ids.

        ``fwd[x, y]`` is the local index of ``x y x^{-1}`` and ``bwd[y, x]`` is
        the local index of ``y^{-1} x y``.
        """
        alphabet = np.asarray(alphabet, dtype=np.int64)
        m = len(alphabet)
        pos = {int(a): i for i, a in enumerate(alphabet)}
        fwd = np.empty((m, m), dtype=np.int64)
        bwd = np.empty((m, m), dtype=np.int64)
        xs = np.repeat(alphabet, m)
        ys = np.tile(alphabet, m)
        xinv = self.inverse[xs]
        yinv = self.inverse[ys]
        f = self.mul_many(self.mul_many(xs, ys), xinv)
        b = self.mul_many(self.mul_many(yinv, xs), ys)
        try:
            fwd[:] = np.array([pos[int(v)] for v in f]).reshape(m, m)
            # b is indexed by (x, y) here; store as bwd[y, x]
            bwd[:] = np.array([pos[int(v)] for v in b]).reshape(m, m).T
        except KeyError as exc:
            raise InvalidInput("alphabet is not closed under conjugation") from exc
        return fwd, bwd

    def right_mult_table(self, alphabet: np.ndarray) -> np.ndarray:
        """``table[g, j]`` = id of ``g * alphabet[j]`` for every group element g."""
        alphabet = np.asarray(alphabet, dtype=np.int64)
        if self._table is not None:
            return self._table[:, alphabet]
        cols = []
        for a in alphabet:
            cols.append(self.ids_of(self.perms[:, self.perms[a]]))
        return np.stack(cols, axis=1)

    # subgroups ----------------------------------------------------------------
    def closure(self, gen_ids: Iterable[int]) -> np.ndarray:
        """Sorted ids of the subgroup generated by ``gen_ids``."""
        gens = frozenset(int(g) for g in gen_ids) - {self.identity}
        hit = self._closure_cache.get(gens)
        if hit is not None:
            return hit
        if not gens:
            out = np.array([self.identity], dtype=np.int64)
        else:
            garr = np.array(sorted(gens), dtype=np.int64)
            seen = np.zeros(self.order, dtype=bool)
            seen[self.identity] = True
            frontier = np.array([self.identity], dtype=np.int64)
            while len(frontier):
                cand = self.mul_many(np.repeat(frontier, len(garr)), np.tile(garr, len(frontier)))
                cand = np.unique(cand)
                cand = cand[~seen[cand]]
                seen[cand] = True
                frontier = cand
            out = np.flatnonzero(seen).astype(np.int64)
        if len(self._closure_cache) < 100_000:
            self._closure_cache[gens] = out
        return out

    @property
    def classes(self) -> list[np.ndarray]:
        if self._classes is None:
            self._classes = conjugacy_classes(self)
            self._class_of = np.empty(self.order, dtype=np.int64)
            for i, c in enumerate(self._classes):
                self._class_of[c] = i
        return self._classes

    @property
    def class_of(self) -> np.ndarray:
        self.classes
        return self._class_of

    @functools.cached_property
    def derived_subgroup(self) -> np.ndarray:
        return derived_subgroup(self, self.generator_ids, np.arange(self.order))

    def __repr__(self) -> str:
        return f"GroupContext(degree={self.degree}, order={self.order})"


def _orbits_under_conjugation(group: GroupContext, elements: np.ndarray, conj_gens: Sequence[int]) -> list[np.ndarray]:
    elements = np.asarray(elements, dtype=np.int64)
    member = np.zeros(group.order, dtype=bool)
    member[elements] = True
    done = np.zeros(group.order, dtype=bool)
    gens = [int(h) for h in conj_gens if h != group.identity]
    orbits = []
    for x in elements:
        if done[x]:
            continue
        done[x] = True
        orbit = [int(x)]
        frontier = np.array([x], dtype=np.int64)
        while len(frontier) and gens:
            nxt = []
            for h in gens:
                hinv = int(group.inverse[h])
                img = group.mul_many(group.mul_many(np.full(len(frontier), h), frontier), np.full(len(frontier), hinv))
                nxt.append(img)
            cand = np.unique(np.concatenate(nxt))
            cand = cand[~done[cand]]
            done[cand] = True
            orbit.extend(int(c) for c in cand)
            frontier = cand
        orbits.append(np.array(sorted(orbit), dtype=np.int64))
    return orbits


def _sort_classes(orbits: list[np.ndarray]) -> list[np.ndarray]:
    return sorted(orbits, key=lambda c: (len(c), int(c[0])))


def conjugacy_classes(group: GroupContext) -> list[np.ndarray]:
    """Conjugacy classes as sorted id arrays, ordered by (size, smallest element)."""
    return _sort_classes(_orbits_under_conjugation(group, np.arange(group.order), group.generator_ids))


def derived_subgroup(group: GroupContext, gen_ids: Sequence[int], elements: np.ndarray) -> np.ndarray:
    """Commutator subgroup of ``<gen_ids>``: normal closure of generator commutators."""
    gens = [int(g) for g in gen_ids]
    comms = set()
    for a, b in itertools.combinations(gens, 2):
        c = group.mul(group.mul(a, b), group.mul(int(group.inverse[a]), int(group.inverse[b])))
        comms.add(c)
    comms.discard(group.identity)
    while True:
        k = group.closure(comms)
        kset = set(int(x) for x in k)
        grown = False
        for x in list(comms):
            for h in gens:
                y = group.conj(x, h)
                if y not in kset:
                    comms.add(y)
                    grown = True
        if not grown:
            return k


@dataclasses.dataclass(frozen=True)
class ClassData:
    """The set ``D`` of generating classes with multiplicities ``xi``.

    ``classes`` holds class ids of the group; ``xi[i]`` is the multiplicity of
    ``classes[i]``.
    """

    group: GroupContext
    classes: tuple[int, ...]
    xi: tuple[int, ...]

    def __post_init__(self):
        g = self.group
        if len(self.classes) != len(self.xi):
            raise InvalidInput("classes and xi differ in length")
        if len(set(self.classes)) != len(self.classes):
            raise InvalidInput("repeated class in D")
        for cid, mult in zip(self.classes, self.xi):
            if len(g.classes[cid]) == 1 and int(g.classes[cid][0]) == g.identity:
                raise InvalidInput("the trivial class cannot belong to D")
            if mult < 1:
                raise InvalidInput("xi must be >= 1 on every class of D")
        if len(g.closure(self.union())) != g.order:
            raise InvalidInput("the classes in D do not generate the group")

    @property
    def size(self) -> int:
        """``|xi|``: entries per unit of degree."""
        return sum(self.xi)

    def union(self) -> np.ndarray:
        return np.sort(np.concatenate([self.group.classes[c] for c in self.classes]))

    def d_index(self, element: int) -> int:
        """Position in ``classes`` of the class containing ``element`` or -1."""
        cid = int(self.group.class_of[element])
        try:
            return self.classes.index(cid)
        except ValueError:
            return -1

    @functools.cached_property
    def d_index_array(self) -> np.ndarray:
        out = np.full(self.group.order, -1, dtype=np.int64)
        for i, cid in enumerate(self.classes):
            out[self.group.classes[cid]] = i
        return out

    @classmethod
    def from_representatives(cls, group: GroupContext, reps: Sequence[Permutation], xi: Sequence[int]) -> "ClassData":
        cids = [int(group.class_of[group.index(r)]) for r in reps]
        order = sorted(range(len(cids)), key=lambda i: cids[i])
        return cls(group, tuple(cids[i] for i in order), tuple(int(xi[i]) for i in order))


@dataclasses.dataclass(eq=False)
class SubgroupRecord:
    """A subgroup ``H`` together with its splitting data relative to ``D``.

    ``d_h`` lists the H-conjugacy classes contained in classes of ``D``, ordered
    by (image under tau, size, smallest element); ``tau[i]`` is the position in
    ``ClassData.classes`` of the class containing ``d_h[i]``.
    """

    group: GroupContext
    elements: np.ndarray
    generators: tuple[int, ...]
    d_h: tuple[np.ndarray, ...]
    tau: tuple[int, ...]
    n_classes: int
    id: int = -1

    def __post_init__(self):
        self.element_set = frozenset(int(x) for x in self.elements)
        self._dh_of = {}
        for i, cl in enumerate(self.d_h):
            for x in cl:
                self._dh_of[int(x)] = i

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def omega(self) -> int | None:
        """Splitting number ``|D_H| - |D|``, or None when some class misses H."""
        if len(set(self.tau)) != self.n_classes:
            return None
        return len(self.d_h) - self.n_classes

    def dh_index(self, element: int) -> int:
        """Index into ``d_h`` of the H-class of ``element`` (-1 if outside)."""
        return self._dh_of.get(int(element), -1)

    def preimage_sizes(self) -> list[int]:
        """``|tau^{-1}(c)|`` for every class position c of D."""
        counts = [0] * self.n_classes
        for t in self.tau:
            counts[t] += 1
        return counts

    def contains(self, element: int) -> bool:
        return int(element) in self.element_set

    def is_subgroup_of(self, other: "SubgroupRecord") -> bool:
        return self.element_set <= other.element_set

    # abelianization -------------------------------------------------------------
    @functools.cached_property
    def derived(self) -> np.ndarray:
        return derived_subgroup(self.group, self.generators, self.elements)

    @functools.cached_property
    def _cosets(self) -> tuple[dict[int, int], list[int]]:
        g = self.group
        coset_of: dict[int, int] = {}
        reps: list[int] = []
        kernel = self.derived
        for x in self.elements:
            x = int(x)
            if x in coset_of:
                continue
            cid = len(reps)
            reps.append(x)
            for y in g.mul_many(np.full(len(kernel), x), kernel):
                coset_of[int(y)] = cid
        return coset_of, reps

    @property
    def abelianization_order(self) -> int:
        return len(self._cosets[1])

    def coset_rep(self, coset: int) -> int:
        return self._cosets[1][coset]

    def coset_mul(self, a: int, b: int) -> int:
        return self.abelianization_coset(self.group.mul(self.coset_rep(a), self.coset_rep(b)))

    def abelianization_coset(self, x: int) -> int:
        """Id of the coset ``x [H,H]``; the identity coset has id 0."""
        try:
            return self._cosets[0][int(x)]
        except KeyError:
            raise NotAMember(f"element {x} is not in the subgroup") from None

    def coset_order(self, a: int) -> int:
        n, acc = 1, a
        while acc != 0:
            acc = self.coset_mul(acc, a)
            n += 1
        return n

    def __repr__(self) -> str:
        return f"SubgroupRecord(id={self.id}, order={self.order}, |D_H|={len(self.d_h)}, omega={self.omega})"


def class_splitting(group: GroupContext, elements: np.ndarray, classes: ClassData,
                    generators: Sequence[int] | None = None, sid: int = -1) -> SubgroupRecord:
    """Split each class of D meeting ``elements`` into H-conjugacy classes."""
    elements = np.sort(np.asarray(elements, dtype=np.int64))
    if generators is None:
        generators = _pick_generators(group, elements)
    didx = classes.d_index_array[elements]
    inside = elements[didx >= 0]
    pieces = _orbits_under_conjugation(group, inside, generators)
    keyed = sorted(pieces, key=lambda c: (int(classes.d_index_array[c[0]]), len(c), int(c[0])))
    tau = tuple(int(classes.d_index_array[c[0]]) for c in keyed)
    return SubgroupRecord(group, elements, tuple(int(g) for g in generators), tuple(keyed), tau,
                          len(classes.classes), sid)


def _pick_generators(group: GroupContext, elements: np.ndarray) -> list[int]:
    """A small generating set for the subgroup with the given element set."""
    gens: list[int] = []
    current = np.array([group.identity], dtype=np.int64)
    target = len(elements)
    for x in elements:
        if len(current) == target:
            break
        if x in set(current.tolist()):
            continue
        gens.append(int(x))
        current = group.closure(gens)
    return gens


class SubgroupRegistry:
    """The D-generated subgroups ``Sub_{G,D}`` with stable ids.

    Records are sorted by (order, element ids); the trivial group has id 0 and
    G itself is last.
    """

    def __init__(self, classes: ClassData):
        self.classes = classes
        self.group = classes.group
        self.records = d_generated_subgroups(self.group, classes)
        self._by_set = {r.element_set: r for r in self.records}
        self._extra: dict[frozenset, SubgroupRecord] = {}

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def __getitem__(self, sid: int) -> SubgroupRecord:
        return self.records[sid]

    def lookup(self, elements: Iterable[int]) -> SubgroupRecord | None:
        return self._by_set.get(frozenset(int(x) for x in elements))

    def generated_by(self, ids: Iterable[int]) -> SubgroupRecord:
        """Record of the subgroup generated by ``ids`` (registry entry if D-generated)."""
        elems = self.group.closure(ids)
        key = frozenset(int(x) for x in elems)
        rec = self._by_set.get(key) or self._extra.get(key)
        if rec is None:
            rec = class_splitting(self.group, elems, self.classes)
            self._extra[key] = rec
        return rec

    def join(self, a: SubgroupRecord, b: SubgroupRecord) -> SubgroupRecord:
        return self.generated_by(list(a.generators) + list(b.generators))

    @property
    def trivial(self) -> SubgroupRecord:
        return self.records[0]

    @property
    def whole(self) -> SubgroupRecord:
        return self.records[-1]


def d_generated_subgroups(group: GroupContext, classes: ClassData) -> list[SubgroupRecord]:
    """Enumerate ``Sub_{G,D}``: the trivial group and every subgroup meeting all
    classes of D that is generated by its intersection with them.

    Every subgroup generated by elements of the union of D is reached by a chain
    of single-element joins starting from the trivial group; chains have length
    at most log2 |G|, so the search is complete.
    """
    union = [int(x) for x in classes.union()]
    seen: dict[frozenset, tuple[int, ...]] = {frozenset([group.identity]): ()}
    frontier = [()]
    while frontier:
        nxt = []
        for gens in frontier:
            base = frozenset(int(x) for x in group.closure(gens))
            for x in union:
                if x in base:
                    continue
                new_gens = gens + (x,)
                elems = frozenset(int(y) for y in group.closure(new_gens))
                if elems not in seen:
                    seen[elems] = new_gens
                    nxt.append(new_gens)
        frontier = nxt
    didx = classes.d_index_array
    ncls = len(classes.classes)
    out = []
    for elems, gens in seen.items():
        arr = np.array(sorted(elems), dtype=np.int64)
        if len(arr) > 1 and len(set(int(didx[x]) for x in arr if didx[x] >= 0)) != ncls:
            continue
        out.append((arr, gens))
    out.sort(key=lambda t: (len(t[0]), tuple(int(x) for x in t[0])))
    records = []
    for sid, (arr, gens) in enumerate(out):
        records.append(class_splitting(group, arr, classes, generators=gens, sid=sid))
    return records


# JSON group files ---------------------------------------------------------------

def _perm_from_json(obj, d: int) -> Permutation:
    if isinstance(obj, str):
        return Permutation.parse(obj, d)
    if obj and all(isinstance(x, int) for x in obj):
        obj = [obj]
    return Permutation.from_cycles(obj, d)


@dataclasses.dataclass
class GroupSpec:
    """A loaded group file: the group and the class data D, xi."""

    group: GroupContext
    classes: ClassData
    name: str = ""

    @functools.cached_property
    def registry(self) -> SubgroupRegistry:
        return SubgroupRegistry(self.classes)


def load_group(source: str | Path | dict, caps: Caps = DEFAULT_CAPS) -> GroupSpec:
    """Load a group file.

    Schema::

        {"degree": d,
         "generators": [[[1, 2], [3, 4]], ...],   # each generator: list of 1-based cycles
         "classes": [[[1, 2]], ...],             # representatives of the classes in D
         "xi": {"0": 1, ...}}                    # multiplicity per index into "classes"

    Generators and representatives may also be cycle strings like ``"(1 2)(3 4)"``.
    ``xi`` defaults to 1 on every class.
    """
    if isinstance(source, dict):
        data = source
        name = data.get("name", "")
    else:
        path = Path(source)
        data = json.loads(path.read_text())
        name = data.get("name", path.stem)
    try:
        d = int(data["degree"])
        gens = [_perm_from_json(g, d) for g in data["generators"]]
        reps = [_perm_from_json(r, d) for r in data["classes"]]
    except KeyError as exc:
        raise InvalidInput(f"group file is missing key {exc}") from None
    raw_xi = data.get("xi") or {}
    xi = []
    for i in range(len(reps)):
        v = raw_xi.get(str(i), raw_xi.get(i, 1)) if isinstance(raw_xi, dict) else raw_xi[i]
        xi.append(int(v))
    if any(v < 1 for v in xi):
        raise InvalidInput("xi must be a positive integer on every class")
    group = GroupContext(gens, caps)
    classes = ClassData.from_representatives(group, reps, xi)
    return GroupSpec(group, classes, name)


def symmetric_group_spec(d: int, caps: Caps = DEFAULT_CAPS) -> GroupSpec:
    """``S_d`` with D = {transpositions} and xi = 1."""
    if d < 2:
        raise InvalidInput("d must be at least 2")
    gens = [Permutation.from_cycles([[0, 1]], d, one_based=False)]
    if d > 2:
        gens.append(Permutation.from_cycles([list(range(d))], d, one_based=False))
    group = GroupContext(gens, caps)
    t = Permutation.from_cycles([[0, 1]], d, one_based=False)
    return GroupSpec(group, ClassData.from_representatives(group, [t], [1]), f"S{d}")
