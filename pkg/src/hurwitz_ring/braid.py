"""Braid group action on tuples of group elements and braid orbits.

``sigma_i`` acts by ``(.., x, y, ..) -> (.., x y x^-1, x, ..)`` at positions
``i, i+1`` (1-based ``i``); its inverse is ``(.., a, b, ..) -> (.., b, b^-1 a b, ..)``.
"""

from __future__ import annotations

import dataclasses
import functools
from collections import deque
from collections.abc import Iterable, Sequence

import numpy as np

from . import kernels
from .config import DEFAULT_CAPS, Caps
from .errors import CapExceeded, InvalidInput, NotAMember
from .group_core import GroupContext, Permutation, SubgroupRecord


@dataclasses.dataclass(frozen=True)
class GTuple:
    """A tuple of group elements, stored as element ids of ``group``."""

    group: GroupContext = dataclasses.field(compare=False, repr=False, hash=False)
    entries: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= e < self.group.order for e in self.entries):
            raise NotAMember("tuple entry is not an element of the group")

    @classmethod
    def from_perms(cls, group: GroupContext, perms: Iterable[Permutation]) -> "GTuple":
        return cls(group, tuple(group.index(p) for p in perms))

    @classmethod
    def parse(cls, group: GroupContext, items: Iterable[str]) -> "GTuple":
        return cls.from_perms(group, (Permutation.parse(s, group.degree) for s in items))

    def __len__(self) -> int:
        return len(self.entries)

    def __add__(self, other: "GTuple") -> "GTuple":
        return GTuple(self.group, self.entries + other.entries)

    @functools.cached_property
    def product(self) -> int:
        return self.group.product(self.entries)

    @functools.cached_property
    def generated(self) -> frozenset[int]:
        return frozenset(int(x) for x in self.group.closure(self.entries))

    @functools.cached_property
    def class_vector(self) -> tuple[int, ...]:
        """Number of entries in each conjugacy class of G (the full G-multidiscriminant)."""
        counts = [0] * len(self.group.classes)
        for e in self.entries:
            counts[int(self.group.class_of[e])] += 1
        return tuple(counts)

    def conjugate(self, h: int) -> "GTuple":
        """Entry-wise ``g^h = h g h^{-1}``."""
        return GTuple(self.group, tuple(self.group.conj(e, h) for e in self.entries))

    def rotate(self, k: int = 1) -> "GTuple":
        k %= max(len(self.entries), 1)
        return GTuple(self.group, self.entries[k:] + self.entries[:k])

    def perms(self) -> list[Permutation]:
        return [self.group.element(e) for e in self.entries]

    def to_json(self) -> list[str]:
        return [p.to_cycle_string() for p in self.perms()]

    def __repr__(self) -> str:
        return "GTuple(" + ", ".join(self.to_json()) + ")"


def _check_index(i: int, t: GTuple) -> None:
    if not 1 <= i <= len(t) - 1:
        raise IndexError(f"braid index {i} outside 1..{len(t) - 1}")


def braid_act(i: int, t: GTuple) -> GTuple:
    """Apply ``sigma_i`` (1-based)."""
    _check_index(i, t)
    g = t.group
    e = list(t.entries)
    x, y = e[i - 1], e[i]
    e[i - 1] = g.conj(y, x)
    e[i] = x
    return GTuple(g, tuple(e))


def braid_act_inv(i: int, t: GTuple) -> GTuple:
    """Apply ``sigma_i^{-1}`` (1-based)."""
    _check_index(i, t)
    g = t.group
    e = list(t.entries)
    a, b = e[i - 1], e[i]
    e[i - 1] = b
    e[i] = g.conj(a, int(g.inverse[b]))
    return GTuple(g, tuple(e))


def apply_word(word: Sequence[int], t: GTuple) -> GTuple:
    """Apply a braid word, letters ``+i`` for sigma_i and ``-i`` for its inverse,
    leftmost letter first."""
    for letter in word:
        if letter == 0:
            raise InvalidInput("braid letters are nonzero integers")
        t = braid_act(letter, t) if letter > 0 else braid_act_inv(-letter, t)
    return t


def multidiscriminant(h: SubgroupRecord, t: GTuple) -> tuple[int, ...]:
    """``mu_H(t)``: number of entries in each class of ``D_H`` (ordered as ``h.d_h``)."""
    counts = [0] * len(h.d_h)
    for e in t.entries:
        if not h.contains(e):
            raise NotAMember(f"entry {t.group.element(e).to_cycle_string()} is not in H")
        k = h.dh_index(e)
        if k >= 0:
            counts[k] += 1
    return tuple(counts)


@dataclasses.dataclass(frozen=True)
class OrbitRecord:
    canonical: GTuple
    size: int
    product: int
    subgroup: frozenset[int]
    class_vector: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "canonical": self.canonical.to_json(),
            "size": self.size,
            "product": self.canonical.group.element(self.product).to_cycle_string(),
            "subgroup_order": len(self.subgroup),
        }


class _Alphabet:
    """Conjugation-closed letter set for a family of tuples, with local tables."""

    def __init__(self, group: GroupContext, class_ids: Sequence[int]):
        self.class_ids = tuple(sorted(set(int(c) for c in class_ids)))
        if self.class_ids:
            self.letters = np.sort(np.concatenate([group.classes[c] for c in self.class_ids]))
        else:
            self.letters = np.empty(0, dtype=np.int64)
        self.m = len(self.letters)
        self.pos = {int(x): i for i, x in enumerate(self.letters)}
        if self.m:
            self.fwd, self.bwd = group.conjugation_tables(self.letters)
        else:
            self.fwd = self.bwd = np.zeros((0, 0), dtype=np.int64)

    def encode(self, entries: Sequence[int]) -> int:
        return kernels.encode((self.pos[int(e)] for e in entries), self.m)

    def decode(self, code: int, length: int) -> tuple[int, ...]:
        return tuple(int(self.letters[j]) for j in kernels.decode(int(code), self.m, length))


def alphabet_for(group: GroupContext, class_ids: Iterable[int]) -> _Alphabet:
    cache = group.__dict__.setdefault("_alphabet_cache", {})
    key = tuple(sorted(set(int(c) for c in class_ids)))
    hit = cache.get(key)
    if hit is None:
        hit = cache[key] = _Alphabet(group, key)
    return hit


def _alphabet_of(t: GTuple) -> _Alphabet:
    return alphabet_for(t.group, (t.group.class_of[e] for e in t.entries))


def _python_orbit(t: GTuple, cap: int, target: tuple[int, ...] | None):
    """Hash-set BFS on raw id tuples, for tuples too long for int64 codes."""
    g = t.group
    start = t.entries
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for i in range(len(cur) - 1):
            x, y = cur[i], cur[i + 1]
            for a, b in ((g.conj(y, x), x), (y, g.conj(x, int(g.inverse[y])))):
                nxt = cur[:i] + (a, b) + cur[i + 2:]
                if nxt in seen:
                    continue
                seen.add(nxt)
                if nxt == target:
                    return kernels.ORBIT_FOUND, seen
                if len(seen) > cap:
                    return kernels.ORBIT_CAP, seen
                queue.append(nxt)
    return kernels.ORBIT_OK, seen


def orbit_members(t: GTuple, caps: Caps = DEFAULT_CAPS, backend: str | None = None) -> list[tuple[int, ...]]:
    """All tuples in the braid orbit of ``t``, sorted lexicographically by element id."""
    status, members = _orbit_raw(t, caps.max_orbit, None, backend)
    if status == kernels.ORBIT_CAP:
        raise CapExceeded("max_orbit", caps.max_orbit, f"orbit of a length-{len(t)} tuple")
    return members


def _orbit_raw(t: GTuple, cap: int, target: GTuple | None, backend: str | None, decode: bool = True):
    if len(t) == 0:
        return kernels.ORBIT_FOUND if target is not None else kernels.ORBIT_OK, [()]
    alpha = _alphabet_of(t)
    if kernels.code_fits(alpha.m, len(t)):
        tcode = -1
        if target is not None:
            try:
                tcode = alpha.encode(target.entries)
            except KeyError:
                tcode = -1
        status, codes = kernels.orbit_codes(alpha.encode(t.entries), alpha.fwd, alpha.bwd,
                                            alpha.m, len(t), cap, tcode, backend)
        if not decode:
            return status, codes
        return status, [alpha.decode(c, len(t)) for c in codes]
    status, seen = _python_orbit(t, cap, None if target is None else target.entries)
    return status, sorted(seen)


def orbit(t: GTuple, caps: Caps = DEFAULT_CAPS, backend: str | None = None) -> OrbitRecord:
    """Full braid orbit of ``t`` with its lexicographically minimal member."""
    if len(t) == 0:
        return OrbitRecord(t, 1, t.product, t.generated, t.class_vector)
    alpha = _alphabet_of(t)
    if kernels.code_fits(alpha.m, len(t)):
        status, codes = kernels.orbit_codes(alpha.encode(t.entries), alpha.fwd, alpha.bwd,
                                            alpha.m, len(t), caps.max_orbit, -1, backend)
        if status == kernels.ORBIT_CAP:
            raise CapExceeded("max_orbit", caps.max_orbit, f"orbit of a length-{len(t)} tuple")
        canonical = GTuple(t.group, alpha.decode(int(codes[0]), len(t)))
        size = len(codes)
    else:
        status, seen = _python_orbit(t, caps.max_orbit, None)
        if status == kernels.ORBIT_CAP:
            raise CapExceeded("max_orbit", caps.max_orbit, f"orbit of a length-{len(t)} tuple")
        canonical = GTuple(t.group, min(seen))
        size = len(seen)
    return OrbitRecord(canonical, size, t.product, t.generated, t.class_vector)


def equivalent(t1: GTuple, t2: GTuple, caps: Caps = DEFAULT_CAPS, backend: str | None = None) -> bool:
    """True iff ``t1`` and ``t2`` lie in the same braid orbit."""
    if len(t1) != len(t2):
        raise InvalidInput(f"length mismatch: {len(t1)} vs {len(t2)}")
    if t1.entries == t2.entries:
        return True
    if t1.product != t2.product or t1.class_vector != t2.class_vector or t1.generated != t2.generated:
        return False
    status, _ = _orbit_raw(t1, caps.max_orbit, t2, backend, decode=False)
    if status == kernels.ORBIT_CAP:
        raise CapExceeded("max_orbit", caps.max_orbit, f"orbit of a length-{len(t1)} tuple")
    return status == kernels.ORBIT_FOUND


# random sampling helpers (used by the property suites and `verify`) ---------------------

def random_tuple(group: GroupContext, length: int, rng: np.random.Generator,
                 letters: np.ndarray | None = None) -> GTuple:
    pool = np.arange(group.order) if letters is None else np.asarray(letters)
    return GTuple(group, tuple(int(x) for x in rng.choice(pool, size=length)))


def random_product_one_tuple(group: GroupContext, length: int, rng: np.random.Generator,
                             letters: np.ndarray | None = None, tries: int = 10_000) -> GTuple:
    """A random tuple with product 1, entries drawn from ``letters``.

    The first ``length - 1`` entries are uniform; the last is forced and the draw
    is repeated until it lands in ``letters``.
    """
    pool = np.arange(group.order) if letters is None else np.asarray(letters)
    allowed = set(int(x) for x in pool)
    for _ in range(tries):
        head = [int(x) for x in rng.choice(pool, size=length - 1)]
        last = int(group.inverse[group.product(head)])
        if last in allowed:
            return GTuple(group, tuple(head + [last]))
    raise InvalidInput("could not sample a product-1 tuple from the given letters")


def random_braid_word(length: int, strands: int, rng: np.random.Generator) -> list[int]:
    if strands < 2:
        return []
    idx = rng.integers(1, strands, size=length)
    sign = rng.choice([-1, 1], size=length)
    return [int(a * b) for a, b in zip(idx, sign)]
