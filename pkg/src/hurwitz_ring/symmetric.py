"""Components for the symmetric group with the class of transpositions.

A tuple of transpositions gives a multigraph on {1..d} with one edge per
entry. Braid orbits of product-1 tuples are classified by the connected
components of the multigraph of their square roots ``(h_1, .., h_n')`` (half the
entries) together with the edge count of each component.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from collections import Counter
from collections.abc import Iterable, Sequence
from functools import lru_cache

from .config import DEFAULT_CAPS, Caps
from .errors import CapExceeded, InvalidInput
from .group_core import GroupSpec, Permutation

Pair = tuple[int, int]


@dataclasses.dataclass(frozen=True)
class Multigraph:
    """Vertices 1..d; ``edges`` maps pairs ``i < j`` to multiplicities."""

    d: int
    edges: tuple[tuple[Pair, int], ...]

    def __post_init__(self):
        for (i, j), mult in self.edges:
            if not (1 <= i < j <= self.d) or mult < 1:
                raise InvalidInput(f"bad edge {(i, j)} x{mult}")

    @classmethod
    def from_pairs(cls, d: int, pairs: Iterable[Pair]) -> "Multigraph":
        counts = Counter(tuple(sorted(p)) for p in pairs)
        return cls(d, tuple(sorted(counts.items())))

    @property
    def n_edges(self) -> int:
        return sum(m for _, m in self.edges)

    def multiplicity(self, i: int, j: int) -> int:
        return dict(self.edges).get(tuple(sorted((i, j))), 0)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"] + [f"  {v};" for v in range(1, self.d + 1)]
        for (i, j), m in self.edges:
            lines += [f"  {i} -- {j};"] * m
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclasses.dataclass(frozen=True, order=True)
class Signature:
    """Connected components (sorted, singletons included) and edge counts."""

    blocks: tuple[tuple[int, ...], ...]
    edge_counts: tuple[int, ...]

    def nontrivial(self) -> list[tuple[tuple[int, ...], int]]:
        return [(b, e) for b, e in zip(self.blocks, self.edge_counts) if len(b) > 1]

    def subgroup_description(self) -> str:
        parts = ["S{" + ",".join(map(str, b)) + "}" for b, _ in self.nontrivial()]
        return " x ".join(parts) if parts else "1"

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks], "edges": list(self.edge_counts),
                "subgroup": self.subgroup_description()}


def transposition_pair(p: Permutation) -> Pair:
    cyc = p.cycles()
    if len(cyc) != 1 or len(cyc[0]) != 2:
        raise InvalidInput(f"{p.to_cycle_string()} is not a transposition")
    a, b = cyc[0]
    return (a + 1, b + 1)


def tuple_to_multigraph(d: int, entries: Sequence[Permutation | Pair]) -> Multigraph:
    """One edge per entry; entries are transpositions or 1-based pairs."""
    pairs = []
    for e in entries:
        if isinstance(e, Permutation):
            if e.d != d:
                raise InvalidInput("degree mismatch")
            pairs.append(transposition_pair(e))
        else:
            i, j = e
            if i == j:
                raise InvalidInput(f"({i} {j}) is not a transposition")
            pairs.append((min(i, j), max(i, j)))
    return Multigraph.from_pairs(d, pairs)


def signature(m: Multigraph) -> Signature:
    """Union-find connected components with per-component edge totals."""
    parent = list(range(m.d + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j), _ in m.edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    blocks: dict[int, list[int]] = {}
    for v in range(1, m.d + 1):
        blocks.setdefault(find(v), []).append(v)
    edge_count = Counter()
    for (i, _), mult in m.edges:
        edge_count[find(i)] += mult
    roots = sorted(blocks, key=lambda r: blocks[r])
    return Signature(tuple(tuple(blocks[r]) for r in roots), tuple(edge_count[r] for r in roots))


def component_signature(d: int, entries: Sequence[Permutation | Pair]) -> Signature:
    """Signature of a product-1 tuple, normalized to the multigraph of its square
    roots: every edge count is halved (they are all even)."""
    sig = signature(tuple_to_multigraph(d, entries))
    if any(e % 2 for e in sig.edge_counts):
        raise InvalidInput("a product-1 tuple has an even number of entries in every component")
    return Signature(sig.blocks, tuple(e // 2 for e in sig.edge_counts))


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _distributions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _distributions(total - first, parts - 1):
            yield (first,) + rest


def component_census_sd(d: int, n: int, caps: Caps = DEFAULT_CAPS) -> list[tuple[Signature, str]]:
    """All admissible signatures of degree ``n`` (``n/2`` edges): every block of size
    v >= 2 carries at least v - 1 edges; singletons carry none."""
    if d < 1:
        raise InvalidInput("d must be positive")
    if d > caps.max_sym_degree:
        raise CapExceeded("max_sym_degree", caps.max_sym_degree, f"d = {d}")
    if n < 0:
        raise InvalidInput("n must be nonnegative")
    if n % 2:
        return []
    half = n // 2
    out = []
    for part in _set_partitions(list(range(1, d + 1))):
        blocks = sorted(tuple(sorted(b)) for b in part)
        big = [i for i, b in enumerate(blocks) if len(b) > 1]
        spare = half - sum(len(blocks[i]) - 1 for i in big)
        if spare < 0 or (not big and spare > 0):
            continue
        for extra in _distributions(spare, len(big)):
            counts = [0] * len(blocks)
            for i, x in zip(big, extra):
                counts[i] = len(blocks[i]) - 1 + x
            sig = Signature(tuple(blocks), tuple(counts))
            out.append((sig, sig.subgroup_description()))
    out.sort()
    return out


def census_count(d: int, n: int) -> int:
    """``|component_census_sd(d, n)|`` by counting partition shapes."""
    if n % 2:
        return 0
    half = n // 2
    total = 0
    # block-size multisets of the non-singleton blocks
    for sizes in _size_multisets(d):
        k = len(sizes)
        spare = half - sum(s - 1 for s in sizes)
        if spare < 0 or (k == 0 and spare > 0):
            continue
        ways = math.factorial(d) // math.factorial(d - sum(sizes))
        for s in sizes:
            ways //= math.factorial(s)
        for mult in Counter(sizes).values():
            ways //= math.factorial(mult)
        total += ways * (math.comb(spare + k - 1, k - 1) if k else 1)
    return total


def _size_multisets(d: int, smallest: int = 2):
    yield ()
    for s in range(smallest, d + 1):
        for rest in _size_multisets(d - s, s):
            yield (s,) + rest


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if n <= 0 or k <= 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def _binom(top: int, bottom: int) -> int:
    if top < 0 or bottom < 0 or bottom > top:
        return 0
    return math.comb(top, bottom)


def _multinomial(total: int, parts: Sequence[int]) -> int:
    if any(p < 0 for p in parts) or sum(parts) != total:
        return 0
    out = math.factorial(total)
    for p in parts:
        out //= math.factorial(p)
    return out


def hf_closed_form(d: int, n: int) -> int:
    """The printed closed formula for the number of components of degree ``2n``:

        sum_{s=1..d} sum_{w=1..s} sum_{j=0..w} (-1)^j binom(n-d+s+w-1, w-1)
            * multinomial(d; s-w, j, d-s+w-j) * S(d-s+w-j, w-j)

    Binomials with negative upper index and multinomials with a negative part are
    0. It agrees with the census for n >= 1; at n = 0 it counts no components,
    while the census counts the empty one.
    """
    if n < 0:
        raise InvalidInput("n must be nonnegative")
    total = 0
    for s in range(1, d + 1):
        for w in range(1, s + 1):
            b = _binom(n - d + s + w - 1, w - 1)
            if not b:
                continue
            for j in range(w + 1):
                term = _multinomial(d, (s - w, j, d - s + w - j)) * stirling2(d - s + w - j, w - j)
                total += (-1) ** j * b * term
    return total


def leading_coefficient(d: int) -> float:
    """Leading coefficient of ``n -> HF(2n)`` for ``n >= d - 1`` as printed."""
    dp = d // 2
    base = math.factorial(d) / (2 ** dp * math.factorial(dp) * math.factorial(dp - 1))
    return base if d % 2 == 0 else (1 + dp / 3) * base


def hf_polynomial_fit(d: int, n_values: Sequence[int]) -> list[float]:
    """Coefficients (highest first) of the polynomial through census values
    ``(n, |census(d, 2n)|)``, of degree ``len(n_values) - 1``."""
    import numpy as np

    xs = np.array(n_values, dtype=float)
    ys = np.array([census_count(d, 2 * n) for n in n_values], dtype=float)
    return list(np.polyfit(xs, ys, len(xs) - 1))


def finite_differences_degree(values: Sequence[int]) -> int:
    """Degree of the polynomial through equally spaced integer values (-1 for zero)."""
    vals = list(values)
    deg = len(vals) - 1
    while vals and any(vals):
        if all(v == vals[0] for v in vals):
            return len(values) - len(vals)
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return len(values) - len(vals) - 1 if vals else deg


# presentation ----------------------------------------------------------------------

def all_pairs(d: int) -> list[Pair]:
    return list(itertools.combinations(range(1, d + 1), 2))


def presentation_relations(d: int) -> list[tuple[tuple[Pair, Pair], tuple[Pair, Pair], tuple[Pair, Pair]]]:
    """``X_ij X_jk = X_ik X_jk = X_ij X_ik`` for ``i < j < k``."""
    out = []
    for i, j, k in itertools.combinations(range(1, d + 1), 3):
        out.append((((i, j), (j, k)), ((i, k), (j, k)), ((i, j), (i, k))))
    return out


def monomial_tuple(spec: GroupSpec, monomial: Sequence[Pair]):
    """The tuple ``((ij),(ij),(kl),(kl),..)`` of a monomial in the ``X_ij``."""
    from .braid import GTuple

    d = spec.group.degree
    ids = []
    for i, j in monomial:
        t = spec.group.index(Permutation.from_cycles([[i, j]], d))
        ids += [t, t]
    return GTuple(spec.group, tuple(ids))


def monomial_signature(d: int, monomial: Sequence[Pair]) -> Signature:
    return signature(tuple_to_multigraph(d, monomial))


def rewriting_classes(d: int, degree: int) -> list[list[tuple[Pair, ...]]]:
    """Monomials of the given degree grouped by the congruence generated by the
    presentation relations (exhaustive union-find over single rewrites)."""
    if degree % 2:
        return []
    k = degree // 2
    pairs = all_pairs(d)
    monos = [tuple(m) for m in itertools.combinations_with_replacement(pairs, k)]
    index = {m: i for i, m in enumerate(monos)}
    parent = list(range(len(monos)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rels = []
    for a, b, c in presentation_relations(d):
        rels += [(a, b), (a, c)]
    for m in monos:
        cm = Counter(m)
        for lhs, rhs in rels:
            for src, dst in ((lhs, rhs), (rhs, lhs)):
                need = Counter(src)
                if all(cm[p] >= c for p, c in need.items()):
                    new = cm - need + Counter(dst)
                    key = tuple(sorted(new.elements()))
                    ra, rb = find(index[m]), find(index[key])
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list] = {}
    for i, m in enumerate(monos):
        groups.setdefault(find(i), []).append(m)
    return list(groups.values())


@dataclasses.dataclass
class PresentationReport:
    d: int
    max_degree: int
    generators_ok: bool
    relations_ok: bool
    completeness_ok: bool
    details: list[str]

    @property
    def ok(self) -> bool:
        return self.generators_ok and self.relations_ok and self.completeness_ok

    def to_json(self) -> dict:
        return dataclasses.asdict(self) | {"ok": self.ok}


def verify_presentation(d: int, table, max_degree: int = 6) -> PresentationReport:
    """Check generators, relations and completeness of the presentation against an
    enumerated component table of ``S_d``.

    (a) the degree-2 components are exactly the ``X_ij`` and they are the only
    non-factorizable components in the table; (b) each relation holds as an
    equality of orbit-canonical components; (c) up to ``max_degree``, monomials with
    the same signature are connected by rewriting, and rewriting classes coincide
    with components.
    """
    from .errors import InsufficientData

    spec = table.spec
    if spec.group.degree != d or len(spec.classes.classes) != 1:
        raise InvalidInput("table is not for S_d with one class")
    top = min(max_degree, table.max_enumerated)
    if top < 6 and d >= 3:
        raise InsufficientData(f"table enumerated only to degree {table.max_enumerated}; need 6")
    details = []
    x_keys = {p: table.component_of_tuple(monomial_tuple(spec, [p])) for p in all_pairs(d)}
    deg2 = set(table.components(2))
    gens = set(table.generator_keys())
    generators_ok = deg2 == set(x_keys.values()) and len(deg2) == d * (d - 1) // 2 and gens == deg2
    if not generators_ok:
        details.append("degree-2 components or generators differ from the X_ij")

    relations_ok = True
    for a, b, c in presentation_relations(d):
        keys = {table.component_of_tuple(monomial_tuple(spec, list(m))) for m in (a, b, c)}
        if len(keys) != 1:
            relations_ok = False
            details.append(f"relation fails for {a}, {b}, {c}")

    completeness_ok = True
    for deg in range(2, top + 1, 2):
        classes = rewriting_classes(d, deg)
        comp_of_class = []
        for members in classes:
            sigs = {monomial_signature(d, m) for m in members}
            comps = {table.component_of_tuple(monomial_tuple(spec, m)) for m in members}
            if len(sigs) != 1 or len(comps) != 1:
                completeness_ok = False
                details.append(f"degree {deg}: rewriting class mixes signatures or components")
            comp_of_class.append(next(iter(comps)))
        if len(set(comp_of_class)) != len(comp_of_class):
            completeness_ok = False
            details.append(f"degree {deg}: equal-signature monomials not connected by rewriting")
        if len(classes) != len(table.components(deg)):
            completeness_ok = False
            details.append(f"degree {deg}: {len(classes)} rewriting classes vs {len(table.components(deg))} components")
    return PresentationReport(d, top, generators_ok, relations_ok, completeness_ok, details)


def seven_gamma_v_tuples(spec: GroupSpec, i: int, j: int, k: int):
    """The tuples related by the triangle moves, as listed for ``((ij),(ij),(jk),(jk))``:
    the chain to the Gamma shape and the chain to the V shape."""
    from .braid import GTuple

    d = spec.group.degree

    def t(*pairs):
        return GTuple(spec.group, tuple(spec.group.index(Permutation.from_cycles([list(p)], d)) for p in pairs))

    ij, jk, ik = (i, j), (j, k), (i, k)
    start = t(ij, ij, jk, jk)
    gamma = [t(ij, ik, ik, ij), t(ij, ij, ik, ik)]
    vee = [t(jk, ik, ik, jk), t(jk, jk, ik, ik)]
    return start, gamma, vee


def is_squares_form(entries: Sequence[int]) -> bool:
    return len(entries) % 2 == 0 and all(entries[2 * a] == entries[2 * a + 1] for a in range(len(entries) // 2))


def signature_of_component(table, key) -> Signature:
    """Signature of a component from its canonical tuple (a member of the orbit)."""
    g = table.spec.group
    return component_signature(g.degree, [g.element(e) for e in key.canonical])


def block_subgroup_elements(spec: GroupSpec, sig: Signature) -> frozenset[int]:
    """Ids of the elements of the product of the symmetric groups on the blocks."""
    g = spec.group
    out = []
    for e in range(g.order):
        img = g.element(e).images
        if all(img[v - 1] + 1 in b for b in sig.blocks for v in b):
            out.append(e)
    return frozenset(out)


@dataclasses.dataclass
class BijectionReport:
    d: int
    degree: int
    n_components: int
    n_signatures: int
    injective: bool
    surjective: bool
    groups_match: bool

    @property
    def ok(self) -> bool:
        return self.injective and self.surjective and self.groups_match


def check_signature_bijection(table, n: int) -> BijectionReport:
    """Compare the components of degree ``n`` in an ``S_d`` table with the census."""
    spec = table.spec
    d = spec.group.degree
    comps = table.components(n)
    sigs = [signature_of_component(table, k) for k in comps]
    census = [s for s, _ in component_census_sd(d, n)]
    groups_match = True
    for key, sig in zip(comps, sigs):
        if table.subgroup(key).element_set != block_subgroup_elements(spec, sig):
            groups_match = False
    return BijectionReport(d, n, len(comps), len(census), len(set(sigs)) == len(sigs),
                           set(sigs) == set(census), groups_match)
