"""Hot loops for braid orbits on integer-encoded tuples.

A tuple of length ``L`` over a local alphabet of size ``m`` is stored as the
base-``m`` integer ``sum t[p] * m**(L-1-p)``, so numeric order is lexicographic
order of the tuple. The braid generators only touch two adjacent digits, which
lets every kernel update codes in O(1) per move.

Each kernel exists twice: a numba ``@njit`` version and a vectorized numpy
version. The numba path is used unless ``HURWITZ_RING_DISABLE_NUMBA=1`` is set
or numba fails to import. Both return identical results.
"""

from __future__ import annotations

import numpy as np

from .config import numba_disabled

try:  # pragma: no cover - depends on the environment
    import numba
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

ORBIT_OK = 0
ORBIT_FOUND = 1
ORBIT_CAP = 2


def active_backend() -> str:
    return "numpy" if (numba_disabled() or not HAVE_NUMBA) else "numba"


def _resolve(backend: str | None) -> str:
    if backend is None:
        return active_backend()
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    return backend


def code_fits(m: int, length: int) -> bool:
    """True when base-``m`` codes of ``length`` digits fit in int64."""
    return m ** length < 2 ** 62


def powers_of(m: int, length: int) -> np.ndarray:
    return np.array([m ** (length - 1 - p) for p in range(length)], dtype=np.int64)


def encode(digits, m: int) -> int:
    c = 0
    for x in digits:
        c = c * m + int(x)
    return c


def decode(code: int, m: int, length: int) -> list[int]:
    out = [0] * length
    for p in range(length - 1, -1, -1):
        code, out[p] = divmod(code, m)
    return out


def decode_many(codes: np.ndarray, m: int, length: int) -> np.ndarray:
    return (np.asarray(codes, dtype=np.int64)[:, None] // powers_of(m, length)[None, :]) % m


# numpy kernels ------------------------------------------------------------------

def _neighbours_np(codes: np.ndarray, fwd: np.ndarray, bwd: np.ndarray, m: int, length: int,
                   inverse_moves: bool = True) -> np.ndarray:
    pw = powers_of(m, length)
    digits = decode_many(codes, m, length)
    out = []
    for i in range(length - 1):
        x = digits[:, i]
        y = digits[:, i + 1]
        base = codes - x * pw[i] - y * pw[i + 1]
        out.append(base + fwd[x, y] * pw[i] + x * pw[i + 1])
        if inverse_moves:
            out.append(base + y * pw[i] + bwd[y, x] * pw[i + 1])
    if not out:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(out)


def _orbit_np(seed: int, fwd, bwd, m: int, length: int, cap: int, target: int):
    visited = np.array([seed], dtype=np.int64)
    frontier = visited
    if seed == target:
        return ORBIT_FOUND, visited
    while len(frontier):
        cand = np.unique(_neighbours_np(frontier, fwd, bwd, m, length))
        fresh = cand[~np.isin(cand, visited, assume_unique=True)]
        if len(fresh) == 0:
            break
        visited = np.union1d(visited, fresh)
        if target >= 0 and np.any(fresh == target):
            return ORBIT_FOUND, visited
        if len(visited) > cap:
            return ORBIT_CAP, visited
        frontier = fresh
    return ORBIT_OK, visited


def _label_np(codes: np.ndarray, fwd, bwd, m: int, length: int):
    n = len(codes)
    labels = np.full(n, -1, dtype=np.int64)
    nlab = 0
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = nlab
        frontier = np.array([codes[s]], dtype=np.int64)
        while len(frontier):
            cand = np.unique(_neighbours_np(frontier, fwd, bwd, m, length, inverse_moves=False))
            pos = np.searchsorted(codes, cand)
            if np.any(pos >= n) or np.any(codes[np.minimum(pos, n - 1)] != cand):
                return labels, -1
            pos = pos[labels[pos] < 0]
            labels[pos] = nlab
            frontier = codes[pos]
        nlab += 1
    return labels, nlab


def _scan_np(mt, cls, target, pos_of, inv, identity: int, m: int, length: int, chunk: int = 1 << 20):
    """All codes of product-1 tuples with class counts ``target`` (sorted)."""
    ncls = len(target)
    results = []

    def expand(code, prod, counts, depth):
        # vectorized extension of an array of prefixes up to length-1, then close
        while depth < length - 1:
            if len(code) * m > chunk and len(code) > 1:
                for k in range(len(code)):
                    expand(code[k:k + 1], prod[k:k + 1], counts[k:k + 1], depth)
                return
            n = len(code)
            code = (code[:, None] * m + np.arange(m)[None, :]).reshape(-1)
            prod = mt[prod].reshape(-1)
            newc = np.repeat(counts, m, axis=0)
            j = np.tile(np.arange(m), n)
            newc[np.arange(len(j)), cls[j]] += 1
            ok = np.all(newc <= target[None, :], axis=1)
            code, prod, counts = code[ok], prod[ok], newc[ok]
            depth += 1
            if len(code) == 0:
                return
        last = pos_of[inv[prod]]
        ok = last >= 0
        code, counts, last = code[ok], counts[ok], last[ok]
        ok = counts[np.arange(len(last)), cls[last]] < target[cls[last]]
        results.append(code[ok] * m + last[ok])

    expand(np.zeros(1, dtype=np.int64), np.array([identity], dtype=np.int64),
           np.zeros((1, ncls), dtype=np.int64), 0)
    if not results:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(results)


# numba kernels ------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _orbit_nb(seed, fwd, bwd, m, length, cap, target):
        visited = set()
        visited.add(seed)
        queue = np.empty(1024, dtype=np.int64)
        queue[0] = seed
        head = 0
        tail = 1
        if seed == target:
            return ORBIT_FOUND, queue[:1].copy()
        pw = np.empty(length, dtype=np.int64)
        acc = 1
        for p in range(length - 1, -1, -1):
            pw[p] = acc
            acc *= m
        digits = np.empty(length, dtype=np.int64)
        status = ORBIT_OK
        while head < tail:
            c = queue[head]
            head += 1
            rem = c
            for p in range(length - 1, -1, -1):
                digits[p] = rem % m
                rem //= m
            for i in range(length - 1):
                x = digits[i]
                y = digits[i + 1]
                base = c - x * pw[i] - y * pw[i + 1]
                for move in range(2):
                    if move == 0:
                        nc = base + fwd[x, y] * pw[i] + x * pw[i + 1]
                    else:
                        nc = base + y * pw[i] + bwd[y, x] * pw[i + 1]
                    if nc in visited:
                        continue
                    visited.add(nc)
                    if tail == len(queue):
                        grown = np.empty(2 * len(queue), dtype=np.int64)
                        grown[:tail] = queue[:tail]
                        queue = grown
                    queue[tail] = nc
                    tail += 1
                    if nc == target:
                        status = ORBIT_FOUND
                        break
                    if tail > cap:
                        status = ORBIT_CAP
                        break
                if status != ORBIT_OK:
                    break
            if status != ORBIT_OK:
                break
        return status, np.sort(queue[:tail])

    @njit(cache=True)
    def _hash_slot(code, mask):
        h = np.uint64(code) * np.uint64(0x9E3779B97F4A7C15)
        return np.int64((h >> np.uint64(17)) & np.uint64(mask))

    @njit(cache=True)
    def _label_nb(codes, fwd, bwd, m, length):
        # open-addressing index of the code set; the orbits of a finite set are
        # already closed under sigma_i, so forward moves suffice here
        n = len(codes)
        size = 1
        while size < 2 * n + 2:
            size *= 2
        mask = size - 1
        keys = np.full(size, -1, dtype=np.int64)
        vals = np.empty(size, dtype=np.int64)
        for k in range(n):
            h = _hash_slot(codes[k], mask)
            while keys[h] != -1:
                h = (h + 1) & mask
            keys[h] = codes[k]
            vals[h] = k
        labels = np.full(n, -1, dtype=np.int64)
        queue = np.empty(max(n, 1), dtype=np.int64)
        pw = np.empty(length, dtype=np.int64)
        acc = 1
        for p in range(length - 1, -1, -1):
            pw[p] = acc
            acc *= m
        digits = np.empty(length, dtype=np.int64)
        nlab = 0
        for s in range(n):
            if labels[s] >= 0:
                continue
            labels[s] = nlab
            queue[0] = s
            head = 0
            tail = 1
            while head < tail:
                c = codes[queue[head]]
                head += 1
                rem = c
                for p in range(length - 1, -1, -1):
                    digits[p] = rem % m
                    rem //= m
                for i in range(length - 1):
                    x = digits[i]
                    y = digits[i + 1]
                    nc = c + (fwd[x, y] - x) * pw[i] + (x - y) * pw[i + 1]
                    h = _hash_slot(nc, mask)
                    while keys[h] != nc and keys[h] != -1:
                        h = (h + 1) & mask
                    if keys[h] == -1:
                        return labels, -1
                    j = vals[h]
                    if labels[j] < 0:
                        labels[j] = nlab
                        queue[tail] = j
                        tail += 1
            nlab += 1
        return labels, nlab

    @njit(cache=True)
    def _scan_nb(mt, cls, target, pos_of, inv, identity, m, length, capacity):
        out = np.empty(capacity, dtype=np.int64)
        nout = 0
        counts = np.zeros(len(target), dtype=np.int64)
        dig = np.zeros(length, dtype=np.int64)
        nxt = np.zeros(length, dtype=np.int64)
        prod = np.zeros(length + 1, dtype=np.int64)
        cp = np.zeros(length + 1, dtype=np.int64)
        prod[0] = identity
        pos = 0
        while True:
            if pos == length - 1:
                j = pos_of[inv[prod[pos]]]
                if j >= 0 and counts[cls[j]] < target[cls[j]]:
                    if nout == capacity:
                        return out, -1
                    out[nout] = cp[pos] * m + j
                    nout += 1
                pos -= 1
                if pos < 0:
                    break
                counts[cls[dig[pos]]] -= 1
                continue
            j = nxt[pos]
            while j < m and counts[cls[j]] >= target[cls[j]]:
                j += 1
            if j == m:
                pos -= 1
                if pos < 0:
                    break
                counts[cls[dig[pos]]] -= 1
                continue
            dig[pos] = j
            nxt[pos] = j + 1
            counts[cls[j]] += 1
            prod[pos + 1] = mt[prod[pos], j]
            cp[pos + 1] = cp[pos] * m + j
            pos += 1
            nxt[pos] = 0
        return out[:nout], nout


# public entry points ----------------------------------------------------------------

def orbit_codes(seed: int, fwd: np.ndarray, bwd: np.ndarray, m: int, length: int,
                cap: int, target: int = -1, backend: str | None = None) -> tuple[int, np.ndarray]:
    """Braid orbit of ``seed`` as a sorted code array.

    Returns ``(status, codes)``: status is ``ORBIT_OK`` for a complete orbit,
    ``ORBIT_FOUND`` if ``target`` was reached (partial orbit) and ``ORBIT_CAP``
    if more than ``cap`` codes were visited.
    """
    fwd = np.ascontiguousarray(fwd, dtype=np.int64)
    bwd = np.ascontiguousarray(bwd, dtype=np.int64)
    if _resolve(backend) == "numba":
        status, codes = _orbit_nb(np.int64(seed), fwd, bwd, np.int64(m), np.int64(length),
                                  np.int64(cap), np.int64(target))
        return int(status), codes
    return _orbit_np(int(seed), fwd, bwd, m, length, cap, int(target))


def label_orbits(codes: np.ndarray, fwd: np.ndarray, bwd: np.ndarray, m: int, length: int,
                 backend: str | None = None) -> tuple[np.ndarray, int]:
    """Split a braid-closed sorted code set into orbits.

    Orbits are numbered in order of their smallest code, which is therefore the
    lexicographically minimal member. Returns ``(labels, count)``; count is -1
    if some move leaves the given set.
    """
    codes = np.ascontiguousarray(codes, dtype=np.int64)
    fwd = np.ascontiguousarray(fwd, dtype=np.int64)
    bwd = np.ascontiguousarray(bwd, dtype=np.int64)
    if _resolve(backend) == "numba":
        labels, n = _label_nb(codes, fwd, bwd, np.int64(m), np.int64(length))
        return labels, int(n)
    return _label_np(codes, fwd, bwd, m, length)


def scan_product_one(mt: np.ndarray, cls: np.ndarray, target: np.ndarray, pos_of: np.ndarray,
                     inv: np.ndarray, identity: int, m: int, length: int, capacity: int,
                     backend: str | None = None) -> np.ndarray:
    """Sorted codes of all tuples with product 1 whose entries have class counts ``target``.

    ``mt[g, j]`` is the group id of ``g * alphabet[j]``, ``cls[j]`` the class slot of
    letter j, ``pos_of[g]`` the letter of group element g (or -1), ``inv`` the
    inverse table. ``capacity`` must be at least the number of such tuples.
    """
    if length == 0:
        return np.zeros(1, dtype=np.int64)
    args = [np.ascontiguousarray(a, dtype=np.int64) for a in (mt, cls, target, pos_of, inv)]
    if _resolve(backend) == "numba":
        out, n = _scan_nb(*args, np.int64(identity), np.int64(m), np.int64(length), np.int64(capacity))
        if n < 0:
            raise RuntimeError("scan capacity too small")
        return out
    out = _scan_np(*args, int(identity), m, length)
    if len(out) > capacity:
        raise RuntimeError("scan capacity too small")
    return out
