"""Compare the numba and pure-numpy kernels on the three hot paths.

    python3 benchmarks/bench_orbit.py [--quick] [--repeat N]

Each row times one kernel on both backends after a warm-up call (so numba
compilation is excluded) and checks that the outputs are identical.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from hurwitz_ring import kernels
from hurwitz_ring.braid import GTuple, alphabet_for
from hurwitz_ring.group_core import symmetric_group_spec
from hurwitz_ring.monoid import count_product_one


def _setup(d: int, n: int):
    spec = symmetric_group_spec(d)
    g = spec.group
    alpha = alphabet_for(g, spec.classes.classes)
    mt = g.right_mult_table(alpha.letters)
    pos = np.full(g.order, -1, dtype=np.int64)
    pos[alpha.letters] = np.arange(alpha.m)
    cls = np.zeros(alpha.m, dtype=np.int64)
    total = count_product_one(spec, n)
    return spec, g, alpha, mt, pos, cls, total


def _time(fn, repeat: int):
    fn()
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def run(quick: bool = False, repeat: int = 3) -> list[dict]:
    d, n = (4, 6) if quick else (4, 10)
    spec, g, alpha, mt, pos, cls, total = _setup(d, n)
    target = np.array([n])
    rows = []

    def scan(backend):
        return lambda: kernels.scan_product_one(mt, cls, target, pos, g.inverse, g.identity, alpha.m, n, total, backend)

    codes = scan("numpy")()

    def label(backend):
        return lambda: kernels.label_orbits(codes, alpha.fwd, alpha.bwd, alpha.m, n, backend)

    seed_tuple = GTuple.parse(g, ["(1 2)", "(2 3)", "(3 4)", "(3 4)", "(2 3)", "(1 2)"] + ["(1 2)"] * (n - 6))
    seed = alpha.encode(seed_tuple.entries)

    def orbit(backend):
        return lambda: kernels.orbit_codes(seed, alpha.fwd, alpha.bwd, alpha.m, n, 10**8, -1, backend)

    backends = ["numpy"] + (["numba"] if kernels.active_backend() == "numba" else [])
    for name, make in (("scan_product_one", scan), ("label_orbits", label), ("orbit_codes", orbit)):
        times = {}
        outs = {}
        for b in backends:
            times[b], outs[b] = _time(make(b), repeat)
        same = True
        if len(backends) == 2:
            a, c = outs["numpy"], outs["numba"]
            if isinstance(a, tuple):
                same = all(np.array_equal(np.asarray(x), np.asarray(y)) for x, y in zip(a, c))
            else:
                same = np.array_equal(a, c)
        rows.append({"kernel": name, "size": f"S_{d}, {n} entries, {total} tuples",
                     "numpy_s": times["numpy"], "numba_s": times.get("numba"), "identical": same})
    return rows


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rows = run(args.quick, args.repeat)
    print(f"{'kernel':18s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}  identical  workload")
    for r in rows:
        nb = r["numba_s"]
        speed = f"{r['numpy_s'] / nb:8.1f}" if nb else "     n/a"
        nbs = f"{nb:10.4f}" if nb else "       n/a"
        print(f"{r['kernel']:18s} {r['numpy_s']:10.4f} {nbs} {speed}  {str(r['identical']):9s}  {r['size']}")


if __name__ == "__main__":
    main()
