from __future__ import annotations

import importlib.util
from pathlib import Path


def test_benchmark_quick_runs_and_backends_agree():
    path = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_orbit.py"
    spec = importlib.util.spec_from_file_location("bench_orbit", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    rows = mod.run(quick=True, repeat=1)
    assert [r["kernel"] for r in rows] == ["scan_product_one", "label_orbits", "orbit_codes"]
    assert all(r["identical"] for r in rows)
