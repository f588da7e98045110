"""Command-line entry point: ``hurwitz-ring <subcommand> ...``.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 a size cap was hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib.resources import files
from pathlib import Path

import numpy as np

from . import checks
from .asymptotics import average_leading_coefficient, stabilization_report
from .config import Caps
from .errors import CapExceeded, HurwitzRingError, InsufficientData, InvalidInput, SettingViolated
from .group_core import load_group, symmetric_group_spec
from .monoid import MonoidTable, hilbert_table, non_factorizable

SCHEMA_VERSION = 1
BUILTIN = ("s3", "s4", "s5", "d4", "q8")
log = logging.getLogger("hurwitz_ring")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _resolve_group(name: str, caps: Caps):
    if name in BUILTIN:
        return load_group(files("hurwitz_ring") / "data" / f"{name}.json", caps)
    path = Path(name)
    if not path.exists():
        builtin = files("hurwitz_ring") / "data" / path.name
        if builtin.is_file():
            return load_group(builtin, caps)
        raise UsageError(f"no such group file: {name}")
    return load_group(path, caps)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _envelope(kind: str, **payload) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **payload}


def _perm_str(group, eid: int) -> str:
    return group.element(int(eid)).to_cycle_string()


def _table(args, caps: Caps, keep_codes: bool = False) -> MonoidTable:
    spec = _resolve_group(args.group, caps)
    return MonoidTable(spec, args.max_degree, caps, max_enumerated=args.max_enumerated, keep_codes=keep_codes)


# subcommands -------------------------------------------------------------------------

def cmd_classes(args, caps):
    spec = _resolve_group(args.group, caps)
    g = spec.group
    in_d = dict(zip(spec.classes.classes, spec.classes.xi))
    rows = []
    for i, cl in enumerate(g.classes):
        rows.append({"index": i, "size": len(cl), "representative": _perm_str(g, cl[0]),
                     "order": int(g.element_orders[cl[0]]), "in_D": i in in_d, "xi": in_d.get(i, 0)})
    return _dump(_envelope("classes", group=spec.name, order=g.order, classes=rows))


def cmd_subgroups(args, caps):
    spec = _resolve_group(args.group, caps)
    g = spec.group
    rows = []
    for h in spec.registry:
        rows.append({"id": h.id, "order": h.order, "generators": [_perm_str(g, e) for e in h.generators],
                     "omega": h.omega, "n_classes_in_D": len(h.d_h),
                     "abelianization_order": h.abelianization_order})
    return _dump(_envelope("subgroups", group=spec.name, subgroups=rows))


def cmd_components(args, caps):
    table = _table(args, caps)
    hil = hilbert_table(table)
    if args.format == "csv":
        return hil.to_csv(table.registry)
    degrees = []
    for n in range(table.max_degree + 1):
        comps = table.components(n)
        degrees.append({"degree": n, "status": table.degree_status(n), "count": len(comps),
                        "components": [c.to_json(table) for c in comps]})
    nf = non_factorizable(table)
    return _dump(_envelope(
        "components", group=table.spec.name, max_degree=table.max_degree,
        enumerated_up_to=table.max_enumerated, totals=hil.totals[2:] if args.from_two else hil.totals,
        totals_from_degree=2 if args.from_two else 0, degrees=degrees,
        generators={"count": len(nf.components), "certified": nf.certified, "lemma_bound": nf.bound},
    ))


def cmd_growth(args, caps):
    table = _table(args, caps)
    hil = hilbert_table(table)
    targets = [table.registry[args.subgroup]] if args.subgroup is not None else list(table.registry)

    def one(h):
        entry = {"subgroup_id": h.id}
        try:
            entry["report"] = stabilization_report(table, h, hil).to_json()
        except InsufficientData as exc:
            entry["insufficient_data"] = str(exc)
        try:
            entry["leading_coefficient"] = average_leading_coefficient(table, h, hil).to_json()
        except (InsufficientData, SettingViolated, ValueError) as exc:
            entry["leading_coefficient"] = {"unavailable": str(exc)}
        return entry

    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        reports = list(pool.map(one, targets))
    return _dump(_envelope("growth", group=table.spec.name, max_degree=table.max_degree, subgroups=reports))


def cmd_spectrum(args, caps):
    from .spectrum import spec_description, spec_sd

    if args.symmetric is not None:
        sp = spec_sd(args.symmetric, caps)
        if args.dot:
            return sp.to_dot()
        return _dump(_envelope("spectrum", symmetric=args.symmetric, n_strata=len(sp.strata), **sp.to_json()))
    if args.group is None:
        raise UsageError("spectrum needs --group or --symmetric")
    table = _table(args, caps)
    desc = spec_description(table)
    if args.dot:
        return desc.to_dot()
    body = desc.to_json()
    return _dump(_envelope("spectrum", group=table.spec.name, n_strata=len(desc.nontrivial()), **body))


def cmd_sym(args, caps):
    from .symmetric import (
        census_count,
        component_census_sd,
        hf_closed_form,
        tuple_to_multigraph,
        verify_presentation,
    )

    d = args.d
    if d > caps.max_sym_degree:
        raise CapExceeded("max_sym_degree", caps.max_sym_degree, f"d = {d}")
    out: dict = {"d": d, "max_degree": args.max_degree}
    census = []
    dots = []
    for n in range(0, args.max_degree + 1, 2):
        row = {"degree": n, "count": census_count(d, n)}
        if args.list_signatures:
            sigs = component_census_sd(d, n, caps)
            row["signatures"] = [s.to_json() for s, _ in sigs]
            if args.dot:
                for s, _ in sigs:
                    pairs = []
                    for block, edges in s.nontrivial():
                        path = list(zip(block, block[1:]))
                        pairs += path + [path[0]] * (edges - len(path))
                    dots.append(tuple_to_multigraph(d, pairs).to_dot(f"deg{n}_{len(dots)}"))
        census.append(row)
    out["census"] = census
    ok = True
    if args.check_formula:
        rows = []
        for n in range(1, args.max_degree // 2 + 1):
            a, b = hf_closed_form(d, n), census_count(d, 2 * n)
            rows.append({"n": n, "formula": a, "census": b, "match": a == b})
            ok &= a == b
        out["formula"] = {"rows": rows, "valid_from_n": 1, "ok": all(r["match"] for r in rows)}
    if args.check_presentation:
        table = MonoidTable(symmetric_group_spec(d, caps), 6, caps)
        rep = verify_presentation(d, table)
        out["presentation"] = rep.to_json()
        ok &= rep.ok
    if args.dot:
        return "".join(dots), ok
    return _dump(_envelope("sym", **out)), ok


def cmd_verify(args, caps):
    rng = np.random.default_rng(args.seed)
    table = _table(args, caps, keep_codes=True)
    spec = table.spec
    seeds = rng.integers(0, 2**32, size=3)
    jobs = [
        lambda: checks.braid_invariance(spec, args.samples, np.random.default_rng(seeds[0])),
        lambda: checks.braid_lemmas(spec, max(1, args.samples // 10), np.random.default_rng(seeds[1])),
        lambda: checks.backend_agreement(spec, max(1, args.samples // 50), np.random.default_rng(seeds[2])),
        lambda: checks.likely_formula(spec, min(args.max_degree, 12)),
        lambda: checks.hilbert_consistency(table),
        lambda: checks.multiplication_consistency(table),
        lambda: checks.factorization(table),
    ]
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        results = list(pool.map(lambda f: f(), jobs))
    if checks.is_symmetric_transpositions(spec):
        results += checks.symmetric_checks(table)
    ok = all(r.ok for r in results)
    body = _envelope("verify", group=spec.name, seed=args.seed, max_degree=args.max_degree, ok=ok,
                     checks=[r.to_json() for r in results])
    return _dump(body), ok


# argument parsing --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hurwitz-ring", description="Components of Hurwitz spaces via braid orbits.")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--max-orbit", type=int, help="override the orbit size cap")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group_args(sp, required=True):
        sp.add_argument("--group", required=required, help="group file or builtin name (s3, s4, s5, d4, q8)")

    def degree_args(sp, default=8):
        sp.add_argument("--max-degree", type=int, default=default)
        sp.add_argument("--max-enumerated", type=int, default=None,
                        help="largest degree enumerated by brute force; closure above")

    sp = sub.add_parser("classes", help="conjugacy classes of G and the classes in D")
    group_args(sp)
    sp = sub.add_parser("subgroups", help="the D-generated subgroups with splitting numbers")
    group_args(sp)
    sp = sub.add_parser("components", help="component table and Hilbert function")
    group_args(sp)
    degree_args(sp)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--from-two", action="store_true", help="report totals starting at degree 2")
    sp = sub.add_parser("growth", help="stabilization and growth reports per subgroup")
    group_args(sp)
    degree_args(sp, 12)
    sp.add_argument("--subgroup", type=int)
    sp = sub.add_parser("spectrum", help="stratification of the spectrum")
    group_args(sp, required=False)
    degree_args(sp, 12)
    sp.add_argument("--symmetric", type=int, help="closed-form spectrum for S_d with transpositions")
    sp.add_argument("--dot", action="store_true")
    sp = sub.add_parser("sym", help="symmetric group fast path")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--max-degree", type=int, default=12)
    sp.add_argument("--check-presentation", action="store_true")
    sp.add_argument("--check-formula", action="store_true")
    sp.add_argument("--list-signatures", action="store_true")
    sp.add_argument("--dot", action="store_true", help="one representative multigraph per signature")
    sp = sub.add_parser("verify", help="run the property suite on a group")
    group_args(sp)
    degree_args(sp)
    sp.add_argument("--samples", type=int, default=500)
    return p


COMMANDS = {
    "classes": cmd_classes, "subgroups": cmd_subgroups, "components": cmd_components,
    "growth": cmd_growth, "spectrum": cmd_spectrum, "sym": cmd_sym, "verify": cmd_verify,
}


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "max_degree", 0) is not None and getattr(args, "max_degree", 0) < 0:
            raise UsageError("--max-degree must be nonnegative")
        if args.workers < 1:
            raise UsageError("--workers must be positive")
        if args.command == "sym" and args.dot:
            args.list_signatures = True
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    caps = Caps.from_env()
    if args.max_orbit:
        import dataclasses

        caps = dataclasses.replace(caps, max_orbit=args.max_orbit)
    try:
        result = COMMANDS[args.command](args, caps)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except CapExceeded as exc:
        sys.stderr.write(json.dumps({"error": "cap_exceeded", "cap": exc.cap, "limit": exc.limit,
                                     "detail": exc.detail}) + "\n")
        return 3
    except (InvalidInput, HurwitzRingError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    ok = True
    if isinstance(result, tuple):
        result, ok = result
    _emit(result, args.out)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
