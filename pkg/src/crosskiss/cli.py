"""Command-line entry point: ``crosskiss <group> <command> [options]``.

Exit codes: 0 on success, 1 when an asserted check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import kernels, kissing, lattice, rates, reproduce
from .exact import format_rational, parse_vector, vector_to_json


class CheckFailed(Exception):
    pass


def _emit(payload, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif fmt == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        writer = csv.DictWriter(out, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    else:
        if isinstance(payload, list):
            for r in payload:
                out.write("  ".join(f"{k}={v}" for k, v in r.items()) + "\n")
        else:
            for k, v in payload.items():
                out.write(f"{k}: {v}\n")


def _lattice_arg(args) -> lattice.Lattice:
    if args.basis:
        return lattice.load_lattice(args.basis)
    if not args.name:
        raise SystemExit("lattice min-vectors: give --name or --basis")
    return lattice.named_lattice(args.name, args.n)


def cmd_min_vectors(args):
    L = _lattice_arg(args)
    M = lattice.minimal_vectors(L)
    if args.format == "csv":
        return [{f"x{i + 1}": x for i, x in enumerate(v)} for v in M.to_csv_rows()]
    return M.to_json()


def cmd_equiv(args):
    a = lattice.named_lattice(args.a, args.n)
    b = lattice.named_lattice(args.b, args.n)
    sigma = lattice.find_signed_permutation_equivalence(a, b)
    return {"a": args.a, "b": args.b, "equivalent": sigma is not None,
            "sigma": sigma.to_json() if sigma else "none"}


def cmd_deep_hole(args):
    y = parse_vector(args.point)
    point, dist = lattice.closest_point_l1(lattice.named_lattice("H2_sum_H2"), y)
    return {"point": vector_to_json(y), "deep_hole": lattice.is_deep_hole_h2sum(y),
            "nearest": vector_to_json(point), "distance": format_rational(dist)}


def cmd_covering(args):
    return lattice.covering_radius_h2sum().to_json()


def cmd_verify(args):
    with open(args.config) as fh:
        cfg = kissing.KissingConfiguration.from_json(json.load(fh))
    report = kissing.verify_kissing_configuration(cfg)
    return report.to_json(), report.valid


def cmd_build(args):
    params = kissing.CodeParams(args.n, args.m1, args.m2)
    X = kissing.construct_X(params)
    if not args.greedy:
        return X.to_json()
    cert = kissing.certify(params)
    S = kissing.greedy_kissing_subset(X)
    ok = bool(S.valid and len(S) >= cert.union_floor)
    return {"certificate": cert.to_json(), "configuration": S.to_json()}, ok


def cmd_bounds(args):
    n = args.n
    out = {"n": n, "hadwiger": kissing.hadwiger_bound(n), "lattice_upper": kissing.lattice_kissing_upper_bound(n),
           "small_support_sum": kissing.small_support_sum(n)}
    return out


def cmd_rates_lower(args):
    p = rates.LowerRateParams(args.z1, args.z2)
    rep = rates.lower_bound_rate(p, args.grid)
    d = rep.to_json()
    d["rate"] = rep.value
    return d


def cmd_rates_upper(args):
    p = rates.UpperRateParams(args.b, args.c, args.R)
    try:
        return rates.upper_bound_rate(p).to_json()
    except rates.InfeasibleParametersError as exc:
        return {"function": "upper_bound_rate", "params": {"b": args.b, "c": args.c, "R": args.R},
                "error": str(exc)}, False


def cmd_rates_sweep(args):
    rows = rates.upper_bound_sweep(np.linspace(args.b_min, args.b_max, args.steps),
                                   np.linspace(args.c_min, args.c_max, args.steps),
                                   np.linspace(args.R_min, args.R_max, args.steps))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            _emit(rows, "csv", fh)
    feasible = [r for r in rows if r["feasible"]]
    best = min(feasible, key=lambda r: r["base"]) if feasible else None
    return {"rows": len(rows), "feasible": len(feasible), "best": best, "out": args.out}


def cmd_rates_identity(args):
    check = rates.blichfeldt_integral_identity(args.n)
    mc, err = rates.blichfeldt_identity_mc(args.n, args.samples, args.seed)
    d = check.to_json()
    d.update(mc_estimate=mc, mc_stderr=err, seed=args.seed)
    return d, check.holds


def cmd_reproduce(args):
    checks = reproduce.run_all(args.seed)
    return [c.to_json() for c in checks], all(c.ok for c in checks)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="crosskiss", description=__doc__, parents=[common])
    groups = p.add_subparsers(dest="group", required=True)

    g = groups.add_parser("lattice", help="lattice engine").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("min-vectors", parents=[common])
    s.add_argument("--name")
    s.add_argument("--n", type=int)
    s.add_argument("--basis", help="JSON lattice file")
    s.set_defaults(func=cmd_min_vectors)
    s = g.add_parser("equiv", parents=[common])
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_equiv)
    s = g.add_parser("deep-hole", parents=[common])
    s.add_argument("--point", required=True, help="e.g. 1/4,1/4,1/4,1/4")
    s.set_defaults(func=cmd_deep_hole)
    s = g.add_parser("covering-h2sum", parents=[common])
    s.set_defaults(func=cmd_covering)

    g = groups.add_parser("kissing", help="kissing configurations").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("verify", parents=[common])
    s.add_argument("--config", required=True)
    s.set_defaults(func=cmd_verify)
    s = g.add_parser("build", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m1", type=int, required=True)
    s.add_argument("--m2", type=int, required=True)
    s.add_argument("--greedy", action="store_true")
    s.set_defaults(func=cmd_build)
    s = g.add_parser("bounds", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_bounds)

    g = groups.add_parser("rates", help="asymptotic rate functions").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("lower", parents=[common])
    s.add_argument("--z1", type=float, default=rates.DEFAULT_LOWER[0])
    s.add_argument("--z2", type=float, default=rates.DEFAULT_LOWER[1])
    s.add_argument("--grid", type=int, default=400)
    s.set_defaults(func=cmd_rates_lower)
    s = g.add_parser("upper", parents=[common])
    s.add_argument("--b", type=float, default=rates.DEFAULT_UPPER[0])
    s.add_argument("--c", type=float, default=rates.DEFAULT_UPPER[1])
    s.add_argument("--R", type=float, default=rates.DEFAULT_UPPER[2])
    s.set_defaults(func=cmd_rates_upper)
    s = g.add_parser("sweep", parents=[common])
    s.add_argument("--out")
    s.add_argument("--steps", type=int, default=11)
    s.add_argument("--b-min", type=float, default=0.30)
    s.add_argument("--b-max", type=float, default=0.37)
    s.add_argument("--c-min", type=float, default=0.26)
    s.add_argument("--c-max", type=float, default=0.33)
    s.add_argument("--R-min", type=float, default=1.52)
    s.add_argument("--R-max", type=float, default=1.62)
    s.set_defaults(func=cmd_rates_sweep)
    s = g.add_parser("identity", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--samples", type=int, default=10**6)
    s.set_defaults(func=cmd_rates_identity)

    g = groups.add_parser("reproduce", help="recompute the reference numbers").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("all", parents=[common])
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format = getattr(args, "format", "json")
    args.seed = getattr(args, "seed", 0)
    threads = getattr(args, "threads", None) or int(os.environ.get("CROSSKISS_THREADS", "1") or 1)
    kernels.set_threads(threads)
    try:
        result = args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    ok = True
    if isinstance(result, tuple):
        result, ok = result
    _emit(result, args.format)
    if not ok:
        failing = ""
        if isinstance(result, list):
            failing = ", ".join(r.get("item", "?") for r in result if not r.get("ok", True))
        print(f"check failed{': ' + failing if failing else ''}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
