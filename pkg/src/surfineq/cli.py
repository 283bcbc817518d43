"""Command-line front end.

Every command prints a CSV table (one row per surface and inequality) to
stdout; ``--out DIR`` also writes the table and a JSON summary with the
worst margin per inequality. Exit status: 0 when every asserted check
passes, 1 on a verification failure, 2 on a usage error or malformed input.
"""

from __future__ import annotations

import argparse
import dataclasses
import inspect
import itertools
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .axisym import axial_stats, simon_report, surface_quantities, topping_deficit
from .convex import convex_inequality_suite, max_slicing_residual
from .curve import CurveError, constants, extremal_curve, strip_energy_bound
from .families import DEFAULT_N, FAMILIES
from .flow import rate_check
from .io import load_spec, read_curve, rows_to_csv, surface_from_spec, write_curve, write_outputs
from .rearrange import comparison_report
from .reports import InequalityReport

SUITES = ("topping", "simon", "convex", "slicing", "rearrange", "flow")
FAMILY_PARAMS = {
    "R": float, "a": float, "c": float, "eps": float, "h": float, "A": float,
    "neck": float, "bulge": float, "elongation": float, "K": float,
}
SLICING_TOL = 1e-3


class UsageError(Exception):
    pass


# -- argument helpers ---------------------------------------------------------


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _suites(text: str) -> list[str]:
    names = [v.strip() for v in text.split(",") if v.strip()]
    if names == ["all"]:
        return list(SUITES)
    bad = [v for v in names if v not in SUITES]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown suite {bad}; choose from {SUITES} or 'all'")
    return names


def _range(text: str) -> tuple[str, list[float]]:
    """``name=start:stop:count[:log]`` or ``name=v1,v2,...``."""
    name, sep, spec = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected name=start:stop:count[:log], got {text!r}")
    try:
        if ":" in spec:
            parts = spec.split(":")
            if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] not in ("log", "lin")):
                raise ValueError
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1:
                raise ValueError
            if len(parts) == 4 and parts[3] == "log":
                if start <= 0 or stop <= 0:
                    raise ValueError
                values = np.geomspace(start, stop, count)
            else:
                values = np.linspace(start, stop, count)
            return name, [float(v) for v in values]
        return name, _floats(spec)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None


def _add_surface_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--family", choices=sorted(FAMILIES))
    src.add_argument("--spec", help="surface spec JSON file")
    src.add_argument("--curve", help="angle function in curve format")
    p.add_argument("--n", type=int, default=DEFAULT_N)
    p.add_argument("--delta", type=float)
    p.add_argument("--seed", type=int, default=0)
    for name, kind in FAMILY_PARAMS.items():
        p.add_argument(f"--{name}", type=kind, dest=f"fam_{name}")
    p.add_argument("--out", help="directory for the CSV table and JSON summary")


def _family_params(args, family: str) -> dict:
    accepted = inspect.signature(FAMILIES[family]).parameters
    params = {}
    for name in FAMILY_PARAMS:
        v = getattr(args, f"fam_{name}", None)
        if v is not None:
            if name not in accepted:
                raise UsageError(f"--{name} does not apply to family {family}")
            params[name] = v
    if args.delta is not None:
        if "delta" not in accepted:
            raise UsageError(f"--delta does not apply to family {family}")
        params["delta"] = args.delta
    if "seed" in accepted:
        params["seed"] = args.seed
    missing = [k for k, v in accepted.items()
               if v.default is inspect.Parameter.empty and k not in params and k != "n"]
    if missing:
        raise UsageError(f"family {family} needs " + ", ".join(f"--{k}" for k in missing))
    return params


def _surface_specs(args) -> list[dict]:
    if args.n < 64:
        raise UsageError("--n must be at least 64")
    if args.spec:
        return load_spec(args.spec)
    if args.curve:
        angle = read_curve(args.curve)
        return [{"angle": {"length": angle.length, "theta_samples": angle.theta.tolist()},
                 "name": Path(args.curve).stem}]
    if not args.family:
        raise UsageError("one of --family, --spec or --curve is required")
    return [{"family": args.family, "params": _family_params(args, args.family), "n": args.n}]


# -- per-surface pipelines ----------------------------------------------------


def _verify_one(spec: dict, suites: list[str], p_list, tau: float) -> list[InequalityReport]:
    g = surface_from_spec(spec)
    q = surface_quantities(g)
    out: list[InequalityReport] = []
    for suite in suites:
        if suite == "topping":
            out.append(topping_deficit(g, q))
        elif suite == "simon":
            out.append(simon_report(g, q))
        elif suite in ("convex", "slicing") and not g.is_convex():
            raise CurveError(f"suite {suite} needs a convex surface; {g.meta.get('name')} is not")
        elif suite == "convex":
            out += convex_inequality_suite(g, p_list, check=False)
        elif suite == "slicing":
            res = max_slicing_residual(g)
            out.append(InequalityReport("slicing identity", -res, 0.0, SLICING_TOL,
                                        g.meta.get("name", ""), g.n, g.meta.get("delta", 0.0)))
        elif suite == "rearrange":
            out += comparison_report(g, check=False).reports
        elif suite == "flow":
            out.append(rate_check(g, tau, check=False).report())
    return out


def _job(task):
    spec, suites, p_list, tau = task
    return _verify_one(spec, suites, p_list, tau)


def _rows(reports, command: str, seed: int, member: dict | None = None) -> list[dict]:
    rows = []
    for r in reports:
        row = {"command": command, "seed": seed}
        row.update(member or {})
        row.update(r.row())
        rows.append(row)
    return rows


def _summary(command: str, seed: int, rows: list[dict]) -> dict:
    worst: dict[str, dict] = {}
    failed = []
    for r in rows:
        if not r.get("asserted", True):
            continue
        margin = r["deficit"] + r["tolerance"]
        cur = worst.get(r["ident"])
        if cur is None or margin < cur["margin"]:
            worst[r["ident"]] = {"surface": r["surface"], "deficit": r["deficit"],
                                 "tolerance": r["tolerance"], "margin": margin}
        if not r["passed"]:
            failed.append({"ident": r["ident"], "surface": r["surface"], "deficit": r["deficit"]})
    return {"command": command, "seed": seed, "records": len(rows), "failed": failed,
            "passed": not failed, "worst_margins": worst}


def _emit(args, rows: list[dict], extra: dict | None = None) -> int:
    summary = _summary(args.command, args.seed, rows)
    if extra:
        summary.update(extra)
    sys.stdout.write(rows_to_csv(rows))
    if args.out:
        write_outputs(args.out, rows, summary)
    for f in summary["failed"]:
        print(f"FAIL {f['ident']} on {f['surface']}: deficit {f['deficit']!r}", file=sys.stderr)
    return 1 if summary["failed"] else 0


# -- commands -----------------------------------------------------------------


def cmd_quantities(args) -> int:
    rows = []
    for spec in _surface_specs(args):
        g = surface_from_spec(spec)
        row = {"command": "quantities", "seed": args.seed, "surface": g.meta.get("name", ""),
               "n": g.n, "delta": g.meta.get("delta", 0.0)}
        row.update(surface_quantities(g).as_dict())
        row.update(axial_stats(g).__dict__)
        rows.append(row)
    sys.stdout.write(rows_to_csv(rows))
    if args.out:
        write_outputs(args.out, rows, {"command": "quantities", "seed": args.seed,
                                       "records": len(rows), "passed": True, "failed": [],
                                       "surfaces": rows})
    return 0


def cmd_verify(args) -> int:
    rows = []
    for spec in _surface_specs(args):
        rows += _rows(_verify_one(spec, args.suite, args.p, args.tau), "verify", args.seed)
    return _emit(args, rows)


def cmd_rearrange(args) -> int:
    specs = _surface_specs(args)
    if len(specs) != 1:
        raise UsageError("rearrange takes a single surface")
    g = surface_from_spec(specs[0])
    res = comparison_report(g, check=False)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for stem, angle in (("theta", res.theta), ("theta_sharp", res.theta_sharp),
                            ("theta_star", res.theta_star)):
            write_curve(out / f"{stem}.txt", angle)
    return _emit(args, _rows(res.reports, "rearrange", args.seed),
                 {"M": list(res.M), "d": list(res.d)})


def cmd_constants(args) -> int:
    rows = []
    for p in args.p:
        t = constants(p)
        row = {"command": "constants", "seed": args.seed}
        row.update(t.__dict__)
        row["passed"] = t.discrepancy <= 1e-8
        rows.append(row)
    sys.stdout.write(rows_to_csv(rows))
    failed = [{"ident": f"c_p={r['p']:g}", "surface": "", "deficit": -r["discrepancy"]}
              for r in rows if not r["passed"]]
    if args.out:
        write_outputs(args.out, rows, {"command": "constants", "seed": args.seed,
                                       "records": len(rows), "failed": failed,
                                       "passed": not failed})
    for f in failed:
        print(f"FAIL {f['ident']}: closed form and quadrature disagree", file=sys.stderr)
    return 1 if failed else 0


def cmd_flow(args) -> int:
    rows = []
    for spec in _surface_specs(args):
        g = surface_from_spec(spec)
        probe = rate_check(g, args.tau, check=False)
        rows += _rows([probe.report()], "flow", args.seed,
                      {"relative_error": probe.relative_error, "richardson_c": probe.richardson_c,
                       "fd_iso_difference_rate": probe.fd_iso_difference_rate})
    return _emit(args, rows)


def cmd_extremal(args) -> int:
    reports = []
    for p in args.p:
        curve = extremal_curve(p, args.n)
        strip = dataclasses.replace(strip_energy_bound(curve, p), surface=f"extremal(p={p:g})")
        eq = InequalityReport(f"strip equality p={p:g}", -abs(strip.ratio - 1.0), 0.0, 1e-4,
                              f"extremal(p={p:g})", curve.angle.n,
                              extra={"energy": strip.lhs, "bound": strip.rhs})
        reports += [strip, eq]
        if args.out:
            Path(args.out).mkdir(parents=True, exist_ok=True)
            write_curve(Path(args.out) / f"extremal_p{p:g}.txt", curve.angle)
    return _emit(args, _rows(reports, "extremal", args.seed))


def _sweep_members(args) -> tuple[str, list[dict]]:
    family, ranges, n, delta = args.family, list(args.param or []), args.n, args.delta
    if args.sweep_spec:
        doc = load_spec(args.sweep_spec)[0]
        family = doc.get("family", family)
        n = doc.get("n", n)
        delta = doc.get("delta", delta)
        for name, r in doc.get("ranges", {}).items():
            if isinstance(r, list) and r and isinstance(r[-1], str):
                ranges.append(_range(f"{name}={r[0]}:{r[1]}:{r[2]}:{r[3]}"))
            elif isinstance(r, list) and len(r) == 3:
                ranges.append(_range(f"{name}={r[0]}:{r[1]}:{r[2]}"))
            else:
                raise UsageError(f"range for {name} must be [start, stop, count(, 'log')]")
    if family not in FAMILIES:
        raise UsageError(f"sweep needs --family in {sorted(FAMILIES)}")
    if not isinstance(n, int) or n < 64:
        raise UsageError("n must be an integer >= 64")
    accepted = inspect.signature(FAMILIES[family]).parameters
    base = {}
    for name in FAMILY_PARAMS:
        v = getattr(args, f"fam_{name}", None)
        if v is not None:
            base[name] = v
    if delta is not None:
        base["delta"] = delta
    if "seed" in accepted:
        base.setdefault("seed", args.seed)
    for name, _ in ranges:
        if name not in accepted or name == "n":
            raise UsageError(f"cannot sweep {name!r} for family {family}")
    names = [r[0] for r in ranges]
    members = []
    for combo in itertools.product(*(r[1] for r in ranges)):
        params = dict(base)
        for name, v in zip(names, combo):
            params[name] = int(round(v)) if name == "seed" else v
        members.append({"family": family, "params": params, "n": n})
    return family, members


def cmd_sweep(args) -> int:
    _, members = _sweep_members(args)
    tasks = [(m, args.suite, args.p, args.tau) for m in members]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_job, tasks))
    else:
        results = [_job(t) for t in tasks]
    rows = []
    for i, (m, reports) in enumerate(zip(members, results)):
        member = {"member": i}
        member.update({f"param_{k}": v for k, v in sorted(m["params"].items())})
        rows += _rows(reports, "sweep", args.seed, member)
    return _emit(args, rows)


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="surfineq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quantities", help="area, volume, curvature integrals and diameter")
    _add_surface_args(p)
    p.set_defaults(func=cmd_quantities)

    p = sub.add_parser("verify", help="run inequality suites on one or more surfaces")
    _add_surface_args(p)
    p.add_argument("--suite", type=_suites, default=["topping"])
    p.add_argument("--p", type=_floats, default=[1.0, 1.5, 2.0, 3.0])
    p.add_argument("--tau", type=float, default=1e-5)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rearrange", help="both rearrangements and the comparison chain")
    _add_surface_args(p)
    p.set_defaults(func=cmd_rearrange)

    p = sub.add_parser("constants", help="sharp constants for each p")
    p.add_argument("--p", type=_floats, default=[1.0, 1.5, 2.0, 3.0, 5.0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("flow", help="first variation of the isoperimetric ratio")
    _add_surface_args(p)
    p.add_argument("--tau", type=float, default=1e-5)
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("extremal", help="equality curves of the strip bound")
    p.add_argument("--p", type=_floats, default=[2.0])
    p.add_argument("--n", type=int, default=DEFAULT_N)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("sweep", help="evaluate suites over a family parameter grid")
    p.add_argument("--family", choices=sorted(FAMILIES))
    p.add_argument("--sweep-spec", help="JSON with family, ranges, n, delta")
    p.add_argument("--param", type=_range, action="append",
                   help="name=start:stop:count[:log] or name=v1,v2,...")
    p.add_argument("--n", type=int, default=DEFAULT_N)
    p.add_argument("--delta", type=float)
    p.add_argument("--seed", type=int, default=0)
    for name, kind in FAMILY_PARAMS.items():
        p.add_argument(f"--{name}", type=kind, dest=f"fam_{name}")
    p.add_argument("--suite", type=_suites, default=["topping"])
    p.add_argument("--p", type=_floats, default=[1.0, 1.5, 2.0, 3.0])
    p.add_argument("--tau", type=float, default=1e-5)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, CurveError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> int:
    return run()


if __name__ == "__main__":
    sys.exit(main())
