"""Command-line front end.

Exit codes: 0 when every check passes, 1 for usage or I/O errors, 2 when a
verification check fails.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__
from .config import EXAMPLE_SETUPS, GridConfig, VerificationConfig
from .exprcore import DomainError, ParseError, as_expr, is_zero, parse_expression, substitute, to_text
from .geometry import (
    CONCRETE_FAMILIES,
    FAMILIES,
    FamilyError,
    SurfaceFamily,
    catalog_listing,
    export_mesh,
    mesh_vertices,
    parse_params,
)
from .numeric import Grid, QuadratureError, convergence_order, refinement, write_json
from .operator import SurfaceOperator
from .reductions import SUBALGEBRAS, ReductionError, example_solution, reduce, verify_example
from .report import Check, RunReport, certificate_check
from .symmetry import GeneratorError, catalog_generators, find_generator, verify_family

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    """Bad arguments detected after parsing."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _number(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return Fraction(float(text))
    except ValueError as exc:
        raise UsageError(f"not a number: {text!r}") from exc


def _range(text: str) -> tuple:
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError as exc:
        raise UsageError(f"expected lo:hi, got {text!r}") from exc
    if not hi > lo:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _emit(report: RunReport, path: str | None) -> None:
    if path:
        try:
            write_json(path, report.to_dict())
        except OSError as exc:
            raise UsageError(f"cannot write report {path}: {exc}") from exc


# ---------------------------------------------------------------- commands

def cmd_catalog(args, cfg: VerificationConfig) -> RunReport:
    report = RunReport("catalog", {})
    for entry in catalog_listing():
        fid = entry["family"]
        gens = [g.short_name for g in catalog_generators(fid)]
        params = ", ".join(f"{k}={v}" for k, v in entry["parameters"].items())
        print(f"{fid}")
        print(f"  profile     f(x) = {entry['profile']}   [{params}]")
        print(f"  curvature   K = {entry['curvature']}")
        if "subtypes" in entry:
            print("  subtypes    " + "; ".join(f"{k}: {v}" for k, v in entry["subtypes"].items()))
        print(f"  generators  {' '.join(gens)}")
        report.add(Check(f"{fid}.listed", "info", "listed", True, None,
                         {"curvature": entry["curvature"], "generators": gens,
                          "subtypes": entry.get("subtypes", {})}))
    return report


def cmd_verify_symmetry(args, cfg: VerificationConfig) -> RunReport:
    if args.family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r}")
    if args.family == "arbitrary" and not args.f:
        raise UsageError("the arbitrary family needs --f")
    fam = SurfaceFamily.create(args.family, args.params, args.f)
    if args.generator:
        names = [find_generator(fam.family, args.generator).short_name]
    else:
        names = [g.short_name for g in catalog_generators(fam.family)]
    report = RunReport("verify-symmetry", {"family": fam.family, "params": {k: str(v) for k, v in fam.params.items()},
                                            "generators": names, "seed": cfg.seed})

    def run(name):
        return verify_family(fam, [name], seed=cfg.seed, determining=not args.no_determining)[0]

    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        verdicts = list(pool.map(run, names))
    for v in verdicts:
        report.add(certificate_check(f"{v.generator}.invariance", v.invariance))
        for eq, cert in v.determining.certificates.items():
            report.add(certificate_check(f"{v.generator}.{eq}", cert))
        mark = "ok" if v.passed else "FAIL"
        failing = v.determining.failing()
        extra = f"  determining failures: {', '.join(failing)}" if failing else ""
        print(f"{v.generator:28} invariance {v.invariance.verdict:12} {mark}{extra}")
    return report


def _convergence_check(f, u, grid_cfg: GridConfig, params) -> Check:
    grids = refinement(Grid(grid_cfg.x_range[0], grid_cfg.x_range[1], grid_cfg.nx, grid_cfg.ny), grid_cfg.levels)
    study = convergence_order(f, u, grids, grid_cfg.t, params)
    ok = study.exact or (study.monotone and study.order >= grid_cfg.min_order)
    print("  grid      hx           max residual   rounding floor   local order")
    for g, row in zip(grids, study.table()):
        lo = "" if row["local_order"] is None else f"{row['local_order']:.3f}"
        print(f"  {g.nx:>3}x{g.ny:<4} {row['h']:<12.6g} {row['max_norm']:<14.4e} {row['rounding_floor']:<16.3e} {lo}")
    print(f"  observed order: {study.order if study.exact else f'{study.order:.3f}'}")
    verdict = "exact" if study.exact else f"order {study.order:.3f}"
    return Check("finite_difference.convergence", "pass", verdict, ok, None, study.to_dict())


def cmd_verify_solution(args, cfg: VerificationConfig) -> RunReport:
    if args.example is None and (args.f is None or args.u is None):
        raise UsageError("give --example or both --f and --u")
    if args.example is not None:
        sol = example_solution(args.example)
        setup = EXAMPLE_SETUPS[sol.family]
        grid_cfg = GridConfig(setup.grid.x_range if args.x_range is None else _range(args.x_range),
                              args.nx, args.nx, args.levels)
        report = RunReport("verify-solution", {"example": sol.family, "u": to_text(sol.u), "f": to_text(sol.f),
                                                "seed": cfg.seed, "nx": args.nx})
        print(f"{sol.family}: f = {to_text(sol.f)}")
        print(f"  u = {to_text(sol.u)}")
        cert = verify_example(sol, seed=cfg.seed)
        print(f"  symbolic residual: {cert.verdict} ({cert.method})")
        report.add(certificate_check("symbolic.residual", cert))
        params = dict(setup.constants)
        params.update(setup.profile_params)
        f, u = sol.f, sol.u
    else:
        try:
            f, u = parse_expression(args.f), parse_expression(args.u)
        except ParseError as exc:
            raise UsageError(str(exc)) from exc
        x_range = _range(args.x_range or "0.5:1.5")
        params = {k: v for k, v in parse_params(args.params).items()} if args.params else {}
        grid_cfg = GridConfig(x_range, args.nx, args.nx, args.levels)
        report = RunReport("verify-solution", {"f": args.f, "u": args.u, "seed": cfg.seed, "nx": args.nx,
                                                "params": {k: str(v) for k, v in params.items()}})
        bound = {k: as_expr(v) for k, v in params.items()}
        op = SurfaceOperator(substitute(f, bound), x_range)
        cert = is_zero(op.pde_residual(substitute(u, bound)), op.domain_hints(), seed=cfg.seed)
        print(f"symbolic residual: {cert.verdict} ({cert.method})")
        report.add(certificate_check("symbolic.residual", cert))
    unbound = (f.free_symbols | u.free_symbols) - {"x", "y", "t"} - set(params)
    if unbound:
        print(f"  finite differences skipped: unbound symbols {sorted(unbound)}")
        report.add(Check("finite_difference.convergence", "info", "skipped", True, None,
                         {"unbound": sorted(unbound)}))
    else:
        try:
            report.add(_convergence_check(f, u, grid_cfg, params))
        except DomainError as exc:
            print(f"  finite differences failed: {exc}")
            report.add(Check("finite_difference.convergence", "pass", "domain error", False, None,
                             {"error": str(exc)}))
    return report


def cmd_reduce(args, cfg: VerificationConfig) -> RunReport:
    a = None if args.a is None else _number(args.a)
    b = None if args.b is None else _number(args.b)
    f = None
    if args.family:
        f = SurfaceFamily.create(args.family, args.params).profile()
    elif args.f:
        f = parse_expression(args.f)
    result = reduce(args.subalgebra, a, b, f, seed=cfg.seed)
    report = RunReport("reduce", {"subalgebra": args.subalgebra, "a": args.a, "b": args.b,
                                   "f": "abstract" if f is None else to_text(f), "seed": cfg.seed})
    print(f"subalgebra {result.subalgebra}; profile {'abstract (f1..f4, e2f = exp(-2f))' if f is None else to_text(f)}")
    names = {"h": "eta", "v": "upsilon"}
    for k, v in result.similarity.items():
        print(f"  {names.get(k, k)} = {to_text(v)}")
    print(f"  template u = {to_text(result.template)}")
    for step in result.steps:
        print(f"[{step.name}]")
        print(f"  derived: {step.derived.to_text()}")
        if step.matches:
            print("  matches the printed form term by term")
        for d in step.diff:
            print(f"  {d.kind:9} {d.monomial:20} derived {to_text(d.derived) if d.derived else '-'}"
                  f"  printed {to_text(d.printed) if d.printed else '-'}")
        report.add(Check(f"{result.subalgebra}.{step.name}.printed_form", "info",
                         "matches" if step.matches else "differs", True, None, step.to_dict()))
    return report


def cmd_mesh(args, cfg: VerificationConfig) -> RunReport:
    fam = SurfaceFamily.create(args.family, args.params)
    x_range = None if args.x_range is None else _range(args.x_range)
    try:
        info = export_mesh(fam.family, args.nx, args.ny, args.out, fam.params, x_range)
    except OSError as exc:
        raise UsageError(f"cannot write mesh {args.out}: {exc}") from exc
    report = RunReport("mesh", {"family": fam.family, "params": {k: str(v) for k, v in fam.params.items()},
                                 "nx": args.nx, "ny": args.ny, "out": args.out})
    print(f"wrote {info['vertices']} vertices, {info['triangles']} triangles to {info['path']}")
    report.add(Check("mesh.written", "info", "written", True, None, info))
    if fam.subtype == "sphere":
        verts = mesh_vertices(fam.family, args.nx, args.ny, fam.params, x_range)
        radius = float(fam.params["b6"])
        defect = max(abs(math.sqrt(x * x + y * y + z * z) - radius) for x, y, z in verts)
        ok = defect < 1e-8
        print(f"sphere radius check: max |r - {radius:g}| = {defect:.3e} {'ok' if ok else 'FAIL'}")
        report.add(Check("mesh.sphere_radius", "pass", f"{defect:.3e}", ok, None, {"max_defect": defect}))
    return report


def cmd_discrepancies(args, cfg: VerificationConfig) -> RunReport:
    from .discrepancies import build_report

    rep = build_report(seed=cfg.seed, determining=not args.quick, generators=not args.quick)
    print(rep.to_text())
    report = RunReport("discrepancies", {"seed": cfg.seed, "quick": args.quick})
    for e in rep.entries:
        report.add(Check(f"{e.topic}.{e.item}", "info", e.status, True, None, e.to_dict()))
    return report


COMMANDS = {
    "catalog": cmd_catalog,
    "verify-symmetry": cmd_verify_symmetry,
    "verify-solution": cmd_verify_solution,
    "reduce": cmd_reduce,
    "mesh": cmd_mesh,
    "discrepancies": cmd_discrepancies,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized zero tests")
    common.add_argument("--threads", type=int, default=1, help="maximum worker threads")
    common.add_argument("--report", help="write the JSON run report here")

    p = _Parser(prog="bhsym", description="Verify symmetries, reductions and solutions of u_t = L^2 u "
                                           "on surfaces of revolution.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("catalog", parents=[common], help="list families, curvatures and generators")

    s = sub.add_parser("verify-symmetry", parents=[common], help="check cataloged generators")
    s.add_argument("--family", required=True, choices=sorted(FAMILIES))
    s.add_argument("--params", help='e.g. "a2=0,a3=0.5,b5=1" (Greek aliases accepted)')
    s.add_argument("--f", help="profile for the arbitrary family")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--generator", help="one generator, e.g. X4 or power_law.X4")
    g.add_argument("--all", action="store_true", help="every cataloged generator (default)")
    s.add_argument("--no-determining", action="store_true", help="skip the determining equations")

    s = sub.add_parser("verify-solution", parents=[common], help="certify a solution and run a grid study")
    s.add_argument("--example", type=int, choices=(1, 2, 3))
    s.add_argument("--f", help="profile f(x)")
    s.add_argument("--u", help="candidate u(x, y, t)")
    s.add_argument("--params", help="numeric values for extra symbols")
    s.add_argument("--x-range", help="x interval lo:hi")
    s.add_argument("--nx", type=int, default=33, help="points per direction on the coarsest grid")
    s.add_argument("--levels", type=int, default=3, help="number of grids (each halves the spacing)")

    s = sub.add_parser("reduce", parents=[common], help="derive a similarity reduction")
    s.add_argument("--subalgebra", required=True, choices=SUBALGEBRAS)
    s.add_argument("--a", help="coefficient a (symbolic when omitted)")
    s.add_argument("--b", help="coefficient b (symbolic when omitted)")
    prof = s.add_mutually_exclusive_group()
    prof.add_argument("--f", help="profile f(x); abstract when omitted")
    prof.add_argument("--family", choices=sorted(CONCRETE_FAMILIES))
    s.add_argument("--params", help="family parameters")

    s = sub.add_parser("mesh", parents=[common], help="export an OBJ mesh")
    s.add_argument("--family", required=True, choices=sorted(CONCRETE_FAMILIES))
    s.add_argument("--params")
    s.add_argument("--nx", type=int, default=64)
    s.add_argument("--ny", type=int, default=64)
    s.add_argument("--x-range", help="x interval lo:hi inside the chart domain")
    s.add_argument("--out", required=True)

    s = sub.add_parser("discrepancies", parents=[common], help="compare derived and printed forms")
    s.add_argument("--quick", action="store_true", help="skip the generator and determining sweeps")
    return p


def main(argv=None) -> int:
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        cfg = VerificationConfig(seed=args.seed, threads=args.threads)
        report = COMMANDS[args.command](args, cfg)
        report.timings["total_seconds"] = round(time.perf_counter() - t0, 6)
        _emit(report, args.report)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GeneratorError, FamilyError, ReductionError, ParseError, QuadratureError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not report.passed:
        print("verification FAILED", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
