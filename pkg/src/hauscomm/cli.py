"""Command line front end.

Subcommands:
  eval      operator or commutator value at a point
  norm      one of the function-space norms of a catalog test function
  constant  a boundedness constant K1..K7 for a kernel/field pair
  verify    run every scenario in a config file and emit a report
  study     refinement study for one scenario
  report    re-emit a JSON report as CSV (or pretty-print it)

Exit codes for verify: 0 all scenarios pass, 2 at least one inconclusive,
1 at least one failure (or an error).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from . import constants, harness, maximal, norms, operator
from .catalog import preset_kernel, preset_matrix_field, preset_symbol, preset_testfn
from .domain import RadialGrid
from .errors import HauscommError, InvalidInputError

_NORM_KINDS = ("lp", "morrey", "herz", "herz-morrey", "cmo", "lipschitz",
               "triebel-lizorkin")


def _parse_exponents(raw):
    if not raw:
        return {}
    out = {}
    for item in raw.split(","):
        if "=" not in item:
            raise InvalidInputError(f"bad exponent item {item!r}; use name=value")
        key, val = (t.strip() for t in item.split("=", 1))
        out[key] = float(val)
    return out


def _parse_point(raw):
    return np.array([float(t) for t in raw.split(",")], dtype=float)


def _emit(payload, args):
    text = json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_eval(args):
    kernel = preset_kernel(args.kernel)
    fld = preset_matrix_field(args.field)
    x = _parse_point(args.point)
    spec = operator.OperatorSpec(kernel=kernel, field=fld, n=x.size)
    f = preset_testfn(args.testfn)
    if args.symbol:
        b = preset_symbol(args.symbol)
        value = operator.commutator_apply(spec, b, f, x, tol=args.tol)
        what = "commutator"
    else:
        value = operator.hausdorff_apply(spec, f, x, tol=args.tol)
        what = "operator"
    _emit({"what": what, "point": x.tolist(), "value": value}, args)
    return 0


def _cmd_norm(args):
    e = _parse_exponents(args.exp)
    if args.testfn is None and args.symbol is None:
        raise InvalidInputError("norm needs --testfn or --symbol")
    f = preset_testfn(args.testfn) if args.testfn else preset_symbol(args.symbol)
    grid = RadialGrid(n=args.n, k_min=args.k_min, k_max=args.k_max)
    ks = range(args.k_min, args.k_max + 1)
    which = args.which
    if which == "lp":
        value = norms.lp_norm(f, e["p"], grid, tol=args.tol)
    elif which == "morrey":
        value = norms.morrey_norm(f, e["p"], e["lam"],
                                  norms.default_cube_battery(grid), args.n)
    elif which == "herz":
        value = norms.herz_norm(f, e["alpha"], e["p"], e["q"], ks, args.n, tol=args.tol)
    elif which == "herz-morrey":
        value = norms.herz_morrey_norm(f, e["alpha"], e["lam"], e["p"], e["q"],
                                       ks, args.n, tol=args.tol)
    elif which == "cmo":
        value = norms.cmo_norm(f, e["q"], norms.default_radius_ladder(grid), args.n,
                               tol=args.tol)
    elif which == "lipschitz":
        value = norms.lipschitz_norm(f, e["beta"],
                                     norms.default_pair_battery(grid, seed=args.seed))
    elif which == "triebel-lizorkin":
        value = norms.triebel_lizorkin_norm(f, e["beta"], e["p"], grid,
                                            scales=maximal.default_scales(),
                                            tol=max(args.tol, 1e-6))
    else:
        raise InvalidInputError(f"unknown norm {which!r}; expected one of {_NORM_KINDS}")
    _emit({"norm": which, "value": value, "exponents": e}, args)
    return 0


def _cmd_constant(args):
    spec = constants.ConstantSpec(kind=args.kind, kernel=preset_kernel(args.kernel),
                                  field=preset_matrix_field(args.field), n=args.n,
                                  exponents=_parse_exponents(args.exp))
    res = constants.k_constant(spec, tol=args.tol)
    _emit({"kind": args.kind, "value": res.value,
           "error_estimate": res.error_estimate,
           "divergence_suspect": res.divergence_suspect}, args)
    return 0


def _verdict_code(reports):
    verdicts = {r.verdict for r in reports}
    if "fail" in verdicts:
        return 1
    if "inconclusive" in verdicts:
        return 2
    return 0


def _cmd_verify(args):
    scenarios = harness.load_scenarios(args.config)
    if not scenarios:
        raise InvalidInputError(f"no scenarios found in {args.config}")
    reports = []
    for s in scenarios:
        rep = harness.run_scenario(s)
        reports.append(rep)
        print(f"{rep.scenario_id}: {rep.verdict} "
              f"(ratio {rep.ratio:.6g}, max over dilations {rep.max_dilation_ratio:.6g}, "
              f"drift {rep.refinement_drift:.3g})")
    if args.out:
        harness.emit_report(reports, args.format, args.out)
        print(f"report written to {args.out}")
    return _verdict_code(reports)


def _cmd_study(args):
    scenarios = {s.scenario_id: s for s in harness.load_scenarios(args.config)}
    if args.scenario not in scenarios:
        raise InvalidInputError(
            f"scenario {args.scenario!r} not in config; have {sorted(scenarios)}")
    rows = harness.refine_study(scenarios[args.scenario], args.levels)
    _emit(rows, args)
    return 0


def _cmd_report(args):
    reports = harness.read_reports(args.input)
    if args.out:
        harness.emit_report(reports, args.format, args.out)
        print(f"report written to {args.out}")
    else:
        for rec in reports:
            print(json.dumps(asdict(rec)))
    return _verdict_code(reports)


def build_parser():
    parser = argparse.ArgumentParser(prog="hauscomm",
                                     description="Hausdorff operator commutator toolkit")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker count; results are identical for any value")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--out", default=None)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("eval", help="operator or commutator value at a point")
    p.add_argument("--kernel", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--testfn", required=True)
    p.add_argument("--symbol", default=None)
    p.add_argument("--point", required=True, help="comma separated coordinates")
    common(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("norm", help="a function-space norm of a catalog function")
    p.add_argument("--which", required=True, choices=_NORM_KINDS)
    p.add_argument("--testfn", default=None)
    p.add_argument("--symbol", default=None)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--k-min", type=int, default=-8)
    p.add_argument("--k-max", type=int, default=6)
    p.add_argument("--exp", default="", help="comma list name=value")
    common(p)
    p.set_defaults(func=_cmd_norm)

    p = sub.add_parser("constant", help="boundedness constant K1..K7")
    p.add_argument("--kind", required=True, choices=constants.KINDS)
    p.add_argument("--kernel", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--exp", default="", help="comma list name=value")
    common(p)
    p.set_defaults(func=_cmd_constant)

    p = sub.add_parser("verify", help="run all scenarios in a config")
    p.add_argument("--config", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("study", help="refinement study for one scenario")
    p.add_argument("--config", required=True)
    p.add_argument("--scenario", required=True)
    p.add_argument("--levels", type=int, default=3)
    common(p)
    p.set_defaults(func=_cmd_study)

    p = sub.add_parser("report", help="re-emit or print a JSON report")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HauscommError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
