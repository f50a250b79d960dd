"""Scenario configuration, inequality verification, refinement studies, and
report emission.

A scenario names a boundedness estimate (one of the seven norm inequalities,
or the pointwise maximal-function bound), a kernel/field/symbol/test-function
quadruple from the catalog, and an exponent bundle. Verification computes the
left-hand norm of the commutator, the symbol and test-function norms, the
matching constant, and the ratio LHS / (K * ||b|| * ||f||); a scenario passes
when the ratio stays within its budget and is stable under dilations of the
test function and under refinement.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, asdict

import numpy as np

from . import constants, maximal, norms, operator
from .catalog import (
    dilate,
    preset_kernel,
    preset_matrix_field,
    preset_symbol,
    preset_testfn,
)
from .domain import RadialGrid
from .errors import HauscommError, InvalidInputError
from .norms import (
    cmo_norm,
    default_cube_battery,
    default_pair_battery,
    default_radius_ladder,
    herz_morrey_norm,
    herz_norm,
    lp_norm,
    morrey_norm,
    triebel_lizorkin_norm,
)

__all__ = [
    "Scenario",
    "VerificationReport",
    "load_scenarios",
    "validate_scenario",
    "run_scenario",
    "refine_study",
    "emit_report",
    "read_reports",
    "DILATION_STABILITY_FACTOR",
    "REFINEMENT_DRIFT_LIMIT",
]

THEOREMS = ("T3.1", "T3.2", "T3.3", "T3.4", "T3.5", "T4.1", "T4.2", "L2.7")

_THEOREM_TO_KIND = {
    "T3.1": "K1", "T3.2": "K2", "T3.3": "K3", "T3.4": "K4",
    "T3.5": "K5", "T4.1": "K6", "T4.2": "K7",
}

DILATION_STABILITY_FACTOR = 4.0
REFINEMENT_DRIFT_LIMIT = 0.25

DEFAULT_DILATIONS = tuple(2.0 ** j for j in range(-4, 5))

_EXPONENT_KEYS = ("p", "q", "p1", "p2", "q1", "q2", "alpha", "alpha1", "alpha2",
                  "lam", "beta")
_SCENARIO_KEYS = {"theorem", "n", "kernel", "field", "symbol", "testfn",
                  "k_min", "k_max", "dilations", "tol", "ratio_budget",
                  "ladder_depth", "radial_panels", "angular_order",
                  "sample_points", *_EXPONENT_KEYS}


@dataclass(frozen=True)
class Scenario:
    scenario_id: str
    theorem: str
    n: int
    kernel: str
    field: str
    symbol: str
    testfn: str
    exponents: dict = field(default_factory=dict)
    k_min: int = -8
    k_max: int = 6
    dilations: tuple = DEFAULT_DILATIONS
    tol: float = 1e-5
    ratio_budget: float = math.inf
    ladder_depth: int = 3
    radial_panels: int = 24
    angular_order: int = 0
    sample_points: int = 100


@dataclass
class VerificationReport:
    scenario_id: str
    theorem: str
    n: int
    kernel: str
    field: str
    b: str
    f: str
    exponents: dict
    K_value: float
    b_norm: float
    f_norm: float
    lhs_norm: float
    ratio: float
    max_dilation_ratio: float
    refinement_drift: float
    verdict: str
    dilation_ratios: list = None
    notes: str = ""


# ---------------------------------------------------------------------------
# configuration file


def _parse_value(key, raw):
    raw = raw.strip()
    if key in ("theorem", "kernel", "field", "symbol", "testfn"):
        return raw
    if key in ("n", "k_min", "k_max", "ladder_depth", "radial_panels",
               "angular_order", "sample_points"):
        return int(raw)
    if key == "dilations":
        return tuple(float(t) for t in raw.split(",") if t.strip())
    return float(raw)


def load_scenarios(path) -> list:
    """Strict flat key-value config: one [scenario.NAME] section per scenario.

    Unknown keys are errors; '#' and ';' start comments.
    """
    scenarios = []
    current = None

    def finish():
        if current is None:
            return
        name, kv = current
        missing = [k for k in ("theorem", "n", "kernel", "field", "symbol", "testfn")
                   if k not in kv]
        if missing:
            raise InvalidInputError(
                f"scenario {name!r} is missing keys: {', '.join(missing)}")
        exps = {k: kv.pop(k) for k in list(kv) if k in _EXPONENT_KEYS}
        scenarios.append(Scenario(scenario_id=name, exponents=exps, **kv))

    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].split(";", 1)[0].strip()
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                finish()
                section = line[1:-1].strip()
                if not section.startswith("scenario."):
                    raise InvalidInputError(
                        f"line {lineno}: section {section!r} must be [scenario.NAME]")
                current = (section[len("scenario."):], {})
                continue
            if current is None:
                raise InvalidInputError(f"line {lineno}: key outside any scenario section")
            if "=" not in line:
                raise InvalidInputError(f"line {lineno}: expected key = value")
            key, raw = (t.strip() for t in line.split("=", 1))
            if key not in _SCENARIO_KEYS:
                raise InvalidInputError(
                    f"line {lineno}: unknown key {key!r} (strict mode)")
            current[1][key] = _parse_value(key, raw)
    finish()
    return scenarios


# ---------------------------------------------------------------------------
# validation


def validate_scenario(s: Scenario):
    """List of violated hypotheses of the owning theorem; empty means ok."""
    if s.theorem not in THEOREMS:
        raise InvalidInputError(f"unknown theorem id {s.theorem!r}; expected one of {THEOREMS}")
    if s.theorem == "L2.7":
        beta = s.exponents.get("beta")
        if beta is None or not 0 < beta < 1:
            return ["0 < beta < 1"]
        return []
    return constants.hypothesis_violations(_THEOREM_TO_KIND[s.theorem], s.exponents, s.n)


# ---------------------------------------------------------------------------
# evaluation helpers


def _build(s: Scenario, level=0):
    kernel = preset_kernel(s.kernel)
    fld = preset_matrix_field(s.field)
    spec = operator.OperatorSpec(kernel=kernel, field=fld, n=s.n)
    b = preset_symbol(s.symbol)
    f = preset_testfn(s.testfn)
    grid = RadialGrid(n=s.n, k_min=s.k_min, k_max=s.k_max)
    tol = s.tol * 10.0 ** (-level)
    panels = s.radial_panels * 2 ** level
    return spec, b, f, grid, tol, panels


def _symbol_norm(s: Scenario, b, grid) -> float:
    ang = s.angular_order or None
    if s.theorem in ("T4.1", "T4.2"):
        return cmo_norm(b, s.exponents["q"], default_radius_ladder(grid), s.n,
                        angular_order=ang)
    return norms.lipschitz_norm(b, s.exponents["beta"],
                                default_pair_battery(grid, seed=0))


def _lhs_and_f_norm(s: Scenario, cf, f, grid, tol, level) -> tuple:
    e = s.exponents
    ks = range(s.k_min, s.k_max + 1)
    depth = s.ladder_depth + level
    ang = s.angular_order or None
    if s.theorem == "T3.1":
        battery = default_cube_battery(grid, depth=depth)
        lhs = morrey_norm(cf, e["q"], e["lam"], battery, s.n)
        fn = morrey_norm(f, e["p"], e["lam"], battery, s.n)
    elif s.theorem == "T3.2":
        lhs = lp_norm(cf, e["q"], grid, tol=tol, angular_order=ang)
        fn = lp_norm(f, e["p"], grid, tol=tol, angular_order=ang)
    elif s.theorem == "T3.3":
        lhs = herz_morrey_norm(cf, e["alpha"], e["lam"], e["p2"], e["q2"], ks, s.n,
                               tol=tol, angular_order=ang)
        fn = herz_morrey_norm(f, e["alpha"], e["lam"], e["p1"], e["q1"], ks, s.n,
                              tol=tol, angular_order=ang)
    elif s.theorem == "T3.4":
        lhs = herz_norm(cf, e["alpha"], e["p2"], e["q2"], ks, s.n, tol=tol,
                        angular_order=ang)
        fn = herz_norm(f, e["alpha"], e["p1"], e["q1"], ks, s.n, tol=tol,
                       angular_order=ang)
    elif s.theorem == "T3.5":
        scales = maximal.default_scales(depth)
        lhs = triebel_lizorkin_norm(cf, e["beta"], e["p"], grid, scales=scales,
                                    nodes_per_axis=32, tol=max(tol, 1e-4),
                                    angular_order=ang)
        fn = lp_norm(f, e["p"], grid, tol=tol, angular_order=ang)
    elif s.theorem == "T4.1":
        lhs = herz_morrey_norm(cf, e["alpha2"], e["lam"], e["p"], e["q2"], ks, s.n,
                               tol=tol, angular_order=ang)
        fn = herz_morrey_norm(f, e["alpha1"], e["lam"], e["p"], e["q1"], ks, s.n,
                              tol=tol, angular_order=ang)
    elif s.theorem == "T4.2":
        lhs = herz_norm(cf, e["alpha2"], e["p"], e["q2"], ks, s.n, tol=tol,
                        angular_order=ang)
        fn = herz_norm(f, e["alpha1"], e["p"], e["q1"], ks, s.n, tol=tol,
                       angular_order=ang)
    else:
        raise InvalidInputError(f"no norm mapping for theorem {s.theorem}")
    return lhs, fn


def _ratio(lhs, k_value, b_norm, f_norm) -> float:
    denom = k_value * b_norm * f_norm
    if denom == 0.0 or not math.isfinite(denom):
        return 0.0 if abs(lhs) < 1e-12 else math.inf
    return lhs / denom


def _sample_points(grid: RadialGrid, count: int) -> np.ndarray:
    nodes = grid.nodes()
    if nodes.shape[0] <= count:
        return nodes
    idx = np.linspace(0, nodes.shape[0] - 1, count).astype(int)
    return nodes[idx]


def _pointwise_bound_cemp(s: Scenario, level=0) -> float:
    """Empirical constant for the maximal-function bound on the commutator:
    max over sample points of M(H^b f)(x) / bound(x)."""
    spec, b, f, grid, tol, panels = _build(s, level)
    beta = s.exponents["beta"]
    lipnorm = norms.lipschitz_norm(b, beta, default_pair_battery(grid, seed=0))
    cf = operator.commutator_field(spec, b, f, radial_panels=panels,
                                   angular_order=s.angular_order or None)
    xs = _sample_points(grid, s.sample_points)
    scales = maximal.default_scales(s.ladder_depth + level)
    per_axis = 32 * 2 ** level
    mvals = maximal.frac_maximal_many(0.0, cf, xs, scales=scales, nodes_per_axis=per_axis)
    cemp = 0.0
    for x, mv in zip(xs, mvals):
        bound = maximal.lemma_lipschitz_bound(lipnorm, beta, spec, f, x,
                                              tol=max(tol, 1e-4), scales=scales,
                                              nodes_per_axis=per_axis)
        if bound > 0:
            cemp = max(cemp, mv / bound)
        elif mv > 1e-12:
            return math.inf
    return float(cemp)


def _scenario_ratio(s: Scenario, level=0, dilation=1.0) -> dict:
    spec, b, f, grid, tol, panels = _build(s, level)
    if dilation != 1.0:
        f = dilate(f, dilation)
    kind = _THEOREM_TO_KIND[s.theorem]
    cspec = constants.ConstantSpec(kind=kind, kernel=spec.kernel, field=spec.field,
                                   n=s.n, exponents=s.exponents)
    kres = constants.k_constant(cspec, tol=min(tol, 1e-8))
    b_norm = _symbol_norm(s, b, grid)
    cf = operator.commutator_field(spec, b, f, radial_panels=panels,
                                   angular_order=s.angular_order or None)
    lhs, f_norm = _lhs_and_f_norm(s, cf, f, grid, tol, level)
    return {
        "K_value": kres.value,
        "divergence_suspect": kres.divergence_suspect,
        "b_norm": b_norm,
        "f_norm": f_norm,
        "lhs_norm": lhs,
        "ratio": _ratio(lhs, kres.value, b_norm, f_norm),
    }


# ---------------------------------------------------------------------------
# the public operations


def run_scenario(s: Scenario) -> VerificationReport:
    violations = validate_scenario(s)
    if violations:
        raise HauscommError(
            f"scenario {s.scenario_id!r} violates hypotheses: " + "; ".join(violations))

    if s.theorem == "L2.7":
        cemp0 = _pointwise_bound_cemp(s, level=0)
        cemp1 = _pointwise_bound_cemp(s, level=1)
        finite = math.isfinite(cemp0) and math.isfinite(cemp1)
        stable = finite and (cemp0 == cemp1 == 0.0 or
                             (cemp0 > 0 and cemp1 > 0 and
                              max(cemp0, cemp1) / min(cemp0, cemp1) <= 2.0))
        drift = abs(cemp1 - cemp0) / cemp0 if cemp0 > 0 else 0.0
        return VerificationReport(
            scenario_id=s.scenario_id, theorem=s.theorem, n=s.n, kernel=s.kernel,
            field=s.field, b=s.symbol, f=s.testfn, exponents=dict(s.exponents),
            K_value=float("nan"), b_norm=float("nan"), f_norm=float("nan"),
            lhs_norm=cemp0, ratio=cemp0, max_dilation_ratio=cemp0,
            refinement_drift=drift, verdict="pass" if stable else "fail",
            dilation_ratios=[cemp0],
            notes="pointwise maximal bound; ratio column holds the empirical constant",
        )

    base = _scenario_ratio(s, level=0, dilation=1.0)
    dil_ratios = []
    suspect = base["divergence_suspect"]
    for lam in s.dilations:
        if lam == 1.0:
            dil_ratios.append(base["ratio"])
            continue
        r = _scenario_ratio(s, level=0, dilation=lam)
        suspect = suspect or r["divergence_suspect"]
        dil_ratios.append(r["ratio"])
    fine = _scenario_ratio(s, level=1, dilation=1.0)
    suspect = suspect or fine["divergence_suspect"]

    finite = all(math.isfinite(r) for r in dil_ratios) and math.isfinite(fine["ratio"])
    if suspect or not finite:
        verdict = "inconclusive"
        drift = float("nan")
        max_dil = max(dil_ratios) if dil_ratios else float("nan")
    else:
        positives = [r for r in dil_ratios if r > 0]
        spread_ok = (not positives or
                     max(positives) / min(positives) <= DILATION_STABILITY_FACTOR)
        drift = (abs(fine["ratio"] - base["ratio"]) / base["ratio"]
                 if base["ratio"] > 0 else 0.0)
        max_dil = max(dil_ratios)
        ok = (spread_ok and drift < REFINEMENT_DRIFT_LIMIT
              and max_dil <= s.ratio_budget)
        verdict = "pass" if ok else "fail"

    return VerificationReport(
        scenario_id=s.scenario_id, theorem=s.theorem, n=s.n, kernel=s.kernel,
        field=s.field, b=s.symbol, f=s.testfn, exponents=dict(s.exponents),
        K_value=base["K_value"], b_norm=base["b_norm"], f_norm=base["f_norm"],
        lhs_norm=base["lhs_norm"], ratio=base["ratio"],
        max_dilation_ratio=max_dil, refinement_drift=drift, verdict=verdict,
        dilation_ratios=dil_ratios,
    )


def refine_study(s: Scenario, levels: int) -> list:
    """Rows of (level, lhs_norm, rhs = K*||b||*||f||, ratio) at increasing
    resolution; level 0 is the scenario's configured resolution."""
    if levels < 2:
        raise InvalidInputError("refine_study needs at least 2 levels")
    rows = []
    for level in range(levels):
        r = _scenario_ratio(s, level=level, dilation=1.0)
        rhs = r["K_value"] * r["b_norm"] * r["f_norm"]
        rows.append({"level": level, "lhs": r["lhs_norm"], "rhs": rhs,
                     "ratio": r["ratio"]})
    return rows


# ---------------------------------------------------------------------------
# report emission

CSV_COLUMNS = ["scenario_id", "theorem", "n", "kernel", "field", "b", "f",
               "exponents", "K_value", "b_norm", "f_norm", "lhs_norm", "ratio",
               "max_dilation_ratio", "refinement_drift", "verdict"]


def _flatten_exponents(exps: dict) -> str:
    return ";".join(f"{k}={exps[k]!r}" for k in sorted(exps))


def _format(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def emit_report(reports, fmt, path):
    """Write reports as CSV (fixed column set) or JSON (full records)."""
    reports = list(reports)
    if not reports:
        raise InvalidInputError("no reports to emit")
    if fmt == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for r in reports:
                rec = asdict(r)
                rec["exponents"] = _flatten_exponents(rec["exponents"])
                writer.writerow([_format(rec[c]) for c in CSV_COLUMNS])
    elif fmt == "json":
        with open(path, "w", encoding="utf-8") as fh:
            json.dump([asdict(r) for r in reports], fh, indent=2)
            fh.write("\n")
    else:
        raise InvalidInputError(f"unknown report format {fmt!r}; use csv or json")


def read_reports(path) -> list:
    with open(path, encoding="utf-8") as fh:
        records = json.load(fh)
    return [VerificationReport(**rec) for rec in records]
