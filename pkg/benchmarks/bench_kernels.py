"""Benchmark the compiled kernel lane against the pure numpy fallback.

Times the three hot primitives (Gauss-Kronrod panel reduction, ordered sum,
weighted row reduction) and one end-to-end operator norm computation under
each backend, and checks that results are bit-identical.

Run:  python3 benchmarks/bench_kernels.py
"""

import importlib
import os
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))


def _load(force_python):
    os.environ.pop("HAUSCOMM_FORCE_PYTHON_KERNELS", None)
    if force_python:
        os.environ["HAUSCOMM_FORCE_PYTHON_KERNELS"] = "1"
    for mod in [m for m in list(sys.modules) if m.startswith("hauscomm")]:
        del sys.modules[mod]
    kernels = importlib.import_module("hauscomm._kernels")
    return kernels


def _time(fn, repeats=5):
    best = np.inf
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_backend(force_python):
    k = _load(force_python)
    rng = np.random.default_rng(7)
    fvals = rng.standard_normal((4000, 15))
    halfs = rng.uniform(0.01, 1.0, 4000)
    terms = rng.standard_normal(200000)
    weights = rng.standard_normal(3000)
    rows = np.ascontiguousarray(rng.standard_normal((3000, 500)))

    results = {}
    timings = {}
    timings["gk15_panels"], results["gk15_panels"] = _time(lambda: k.gk15_panels(fvals, halfs))
    timings["ordered_sum"], results["ordered_sum"] = _time(lambda: k.ordered_sum(terms))
    timings["weighted_rows_sum"], results["weighted_rows_sum"] = _time(
        lambda: k.weighted_rows_sum(weights, rows))

    from hauscomm import norms, operator
    from hauscomm.catalog import preset_kernel, preset_matrix_field, preset_symbol, preset_testfn
    from hauscomm.domain import RadialGrid

    spec = operator.OperatorSpec(kernel=preset_kernel("annulus(1,2)"),
                                 field=preset_matrix_field("radial"), n=1)
    cf = operator.commutator_field(spec, preset_symbol("power-beta(0.25)"),
                                   preset_testfn("shell-indicator(0)"), radial_panels=32)
    grid = RadialGrid(n=1, k_min=-8, k_max=6)
    timings["lp_norm(commutator)"], results["lp_norm"] = _time(
        lambda: norms.lp_norm(cf, 4, grid, tol=1e-8), repeats=3)
    return k.BACKEND, timings, results


def main():
    name_c, t_c, r_c = bench_backend(force_python=False)
    name_p, t_p, r_p = bench_backend(force_python=True)
    print(f"backends: {name_c} vs {name_p}")
    if name_c == name_p:
        print("note: compiled extension unavailable, comparing python with itself")
    print(f"{'primitive':24s} {'compiled':>12s} {'python':>12s} {'speedup':>8s}")
    for key in t_c:
        sp = t_p[key] / t_c[key] if t_c[key] > 0 else float("inf")
        print(f"{key:24s} {t_c[key] * 1e3:10.3f}ms {t_p[key] * 1e3:10.3f}ms {sp:7.2f}x")
    same = all(
        np.array_equal(np.asarray(r_c[key]), np.asarray(r_p[key])) for key in r_c
    )
    print(f"bit-identical results: {same}")
    return 0 if same else 1


if __name__ == "__main__":
    sys.exit(main())
