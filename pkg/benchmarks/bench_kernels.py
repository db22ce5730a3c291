"""Benchmark the numba and pure-numpy quadrature backends against each other.

Both backend modules are importable side by side, so the hot pieces are timed
directly; the end-to-end kernel evaluation is also timed through the public
API in subprocesses with CTXHARVEST_NO_NUMBA toggled.

Run:  python benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ctxharvest.kernels import _common, _numba, _numpy  # noqa: E402


def time_call(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_special_functions():
    z = np.linspace(-30, 30, 200_000) + 0.0j
    x = np.linspace(1e-6, 300, 200_000)
    _numba.faddeeva_many(z[:10])  # trigger compilation
    _numba.j1_many(x[:10])
    rows = [
        ("faddeeva (200k pts)", time_call(_numba.faddeeva_many, z),
         time_call(_numpy.faddeeva_many, z)),
        ("spherical j1 (200k pts)", time_call(_numba.j1_many, x),
         time_call(_numpy.j1_many, x)),
    ]
    return rows


def bench_integrator():
    rows = []
    for label, (kind, rt, om, dt, hi) in {
        "excitation integral": (0, 0.1, 1.0, 0.0, 16.0),
        "coherence integral": (2, 0.1, 1.0, 0.0, 2000.0),
        "cross integral, d/T=20": (3, 0.1, 1.0, 20.0, 500.0),
    }.items():
        edges = _common.panel_edges(0.0, hi, rt, dt if kind == 3 else 0.0)
        args = (kind, edges, rt, om, dt, 1e-10, 0.0, 1 << 20, 64)
        _numba.integrate_panels(*args)  # compile
        t_nb = time_call(_numba.integrate_panels, *args)
        t_np = time_call(_numpy.integrate_panels, *args)
        va = _numba.integrate_panels(*args)[0]
        vb = _numpy.integrate_panels(*args)[0]
        assert abs(va - vb) <= 1e-12 * abs(vb), (label, va, vb)
        rows.append((f"{label} ({len(edges) - 1} panels)", t_nb, t_np))
    return rows


def bench_end_to_end():
    code = (
        "import time; from ctxharvest.kernels import compute_kernels, DetectorConfig;"
        "cfg = DetectorConfig(lam=1e-3, omega=1.0, rtilde=0.1, dtilde=3.7355);"
        "compute_kernels(cfg);"
        "t0 = time.perf_counter(); compute_kernels(cfg);"
        "print(time.perf_counter() - t0)"
    )
    out = []
    for flag in ("0", "1"):
        env = dict(os.environ, CTXHARVEST_NO_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True, check=True)
        out.append(float(res.stdout.strip().splitlines()[-1]))
    return [("compute_kernels end to end", out[0], out[1])]


def main():
    print(f"{'benchmark':<44} {'numba':>10} {'numpy':>10} {'ratio':>7}")
    for name, t_nb, t_np in (bench_special_functions() + bench_integrator()
                             + bench_end_to_end()):
        print(f"{name:<44} {t_nb * 1e3:>8.2f}ms {t_np * 1e3:>8.2f}ms {t_np / t_nb:>6.1f}x")


if __name__ == "__main__":
    main()
