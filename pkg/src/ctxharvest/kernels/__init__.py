"""Detector response integrals for Gaussian switching and a rigid spherical smearing.

Five dimensionless integrals over field modes k in (0, inf) determine the
order-lambda^2 joint state of two comoving detectors:

  L    same-detector excitation probability        (Gaussian-damped, real)
  Lab  cross-detector excitation term               (adds a j0(k dt) factor)
  Q    same-detector ground/second-excited coherence (Faddeeva factor, complex)
  Mab  cross-detector coherence                      (both factors, complex)
  V    ground/excited coherence of the degenerate-gap dynamics

All lengths are in units of the switching duration: rtilde = R/T (smearing
radius), dtilde = d/T (separation), omega = Omega*T (gap).  The coupling
enters only through the overall prefactor alpha = 9 lambda^2/(4 pi rtilde^2),
so every kernel scales exactly as lambda^2.

The hot loops live in one of two interchangeable backends: a numba-compiled
one and a pure-numpy one.  Set CTXHARVEST_NO_NUMBA=1 before import to force
the numpy path; `benchmarks/bench_kernels.py` compares the two.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import _common

if os.environ.get("CTXHARVEST_NO_NUMBA", "").strip() not in ("", "0"):
    from . import _numpy as _impl
else:
    try:
        from . import _numba as _impl
    except ImportError:  # pragma: no cover - numba is a hard dep, but stay usable
        from . import _numpy as _impl

DYNAMICS = ("SU2", "HW")


def backend_name() -> str:
    """Which implementation is active: "numba" or "numpy"."""
    return _impl.BACKEND_NAME


class QuadratureError(RuntimeError):
    """Quadrature failed to reach its target within the subdivision budget."""

    def __init__(self, message: str, achieved: float, target: float):
        super().__init__(f"{message} (achieved error {achieved:.3e}, target {target:.3e})")
        self.achieved = achieved
        self.target = target


@dataclass(frozen=True)
class DetectorConfig:
    """Physical parameters of an identical-detector pair, in units of T."""

    lam: float
    omega: float
    rtilde: float
    dtilde: float
    dynamics: str = "SU2"

    def __post_init__(self):
        if not (self.lam > 0):
            raise ValueError(f"coupling must be positive, got {self.lam}")
        if not (self.rtilde > 0):
            raise ValueError(f"smearing radius must be positive, got {self.rtilde}")
        if self.dtilde < 0:
            raise ValueError(f"separation must be nonnegative, got {self.dtilde}")
        if self.omega < 0:
            raise ValueError(f"gap must be nonnegative, got {self.omega}")
        if self.dynamics not in DYNAMICS:
            raise ValueError(f"dynamics must be one of {DYNAMICS}, got {self.dynamics!r}")

    @property
    def alpha(self) -> float:
        return 9.0 * self.lam**2 / (4.0 * math.pi * self.rtilde**2)


@dataclass(frozen=True)
class KernelSet:
    """The five interaction integrals for one configuration, with error report.

    `quad_error` holds conservative absolute error estimates (same units as
    the kernels themselves, truncation bounds included); `evals` counts
    integrand evaluations.
    """

    L: float
    Lab: float
    Q: complex
    Mab: complex
    V: complex
    quad_error: tuple[float, float, float, float, float] = (0.0,) * 5
    evals: int = 0

    def scaled(self, factor: float) -> "KernelSet":
        return KernelSet(
            L=self.L * factor, Lab=self.Lab * factor, Q=self.Q * factor,
            Mab=self.Mab * factor, V=self.V * factor,
            quad_error=tuple(e * factor for e in self.quad_error), evals=self.evals,
        )


_MAX_ROUNDS = 64

# Certified-truncation target as a fraction of the integral scale.  Keeps the
# total relative error two orders below the 1e-10 contract; the k^-3 tails of
# the Faddeeva-carrying integrals make each extra decade here cost ~10x panels.
TRUNC_REL = 1e-12


def _run(kind, lo, hi, rt, om, dt, rel_tol, abs_floor, max_panels):
    edges = _common.panel_edges(lo, hi, rt, dt if kind in (1, 3) else 0.0, max_edges=max_panels)
    return _impl.integrate_panels(kind, edges, rt, om, dt, rel_tol, abs_floor, max_panels, _MAX_ROUNDS)


def _integrate_algebraic(kind, rt, om, dt, scale_floor, rel_tol, max_panels, cutoff_for, tail_bound):
    """Bulk pass to a starting cutoff, then certified extension of the cutoff.

    The cutoff is grown until the analytic tail bound drops below
    TRUNC_REL * max(|integral|, scale_floor); the remaining tail bound is
    added to the reported error.
    """
    k0 = _common.q_cutoff_start(om, rt) if kind != 4 else _common.v_cutoff_start(om, rt)
    total, err, status, _, evals = _run(kind, 0.0, k0, rt, om, dt, rel_tol,
                                        TRUNC_REL * scale_floor, max_panels)
    k_cur = k0
    for _ in range(3):
        target = TRUNC_REL * max(abs(total), scale_floor)
        k_need = cutoff_for(target)
        if k_need <= k_cur:
            break
        t2, e2, s2, _, ev2 = _run(kind, k_cur, k_need, rt, om, dt, rel_tol,
                                  0.25 * target, max_panels)
        total += t2
        err += e2
        evals += ev2
        status = max(status, s2)
        k_cur = k_need
    err += tail_bound(k_cur)
    return total, err, status, evals


def compute_kernels(cfg: DetectorConfig, rel_tol: float = 1e-10,
                    max_panels: int = 1 << 20) -> KernelSet:
    """Evaluate all five interaction integrals for one configuration.

    Adaptive Gauss-Kronrod on oscillation-aligned panels; the semi-infinite
    range is truncated where an analytic tail bound certifies the remainder
    below TRUNC_REL of the result (or of the excitation integral L for the
    separation-suppressed kernels, whichever is larger).

    Raises QuadratureError if the subdivision budget is exhausted before the
    error target is met.
    """
    rt, om, dt = cfg.rtilde, cfg.omega, cfg.dtilde

    il, e_l, s_l, _, n_l = _run(0, 0.0, _common.K_GAUSS, rt, om, dt, rel_tol, 0.0, max_panels)
    il = il.real
    e_l += _common.tail_bound_gauss(_common.K_GAUSS, om)
    if s_l != 0:
        raise QuadratureError("excitation integral did not converge", e_l, rel_tol * abs(il))

    ilab, e_lab, s_lab, _, n_lab = _run(1, 0.0, _common.K_GAUSS, rt, om, dt, rel_tol,
                                        TRUNC_REL * il, max_panels)
    ilab = ilab.real
    e_lab += _common.tail_bound_gauss(_common.K_GAUSS, om)

    iq, e_q, s_q, n_q = _integrate_algebraic(
        2, rt, om, dt, il, rel_tol, max_panels,
        cutoff_for=lambda t: _common.q_cutoff_for(t, om, rt),
        tail_bound=lambda k: _common.tail_bound_q(k, rt))
    im, e_m, s_m, n_m = _integrate_algebraic(
        3, rt, om, dt, il, rel_tol, max_panels,
        cutoff_for=lambda t: _common.m_cutoff_for(t, om, rt, dt),
        tail_bound=lambda k: _common.tail_bound_m(k, rt, dt))
    iv, e_v, s_v, n_v = _integrate_algebraic(
        4, rt, om, dt, il, rel_tol, max_panels,
        cutoff_for=lambda t: _common.v_cutoff_for(t, om, rt),
        tail_bound=lambda k: _common.tail_bound_v(k, rt, om))

    worst = max(s_lab, s_q, s_m, s_v)
    if worst != 0:
        raise QuadratureError("a coherence integral did not converge",
                              max(e_lab, e_q, e_m, e_v), rel_tol * il)

    alpha = cfg.alpha
    pref_q = -0.5 * alpha * math.exp(-0.5 * om * om)
    pref_m = -alpha * math.exp(-0.5 * om * om)
    pref_v = 0.5 * alpha * math.exp(-om * om / 8.0)
    return KernelSet(
        L=alpha * il,
        Lab=alpha * ilab,
        Q=pref_q * iq,
        Mab=pref_m * im,
        V=pref_v * iv,
        quad_error=(alpha * e_l, alpha * e_lab, abs(pref_q) * e_q, abs(pref_m) * e_m,
                    abs(pref_v) * e_v),
        evals=n_l + n_lab + n_q + n_m + n_v,
    )


def faddeeva(z):
    """w(z) = exp(-z^2) erfc(-iz), elementwise for arrays.

    Relative accuracy ~1e-13 against a high-precision oracle for |z| <= 50
    away from the lower-half-plane zeros of w; on the real axis the real part
    is exp(-x^2) to machine precision.
    """
    arr = np.asarray(z, dtype=np.complex128)
    if not np.isfinite(arr).all():
        raise ValueError("faddeeva requires finite input")
    if arr.shape == ():
        return _impl.faddeeva_scalar(complex(arr))
    return _impl.faddeeva_many(arr)


def spherical_j0(x):
    """sin(x)/x with its x -> 0 limit handled by series."""
    arr = np.asarray(x, dtype=float)
    if arr.shape == ():
        return _impl.j0_scalar(float(arr))
    return _impl.j0_many(arr)


def spherical_j1(x):
    """sin(x)/x^2 - cos(x)/x with its x -> 0 limit handled by series."""
    arr = np.asarray(x, dtype=float)
    if arr.shape == ():
        return _impl.j1_scalar(float(arr))
    return _impl.j1_many(arr)
