"""Numba backend: scalar special functions and the panel integrator, all @njit.

The pure-numpy twin of this module is `_numpy`; the two must implement the
same rule, the same region switches, and the same splitting policy.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ._common import (
    CF_DEPTH,
    CF_RADIUS,
    FADDEEVA_SERIES,
    INV_SQRTPI,
    NODES15,
    SERIES_RADIUS,
    WEIDEMAN_A,
    WEIDEMAN_L,
    WG7,
    WK15,
)

BACKEND_NAME = "numba"


@njit(cache=True)
def _w_series(z):
    u = 1j * z
    acc = 0.0 + 0.0j
    for n in range(len(FADDEEVA_SERIES) - 1, -1, -1):
        acc = acc * u + FADDEEVA_SERIES[n]
    return acc


@njit(cache=True)
def _w_weideman(z):
    # valid for Im z >= 0
    iz = 1j * z
    zz = (WEIDEMAN_L + iz) / (WEIDEMAN_L - iz)
    p = 0.0 + 0.0j
    for n in range(len(WEIDEMAN_A)):
        p = p * zz + WEIDEMAN_A[n]
    return 2.0 * p / (WEIDEMAN_L - iz) ** 2 + INV_SQRTPI / (WEIDEMAN_L - iz)


@njit(cache=True)
def _w_contfrac(z):
    # Laplace continued fraction, valid for Im z >= 0 and |z| large
    t = z
    for n in range(CF_DEPTH, 0, -1):
        t = z - (0.5 * n) / t
    return 1j * INV_SQRTPI / t


@njit(cache=True)
def _w_upper(z):
    # w(z) for Re z >= 0, Im z >= 0
    r = abs(z)
    if r <= SERIES_RADIUS:
        return _w_series(z)
    if r <= CF_RADIUS:
        return _w_weideman(z)
    return _w_contfrac(z)


@njit(cache=True)
def faddeeva_scalar(z):
    """w(z) = exp(-z^2) erfc(-iz) for any finite complex z.

    Series near the origin, rational approximation at mid range, continued
    fraction far out; lower half plane via w(z) = 2 exp(-z^2) - w(-z), real
    axis with the real part pinned to exp(-x^2).
    """
    if z.real < 0.0:
        z = -np.conj(z)
        flip = True
    else:
        flip = False
    if z.imag == 0.0:
        x = z.real
        if x <= SERIES_RADIUS:
            wv = _w_series(z)
        elif x <= CF_RADIUS:
            wv = _w_weideman(z)
        else:
            wv = _w_contfrac(z)
        out = complex(np.exp(-x * x), wv.imag)
    elif z.imag > 0.0:
        out = _w_upper(z)
    else:
        out = 2.0 * np.exp(-z * z) - np.conj(_w_upper(np.conj(z)))
    if flip:
        out = np.conj(out)
    return out


@njit(cache=True)
def j0_scalar(x):
    if x < 0.01:
        x2 = x * x
        return 1.0 + x2 * (-1.0 / 6.0 + x2 * (1.0 / 120.0 - x2 / 5040.0))
    return np.sin(x) / x


@njit(cache=True)
def j1_scalar(x):
    if x < 0.6:
        x2 = x * x
        # x/3 * sum_k (-x^2)^k / (k! (2k+3)!! 2^k) * 3
        acc = 0.0
        for k in range(8, -1, -1):
            acc = acc * x2 + _J1C[k]
        return x * acc
    return (np.sin(x) - x * np.cos(x)) / (x * x)


def _j1_coeffs():
    import math

    out = np.empty(9)
    for k in range(9):
        dfact = 1.0
        for m in range(2 * k + 3, 1, -2):
            dfact *= m
        out[k] = (-1.0) ** k / (math.factorial(k) * dfact * 2.0**k)
    return out


_J1C = _j1_coeffs()


@njit(cache=True)
def _integrand(kind, k, rt, om, dt):
    b = j1_scalar(k * rt)
    base = b * b / k
    if kind == 0:
        return complex(base * np.exp(-0.5 * (k + om) ** 2), 0.0)
    if kind == 1:
        return complex(base * np.exp(-0.5 * (k + om) ** 2) * j0_scalar(k * dt), 0.0)
    if kind == 2:
        return base * faddeeva_scalar(complex(-k * 0.7071067811865476, 0.0))
    if kind == 3:
        return base * j0_scalar(k * dt) * faddeeva_scalar(complex(-k * 0.7071067811865476, 0.0))
    return base * faddeeva_scalar(complex((0.5 * om - k) * 0.7071067811865476, 0.0))


@njit(cache=True)
def _panel(kind, a, b, rt, om, dt):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    ik = 0.0 + 0.0j
    ig = 0.0 + 0.0j
    for i in range(15):
        f = _integrand(kind, c + h * NODES15[i], rt, om, dt)
        ik += WK15[i] * f
        ig += WG7[i] * f
    ik *= h
    ig *= h
    return ik, abs(ik - ig)


@njit(cache=True)
def integrate_panels(kind, edges, rt, om, dt, rel_tol, abs_floor, max_panels, max_rounds):
    """Adaptive Gauss-Kronrod sum over the given panel edges.

    Splits, in bulk per round, every panel whose error exceeds its share of
    the target; returns (integral, error_sum, status, n_panels, n_evals)
    with status 0 on convergence and 1 when the budget ran out first.
    """
    n0 = len(edges) - 1
    cap = max_panels if max_panels > n0 else n0
    pa = np.empty(cap)
    pb = np.empty(cap)
    pv = np.empty(cap, np.complex128)
    pe = np.empty(cap)
    n = n0
    for i in range(n0):
        pa[i] = edges[i]
        pb[i] = edges[i + 1]
        pv[i], pe[i] = _panel(kind, pa[i], pb[i], rt, om, dt)
    evals = 15 * n0
    status = 1
    for _ in range(max_rounds):
        total = 0.0 + 0.0j
        comp = 0.0 + 0.0j
        esum = 0.0
        for i in range(n):
            y = pv[i] - comp
            t = total + y
            comp = (t - total) - y
            total = t
            esum += pe[i]
        target = max(rel_tol * abs(total), abs_floor)
        if esum <= target:
            status = 0
            break
        if n >= cap:
            break
        thresh = target / (2.0 * n)
        grew = False
        m = n
        for i in range(n):
            if pe[i] > thresh and m < cap:
                mid = 0.5 * (pa[i] + pb[i])
                vl, el = _panel(kind, pa[i], mid, rt, om, dt)
                vr, er = _panel(kind, mid, pb[i], rt, om, dt)
                evals += 30
                pa[m] = mid
                pb[m] = pb[i]
                pv[m] = vr
                pe[m] = er
                pb[i] = mid
                pv[i] = vl
                pe[i] = el
                m += 1
                grew = True
        n = m
        if not grew:
            break
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    esum = 0.0
    for i in range(n):
        y = pv[i] - comp
        t = total + y
        comp = (t - total) - y
        total = t
        esum += pe[i]
    if esum <= max(rel_tol * abs(total), abs_floor):
        status = 0
    return total, esum, status, n, evals


def faddeeva_many(z: np.ndarray) -> np.ndarray:
    out = np.empty(z.shape, np.complex128)
    flat_in = z.ravel()
    flat_out = out.ravel()
    _fill_faddeeva(flat_in, flat_out)
    return out


@njit(cache=True)
def _fill_faddeeva(zs, out):
    for i in range(len(zs)):
        out[i] = faddeeva_scalar(zs[i])


def j0_many(x: np.ndarray) -> np.ndarray:
    out = np.empty(x.shape)
    _fill_j0(x.ravel(), out.ravel())
    return out


def j1_many(x: np.ndarray) -> np.ndarray:
    out = np.empty(x.shape)
    _fill_j1(x.ravel(), out.ravel())
    return out


@njit(cache=True)
def _fill_j0(xs, out):
    for i in range(len(xs)):
        out[i] = j0_scalar(xs[i])


@njit(cache=True)
def _fill_j1(xs, out):
    for i in range(len(xs)):
        out[i] = j1_scalar(xs[i])
