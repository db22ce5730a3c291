"""Pure-numpy backend: vectorized twin of `_numba`.

Selected by setting CTXHARVEST_NO_NUMBA=1 (or when numba is unavailable).
Same rule, same region switches, same splitting policy as the numba path;
results agree with it to rounding noise.
"""

from __future__ import annotations

import numpy as np

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

BACKEND_NAME = "numpy"


def _w_series(z):
    u = 1j * z
    acc = np.zeros_like(u)
    for n in range(len(FADDEEVA_SERIES) - 1, -1, -1):
        acc = acc * u + FADDEEVA_SERIES[n]
    return acc


def _w_weideman(z):
    iz = 1j * z
    zz = (WEIDEMAN_L + iz) / (WEIDEMAN_L - iz)
    p = np.zeros_like(zz)
    for n in range(len(WEIDEMAN_A)):
        p = p * zz + WEIDEMAN_A[n]
    return 2.0 * p / (WEIDEMAN_L - iz) ** 2 + INV_SQRTPI / (WEIDEMAN_L - iz)


def _w_contfrac(z):
    t = z.copy()
    for n in range(CF_DEPTH, 0, -1):
        t = z - (0.5 * n) / t
    return 1j * INV_SQRTPI / t


def _w_upper(z):
    r = np.abs(z)
    out = np.empty_like(z)
    m = r <= SERIES_RADIUS
    if m.any():
        out[m] = _w_series(z[m])
    m2 = ~m & (r <= CF_RADIUS)
    if m2.any():
        out[m2] = _w_weideman(z[m2])
    m3 = r > CF_RADIUS
    if m3.any():
        out[m3] = _w_contfrac(z[m3])
    return out


def faddeeva_many(z: np.ndarray) -> np.ndarray:
    """Vectorized w(z); see the numba twin for the region layout."""
    z = np.asarray(z, dtype=np.complex128)
    flat = z.ravel().copy()
    flip = flat.real < 0.0
    flat[flip] = -np.conj(flat[flip])
    out = np.empty_like(flat)

    real_m = flat.imag == 0.0
    if real_m.any():
        x = flat[real_m].real
        w = _w_upper(flat[real_m])
        out[real_m] = np.exp(-x * x) + 1j * w.imag
    up_m = flat.imag > 0.0
    if up_m.any():
        out[up_m] = _w_upper(flat[up_m])
    lo_m = flat.imag < 0.0
    if lo_m.any():
        zl = flat[lo_m]
        out[lo_m] = 2.0 * np.exp(-zl * zl) - np.conj(_w_upper(np.conj(zl)))

    out[flip] = np.conj(out[flip])
    return out.reshape(z.shape)


def faddeeva_scalar(z: complex) -> complex:
    return complex(faddeeva_many(np.array([z]))[0])


def j0_many(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    small = x < 0.01
    xs = np.where(small, 1.0, x)
    direct = np.sin(xs) / xs
    x2 = x * x
    series = 1.0 + x2 * (-1.0 / 6.0 + x2 * (1.0 / 120.0 - x2 / 5040.0))
    return np.where(small, series, direct)


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


def j1_many(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    small = x < 0.6
    xs = np.where(small, 1.0, x)
    direct = (np.sin(xs) - xs * np.cos(xs)) / (xs * xs)
    x2 = x * x
    acc = np.zeros_like(x)
    for k in range(8, -1, -1):
        acc = acc * x2 + _J1C[k]
    return np.where(small, x * acc, direct)


def j0_scalar(x: float) -> float:
    return float(j0_many(np.array([x]))[0])


def j1_scalar(x: float) -> float:
    return float(j1_many(np.array([x]))[0])


def _integrand_nodes(kind, k, rt, om, dt):
    """Integrand on an array of node positions k (any shape)."""
    b = j1_many(k * rt)
    base = b * b / k
    if kind == 0:
        return base * np.exp(-0.5 * (k + om) ** 2) + 0.0j
    if kind == 1:
        return base * np.exp(-0.5 * (k + om) ** 2) * j0_many(k * dt) + 0.0j
    if kind == 2:
        return base * faddeeva_many(-k * 0.7071067811865476 + 0.0j)
    if kind == 3:
        return base * j0_many(k * dt) * faddeeva_many(-k * 0.7071067811865476 + 0.0j)
    return base * faddeeva_many((0.5 * om - k) * 0.7071067811865476 + 0.0j)


def _panels(kind, a, b, rt, om, dt):
    """Evaluate the rule on panels given by edge arrays a, b (vectorized)."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    k = c[:, None] + h[:, None] * NODES15[None, :]
    f = _integrand_nodes(kind, k, rt, om, dt)
    ik = h * (f @ WK15)
    ig = h * (f @ WG7)
    return ik, np.abs(ik - ig)


def integrate_panels(kind, edges, rt, om, dt, rel_tol, abs_floor, max_panels, max_rounds):
    """Adaptive Gauss-Kronrod sum; mirrors the numba driver round for round."""
    pa = edges[:-1].copy()
    pb = edges[1:].copy()
    pv, pe = _panels(kind, pa, pb, rt, om, dt)
    evals = 15 * len(pa)
    status = 1
    for _ in range(max_rounds):
        total = pv.sum()
        esum = pe.sum()
        target = max(rel_tol * abs(total), abs_floor)
        if esum <= target:
            status = 0
            break
        if len(pa) >= max_panels:
            break
        thresh = target / (2.0 * len(pa))
        split = pe > thresh
        room = max_panels - len(pa)
        if split.sum() > room:
            order = np.argsort(pe[split])[::-1][:room]
            idx = np.flatnonzero(split)[order]
            split = np.zeros_like(split)
            split[idx] = True
        if not split.any():
            break
        mid = 0.5 * (pa[split] + pb[split])
        vl, el = _panels(kind, pa[split], mid, rt, om, dt)
        vr, er = _panels(kind, mid, pb[split], rt, om, dt)
        evals += 30 * int(split.sum())
        keep = ~split
        pa = np.concatenate([pa[keep], pa[split], mid])
        pb = np.concatenate([pb[keep], mid, pb[split]])
        pv = np.concatenate([pv[keep], vl, vr])
        pe = np.concatenate([pe[keep], el, er])
    total = pv.sum()
    esum = pe.sum()
    if esum <= max(rel_tol * abs(total), abs_floor):
        status = 0
    return complex(total), float(esum), int(status), len(pa), int(evals)
