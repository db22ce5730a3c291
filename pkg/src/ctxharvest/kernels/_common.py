"""Shared constants for the quadrature backends: rule nodes, series/rational
coefficients for the complex error function, panel layout, and truncation bounds.

Both the numba and the pure-numpy backend read these module-level arrays, so
the two paths evaluate the same rule with the same coefficients.
"""

from __future__ import annotations

import math

import numpy as np

# --- 15-point Kronrod / 7-point Gauss rule on [-1, 1] (QUADPACK dqk15 values).
# Nodes are symmetric; only the nonnegative half is stored.
GK_NODES = np.array([
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0,
])
GK_WEIGHTS = np.array([
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018,
    0.14065325971552592, 0.16900472663926790, 0.19035057806478540,
    0.20443294007529889, 0.20948214108472783,
])
G7_WEIGHTS = np.array([
    0.12948496616886969, 0.27970539148927664, 0.38183005050511894,
    0.41795918367346938,
])

# Full 15-node expansion (ascending), with matching K15 weights and the G7
# weights placed at the embedded Gauss nodes (zero elsewhere).


def _expand_rule():
    nodes = np.empty(15)
    wk = np.empty(15)
    wg = np.zeros(15)
    for i in range(7):
        nodes[i] = -GK_NODES[i]
        nodes[14 - i] = GK_NODES[i]
        wk[i] = wk[14 - i] = GK_WEIGHTS[i]
    nodes[7] = 0.0
    wk[7] = GK_WEIGHTS[7]
    # Gauss nodes are every second Kronrod node: indices 1, 3, 5, 7, 9, 11, 13
    for j, i in enumerate((1, 3, 5)):
        wg[i] = wg[14 - i] = G7_WEIGHTS[j]
    wg[7] = G7_WEIGHTS[3]
    return nodes, wk, wg


NODES15, WK15, WG7 = _expand_rule()

TWO_OVER_SQRTPI = 2.0 / math.sqrt(math.pi)
INV_SQRTPI = 1.0 / math.sqrt(math.pi)

# --- Maclaurin series of w(z) = sum (iz)^n / Gamma(n/2 + 1), used for |z| <= 2.
FADDEEVA_SERIES_N = 76
FADDEEVA_SERIES = np.array([1.0 / math.gamma(n / 2.0 + 1.0) for n in range(FADDEEVA_SERIES_N)])

# --- Weideman rational approximation for the closed upper half plane,
# used for 2 < |z| <= 9.  Coefficients built once by FFT.
WEIDEMAN_N = 96


def _weideman_coeffs(n: int) -> tuple[float, np.ndarray]:
    big_l = math.sqrt(n / math.sqrt(2.0))
    m = 2 * n
    theta = (np.arange(-m + 1, m) * np.pi) / m
    t = big_l * np.tan(theta / 2.0)
    f = np.exp(-t * t) * (big_l * big_l + t * t)
    f = np.concatenate([[0.0], f])
    a = np.real(np.fft.fft(np.fft.fftshift(f))) / (2 * m)
    return big_l, a[1:n + 1][::-1].copy()  # highest power first


WEIDEMAN_L, WEIDEMAN_A = _weideman_coeffs(WEIDEMAN_N)

# Region switch radii and continued-fraction depth for |z| > CF_RADIUS.
SERIES_RADIUS = 2.0
CF_RADIUS = 9.0
CF_DEPTH = 26

# Truncation anchor for the Gaussian-damped integrals; exp(-16^2/2) ~ 1e-56.
K_GAUSS = 16.0


def panel_edges(k_lo: float, k_hi: float, rt: float, dt: float, max_edges: int = 1 << 20) -> np.ndarray:
    """Panel boundaries on [k_lo, k_hi] aligned to the integrand oscillations.

    The squared Bessel factor oscillates with period pi/rt, the separation
    factor with period pi/dt (half-periods of sin); a geometric ladder covers
    slow 1/k variation between unit scale and the cutoff.
    """
    edges = [np.array([k_lo, k_hi])]
    anchor = np.array([0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0])
    edges.append(anchor)
    g = 16.0
    geo = []
    while g < k_hi:
        g *= 2.0
        geo.append(g)
    edges.append(np.array(geo))
    for period in (math.pi / rt if rt > 0 else 0.0, math.pi / dt if dt > 0 else 0.0):
        if period <= 0.0:
            continue
        n = int((k_hi - k_lo) / period)
        if n < 2:
            continue
        stride = max(1, int(math.ceil((n + 1) / max_edges)))
        grid = k_lo + period * stride * np.arange(1, n // stride + 1)
        edges.append(grid)
    out = np.unique(np.concatenate(edges))
    out = out[(out >= k_lo) & (out <= k_hi)]
    if out[0] != k_lo:
        out = np.concatenate([[k_lo], out])
    if out[-1] != k_hi:
        out = np.concatenate([out, [k_hi]])
    return out


# --- analytic tail bounds -------------------------------------------------
#
# For k >= max(2/rt, 2.83, ...) the integrands obey
#   j1(k rt)^2 <= 4/(k rt)^2,  |w(-k/sqrt2)| <= 1/k,  |j0(k dt)| <= 1/(k dt),
# giving an O(k^-4) envelope for the Feynman-ordered integrals and an
# exponential one for the Gaussian-damped pair.  The separation-oscillating
# integral additionally admits an integration-by-parts bound that gains a
# factor 1/dt^2, which keeps cutoffs small when dt is large.


def tail_bound_gauss(k: float, om: float) -> float:
    return 0.2 * math.exp(-0.5 * (k + om) ** 2)


def gauss_cutoff(om: float) -> float:
    return K_GAUSS


def tail_bound_q(k: float, rt: float) -> float:
    return 4.0 * 1.34 / (rt * rt * k ** 3)


def q_cutoff_start(om: float, rt: float) -> float:
    return max(16.0, 0.5 * om + 12.0, 2.0 / rt, 4.0 / rt)


def q_cutoff_for(target: float, om: float, rt: float) -> float:
    k = (4.0 * 1.34 / (rt * rt * target)) ** (1.0 / 3.0)
    return max(q_cutoff_start(om, rt), k)


def tail_bound_v(k: float, rt: float, om: float) -> float:
    return 4.0 * 3.8 / (rt * rt * k ** 3)


def v_cutoff_start(om: float, rt: float) -> float:
    return max(16.0, om + 4.0, 0.5 * om + 12.0, 2.0 / rt, 4.0 / rt)


def v_cutoff_for(target: float, om: float, rt: float) -> float:
    k = (4.0 * 3.8 / (rt * rt * target)) ** (1.0 / 3.0)
    return max(v_cutoff_start(om, rt), k)


def tail_bound_m(k: float, rt: float, dt: float) -> float:
    # Envelope pieces for k >= max(2/rt, 3): |j1(x)|, |j1'(x)| <= 2/x,
    # |w(-k/sqrt2)| <= 1/k, |d/dk w(-k/sqrt2)| <= 1.7/k^2 (the -2zw + 2i/sqrt(pi)
    # terms cancel to O(1/x^2) on the real axis).  Integrating the sin(k dt)
    # factor by parts twice turns the plain cumulative bound into one weighted
    # by 1/dt^2, which is what keeps cutoffs finite for large separations.
    plain = tail_bound_q(k, rt)
    if dt <= 0.0:
        return plain
    direct = 4.0 * 1.0 / (rt * rt * dt * k ** 4)
    by_parts = (4.0 / dt ** 2) * (
        2.0 / (rt * k ** 4)          # Bessel-derivative term of |s'|
        + 7.0 / (rt * rt * k ** 5)   # |s(k)|/dt and the remaining |s'| terms
    )
    return min(plain, direct, by_parts)


def m_cutoff_for(target: float, om: float, rt: float, dt: float) -> float:
    k = q_cutoff_start(om, rt)
    while tail_bound_m(k, rt, dt) > target and k < 1e9:
        k *= 1.25
    return k
