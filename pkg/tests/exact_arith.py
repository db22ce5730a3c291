"""Exact-arithmetic oracles for the LP and projector tests.

Numbers are elements of Q(w), w = exp(2 pi i/3), stored as pairs (a, b)
meaning a + b*w with Fraction components (w^2 = -1 - w).  This is enough to
build displacement operators, context projectors, and outcome probabilities
of rational states exactly, and to run an exact rational simplex on the
resulting 360x81 system.
"""

from __future__ import annotations

from fractions import Fraction

Zw = tuple[Fraction, Fraction]

ZERO: Zw = (Fraction(0), Fraction(0))
ONE: Zw = (Fraction(1), Fraction(0))


def w_pow(k: int) -> Zw:
    k %= 3
    if k == 0:
        return ONE
    if k == 1:
        return (Fraction(0), Fraction(1))
    return (Fraction(-1), Fraction(-1))  # w^2 = -1 - w


def add(x: Zw, y: Zw) -> Zw:
    return (x[0] + y[0], x[1] + y[1])


def mul(x: Zw, y: Zw) -> Zw:
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c - b * d)


def conj(x: Zw) -> Zw:
    a, b = x
    return (a - b, -b)


def scale(f: Fraction, x: Zw) -> Zw:
    return (f * x[0], f * x[1])


def mat_mul(x, y):
    n = len(x)
    return [[sum_zw(mul(x[i][k], y[k][j]) for k in range(n)) for j in range(n)]
            for i in range(n)]


def sum_zw(items) -> Zw:
    a = Fraction(0)
    b = Fraction(0)
    for x in items:
        a += x[0]
        b += x[1]
    return (a, b)


def mat_add(x, y):
    return [[add(a, b) for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def mat_scale(f: Fraction, x):
    return [[scale(f, e) for e in row] for row in x]


def kron(x, y):
    nx, ny = len(x), len(y)
    return [[mul(x[i // ny][j // ny], y[i % ny][j % ny]) for j in range(nx * ny)]
            for i in range(nx * ny)]


def trace(x) -> Zw:
    return sum_zw(x[i][i] for i in range(len(x)))


def weyl1_exact(p: int, q: int):
    """Single-qutrit displacement operator with exact w-phases."""
    m = [[ZERO for _ in range(3)] for _ in range(3)]
    for j in range(3):
        m[(j + p) % 3][j] = w_pow(2 * p * q + q * j)
    return m


def weyl_exact(v):
    if len(v) == 2:
        return weyl1_exact(v[0], v[1])
    return kron(weyl1_exact(v[0], v[1]), weyl1_exact(v[2], v[3]))


def context_projector_exact(context, r1: int, r2: int):
    coeff = context.coefficients()
    p = [[ZERO for _ in range(9)] for _ in range(9)]
    for member in context.members:
        a, b = coeff[member]
        phase = w_pow(-(a * r1 + b * r2))
        wm = weyl_exact(member)
        p = mat_add(p, [[mul(phase, e) for e in row] for row in wm])
    return mat_scale(Fraction(1, 9), p)


def trace_product(x, y) -> Zw:
    n = len(x)
    return sum_zw(mul(x[i][j], y[j][i]) for i in range(n) for j in range(n))


def exact_probabilities(contexts, rho) -> list[Fraction]:
    """Stacked outcome probabilities Tr(P rho) of a rational 9x9 state.

    The state entries are Zw pairs; each probability must come out with zero
    w-component, which is asserted.
    """
    out = []
    for ctx in contexts:
        for r1 in range(3):
            for r2 in range(3):
                proj = context_projector_exact(ctx, r1, r2)
                t = trace_product(proj, rho)
                assert t[1] == 0, f"probability has irrational part: {t}"
                out.append(t[0])
    return out


def phase_point_operator_exact(x: int, y: int):
    """Exact 3x3 phase point operator at (x, y), in Zw entries."""
    r = (x, y, (x + y) % 3, (x + 2 * y) % 3)
    ops = [(0, 1), (1, 0), (1, 1), (1, 2)]
    a = [[(Fraction(-1) if i == j else Fraction(0), Fraction(0)) for j in range(3)]
         for i in range(3)]
    for idx, (p, q) in enumerate(ops):
        proj = [[ZERO for _ in range(3)] for _ in range(3)]
        for k in range(3):
            wk = weyl1_exact((k * p) % 3, (k * q) % 3)
            phase = w_pow(-r[idx] * k)
            proj = mat_add(proj, [[mul(phase, e) for e in row] for row in wk])
        a = mat_add(a, mat_scale(Fraction(1, 3), proj))
    return a


def exact_facet_values(rho3) -> dict[tuple[int, int], Fraction]:
    """The nine discrete Wigner facet values of a rational qutrit state."""
    out = {}
    for x in range(3):
        for y in range(3):
            t = trace_product(phase_point_operator_exact(x, y), rho3)
            assert t[1] == 0, f"facet value has irrational part: {t}"
            out[(x, y)] = t[0] / 3
    return out


# --- exact rational simplex -------------------------------------------------


def simplex_max_sum(m_rows: list[list[int]], v: list[Fraction],
                    max_iter: int = 200000) -> tuple[Fraction, list[Fraction]]:
    """maximize sum(b) s.t. m b <= v, b >= 0, in exact rational arithmetic.

    Dense tableau simplex with Bland's rule (smallest-index entering and
    leaving), which cannot cycle.  Intended for the 360x81 assignment system;
    no attempt at performance beyond what exactness needs.
    """
    n_rows = len(m_rows)
    n_vars = len(m_rows[0])
    width = n_vars + n_rows + 1
    tab = []
    for i in range(n_rows):
        row = [Fraction(x) for x in m_rows[i]]
        row += [Fraction(1) if j == i else Fraction(0) for j in range(n_rows)]
        row.append(Fraction(v[i]))
        tab.append(row)
    # objective row: maximize sum(b)  ->  z - sum(b) = 0
    obj = [Fraction(-1)] * n_vars + [Fraction(0)] * n_rows + [Fraction(0)]
    basis = [n_vars + i for i in range(n_rows)]

    for _ in range(max_iter):
        enter = next((j for j in range(n_vars + n_rows) if obj[j] < 0), None)
        if enter is None:
            sol = [Fraction(0)] * n_vars
            for i, bj in enumerate(basis):
                if bj < n_vars:
                    sol[bj] = tab[i][-1]
            return sum(sol), sol
        best_ratio = None
        leave = None
        for i in range(n_rows):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best_ratio is None or ratio < best_ratio or (
                        ratio == best_ratio and basis[i] < basis[leave]):
                    best_ratio = ratio
                    leave = i
        if leave is None:
            raise RuntimeError("LP unbounded; assignment system cannot do this")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(n_rows):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter
    raise RuntimeError("simplex did not terminate within the iteration budget")


def verify_cf_bounds(m_matrix, v_floats, primal, duals) -> tuple[Fraction, Fraction]:
    """Exact certificate sandwich for the contextual fraction.

    Given float primal b and dual y from any solver, verifies in rational
    arithmetic that (a projection of) b is feasible and y is dual feasible,
    returning rigorous bounds (cf_lower, cf_upper) with
    cf_lower = 1 - y.v  <=  true cf  <=  1 - sum(b_feasible).
    """
    import numpy as np

    m = np.asarray(m_matrix)
    v = [Fraction(float(x)) for x in v_floats]
    b = [max(Fraction(float(x)), Fraction(0)) for x in primal]
    y = [max(Fraction(float(t)), Fraction(0)) for t in duals]

    cols = [np.flatnonzero(m[i]).tolist() for i in range(len(v))]
    # primal feasibility: scale b down if any constraint overflows
    worst = Fraction(1)
    for i, v_i in enumerate(v):
        lhs = sum(b[j] for j in cols[i])
        if lhs > v_i:
            if v_i == 0:
                worst = Fraction(0)
            else:
                worst = min(worst, v_i / lhs)
    b = [worst * x for x in b]
    cf_upper = 1 - sum(b)

    # dual feasibility: M^T y >= 1 must hold exactly; scale up if slightly off
    col_sums = []
    for j in range(m.shape[1]):
        col_sums.append(sum(y[i] for i in np.flatnonzero(m[:, j]).tolist()))
    min_col = min(col_sums)
    if min_col <= 0:
        raise AssertionError("dual certificate degenerate")
    y = [x / min_col for x in y]
    bound = sum(yi * vi for yi, vi in zip(y, v))
    cf_lower = 1 - bound
    return cf_lower, cf_upper
