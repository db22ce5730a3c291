"""Qutrit displacement operators, context projectors, and phase point operators.

All matrices are dense complex arrays: 3x3 for one qutrit, 9x9 for two. The
displacement (generalized Pauli) operator for label [p, q] is
w^(2pq) X^p Z^q with w = exp(2 pi i/3); the factor 2 is the inverse of 2 in
Z3 and makes composition exact on commuting labels:
W(v) W(u) = W(v+u) whenever the symplectic form [v, u] vanishes.
"""

from __future__ import annotations

import itertools

import numpy as np

from .gf3 import Context, PhasePointVector, enumerate_contexts, scale

OMEGA = np.exp(2j * np.pi / 3)

OutcomeLabel = tuple[int, int]


def clock() -> np.ndarray:
    """Z = diag(1, w, w^2)."""
    return np.diag([OMEGA**j for j in range(3)]).astype(complex)


def shift() -> np.ndarray:
    """X: |j> -> |j+1 mod 3>."""
    x = np.zeros((3, 3), dtype=complex)
    for j in range(3):
        x[(j + 1) % 3, j] = 1.0
    return x


_X = None
_Z = None


def _weyl1(p: int, q: int) -> np.ndarray:
    global _X, _Z
    if _X is None:
        _X, _Z = shift(), clock()
    m = np.linalg.matrix_power(_X, p) @ np.linalg.matrix_power(_Z, q)
    return OMEGA ** ((2 * p * q) % 3) * m


def weyl(v: PhasePointVector) -> np.ndarray:
    """Displacement operator for a phase point vector of length 2 or 4."""
    if len(v) == 2:
        return _weyl1(v[0], v[1])
    if len(v) == 4:
        return np.kron(_weyl1(v[0], v[1]), _weyl1(v[2], v[3]))
    raise ValueError(f"phase point vector must have length 2 or 4, got {len(v)}")


def outcome_labels() -> list[OutcomeLabel]:
    """The 9 joint-outcome labels of a context, as values (r1, r2) on its generators.

    A label assigns w^(a r1 + b r2) to the member a*g1 + b*g2; linearity on the
    subspace is automatic and the identity member always gets outcome 0.
    Canonical order is lexicographic in (r1, r2).
    """
    return [(r1, r2) for r1 in range(3) for r2 in range(3)]


def context_projector(context: Context, label: OutcomeLabel) -> np.ndarray:
    """Rank-1 projector onto the joint eigenspace of a context with given outcomes.

    Built as (1/9) * sum over the 9 members W of w^(-r(W)) W, where r is the
    Z3-linear outcome functional fixed by `label` on the generators.
    """
    r1, r2 = label
    if r1 not in (0, 1, 2) or r2 not in (0, 1, 2):
        raise ValueError(f"invalid outcome label {label}")
    coeff = context.coefficients()
    p = np.zeros((9, 9), dtype=complex)
    for member in context.members:
        a, b = coeff[member]
        p += OMEGA ** (-((a * r1 + b * r2) % 3)) * weyl(member)
    return p / 9.0


def context_projectors(context: Context) -> list[np.ndarray]:
    """The 9 projectors of a context in canonical outcome order."""
    return [context_projector(context, lab) for lab in outcome_labels()]


_PROJECTOR_STACK: np.ndarray | None = None


def projector_stack() -> np.ndarray:
    """All 360 projectors as a read-only (40, 9, 9, 9) array.

    Axis 0 follows enumerate_contexts(); axis 1 the canonical outcome order.
    Built once per process and cached.
    """
    global _PROJECTOR_STACK
    if _PROJECTOR_STACK is None:
        stack = np.empty((40, 9, 9, 9), dtype=complex)
        for ci, ctx in enumerate(enumerate_contexts()):
            for oi, proj in enumerate(context_projectors(ctx)):
                stack[ci, oi] = proj
        stack.setflags(write=False)
        _PROJECTOR_STACK = stack
    return _PROJECTOR_STACK


def _eigenprojector(v: PhasePointVector, r: int) -> np.ndarray:
    """Projector onto the w^r eigenspace of the single-qutrit operator W(v).

    Spectral sum (1/3) sum_k w^(-rk) W(v)^k; exact because W(v)^k = W(k*v).
    """
    p = np.zeros((3, 3), dtype=complex)
    for k in range(3):
        p += OMEGA ** (-((r * k) % 3)) * weyl(scale(k, v))
    return p / 3.0


_PPO_LIST: tuple[PhasePointVector, ...] = ((0, 1), (1, 0), (1, 1), (1, 2))


def phase_point_operator(x: int, y: int) -> np.ndarray:
    """Hermitian trace-1 operator A^r at the qutrit phase-space point (x, y).

    r = (x, y, x+y, x+2y) selects one eigenprojector of each of
    {W[0,1], W[1,0], W[1,1], W[1,2]}; A^r = -1 + sum of the four projectors.
    The nine A^r define the discrete Wigner function facets.
    """
    if x not in (0, 1, 2) or y not in (0, 1, 2):
        raise ValueError(f"phase-space point must lie in Z3 x Z3, got {(x, y)}")
    r = (x, y, (x + y) % 3, (x + 2 * y) % 3)
    a = -np.eye(3, dtype=complex)
    for i, v in enumerate(_PPO_LIST):
        a += _eigenprojector(v, r[i])
    return a


def phase_point_operators() -> np.ndarray:
    """The nine A^r stacked as a (3, 3, 3, 3) array indexed [x, y]."""
    out = np.empty((3, 3, 3, 3), dtype=complex)
    for x, y in itertools.product(range(3), repeat=2):
        out[x, y] = phase_point_operator(x, y)
    return out
