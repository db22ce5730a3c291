"""Empirical models over the 40 two-qutrit contexts and the contextual fraction LP.

The measurement statistics of a 9x9 state, one distribution per context, are
stacked into a 360-vector v.  A model is noncontextual iff v = M b for a
subprobability vector b over the 81 deterministic global assignments, where
M is the 360x81 zero/one matrix whose columns are the assignments' statistics.
The contextual fraction is 1 minus the largest total weight sum(b) with
M b <= v, b >= 0: the least weight that cannot be explained noncontextually.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .gf3 import Context, enumerate_contexts
from .hwops import projector_stack
from .states import DetectorState

N_CONTEXTS = 40
N_OUTCOMES = 9
N_ASSIGNMENTS = 81

# HiGHS feasibility tolerances.  1e-10 (the solver minimum) is needed so that
# contextual fractions of order lambda^2 ~ 1e-8 survive the solve; the default
# 1e-7 visibly distorts them.
_LP_OPTIONS = {
    "primal_feasibility_tolerance": 1e-10,
    "dual_feasibility_tolerance": 1e-10,
}

# The LP is positively homogeneous in its right-hand side, while the solver
# tolerances above are absolute; solving with the probabilities scaled up and
# dividing the optimum back down pushes the effective tolerance three more
# decades below the smallest physical signals (cf ~ 1e-8 at lambda = 1e-4).
_RHS_SCALE = 1e4

CF_ZERO_TOLERANCE = 1e-9


class PerturbativeRegimeError(RuntimeError):
    """The state's negative outcome probabilities exceed the O(lambda^4) budget."""


class LPFailureError(RuntimeError):
    """The contextual-fraction LP did not reach a clean optimum."""


@dataclass(frozen=True)
class EmpiricalModel:
    """40x9 table of outcome probabilities plus the clamping report."""

    table: np.ndarray
    clamp_report: float

    @property
    def vector(self) -> np.ndarray:
        return self.table.reshape(N_CONTEXTS * N_OUTCOMES)


@dataclass(frozen=True)
class AssignmentMatrix:
    """360x81 constraint matrix; column j is the model of the j-th assignment."""

    M: np.ndarray
    assignments: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CFResult:
    cf: float
    noncontextual_weights: np.ndarray
    lp_status: str
    objective_gap: float


_PROJECTION_MAP: np.ndarray | None = None


def _projection_map() -> np.ndarray:
    """(360, 81) map from a flattened 9x9 state to all outcome probabilities."""
    global _PROJECTION_MAP
    if _PROJECTION_MAP is None:
        stack = projector_stack().reshape(N_CONTEXTS * N_OUTCOMES, 9, 9)
        pm = np.ascontiguousarray(np.transpose(stack, (0, 2, 1)).reshape(-1, 81))
        pm.setflags(write=False)
        _PROJECTION_MAP = pm
    return _PROJECTION_MAP


def empirical_model(state: DetectorState | np.ndarray,
                    contexts: list[Context] | None = None,
                    clamp_tol: float | None = None) -> EmpiricalModel:
    """Outcome probabilities of a joint state over all 40 contexts.

    Entries in [-clamp_tol, 0), which arise at order lambda^4 from the
    truncated perturbative state, are clamped to zero and the affected rows
    renormalized; anything more negative raises PerturbativeRegimeError.
    `clamp_tol` defaults to 100*lambda^4 when the state carries its
    configuration, else to rounding level.
    """
    if contexts is not None and [c.members for c in contexts] != [
            c.members for c in enumerate_contexts()]:
        raise ValueError("contexts must be the canonical enumeration")
    if isinstance(state, DetectorState):
        rho = state.rho
        if clamp_tol is None:
            clamp_tol = 100.0 * state.config.lam**4 if state.config is not None else 1e-12
    else:
        rho = np.asarray(state, dtype=complex)
        if clamp_tol is None:
            clamp_tol = 1e-12
    if rho.shape != (9, 9):
        raise ValueError(f"need a 9x9 state, got {rho.shape}")

    raw = _projection_map() @ rho.reshape(81)
    worst_imag = float(np.max(np.abs(raw.imag)))
    if worst_imag > 1e-12:
        raise PerturbativeRegimeError(
            f"outcome probabilities have imaginary part {worst_imag:.3e}; state not Hermitian?")
    p = raw.real.copy()
    worst = float(min(p.min(), 0.0))
    if -worst > clamp_tol:
        raise PerturbativeRegimeError(
            f"negative outcome probability {worst:.3e} exceeds clamp budget {clamp_tol:.3e}")
    table = p.reshape(N_CONTEXTS, N_OUTCOMES)
    if worst < 0.0:
        dirty = table.min(axis=1) < 0.0
        table = np.maximum(table, 0.0)
        sums = table[dirty].sum(axis=1)
        table[dirty] /= sums[:, None]
    return EmpiricalModel(table=table, clamp_report=-worst)


_ASSIGNMENT_MATRIX: AssignmentMatrix | None = None


def assignment_matrix() -> AssignmentMatrix:
    """All 81 deterministic global assignments as one-hot context blocks.

    An assignment is a linear functional s on Z3^4: the operator labeled v
    gets outcome s.v mod 3.  Linearity is exactly the consistency that the
    composition rule of commuting displacement operators forces, and it pins
    one outcome per context.
    """
    global _ASSIGNMENT_MATRIX
    if _ASSIGNMENT_MATRIX is None:
        contexts = enumerate_contexts()
        m = np.zeros((N_CONTEXTS * N_OUTCOMES, N_ASSIGNMENTS))
        cols = []
        for j, s in enumerate(itertools.product(range(3), repeat=4)):
            cols.append(s)
            for ci, ctx in enumerate(contexts):
                g1, g2 = ctx.generators
                r1 = sum(si * gi for si, gi in zip(s, g1)) % 3
                r2 = sum(si * gi for si, gi in zip(s, g2)) % 3
                m[ci * N_OUTCOMES + r1 * 3 + r2, j] = 1.0
        m.setflags(write=False)
        _ASSIGNMENT_MATRIX = AssignmentMatrix(M=m, assignments=tuple(cols))
    return _ASSIGNMENT_MATRIX


def contextual_fraction(model: EmpiricalModel,
                        assignments: AssignmentMatrix | None = None) -> CFResult:
    """Maximize the noncontextual weight sum(b) subject to M b <= v, b >= 0.

    Solved with HiGHS dual simplex at tight feasibility tolerances; the
    result is deterministic for identical inputs.  Fractions below
    CF_ZERO_TOLERANCE are reported as exactly 0.
    """
    if assignments is None:
        assignments = assignment_matrix()
    v = model.vector
    res = linprog(
        -np.ones(N_ASSIGNMENTS), A_ub=assignments.M, b_ub=v * _RHS_SCALE,
        bounds=(0, None), method="highs", options=_LP_OPTIONS,
    )
    if res.status != 0 or res.x is None:
        raise LPFailureError(f"LP returned status {res.status}: {res.message}")
    b = res.x / _RHS_SCALE
    cf = 1.0 - float(b.sum())
    residual = float(max(np.max(assignments.M @ b - v), 0.0) + max(-b.min(), 0.0))
    status = "optimal" if residual <= 1e-9 else "numeric_warning"
    cf = min(max(cf, 0.0), 1.0)
    if cf < CF_ZERO_TOLERANCE:
        cf = 0.0
    return CFResult(cf=cf, noncontextual_weights=b, lp_status=status,
                    objective_gap=residual)
