"""Discrete Wigner facets of a single qutrit and the closed-form violation checks.

A qutrit state has nonnegative discrete Wigner representation iff all nine
facet values W_r(rho) = (1/3) Tr(rho A^r) are nonnegative; the negativity is
the summed magnitude of the violated facets.  For the reduced states produced
by this package the nine facets collapse to three closed-form inequalities in
the kernels, which gives an independent cross-check of the same physics.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .hwops import phase_point_operators
from .kernels import KernelSet
from .states import ReducedState

# A facet below -VIOLATION_TOL counts as violated; true violations are
# O(lambda^2) while rounding noise sits near 1e-16.
VIOLATION_TOL = 1e-12


@dataclass(frozen=True)
class WignerProfile:
    """The nine facet values indexed [x, y], with negativity and violations."""

    values: np.ndarray
    negativity: float
    violated_facets: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class InequalityReport:
    """Slacks of the three reduced-state inequalities (negative slack = violated)."""

    slacks: tuple[float, float, float]
    violated: tuple[bool, bool, bool]
    dynamics: str

    @property
    def any_violated(self) -> bool:
        return any(self.violated)


def wigner_profile(rho: ReducedState | np.ndarray,
                   violation_tol: float = VIOLATION_TOL) -> WignerProfile:
    """Facet values and negativity of a single-qutrit state."""
    r = rho.rho if isinstance(rho, ReducedState) else np.asarray(rho, dtype=complex)
    if r.shape != (3, 3):
        raise ValueError(f"need a 3x3 state, got {r.shape}")
    ops = phase_point_operators()
    values = np.empty((3, 3))
    for x, y in itertools.product(range(3), repeat=2):
        values[x, y] = np.real(np.einsum("ij,ji->", r, ops[x, y])) / 3.0
    violated = tuple((x, y) for x, y in itertools.product(range(3), repeat=2)
                     if values[x, y] < -violation_tol)
    negativity = float(sum(-values[x, y] for x, y in violated))
    return WignerProfile(values=values, negativity=negativity, violated_facets=violated)


def reduced_inequalities(k: KernelSet, dynamics: str,
                         violation_tol: float = VIOLATION_TOL) -> InequalityReport:
    """Evaluate the three facet inequalities of the one-detector reduced state.

    With c the ground/excited coherence of the chosen dynamics (Q for the
    ladder qutrit, V for the degenerate one), the candidates are
      L >= -2 Re c,   L >= Re c - sqrt(3) Im c,   L >= Re c + sqrt(3) Im c.
    """
    if dynamics not in ("SU2", "HW"):
        raise ValueError(f"dynamics must be 'SU2' or 'HW', got {dynamics!r}")
    c = k.Q if dynamics == "SU2" else k.V
    s3 = math.sqrt(3.0)
    slacks = (
        k.L + 2.0 * c.real,
        k.L - c.real + s3 * c.imag,
        k.L - c.real - s3 * c.imag,
    )
    return InequalityReport(
        slacks=slacks,
        violated=tuple(s < -violation_tol for s in slacks),
        dynamics=dynamics,
    )


def mana(negativity: float) -> float:
    """log(2 N + 1): derived column for comparison with single-detector results."""
    return math.log(2.0 * negativity + 1.0)
