"""Order-lambda^2 joint detector states, their reductions, and separation checks.

The two internal dynamics populate different entries of the 9x9 density
matrix in the ordered basis {|00>, |01>, |02>, |10>, |11>, |12>, |20>, |21>, |22>}:

* ladder dynamics ("SU2", gaps 0, Omega, 2*Omega, nearest-neighbor coupling):
  single excitations |01>, |10> with cross term Lab, coherences Q between a
  detector's ground and second level, and Mab between |00> and |11>.  The
  superselection rule leaves no direct |0> -> |2> transition amplitude.

* degenerate dynamics ("HW", gaps 0, Omega, Omega, all-pairs coupling):
  both excited levels fill equally (diagonal 1-4L, then L blocks), V
  coherences from the ground state to every singly-excited level, and Mab
  to every doubly-excited one.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .kernels import DetectorConfig, KernelSet

BASIS_LABELS = tuple(f"{a}{b}" for a in range(3) for b in range(3))


@dataclass(frozen=True)
class DetectorState:
    """Joint 9x9 state with the configuration and kernels that produced it."""

    rho: np.ndarray
    dynamics: str
    config: DetectorConfig | None = None
    kernels: KernelSet | None = None


@dataclass(frozen=True)
class ReducedState:
    rho: np.ndarray
    which: str  # "A" or "B"


def assemble_state(cfg: DetectorConfig, k: KernelSet) -> DetectorState:
    """Build the order-lambda^2 joint state from a kernel set.

    Every entry not fixed by the perturbative calculation is exactly zero;
    the trace is exactly 1 by construction.
    """
    if not isinstance(k, KernelSet):
        raise ValueError("assemble_state needs the KernelSet computed for this config")
    rho = np.zeros((9, 9), dtype=complex)
    ell, lab, q, mab, v = k.L, k.Lab, k.Q, k.Mab, k.V
    if cfg.dynamics == "SU2":
        rho[0, 0] = 1.0 - 2.0 * ell
        rho[1, 1] = rho[3, 3] = ell
        rho[1, 3] = rho[3, 1] = lab
        for i in (2, 6):  # |02>, |20>
            rho[i, 0] = q
            rho[0, i] = np.conj(q)
        rho[4, 0] = mab  # |11>
        rho[0, 4] = np.conj(mab)
    else:
        rho[0, 0] = 1.0 - 4.0 * ell
        singles = (1, 2, 3, 6)  # |01>, |02>, |10>, |20>
        doubles = (4, 5, 7, 8)  # |11>, |12>, |21>, |22>
        for i in singles:
            rho[i, 0] = v
            rho[0, i] = np.conj(v)
        for i in doubles:
            rho[i, 0] = mab
            rho[0, i] = np.conj(mab)
        # same-detector excitation pairs share L, cross-detector pairs Lab
        for i in singles:
            for j in singles:
                same = (i in (1, 2)) == (j in (1, 2))
                rho[i, j] = ell if same else lab
    return DetectorState(rho=rho, dynamics=cfg.dynamics, config=cfg, kernels=k)


def reduce(state: DetectorState, which: str = "A") -> ReducedState:
    """Partial trace onto one detector."""
    if which not in ("A", "B"):
        raise ValueError(f"which must be 'A' or 'B', got {which!r}")
    r = state.rho.reshape(3, 3, 3, 3)
    if which == "A":
        rho = np.trace(r, axis1=1, axis2=3)
    else:
        rho = np.trace(r, axis1=0, axis2=2)
    return ReducedState(rho=rho, which=which)


def ground_state() -> np.ndarray:
    g = np.zeros((3, 3), dtype=complex)
    g[0, 0] = 1.0
    return g


def spacelike_ok(cfg: DetectorConfig) -> bool:
    """Effective spacelike separation: d >= 2R + 5T/sqrt(2), in units of T.

    Five standard deviations of the Gaussian switching plus both smearing
    radii; beyond this the interaction regions are causally disconnected for
    any practical purpose.
    """
    return bool(cfg.dtilde >= 2.0 * cfg.rtilde + 5.0 / math.sqrt(2.0))


# --- JSON round trip for the CLI ------------------------------------------


def _complex_matrix_to_json(m: np.ndarray) -> list:
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def _complex_matrix_from_json(rows: list) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def state_to_json(state: DetectorState) -> str:
    doc = {
        "format": "ctxharvest-state-v1",
        "dynamics": state.dynamics,
        "basis": list(BASIS_LABELS),
        "rho": _complex_matrix_to_json(state.rho),
    }
    if state.config is not None:
        c = state.config
        doc["config"] = {"lam": c.lam, "omega": c.omega, "rtilde": c.rtilde,
                         "dtilde": c.dtilde, "dynamics": c.dynamics}
    if state.kernels is not None:
        k = state.kernels
        doc["kernels"] = {
            "L": k.L, "Lab": k.Lab,
            "Q": [k.Q.real, k.Q.imag], "Mab": [k.Mab.real, k.Mab.imag],
            "V": [k.V.real, k.V.imag],
            "quad_error": list(k.quad_error), "evals": k.evals,
        }
    return json.dumps(doc, indent=2)


def state_from_json(text: str) -> DetectorState:
    doc = json.loads(text)
    if doc.get("format") != "ctxharvest-state-v1":
        raise ValueError(f"unrecognized state document: {doc.get('format')!r}")
    rho = _complex_matrix_from_json(doc["rho"])
    if rho.shape != (9, 9):
        raise ValueError(f"state matrix must be 9x9, got {rho.shape}")
    cfg = None
    if "config" in doc:
        cfg = DetectorConfig(**doc["config"])
    kern = None
    if "kernels" in doc:
        kd = doc["kernels"]
        kern = KernelSet(
            L=kd["L"], Lab=kd["Lab"], Q=complex(*kd["Q"]), Mab=complex(*kd["Mab"]),
            V=complex(*kd["V"]), quad_error=tuple(kd.get("quad_error", (0.0,) * 5)),
            evals=kd.get("evals", 0),
        )
    return DetectorState(rho=rho, dynamics=doc["dynamics"], config=cfg, kernels=kern)
