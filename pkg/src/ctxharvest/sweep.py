"""Parameter sweeps over detector configurations with CSV/JSON persistence.

A sweep varies one axis (gap, separation, smearing radius, or coupling),
computes the interaction kernels once per grid point, and evaluates the
requested indicators for each dynamics: contextual fraction of the joint
state and of the factorized baselines, and Wigner negativity of the reduced
state.  Grid points fail independently; a sweep only aborts when more than
10% of its points failed.

Two parameter conventions are supported.  Under "fixed_RT" the radius and
separation fields are R/T and d/T and the gap axis is Omega*T.  Under
"fixed_ROmega" they are R*Omega and d*Omega instead, converted per grid
point via R/T = (R*Omega)/(Omega*T); only the gap axis may be swept.
"""

from __future__ import annotations

import concurrent.futures
import os
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .contextuality import (
    CF_ZERO_TOLERANCE,
    assignment_matrix,
    contextual_fraction,
    empirical_model,
)
from .kernels import DetectorConfig, KernelSet, compute_kernels
from .states import DetectorState, assemble_state, ground_state, reduce, spacelike_ok
from .wigner import wigner_profile

AXES = ("omega", "dtilde", "rtilde", "lambda")
MODES = ("cf", "negativity")
COMPARISON_STATES = ("joint", "reduced_tensor_reduced", "reduced_tensor_ground")
PARAMETRIZATIONS = ("fixed_RT", "fixed_ROmega")

CSV_SCHEMA_VERSION = "ctxharvest-sweep-csv-v2"
CSV_COLUMNS = (
    "index", "axis", "axis_value", "dynamics", "parametrization",
    "lam", "omega", "rtilde", "dtilde", "spacelike",
    "L", "Lab", "Q_re", "Q_im", "Mab_re", "Mab_im", "V_re", "V_im",
    "cf_joint", "cf_reduced_tensor_reduced", "cf_reduced_tensor_ground",
    "negativity", "clamp_report", "lp_status", "error",
)


class SweepError(RuntimeError):
    """More than 10% of grid points failed."""


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    grid: tuple[float, ...]
    fixed: DetectorConfig
    dynamics: tuple[str, ...] = ("SU2",)
    modes: tuple[str, ...] = ("cf", "negativity")
    comparison_states: tuple[str, ...] = ("joint",)
    parametrization: str = "fixed_RT"

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if len(self.grid) == 0:
            raise ValueError("grid must be nonempty")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")
        for d in self.dynamics:
            if d not in ("SU2", "HW"):
                raise ValueError(f"unknown dynamics {d!r}")
        for m in self.modes:
            if m not in MODES:
                raise ValueError(f"unknown mode {m!r}")
        for c in self.comparison_states:
            if c not in COMPARISON_STATES:
                raise ValueError(f"unknown comparison state {c!r}")
        if self.parametrization not in PARAMETRIZATIONS:
            raise ValueError(f"unknown parametrization {self.parametrization!r}")
        if self.parametrization == "fixed_ROmega" and self.axis != "omega":
            raise ValueError("fixed_ROmega sweeps only support the omega axis")


@dataclass
class SweepRow:
    index: int
    axis: str
    axis_value: float
    dynamics: str
    parametrization: str
    config: DetectorConfig | None = None
    kernels: KernelSet | None = None
    spacelike: bool | None = None
    cf: dict = field(default_factory=dict)
    negativity: float | None = None
    clamp_report: float = 0.0
    lp_status: str = ""
    error: str = ""
    elapsed: float = 0.0


def _effective_config(spec: SweepSpec, value: float) -> DetectorConfig:
    base = spec.fixed
    if spec.axis == "omega":
        cfg = replace(base, omega=value)
    elif spec.axis == "dtilde":
        cfg = replace(base, dtilde=value)
    elif spec.axis == "rtilde":
        cfg = replace(base, rtilde=value)
    else:
        cfg = replace(base, lam=value)
    if spec.parametrization == "fixed_ROmega":
        om = cfg.omega
        if om <= 0:
            raise ValueError("fixed_ROmega needs omega > 0 on the whole grid")
        cfg = replace(cfg, rtilde=cfg.rtilde / om, dtilde=cfg.dtilde / om)
    return cfg


def _variant_matrix(state: DetectorState, name: str) -> np.ndarray:
    if name == "joint":
        return state.rho
    rho_a = reduce(state, "A").rho
    if name == "reduced_tensor_reduced":
        return np.kron(rho_a, reduce(state, "B").rho)
    return np.kron(rho_a, ground_state())


def _evaluate_point(spec: SweepSpec, index: int, value: float,
                    rel_tol: float, max_panels: int) -> list[SweepRow]:
    rows = []
    t0 = time.perf_counter()
    try:
        cfg0 = _effective_config(spec, value)
        kern = compute_kernels(cfg0, rel_tol=rel_tol, max_panels=max_panels)
    except Exception as exc:  # noqa: BLE001 - per-point isolation is the contract
        for dyn in spec.dynamics:
            rows.append(SweepRow(index=index, axis=spec.axis, axis_value=value,
                                 dynamics=dyn, parametrization=spec.parametrization,
                                 error=f"kernels: {exc}",
                                 elapsed=time.perf_counter() - t0))
        return rows
    kern_time = time.perf_counter() - t0
    assign = assignment_matrix()
    for dyn in spec.dynamics:
        t1 = time.perf_counter()
        cfg = replace(cfg0, dynamics=dyn)
        row = SweepRow(index=index, axis=spec.axis, axis_value=value, dynamics=dyn,
                       parametrization=spec.parametrization, config=cfg, kernels=kern,
                       spacelike=spacelike_ok(cfg))
        try:
            state = assemble_state(cfg, kern)
            clamp_budget = 100.0 * cfg.lam**4
            if "cf" in spec.modes:
                for variant in spec.comparison_states:
                    model = empirical_model(_variant_matrix(state, variant),
                                            clamp_tol=clamp_budget)
                    result = contextual_fraction(model, assign)
                    row.cf[variant] = result.cf
                    row.lp_status = result.lp_status
                    row.clamp_report = max(row.clamp_report, model.clamp_report)
            if "negativity" in spec.modes:
                row.negativity = wigner_profile(reduce(state, "A")).negativity
                if row.negativity < CF_ZERO_TOLERANCE:
                    row.negativity = 0.0
        except Exception as exc:  # noqa: BLE001
            row.error = str(exc)
        row.elapsed = kern_time / len(spec.dynamics) + (time.perf_counter() - t1)
        rows.append(row)
    return rows


def run_sweep(spec: SweepSpec, rel_tol: float = 1e-10, max_panels: int = 1 << 20,
              workers: int | None = None) -> list[SweepRow]:
    """Evaluate the sweep, in grid order, optionally with a thread pool.

    Worker count comes from the argument, else the CTXHARVEST_WORKERS
    environment variable, else 1.  Output order never depends on scheduling.
    """
    if workers is None:
        workers = int(os.environ.get("CTXHARVEST_WORKERS", "1"))
    points = list(enumerate(spec.grid))
    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_evaluate_point, spec, i, v, rel_tol, max_panels)
                       for i, v in points]
            chunks = [f.result() for f in futures]
    else:
        chunks = [_evaluate_point(spec, i, v, rel_tol, max_panels) for i, v in points]
    rows = [row for chunk in chunks for row in chunk]
    failed = sum(1 for r in rows if r.error)
    if failed > 0.1 * len(rows):
        raise SweepError(f"{failed} of {len(rows)} sweep rows failed")
    return rows


# --- reports ----------------------------------------------------------------


def scaling_check(fixed: DetectorConfig, lambdas: list[float],
                  rel_tol: float = 1e-10) -> dict:
    """Constancy of cf/lambda^2 over a list of couplings.

    Couplings must lie in [1e-4, 1e-2]: below, double precision starts to
    dominate the LP; above, genuine higher-order corrections do.  The kernels
    are computed once and rescaled exactly (they are proportional to
    lambda^2); each coupling still gets its own LP solve.
    """
    for lam in lambdas:
        if not (1e-4 <= lam <= 1e-2):
            raise ValueError(f"coupling {lam} outside the perturbative window [1e-4, 1e-2]")
    if not lambdas:
        raise ValueError("need at least one coupling")
    base = compute_kernels(fixed, rel_tol=rel_tol)
    assign = assignment_matrix()
    cfs = []
    for lam in sorted(lambdas):
        cfg = replace(fixed, lam=lam)
        kern = base.scaled((lam / fixed.lam) ** 2)
        state = assemble_state(cfg, kern)
        model = empirical_model(state)
        cfs.append(contextual_fraction(model, assign).cf)
    ratios = [cf / lam**2 for cf, lam in zip(cfs, sorted(lambdas))]
    if max(cfs) == 0.0:
        return {"lambdas": sorted(lambdas), "cf": cfs, "cf_over_lam2": ratios,
                "max_rel_deviation": 0.0, "passed": True, "note": "zero signal"}
    mean = sum(ratios) / len(ratios)
    dev = max(abs(r - mean) / mean for r in ratios)
    return {"lambdas": sorted(lambdas), "cf": cfs, "cf_over_lam2": ratios,
            "max_rel_deviation": dev, "passed": dev <= 0.01, "note": ""}


def dynamics_comparison(spec: SweepSpec, rel_tol: float = 1e-10,
                        workers: int | None = None) -> dict:
    """Paired sweep of both dynamics with the fraction of points where the
    degenerate qutrit harvests at least as much contextual fraction."""
    if set(spec.dynamics) != {"SU2", "HW"}:
        raise ValueError("dynamics comparison needs both 'SU2' and 'HW' in the spec")
    rows = run_sweep(spec, rel_tol=rel_tol, workers=workers)
    su2 = {r.index: r for r in rows if r.dynamics == "SU2" and not r.error}
    hw = {r.index: r for r in rows if r.dynamics == "HW" and not r.error}
    common = sorted(set(su2) & set(hw))
    if not common:
        raise SweepError("no grid point succeeded for both dynamics")
    wins = sum(1 for i in common
               if hw[i].cf.get("joint", 0.0) >= su2[i].cf.get("joint", 0.0))
    return {
        "rows": rows,
        "n_points": len(common),
        "hw_wins": wins,
        "hw_ge_su2_fraction": wins / len(common),
    }


# --- persistence ------------------------------------------------------------


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def rows_to_csv(rows: list[SweepRow], seed: int | None = None) -> str:
    """Render rows to the versioned CSV schema.

    Deterministic for identical rows: floats use shortest-round-trip repr and
    timings are deliberately excluded (they live in the JSON document).
    """
    lines = [f"# {CSV_SCHEMA_VERSION}"]
    if seed is not None:
        lines.append(f"# seed: {seed} (echoed for provenance; computation is deterministic)")
    lines.append(",".join(CSV_COLUMNS))
    for r in rows:
        k = r.kernels
        c = r.config
        rec = {
            "index": r.index, "axis": r.axis, "axis_value": _fmt(float(r.axis_value)),
            "dynamics": r.dynamics, "parametrization": r.parametrization,
            "lam": _fmt(c.lam if c else None), "omega": _fmt(c.omega if c else None),
            "rtilde": _fmt(c.rtilde if c else None), "dtilde": _fmt(c.dtilde if c else None),
            "spacelike": _fmt(r.spacelike),
            "L": _fmt(k.L if k else None), "Lab": _fmt(k.Lab if k else None),
            "Q_re": _fmt(k.Q.real if k else None), "Q_im": _fmt(k.Q.imag if k else None),
            "Mab_re": _fmt(k.Mab.real if k else None), "Mab_im": _fmt(k.Mab.imag if k else None),
            "V_re": _fmt(k.V.real if k else None), "V_im": _fmt(k.V.imag if k else None),
            "cf_joint": _fmt(r.cf.get("joint")),
            "cf_reduced_tensor_reduced": _fmt(r.cf.get("reduced_tensor_reduced")),
            "cf_reduced_tensor_ground": _fmt(r.cf.get("reduced_tensor_ground")),
            "negativity": _fmt(r.negativity),
            "clamp_report": _fmt(r.clamp_report),
            "lp_status": r.lp_status, "error": r.error.replace(",", ";").replace("\n", " "),
        }
        lines.append(",".join(str(rec[col]) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def rows_to_json(rows: list[SweepRow], seed: int | None = None) -> dict:
    out = {"format": CSV_SCHEMA_VERSION + "+json", "seed": seed, "rows": []}
    for r in rows:
        k = r.kernels
        c = r.config
        out["rows"].append({
            "index": r.index, "axis": r.axis, "axis_value": float(r.axis_value),
            "dynamics": r.dynamics, "parametrization": r.parametrization,
            "config": None if c is None else {
                "lam": c.lam, "omega": c.omega, "rtilde": c.rtilde,
                "dtilde": c.dtilde, "dynamics": c.dynamics},
            "kernels": None if k is None else {
                "L": k.L, "Lab": k.Lab, "Q": [k.Q.real, k.Q.imag],
                "Mab": [k.Mab.real, k.Mab.imag], "V": [k.V.real, k.V.imag],
                "quad_error": list(k.quad_error), "evals": k.evals},
            "spacelike": r.spacelike,
            "cf": {k: float(v) for k, v in r.cf.items()},
            "negativity": None if r.negativity is None else float(r.negativity),
            "clamp_report": r.clamp_report, "lp_status": r.lp_status,
            "error": r.error, "elapsed_seconds": r.elapsed,
        })
    return out
