"""Command-line driver: single-point evaluations and figure-family sweeps.

Configuration files are TOML with three tables:

  [detector]   lam, omega, rtilde, dtilde, dynamics
  [sweep]      axis, grid (list or {start, stop, num}), dynamics, modes,
               comparison_states, parametrization
  [numerics]   rel_tol, max_panels, workers

All physical values are dimensionless: in units of the switching duration T
under fixed_RT, or of the inverse gap under fixed_ROmega.
"""

from __future__ import annotations

import json
import sys

import click
import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from .contextuality import contextual_fraction, empirical_model
from .kernels import DetectorConfig, compute_kernels
from .states import assemble_state, reduce, spacelike_ok, state_from_json, state_to_json
from .sweep import (
    SweepError,
    SweepSpec,
    dynamics_comparison,
    rows_to_csv,
    rows_to_json,
    run_sweep,
    scaling_check,
)
from .wigner import reduced_inequalities, wigner_profile


def _detector_from_table(tab: dict, dynamics: str | None = None) -> DetectorConfig:
    return DetectorConfig(
        lam=float(tab["lam"]), omega=float(tab["omega"]),
        rtilde=float(tab["rtilde"]), dtilde=float(tab["dtilde"]),
        dynamics=dynamics or tab.get("dynamics", "SU2"),
    )


def _grid_from_config(g) -> tuple[float, ...]:
    if isinstance(g, dict):
        return tuple(np.linspace(float(g["start"]), float(g["stop"]), int(g["num"])))
    return tuple(float(x) for x in g)


def _load_config(path: str) -> dict:
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _spec_from_config(doc: dict) -> tuple[SweepSpec, dict]:
    det = doc.get("detector")
    swp = doc.get("sweep")
    if det is None or swp is None:
        raise click.ClickException("config needs [detector] and [sweep] tables")
    fixed = _detector_from_table(det)
    spec = SweepSpec(
        axis=swp["axis"],
        grid=_grid_from_config(swp["grid"]),
        fixed=fixed,
        dynamics=tuple(swp.get("dynamics", [fixed.dynamics])),
        modes=tuple(swp.get("modes", ["cf", "negativity"])),
        comparison_states=tuple(swp.get("comparison_states", ["joint"])),
        parametrization=swp.get("parametrization", "fixed_RT"),
    )
    return spec, doc.get("numerics", {})


def _read_state(source: str):
    text = sys.stdin.read() if source == "-" else open(source, encoding="utf-8").read()
    return state_from_json(text)


_detector_options = [
    click.option("--lam", type=float, required=True, help="coupling constant"),
    click.option("--omega", type=float, required=True, help="gap times duration, Omega*T"),
    click.option("--rtilde", type=float, required=True, help="smearing radius over duration, R/T"),
    click.option("--dtilde", type=float, required=True, help="separation over duration, d/T"),
]


def _with_detector_options(fn):
    for opt in reversed(_detector_options):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """Contextuality and Wigner-negativity harvesting by qutrit detector pairs."""


@main.command("kernels")
@_with_detector_options
@click.option("--rel-tol", type=float, default=1e-10, show_default=True)
def kernels_cmd(lam, omega, rtilde, dtilde, rel_tol):
    """Print the five interaction integrals for one configuration as JSON."""
    cfg = DetectorConfig(lam=lam, omega=omega, rtilde=rtilde, dtilde=dtilde)
    k = compute_kernels(cfg, rel_tol=rel_tol)
    click.echo(json.dumps({
        "L": k.L, "Lab": k.Lab, "Q": [k.Q.real, k.Q.imag],
        "Mab": [k.Mab.real, k.Mab.imag], "V": [k.V.real, k.V.imag],
        "quad_error": list(k.quad_error), "evals": k.evals,
        "spacelike": spacelike_ok(cfg),
    }, indent=2))


@main.command("state")
@_with_detector_options
@click.option("--dynamics", type=click.Choice(["SU2", "HW"]), default="SU2", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="write the state document here instead of stdout")
def state_cmd(lam, omega, rtilde, dtilde, dynamics, out):
    """Assemble the joint detector state and emit it as a JSON document."""
    cfg = DetectorConfig(lam=lam, omega=omega, rtilde=rtilde, dtilde=dtilde, dynamics=dynamics)
    state = assemble_state(cfg, compute_kernels(cfg))
    text = state_to_json(state)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@main.command("cf")
@click.argument("state_file", type=str)
def cf_cmd(state_file):
    """Contextual fraction of a serialized state ('-' reads stdin)."""
    state = _read_state(state_file)
    model = empirical_model(state)
    result = contextual_fraction(model)
    click.echo(json.dumps({
        "cf": result.cf, "lp_status": result.lp_status,
        "clamp_report": model.clamp_report,
    }, indent=2))


@main.command("wigner")
@click.argument("state_file", type=str)
@click.option("--which", type=click.Choice(["A", "B"]), default="A", show_default=True)
def wigner_cmd(state_file, which):
    """Wigner facet profile of one reduced detector of a serialized state."""
    state = _read_state(state_file)
    profile = wigner_profile(reduce(state, which))
    doc = {
        "which": which,
        "values": [[profile.values[x, y] for y in range(3)] for x in range(3)],
        "negativity": profile.negativity,
        "violated_facets": [list(f) for f in profile.violated_facets],
    }
    if state.kernels is not None:
        rep = reduced_inequalities(state.kernels, state.dynamics)
        doc["inequality_slacks"] = list(rep.slacks)
        doc["inequality_violated"] = list(rep.violated)
    click.echo(json.dumps(doc, indent=2))


@main.command("sweep")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="TOML sweep configuration")
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="CSV output path")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None,
              help="also write a JSON document (includes timings)")
@click.option("--workers", type=int, default=None,
              help="thread count (default: CTXHARVEST_WORKERS or 1)")
@click.option("--seed", type=int, default=None,
              help="echoed into the output for provenance; computation is deterministic")
def sweep_cmd(config_path, out, json_path, workers, seed):
    """Run a parameter sweep and persist rows as CSV (and optionally JSON)."""
    spec, numerics = _spec_from_config(_load_config(config_path))
    try:
        rows = run_sweep(
            spec,
            rel_tol=float(numerics.get("rel_tol", 1e-10)),
            max_panels=int(numerics.get("max_panels", 1 << 20)),
            workers=workers if workers is not None else numerics.get("workers"),
        )
    except SweepError as exc:
        click.echo(f"sweep failed: {exc}", err=True)
        sys.exit(2)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(rows_to_csv(rows, seed=seed))
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump(rows_to_json(rows, seed=seed), fh, indent=2)
    n_err = sum(1 for r in rows if r.error)
    click.echo(f"wrote {len(rows)} rows to {out}" + (f" ({n_err} failed)" if n_err else ""))


@main.command("scaling-check")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              required=True, help="TOML file with a [detector] table")
@click.option("--lambdas", default="1e-4,1e-3,1e-2", show_default=True,
              help="comma-separated couplings to compare")
def scaling_cmd(config_path, lambdas):
    """Check that cf/lambda^2 is constant across couplings (1% budget)."""
    doc = _load_config(config_path)
    fixed = _detector_from_table(doc["detector"])
    lams = [float(x) for x in lambdas.split(",") if x.strip()]
    report = scaling_check(fixed, lams)
    click.echo(json.dumps(report, indent=2))


@main.command("compare-dynamics")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="also write the paired rows as CSV")
@click.option("--seed", type=int, default=None)
def compare_cmd(config_path, out, seed):
    """Sweep both dynamics and report how often the degenerate qutrit wins."""
    spec, numerics = _spec_from_config(_load_config(config_path))
    if set(spec.dynamics) != {"SU2", "HW"}:
        raise click.ClickException("config must list dynamics = ['SU2', 'HW']")
    try:
        report = dynamics_comparison(spec, rel_tol=float(numerics.get("rel_tol", 1e-10)),
                                     workers=numerics.get("workers"))
    except SweepError as exc:
        click.echo(f"comparison failed: {exc}", err=True)
        sys.exit(2)
    rows = report.pop("rows")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(rows_to_csv(rows, seed=seed))
    click.echo(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
