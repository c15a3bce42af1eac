"""Command line entry point and file I/O for experiment runs.

Configs are flat JSON objects with keys

    m, M          mass thresholds (lower, upper)
    alpha         diffusivity
    horizon       final time
    J             spatial cells
    N             time steps          (fixed mode)
    N0, Nstage    steps per stage     (adaptive mode)
    quadrature    "riemann" | "trapezoid"   (default: trapezoid when fixed,
                                             riemann when adaptive)
    mode          "fixed" | "adaptive"      (default: fixed)
    snapshot_stride  record a field snapshot every this many steps (0 = off)

Outputs per run: switches.csv, mass.csv, snapshots.csv and report.json.
The MASSGATE_LOG environment variable (error | info | debug) controls
diagnostic verbosity on standard error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .analytic import ControlConfig, switch_spacing, switch_time
from .quadrature import QuadratureKind
from .runner import (
    AdaptiveGrid,
    ErrorReport,
    FixedGrid,
    RunConfig,
    Trajectory,
    compare_with_oracle,
    first_stage_dt,
    run,
    with_quadrature,
)
from .stepper import GridSpec

log = logging.getLogger(__name__)

_KEYS = {"m", "M", "alpha", "horizon", "J", "N", "quadrature", "mode", "N0", "Nstage", "snapshot_stride"}
_QUADRATURES = {"riemann", "trapezoid"}
_MODES = {"fixed", "adaptive"}


class ConfigError(ValueError):
    """A config key is missing, unknown, or violates an invariant."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


def _require_number(raw: dict, key: str) -> float:
    if key not in raw:
        raise ConfigError(key, "missing required key")
    value = raw[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(key, f"must be a number, got {value!r}")
    return float(value)


def _require_int(raw: dict, key: str) -> int:
    if key not in raw:
        raise ConfigError(key, "missing required key")
    value = raw[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(key, f"must be an integer, got {value!r}")
    return value


def config_from_mapping(raw: dict) -> RunConfig:
    """Validate a flat config mapping and build the run configuration."""
    for key in raw:
        if key not in _KEYS:
            raise ConfigError(key, "unknown key")

    lower = _require_number(raw, "m")
    upper = _require_number(raw, "M")
    alpha = _require_number(raw, "alpha")
    horizon = _require_number(raw, "horizon")
    cells = _require_int(raw, "J")

    if lower <= 0.0 or lower >= upper:
        raise ConfigError("m", f"thresholds must satisfy 0 < m < M, got m={lower}, M={upper}")
    if alpha <= 0.0:
        raise ConfigError("alpha", f"must be positive, got {alpha}")
    if horizon <= 0.0:
        raise ConfigError("horizon", f"must be positive, got {horizon}")
    if cells < 2:
        raise ConfigError("J", f"must be at least 2, got {cells}")

    mode_name = raw.get("mode", "fixed")
    if mode_name not in _MODES:
        raise ConfigError("mode", f"must be one of {sorted(_MODES)}, got {mode_name!r}")

    quad_name = raw.get("quadrature", "trapezoid" if mode_name == "fixed" else "riemann")
    if quad_name not in _QUADRATURES:
        raise ConfigError("quadrature", f"must be one of {sorted(_QUADRATURES)}, got {quad_name!r}")

    stride = raw.get("snapshot_stride", 0)
    if isinstance(stride, bool) or not isinstance(stride, int):
        raise ConfigError("snapshot_stride", f"must be an integer, got {stride!r}")
    if stride < 0:
        raise ConfigError("snapshot_stride", f"must be >= 0, got {stride}")

    control = ControlConfig(lower=lower, upper=upper, diffusivity=alpha, horizon=horizon)

    if mode_name == "fixed":
        for key in ("N0", "Nstage"):
            if key in raw:
                raise ConfigError(key, "only valid in adaptive mode")
        steps = _require_int(raw, "N")
        if steps < 1:
            raise ConfigError("N", f"must be at least 1, got {steps}")
        grid = GridSpec.uniform(cells=cells, steps=steps, horizon=horizon)
        mode: FixedGrid | AdaptiveGrid = FixedGrid()
    else:
        if "N" in raw:
            raise ConfigError("N", "only valid in fixed mode")
        if quad_name != "riemann":
            raise ConfigError("quadrature", "adaptive mode requires riemann")
        n0 = _require_int(raw, "N0")
        nstage = _require_int(raw, "Nstage")
        if n0 < 1:
            raise ConfigError("N0", f"must be at least 1, got {n0}")
        if nstage < 1:
            raise ConfigError("Nstage", f"must be at least 1, got {nstage}")
        mode = AdaptiveGrid(first_stage_steps=n0, stage_steps=nstage)
        # grid.steps/dt describe the first stage; later stages derive their own
        grid = GridSpec(cells=cells, steps=n0, dx=1.0 / cells, dt=first_stage_dt(control, mode))

    quad = QuadratureKind.RIEMANN_INTERIOR if quad_name == "riemann" else QuadratureKind.TRAPEZOID
    return RunConfig(control=control, grid=grid, quadrature=quad, mode=mode, snapshot_stride=stride)


def parse_config(text: str) -> RunConfig:
    """Parse a JSON config document into a run configuration."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config", "must be a JSON object")
    return config_from_mapping(raw)


def config_to_mapping(run_config: RunConfig) -> dict:
    """Inverse of config_from_mapping (round-trips exactly)."""
    control = run_config.control
    raw: dict = {
        "m": control.lower,
        "M": control.upper,
        "alpha": control.diffusivity,
        "horizon": control.horizon,
        "J": run_config.grid.cells,
        "quadrature": run_config.quadrature.value,
        "snapshot_stride": run_config.snapshot_stride,
    }
    if isinstance(run_config.mode, AdaptiveGrid):
        raw["mode"] = "adaptive"
        raw["N0"] = run_config.mode.first_stage_steps
        raw["Nstage"] = run_config.mode.stage_steps
    else:
        raw["mode"] = "fixed"
        raw["N"] = run_config.grid.steps
    return raw


def serialize_config(run_config: RunConfig) -> str:
    return json.dumps(config_to_mapping(run_config), indent=2) + "\n"


def _fmt(value: float) -> str:
    return f"{value:.10f}"


def _report_payload(report: ErrorReport) -> dict:
    return {
        "events": [
            {
                "k": row.index,
                "T_k": row.computed_time,
                "t_k": row.oracle_time,
                "err": row.error,
                "bound": row.bound,
                "within_bound": row.within_bound,
            }
            for row in report.events
        ],
        "summary": {
            "max_abs_error": report.max_abs_error,
            "mean_spacing": report.mean_spacing,
        },
    }


def emit_outputs(traj: Trajectory, report: ErrorReport, out_dir: Path | str) -> list[Path]:
    """Write switches.csv, mass.csv, snapshots.csv and report.json.

    Times, masses and field values are printed with 10 decimal places;
    rows ascend in time.  Raises OSError on unwritable paths.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    path = out / "switches.csv"
    with path.open("w", encoding="utf-8") as f:
        f.write("k,T_k,t_k,err,bound,within_bound\n")
        for row in report.events:
            f.write(
                f"{row.index},{_fmt(row.computed_time)},{_fmt(row.oracle_time)},"
                f"{_fmt(row.error)},{row.bound},{'true' if row.within_bound else 'false'}\n"
            )
    written.append(path)

    path = out / "mass.csv"
    with path.open("w", encoding="utf-8") as f:
        f.write("time,mass,flux\n")
        for t, mu, s in zip(traj.times, traj.masses, traj.fluxes):
            f.write(f"{_fmt(t)},{_fmt(mu)},{s:d}\n")
    written.append(path)

    path = out / "snapshots.csv"
    with path.open("w", encoding="utf-8") as f:
        f.write("time,x,u\n")
        for snap in traj.snapshots:
            cells = len(snap.values) - 1
            for j, u in enumerate(snap.values):
                f.write(f"{_fmt(snap.time)},{_fmt(j / cells)},{_fmt(u)}\n")
    written.append(path)

    path = out / "report.json"
    with path.open("w", encoding="utf-8") as f:
        json.dump(_report_payload(report), f, indent=2)
        f.write("\n")
    written.append(path)

    log.info("wrote %s", ", ".join(str(p) for p in written))
    return written


def _load_mapping(config_path: str, overrides: list[str] | None) -> dict:
    try:
        text = Path(config_path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("config", f"cannot read {config_path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config", "must be a JSON object")
    for item in overrides or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(key or item, "override must look like key=value")
        try:
            raw[key] = json.loads(value)
        except json.JSONDecodeError:
            raw[key] = value
    return raw


def _cmd_run(args: argparse.Namespace) -> int:
    run_config = config_from_mapping(_load_mapping(args.config, args.set))
    traj = run(run_config)
    report = compare_with_oracle(traj, run_config)
    emit_outputs(traj, report, args.out)
    print(f"{len(traj.events)} switches detected; outputs in {args.out}")
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    run_config = config_from_mapping(_load_mapping(args.config, args.set))
    control = run_config.control
    spacing = switch_spacing(control)
    print(f"switch spacing: {_fmt(spacing)}")
    print("k,t_k")
    k = 1
    while switch_time(k, control) <= control.horizon:
        print(f"{k},{_fmt(switch_time(k, control))}")
        k += 1
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    run_config = config_from_mapping(_load_mapping(args.config, args.set))
    if not isinstance(run_config.mode, FixedGrid):
        raise ConfigError("mode", "compare runs both quadratures and requires fixed mode")
    out = Path(args.out)
    payload = {}
    for kind in (QuadratureKind.RIEMANN_INTERIOR, QuadratureKind.TRAPEZOID):
        variant = with_quadrature(run_config, kind)
        traj = run(variant)
        report = compare_with_oracle(traj, variant)
        emit_outputs(traj, report, out / kind.value)
        payload[kind.value] = _report_payload(report)
    path = out / "compare.json"
    with path.open("w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")
    print(f"side-by-side reports in {out}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    raw = _load_mapping(args.config, args.set)
    try:
        step_counts = [int(part) for part in args.n_list.split(",") if part]
    except ValueError as exc:
        raise ConfigError("n-list", f"must be comma-separated integers: {exc}") from exc
    if not step_counts:
        raise ConfigError("n-list", "must list at least one step count")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for steps in step_counts:
        raw_n = dict(raw)
        raw_n["N"] = steps
        run_config = config_from_mapping(raw_n)
        if not isinstance(run_config.mode, FixedGrid):
            raise ConfigError("mode", "sweep varies N and requires fixed mode")
        traj = run(run_config)
        report = compare_with_oracle(traj, run_config)
        rows.append(
            {
                "N": steps,
                "dt": run_config.grid.dt,
                "events": len(report.events),
                "max_abs_err": report.max_abs_error,
                "all_within_bound": all(r.within_bound for r in report.events),
            }
        )

    path = out / "sweep.csv"
    with path.open("w", encoding="utf-8") as f:
        f.write("N,dt,events,max_abs_err,all_within_bound\n")
        for row in rows:
            err = "" if row["max_abs_err"] is None else _fmt(row["max_abs_err"])
            within = "true" if row["all_within_bound"] else "false"
            f.write(f"{row['N']},{row['dt']},{row['events']},{err},{within}\n")
    with (out / "sweep.json").open("w", encoding="utf-8") as f:
        json.dump(rows, f, indent=2)
        f.write("\n")
    print(f"sweep over N={step_counts} written to {out}")
    return 0


def _log_level(name: str) -> int:
    return {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
        name.lower(), logging.ERROR
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="massgate",
        description="Simulate 1D diffusion with threshold-switched boundary flux.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_out: bool = True) -> None:
        p.add_argument("--config", required=True, help="path to a JSON config file")
        if with_out:
            p.add_argument("--out", required=True, help="output directory")
        p.add_argument(
            "--set",
            action="append",
            metavar="KEY=VALUE",
            help="override a config key (repeatable)",
        )

    p_run = sub.add_parser("run", help="run one experiment and emit its outputs")
    add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_oracle = sub.add_parser("oracle", help="print the closed-form switch times")
    add_common(p_oracle, with_out=False)
    p_oracle.set_defaults(func=_cmd_oracle)

    p_compare = sub.add_parser("compare", help="run both quadratures side by side")
    add_common(p_compare)
    p_compare.set_defaults(func=_cmd_compare)

    p_sweep = sub.add_parser("sweep", help="vary N and tabulate switch-time errors")
    add_common(p_sweep)
    p_sweep.add_argument("--n-list", required=True, help="comma-separated step counts")
    p_sweep.set_defaults(func=_cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        stream=sys.stderr,
        level=_log_level(os.environ.get("MASSGATE_LOG", "error")),
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"massgate: config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"massgate: io error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
