"""Full controlled simulations on the two kinds of time grid.

Fixed grid: ``steps`` uniform steps of dt = horizon/steps; crossings land
on the grid with a delay below one step per already-detected switch.

Adaptive grid: the first stage uses dt sized so the interior-Riemann mass
lands exactly on the upper threshold after ``first_stage_steps`` steps,
and every later stage uses dt sized so it lands exactly on the opposite
threshold after ``stage_steps`` steps.  The detected switch times then
coincide with the closed-form ones.

``compare_with_oracle`` pairs each detected switch against the closed
form and checks the per-switch error bound 0 <= error < k * dt.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from . import analytic
from .analytic import ControlConfig
from .controller import ControllerState, SwitchEvent, observe
from .quadrature import QuadratureKind, mass
from .stepper import FieldState, GridSpec, step

log = logging.getLogger(__name__)

# Lower-bound slack when checking 0 <= error: crossings that are exact in
# real arithmetic land within accumulated roundoff of the oracle time.
ERROR_ATOL = 1e-9


@dataclass(frozen=True)
class FixedGrid:
    """Uniform time grid over the whole run."""


@dataclass(frozen=True)
class AdaptiveGrid:
    """Stage-sized time steps that hit the thresholds exactly."""

    first_stage_steps: int
    stage_steps: int

    def __post_init__(self) -> None:
        if self.first_stage_steps < 1:
            raise ValueError(f"first_stage_steps must be >= 1, got {self.first_stage_steps}")
        if self.stage_steps < 1:
            raise ValueError(f"stage_steps must be >= 1, got {self.stage_steps}")


TimeGridMode = FixedGrid | AdaptiveGrid


@dataclass(frozen=True)
class RunConfig:
    """Everything one simulation needs."""

    control: ControlConfig
    grid: GridSpec
    quadrature: QuadratureKind
    mode: TimeGridMode
    snapshot_stride: int = 0

    def __post_init__(self) -> None:
        if self.snapshot_stride < 0:
            raise ValueError(f"snapshot_stride must be >= 0, got {self.snapshot_stride}")


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Per-step record of one run: times, masses and the flux sign used
    for each step, optional field snapshots, and the detected switches."""

    times: np.ndarray
    masses: np.ndarray
    fluxes: np.ndarray
    snapshots: tuple[FieldState, ...]
    events: tuple[SwitchEvent, ...]

    def __post_init__(self) -> None:
        if len(self.times) and not np.all(np.diff(self.times) > 0.0):
            raise ValueError("sample times must be strictly increasing")
        if not np.all(np.isfinite(self.masses)):
            raise ValueError("mass samples must be finite")


@dataclass(frozen=True)
class EventError:
    """One detected switch paired with its closed-form counterpart."""

    index: int
    computed_time: float
    oracle_time: float
    error: float
    bound: float
    within_bound: bool


@dataclass(frozen=True)
class ErrorReport:
    events: tuple[EventError, ...]
    max_abs_error: float | None
    mean_spacing: float | None


class OracleMismatch(RuntimeError):
    """The run detected a switch the closed form says cannot exist yet."""


def first_stage_dt(control: ControlConfig, mode: AdaptiveGrid) -> float:
    """dt of the climb from zero mass to the upper threshold."""
    return control.upper / (analytic.mass_rate(control) * mode.first_stage_steps)


def later_stage_dt(control: ControlConfig, mode: AdaptiveGrid) -> float:
    """dt of every stage between the two thresholds."""
    span = control.upper - control.lower
    return span / (analytic.mass_rate(control) * mode.stage_steps)


def run_fixed_grid(run: RunConfig) -> Trajectory:
    """Execute ``grid.steps`` uniform steps from the zero field.

    After each step the mass is evaluated with the configured quadrature
    and fed to the relay; the resulting flip, if any, takes effect on the
    next step.  Deterministic: identical configs give identical output.
    """
    if not isinstance(run.mode, FixedGrid):
        raise ValueError(f"run_fixed_grid needs a FixedGrid mode, got {run.mode!r}")
    grid = run.grid
    control = run.control

    state = FieldState.zero(grid)
    ctrl = ControllerState()
    flux = ctrl.phase
    times = np.empty(grid.steps)
    masses = np.empty(grid.steps)
    fluxes = np.empty(grid.steps, dtype=int)
    snapshots: list[FieldState] = []

    for n in range(1, grid.steps + 1):
        state = step(state, flux, grid, control.diffusivity)
        mu = mass(state, grid, run.quadrature)
        times[n - 1] = state.time
        masses[n - 1] = mu
        fluxes[n - 1] = int(flux)
        if run.snapshot_stride and n % run.snapshot_stride == 0:
            snapshots.append(state)
        ctrl, flux = observe(ctrl, mu, state.time, control)

    log.info("fixed-grid run: %d steps, %d switches", grid.steps, len(ctrl.events))
    return Trajectory(
        times=times,
        masses=masses,
        fluxes=fluxes,
        snapshots=tuple(snapshots),
        events=ctrl.events,
    )


def run_adaptive_grid(run: RunConfig) -> Trajectory:
    """Step with stage-sized dt until the horizon is reached.

    Requires the interior Riemann quadrature; only for it does the mass
    advance by exactly 2 * diffusivity * dt per step, which is what makes
    the threshold hits at stage ends exact.  dt switches from the first
    stage's value to the later stages' value once the first switch fires.
    """
    if not isinstance(run.mode, AdaptiveGrid):
        raise ValueError(f"run_adaptive_grid needs an AdaptiveGrid mode, got {run.mode!r}")
    if run.quadrature is not QuadratureKind.RIEMANN_INTERIOR:
        raise ValueError("adaptive grids require the interior Riemann quadrature")
    control = run.control
    cells = run.grid.cells
    dx = 1.0 / cells
    grid_first = GridSpec(cells, run.mode.first_stage_steps, dx, first_stage_dt(control, run.mode))
    grid_later = GridSpec(cells, run.mode.stage_steps, dx, later_stage_dt(control, run.mode))

    state = FieldState.zero(grid_first)
    ctrl = ControllerState()
    flux = ctrl.phase
    times: list[float] = []
    masses: list[float] = []
    fluxes: list[int] = []
    snapshots: list[FieldState] = []

    n = 0
    while state.time < control.horizon:
        grid = grid_first if not ctrl.events else grid_later
        state = step(state, flux, grid, control.diffusivity)
        mu = mass(state, grid, run.quadrature)
        n += 1
        times.append(state.time)
        masses.append(mu)
        fluxes.append(int(flux))
        if run.snapshot_stride and n % run.snapshot_stride == 0:
            snapshots.append(state)
        ctrl, flux = observe(ctrl, mu, state.time, control)

    log.info("adaptive run: %d steps, %d switches", n, len(ctrl.events))
    return Trajectory(
        times=np.array(times),
        masses=np.array(masses),
        fluxes=np.array(fluxes, dtype=int),
        snapshots=tuple(snapshots),
        events=ctrl.events,
    )


def run(config: RunConfig) -> Trajectory:
    """Dispatch on the time-grid mode."""
    if isinstance(config.mode, AdaptiveGrid):
        return run_adaptive_grid(config)
    return run_fixed_grid(config)


def _event_dt(run_config: RunConfig, index: int) -> float:
    """Time resolution in effect when switch ``index`` was detected."""
    if isinstance(run_config.mode, FixedGrid):
        return run_config.grid.dt
    if index == 1:
        return first_stage_dt(run_config.control, run_config.mode)
    return later_stage_dt(run_config.control, run_config.mode)


def compare_with_oracle(traj: Trajectory, run_config: RunConfig) -> ErrorReport:
    """Pair each detected switch with its closed-form time.

    A switch is within bound when 0 <= error < k * dt (lower side slack
    ``ERROR_ATOL`` for hits that are exact in real arithmetic).  Raises
    OracleMismatch if a detected switch has no closed-form counterpart
    within horizon + k * dt.
    """
    control = run_config.control
    rows = []
    for ev in traj.events:
        oracle_time = analytic.switch_time(ev.index, control)
        dt = _event_dt(run_config, ev.index)
        bound = ev.index * dt
        if oracle_time > control.horizon + bound:
            raise OracleMismatch(
                f"switch {ev.index} detected at t={ev.time} but the closed form "
                f"places it at t={oracle_time}, beyond horizon {control.horizon} "
                f"plus slack {bound}"
            )
        error = ev.time - oracle_time
        rows.append(
            EventError(
                index=ev.index,
                computed_time=ev.time,
                oracle_time=oracle_time,
                error=error,
                bound=bound,
                within_bound=bool(-ERROR_ATOL <= error < bound),
            )
        )

    event_times = [ev.time for ev in traj.events]
    max_abs_error = max(abs(r.error) for r in rows) if rows else None
    mean_spacing = float(np.mean(np.diff(event_times))) if len(event_times) >= 2 else None
    return ErrorReport(events=tuple(rows), max_abs_error=max_abs_error, mean_spacing=mean_spacing)


def with_quadrature(run_config: RunConfig, kind: QuadratureKind) -> RunConfig:
    """Copy of the config with a different mass quadrature."""
    return replace(run_config, quadrature=kind)
