"""Simulation of 1D diffusion with threshold-switched boundary flux.

Material is pumped in or drained at both ends of the unit interval with
unit-magnitude flux; the sign flips whenever the total mass reaches one of
two thresholds.  The switching times admit a closed form, and the package
pairs a backward-implicit finite-difference simulation with that closed
form: fixed time grids detect the switches with a bounded lag, while
adaptively sized grids reproduce them exactly.
"""

from .analytic import ControlConfig, mass_rate, switch_spacing, switch_time, total_mass
from .controller import (
    THRESHOLD_ATOL,
    ControllerState,
    CrossingDirection,
    SwitchEvent,
    observe,
)
from .quadrature import QuadratureKind, mass
from .runner import (
    AdaptiveGrid,
    ErrorReport,
    EventError,
    FixedGrid,
    OracleMismatch,
    RunConfig,
    Trajectory,
    compare_with_oracle,
    run,
    run_adaptive_grid,
    run_fixed_grid,
)
from .stepper import (
    FieldState,
    FluxSign,
    GridSpec,
    SolverFailure,
    assemble,
    diffusion_number,
    step,
)
from .tridiag import SingularPivot, TridiagonalSystem, solve

__version__ = "0.1.0"

__all__ = [
    "AdaptiveGrid",
    "ControlConfig",
    "ControllerState",
    "CrossingDirection",
    "ErrorReport",
    "EventError",
    "FieldState",
    "FixedGrid",
    "FluxSign",
    "GridSpec",
    "OracleMismatch",
    "QuadratureKind",
    "RunConfig",
    "SingularPivot",
    "SolverFailure",
    "SwitchEvent",
    "THRESHOLD_ATOL",
    "Trajectory",
    "TridiagonalSystem",
    "assemble",
    "compare_with_oracle",
    "diffusion_number",
    "mass",
    "mass_rate",
    "observe",
    "run",
    "run_adaptive_grid",
    "run_fixed_grid",
    "solve",
    "step",
    "switch_spacing",
    "switch_time",
    "total_mass",
]
