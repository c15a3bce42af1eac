"""One backward-implicit time step of u_t = diffusivity * u_xx on [0, 1].

The ends carry unit-magnitude flux conditions discretized first order and
one sided, at the new time level:

    (U_1 - U_0) / dx = -s,      (U_J - U_{J-1}) / dx = s,

with s the flux sign.  Substituting these into the first and last interior
rows leaves a tridiagonal system over U_1..U_{J-1} with interior stencil
(-nu, 1 + 2*nu, -nu), nu = diffusivity * dt / dx^2; the end values are
reconstructed from the flux conditions after the solve.

The interior mass dx * sum(U_1..U_{J-1}) gains exactly
2 * diffusivity * dt * s per step (the stencil telescopes down to the two
boundary slopes), which is what makes threshold hits on specially chosen
time grids exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .tridiag import SingularPivot, TridiagonalSystem, solve


class FluxSign(IntEnum):
    """Sign of the unit boundary flux; +1 pumps material in at both ends."""

    INFLOW = 1
    OUTFLOW = -1

    def flipped(self) -> "FluxSign":
        return FluxSign(-int(self))


class SolverFailure(RuntimeError):
    """The tridiagonal solve failed (unreachable for nu > 0)."""


@dataclass(frozen=True)
class GridSpec:
    """Uniform discretization: ``cells`` intervals of width dx = 1/cells,
    time steps of size dt (``steps`` of them in a fixed-grid run)."""

    cells: int
    steps: int
    dx: float
    dt: float

    def __post_init__(self) -> None:
        if self.cells < 2:
            raise ValueError(f"need at least 2 spatial cells, got {self.cells}")
        if self.steps < 1:
            raise ValueError(f"need at least 1 time step, got {self.steps}")
        if self.dt <= 0.0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not math.isclose(self.dx * self.cells, 1.0, rel_tol=0.0, abs_tol=1e-12):
            raise ValueError(f"dx must equal 1/cells, got dx={self.dx}, cells={self.cells}")

    @classmethod
    def uniform(cls, cells: int, steps: int, horizon: float) -> "GridSpec":
        """Grid with dx = 1/cells and dt = horizon/steps."""
        return cls(cells=cells, steps=steps, dx=1.0 / cells, dt=horizon / steps)

    @property
    def points(self) -> np.ndarray:
        """Node coordinates x_j = j * dx, j = 0..cells."""
        return np.arange(self.cells + 1) * self.dx


@dataclass(frozen=True, eq=False)
class FieldState:
    """Concentration samples U_0..U_J at one time level."""

    values: np.ndarray
    time: float

    @classmethod
    def zero(cls, grid: GridSpec) -> "FieldState":
        return cls(values=np.zeros(grid.cells + 1), time=0.0)


def diffusion_number(grid: GridSpec, diffusivity: float) -> float:
    """nu = diffusivity * dt / dx^2, the implicit-scheme coupling factor."""
    return diffusivity * grid.dt / grid.dx**2


def assemble(
    state: FieldState, flux: FluxSign, grid: GridSpec, diffusivity: float
) -> TridiagonalSystem:
    """Implicit system for the J-1 interior unknowns at the new time level.

    Folding the eliminated end values into the first and last rows drops
    those diagonal entries to 1 + nu and adds nu * dx * s to both ends of
    the right-hand side.
    """
    n = grid.cells + 1
    if len(state.values) != n:
        raise ValueError(f"field has {len(state.values)} values, grid expects {n}")
    nu = diffusion_number(grid, diffusivity)
    unknowns = grid.cells - 1

    diag = np.full(unknowns, 1.0 + 2.0 * nu)
    diag[0] -= nu
    diag[-1] -= nu
    off = np.full(unknowns - 1, -nu)
    rhs = np.array(state.values[1:-1], dtype=float)
    forcing = nu * grid.dx * float(flux)
    rhs[0] += forcing
    rhs[-1] += forcing
    return TridiagonalSystem(sub=off, diag=diag, sup=off.copy(), rhs=rhs)


def step(
    state: FieldState, flux: FluxSign, grid: GridSpec, diffusivity: float
) -> FieldState:
    """Advance the field by one dt under the given flux sign.

    The interior comes from the tridiagonal solve; the end values follow
    from the one-sided flux conditions, so the discrete boundary slopes
    equal -s and +s exactly.
    """
    system = assemble(state, flux, grid, diffusivity)
    try:
        interior = solve(system)
    except SingularPivot as exc:
        raise SolverFailure(f"implicit step failed at t={state.time}: {exc}") from exc

    values = np.empty(grid.cells + 1)
    values[1:-1] = interior
    offset = grid.dx * float(flux)
    values[0] = interior[0] + offset
    values[-1] = interior[-1] + offset
    return FieldState(values=values, time=state.time + grid.dt)
