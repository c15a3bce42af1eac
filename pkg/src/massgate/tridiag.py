"""Thomas algorithm for tridiagonal linear systems.

Solves A x = rhs where A is laid out as

    [d0 u0                  ] [x0]     [r0]
    [l0 d1 u1               ] [x1]     [r1]
    [   l1 d2 u2            ] [x2]  =  [r2]
    [        ...            ]  ..       ..
    [           l_{n-2} d_{n-1}] [x_{n-1}] [r_{n-1}]

with a single forward sweep and back substitution, no pivoting.  The
implicit diffusion step assembles matrices with 1 + 2*nu on the diagonal
and -nu off it (nu > 0), which are strictly diagonally dominant, so
pivoting is unnecessary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Elimination aborts once a pivot drops below this magnitude.  Engineering
# guard against ill-conditioned input; the diffusion matrices stay far away.
PIVOT_FLOOR = 1e-14


class SingularPivot(ArithmeticError):
    """Forward elimination hit a pivot below ``PIVOT_FLOOR``."""


@dataclass(frozen=True)
class TridiagonalSystem:
    """One tridiagonal system of order n >= 1.

    ``diag`` and ``rhs`` hold n entries, ``sub`` and ``sup`` the n - 1
    off-diagonal entries.
    """

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    rhs: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.diag)
        if n < 1:
            raise ValueError("system order must be at least 1")
        if len(self.rhs) != n:
            raise ValueError(f"rhs has {len(self.rhs)} entries, expected {n}")
        if len(self.sub) != n - 1 or len(self.sup) != n - 1:
            raise ValueError(
                f"off-diagonals must have {n - 1} entries, "
                f"got sub={len(self.sub)}, sup={len(self.sup)}"
            )

    @property
    def order(self) -> int:
        return len(self.diag)


def solve(system: TridiagonalSystem) -> np.ndarray:
    """Solve the system; returns the solution vector of length n.

    Raises SingularPivot if any pivot falls below ``PIVOT_FLOOR`` during
    elimination.  For diagonally dominant input the residual max-norm is
    bounded by 1e-10 * (1 + max|rhs|).
    """
    n = system.order
    diag = np.array(system.diag, dtype=float)
    rhs = np.array(system.rhs, dtype=float)
    sub = np.asarray(system.sub, dtype=float)
    sup = np.asarray(system.sup, dtype=float)

    for i in range(1, n):
        pivot = diag[i - 1]
        if abs(pivot) < PIVOT_FLOOR:
            raise SingularPivot(f"pivot {pivot:.3e} at row {i - 1}")
        w = sub[i - 1] / pivot
        diag[i] -= w * sup[i - 1]
        rhs[i] -= w * rhs[i - 1]
    if abs(diag[-1]) < PIVOT_FLOOR:
        raise SingularPivot(f"pivot {diag[-1]:.3e} at row {n - 1}")

    x = np.empty(n)
    x[-1] = rhs[-1] / diag[-1]
    for i in range(n - 2, -1, -1):
        x[i] = (rhs[i] - sup[i] * x[i + 1]) / diag[i]
    return x
