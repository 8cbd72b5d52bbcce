"""Collocation solver for the full equation with a regular kernel.

The singular part is handled exactly as in the characteristic solver; the
regular kernel enters through the one-point rectangle rule h*K0(x_i, t_j),
which keeps the scheme identical to the analyzed one.  For convolution
kernels the n x n kernel table collapses to the 2n - 1 distinct
differences of a uniform mesh, which matters when a single kernel value
costs an adaptive oscillatory quadrature.

``fredholm_residual`` measures how well a solution satisfies the
equivalent second-kind equation obtained by inverting the singular part:

    g(x) + int_a^b N1(x, t) g(t) dt = f1(x),

with N1 and f1 given by the weighted principal-value transform of the
kernel antiderivative K1 and of f.  It is a diagnostic only and never
gates the solve path.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from hypersing.analytic import RightHandSide, weighted_pv_integral
from hypersing.characteristic import (
    DiscreteSolution,
    _evaluate_rhs,
    assemble_characteristic,
)
from hypersing.linalg import condition_estimate_1norm, lu_factor
from hypersing.mesh import Mesh
from hypersing.quadrature import gauss_legendre

logger = logging.getLogger(__name__)

_CONDITION_WARN = 1e12


class KernelEvaluationError(RuntimeError):
    """Kernel evaluation failed; carries the offending point pair."""

    def __init__(self, message: str, x: float = np.nan, t: float = np.nan):
        super().__init__(message)
        self.x = x
        self.t = t


@dataclass
class FullProblem:
    """Mesh, right-hand side, and regular kernel of one full equation."""

    mesh: Mesh
    rhs: RightHandSide
    kernel: object

    @property
    def is_complex(self) -> bool:
        probe = np.asarray(self.rhs.fprime(np.array([self.mesh.colloc[0]])))
        return bool(getattr(self.kernel, "is_complex", False) or np.iscomplexobj(probe))


def _kernel_table(problem: FullProblem) -> np.ndarray:
    mesh = problem.mesh
    kernel = problem.kernel
    n = mesh.n
    batch = getattr(kernel, "profile_batch", None)
    try:
        if batch is not None:
            diffs = (np.arange(2 * n - 1) - (n - 1) - 0.5) * mesh.h
            table = np.asarray(batch(diffs))
            idx = np.subtract.outer(np.arange(n), np.arange(n)) + (n - 1)
            values = table[idx]
        else:
            values = np.asarray(
                kernel.eval(mesh.colloc[:, None], mesh.nodes[None, 1:])
            )
    except Exception as exc:  # locate the pair by scalar probing
        for xi in mesh.colloc:
            for tj in mesh.nodes[1:]:
                try:
                    kernel.eval(xi, tj)
                except Exception:
                    raise KernelEvaluationError(
                        f"kernel evaluation failed at (x, t) = ({xi}, {tj}): {exc}",
                        x=float(xi),
                        t=float(tj),
                    ) from exc
        raise KernelEvaluationError(f"kernel evaluation failed: {exc}") from exc
    if values.shape != (n, n):
        raise KernelEvaluationError(
            f"kernel table has shape {values.shape}, expected {(n, n)}"
        )
    bad = ~np.isfinite(values)
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        raise KernelEvaluationError(
            "kernel evaluation produced a nonfinite value",
            x=float(mesh.colloc[i]),
            t=float(mesh.nodes[1 + j]),
        )
    return values


def assemble_full(problem: FullProblem) -> np.ndarray:
    """Collocation matrix of the full equation: characteristic part plus h*K table.

    With an identically zero kernel the result is bit-identical to the
    characteristic matrix.
    """
    matrix = assemble_characteristic(problem.mesh)
    table = _kernel_table(problem)
    if np.iscomplexobj(table):
        return matrix.astype(np.complex128) + problem.mesh.h * table
    return matrix + problem.mesh.h * table


def solve_full(problem: FullProblem) -> DiscreteSolution:
    """Solve the full equation by dense collocation on the problem's mesh.

    The scalar field is complex exactly when the kernel or the right-hand
    side is complex; a real problem never leaves real arithmetic.
    """
    if problem.rhs.f is not None:
        problem.rhs.validate_pair(problem.mesh.a, problem.mesh.b)
    matrix = assemble_full(problem)
    b = _evaluate_rhs(problem.rhs, problem.mesh.colloc)
    if np.iscomplexobj(b) and not np.iscomplexobj(matrix):
        matrix = matrix.astype(np.complex128)
    fact = lu_factor(matrix)
    values = fact.solve(b)
    condition = condition_estimate_1norm(fact)
    if condition > _CONDITION_WARN:
        logger.warning(
            "full collocation matrix is ill conditioned: estimate %.3e", condition
        )
    return DiscreteSolution(mesh=problem.mesh, values=values, condition=condition)


def fredholm_residual(
    problem: FullProblem,
    solution: Union[DiscreteSolution, Callable],
    m: int,
) -> float:
    """Max residual of the equivalent second-kind equation on an 11-point grid.

    ``solution`` may be a DiscreteSolution (its evaluation rule is used)
    or any callable density.  Requires the kernel antiderivative K1 and
    the right-hand-side antiderivative f; both principal-value transforms
    and the final t-integration use ``m`` quadrature nodes.
    """
    kernel = problem.kernel
    k1 = getattr(kernel, "k1", None)
    if k1 is None:
        raise ValueError(
            "kernel lacks the antiderivative K1 needed by the second-kind reduction"
        )
    if problem.rhs.f is None:
        raise ValueError("second-kind reduction requires the antiderivative f")
    if m < 8:
        raise ValueError(f"need at least 8 quadrature nodes, got {m}")
    if not callable(solution):
        raise TypeError("solution must be a DiscreteSolution or a callable")
    mesh = problem.mesh
    a, b = mesh.a, mesh.b
    grid = a + (b - a) * np.arange(1, 12) / 12.0
    t_nodes, t_weights = gauss_legendre(m, a, b)
    g_at_t = np.asarray(solution(t_nodes))
    worst = 0.0
    for x in grid:
        f1 = (
            np.sqrt((x - a) * (b - x))
            / np.pi**2
            * weighted_pv_integral(problem.rhs.f, a, b, m, x)
        )
        n1 = (
            np.sqrt((x - a) * (b - x))
            / np.pi**2
            * np.array(
                [
                    weighted_pv_integral(lambda tau, tq=tq: k1(tau, tq), a, b, m, x)
                    for tq in t_nodes
                ]
            )
        )
        residual = abs(solution(x) + np.sum(t_weights * n1 * g_at_t) - f1)
        worst = max(worst, float(residual))
    return worst
