"""Shared fixtures: benchmark right-hand sides and cached screen solutions."""

import numpy as np
import pytest

from hypersing import (
    RightHandSide,
    ScreenParams,
    screen_problem,
    solve_full,
    solve_spectral,
)


def const_pi_rhs() -> RightHandSide:
    """f' = -pi with antiderivative f = -pi x; solution sqrt(1-x^2) on (-1, 1)."""
    return RightHandSide(
        fprime=lambda x: -np.pi * np.ones_like(np.asarray(x, dtype=float)),
        f=lambda x: -np.pi * np.asarray(x, dtype=float),
        description="constant right-hand side -pi",
    )


def unit_semicircle(x):
    return np.sqrt(np.clip(1.0 - np.asarray(x, dtype=float) ** 2, 0.0, None))


@pytest.fixture(scope="session")
def semicircle_rhs():
    return const_pi_rhs()


@pytest.fixture(scope="session")
def screen_cases():
    """Factory for (problem, collocation solution, spectral oracle) per wavenumber.

    Kernel synthesis dominates the suite runtime, so the three benchmark
    wavenumbers are solved once per session at the reference resolution
    (n=80 collocation, 32-term expansion at 128 quadrature nodes).
    """
    cache: dict[float, tuple] = {}

    def get(k: float):
        if k not in cache:
            problem = screen_problem(ScreenParams(k=k, a=1.0), 80, tol=1e-6)
            solution = solve_full(problem)
            oracle = solve_spectral(
                problem.kernel, problem.rhs, 32, 128, interval=(-1.0, 1.0)
            )
            cache[k] = (problem, solution, oracle)
        return cache[k]

    return get
