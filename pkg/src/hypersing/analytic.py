"""Closed-form inversion of the characteristic equation and benchmark solutions.

The characteristic equation int_a^b g(t)/(x-t)^2 dt = f'(x) has a unique
solution bounded on the closed interval,

    g(x) = sqrt((x-a)(b-x)) / pi^2
           * PV int_a^b f(t) / ( sqrt((t-a)(b-t)) (x-t) ) dt,

together with the constant C = (1/pi^2) int_a^b f(t)/sqrt((t-a)(b-t)) dt
of the underlying Cauchy inversion.  Both integrals are evaluated by
Gauss-Chebyshev quadrature of the first kind; the principal value is
handled by the subtraction f(t) -> f(t) - f(x), whose weighted remainder
integrates to zero exactly because PV int w(t)/(x-t) dt vanishes for the
Chebyshev weight.

The module also carries the two closed-form benchmark solutions used to
validate the collocation solvers: the opening of a pressurized straight
crack and the linear-convolution-kernel example on (-1, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from hypersing.quadrature import gauss_chebyshev1

_NODE_CLEARANCE = 1e-12
_PAIR_RTOL = 1e-4


@dataclass
class RightHandSide:
    """The pair (f, f'): f' drives collocation, f drives the inversion.

    ``fprime`` must accept numpy arrays.  ``f`` is optional; operations
    that need the antiderivative raise ValueError when it is missing.
    """

    fprime: Callable[[np.ndarray], np.ndarray]
    f: Optional[Callable[[np.ndarray], np.ndarray]] = None
    description: str = ""

    def validate_pair(self, a: float, b: float, rtol: float = _PAIR_RTOL) -> None:
        """Check that fprime is the derivative of f at 5 interior points."""
        if self.f is None:
            return
        pts = a + (b - a) * np.arange(1, 6) / 6.0
        step = 1e-4 * (b - a)
        fd = (self.f(pts + step) - self.f(pts - step)) / (2.0 * step)
        stated = self.fprime(pts) * np.ones_like(pts)
        scale = max(1.0, float(np.max(np.abs(stated))))
        worst = float(np.max(np.abs(fd - stated)))
        if worst > rtol * scale:
            raise ValueError(
                f"fprime disagrees with the derivative of f: max deviation "
                f"{worst:.3e} exceeds {rtol:g} * {scale:g}"
            )


@dataclass
class InversionResult:
    """Bounded solution g and the constant C of the Cauchy inversion."""

    g: Callable
    C: complex


def invert_characteristic(
    rhs: RightHandSide, a: float, b: float, m: int = 64
) -> InversionResult:
    """Bounded-solution inversion of the characteristic equation.

    ``m`` is the Gauss-Chebyshev node count; 64 gives spectral accuracy for
    smooth f.  The returned g accepts scalars or arrays on [a, b], is
    exactly zero at the endpoints, and shifts to an (m+1)-node rule for
    any evaluation point that lands on a quadrature node.
    """
    if rhs.f is None:
        raise ValueError("inversion requires the antiderivative f on the right-hand side")
    if m < 8:
        raise ValueError(f"need at least 8 quadrature nodes, got {m}")
    rhs.validate_pair(a, b)
    f = rhs.f
    center = 0.5 * (a + b)
    radius = 0.5 * (b - a)

    rules = {}

    def rule(count: int):
        if count not in rules:
            u, w = gauss_chebyshev1(count)
            nodes = center + radius * u
            rules[count] = (nodes, np.asarray(f(nodes)), w)
        return rules[count]

    nodes_m, fvals_m, w_m = rule(m)
    constant = np.sum(fvals_m) * w_m / np.pi**2

    clearance = _NODE_CLEARANCE * (b - a)

    def g(x):
        xs = np.asarray(x, dtype=float)
        scalar = xs.ndim == 0
        xs = np.atleast_1d(xs)
        if np.any((xs < a) | (xs > b)):
            raise ValueError(f"g is defined on [{a}, {b}]")
        out = np.zeros(xs.shape, dtype=fvals_m.dtype)
        interior = (xs > a) & (xs < b)
        if np.any(interior):
            xi = xs[interior]
            nodes, fvals, w = nodes_m, fvals_m, w_m
            if np.min(np.abs(xi[:, None] - nodes)) < clearance:
                nodes, fvals, w = rule(m + 1)
            fx = np.asarray(f(xi))
            pv = w * np.sum((fvals - fx[:, None]) / (xi[:, None] - nodes), axis=1)
            out[interior] = np.sqrt((xi - a) * (b - xi)) / np.pi**2 * pv
        return out[0] if scalar else out

    result = InversionResult(g=g, C=constant)
    _check_endpoint_decay(result, a, b)
    return result


def _check_endpoint_decay(result: InversionResult, a: float, b: float) -> None:
    # Bounded-class solutions must not grow toward either endpoint.
    length = b - a
    slack = 1e-12 * (1.0 + abs(result.C))
    for far, near in ((a + 1e-3 * length, a + 1e-4 * length),
                      (b - 1e-3 * length, b - 1e-4 * length)):
        if abs(result.g(near)) > abs(result.g(far)) + slack:
            raise RuntimeError(
                "inversion result grows toward an endpoint; "
                "the right-hand side is outside the bounded solution class"
            )


def crack_exact(sigma0: float, mu: float, nu: float, a: float, x):
    """Opening of a straight crack of half-length a under constant normal load.

    Returns (sigma0/mu) * (1 - nu) * sqrt(a^2 - x^2); valid for shear
    modulus mu > 0 and Poisson ratio 0 < nu < 1/2.
    """
    if mu <= 0:
        raise ValueError(f"shear modulus must be positive, got {mu}")
    if not (0.0 < nu < 0.5):
        raise ValueError(f"Poisson ratio must lie in (0, 1/2), got {nu}")
    if a <= 0:
        raise ValueError(f"half-length must be positive, got {a}")
    xs = np.asarray(x, dtype=float)
    if np.any(np.abs(xs) > a * (1 + 1e-15)):
        raise ValueError(f"|x| must not exceed the half-length {a}")
    return sigma0 / mu * (1.0 - nu) * np.sqrt(np.clip(a * a - xs * xs, 0.0, None))


def full_example_exact(A: float, x):
    """Exact solution 8*sqrt(1-x^2)*(4+Ax)/(32+A^2) of the linear-kernel benchmark.

    This solves the full equation on (-1, 1) with convolution kernel
    A*(x-t) and constant right-hand side -pi; at A = 0 it reduces to the
    characteristic benchmark sqrt(1-x^2).
    """
    xs = np.asarray(x, dtype=float)
    if np.any(np.abs(xs) > 1.0 + 1e-15):
        raise ValueError("|x| must not exceed 1")
    return 8.0 * np.sqrt(np.clip(1.0 - xs * xs, 0.0, None)) * (4.0 + A * xs) / (32.0 + A * A)


def weighted_pv_integral(fn: Callable, a: float, b: float, m: int, x: float):
    """PV int_a^b fn(t) / ( sqrt((t-a)(b-t)) (x-t) ) dt by subtraction.

    Shared by the inversion above and by the second-kind reduction
    diagnostics; ``fn`` must accept numpy arrays.
    """
    center = 0.5 * (a + b)
    radius = 0.5 * (b - a)
    u, w = gauss_chebyshev1(m)
    nodes = center + radius * u
    if min(abs(x - t) for t in nodes) < _NODE_CLEARANCE * (b - a):
        u, w = gauss_chebyshev1(m + 1)
        nodes = center + radius * u
    fvals = np.asarray(fn(nodes))
    fx = fn(np.array([x]))[0]
    return w * np.sum((fvals - fx) / (x - nodes))
