"""Regular kernels and packaged problems.

A convolution kernel K0(x - t) pairs with the 1/(x-t)^2 singular part
through its Fourier symbol: when the symbol behaves like A|s| plus an
integrable remainder L0, the transform of A|s| produces -2A/x^2 and the
transform of L0 produces the regular part

    K0(x) = (1/pi) int_0^inf L0(s) cos(s x) ds.

The module builds such kernels three ways (closed form, from a symbol by
quadrature, and the rigid-screen kernel with its radiation branch), and
assembles the two packaged problems in the canonical normalization where
the singular part carries unit coefficient.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from hypersing.analytic import RightHandSide
from hypersing.fullsolver import FullProblem
from hypersing.mesh import make_mesh
from hypersing.quadrature import adaptive_gauss_batch
from hypersing.special import cosine_integral

_BATCH_CHUNK = 4096


class TailTruncationError(ValueError):
    """Raised when the truncated frequency tail cannot meet the tolerance."""


class SymbolDecayError(ValueError):
    """Raised when a symbol's remainder does not decay at its stated rate."""


@dataclass
class RegularKernel:
    """Smooth kernel K0 with optional convolution and antiderivative structure.

    ``eval(x, t)`` must broadcast over numpy arrays.  Convolution kernels
    also carry ``profile`` (K0 of the single variable x - t) and
    ``profile_batch`` for evaluating many differences at once; solvers use
    those to collapse the n x n kernel table to the 2n - 1 distinct
    differences a uniform mesh produces.  ``k1``, when present, is an
    antiderivative of the kernel in its first argument.
    """

    eval: Callable
    kind: str
    k1: Optional[Callable] = None
    profile: Optional[Callable] = None
    profile_batch: Optional[Callable] = None
    metadata: str = ""
    is_complex: bool = False


@dataclass
class FourierSymbol:
    """Symbol L(s) = A|s| + L0(s) with remainder decaying like s^(-1-delta).

    ``validate`` samples the splitting identity and the decay bound;
    kernel construction refuses symbols that fail either check.
    """

    L: Callable[[np.ndarray], np.ndarray]
    A: float
    L0: Callable[[np.ndarray], np.ndarray]
    decay: float

    def validate(self) -> None:
        if self.decay <= 0:
            raise SymbolDecayError(f"decay exponent must be positive, got {self.decay}")
        s = np.array([0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1000.0, 10000.0])
        split = np.abs(np.asarray(self.L(s)) - self.A * np.abs(s) - np.asarray(self.L0(s)))
        scale = 1.0 + np.abs(np.asarray(self.L0(s)))
        if np.any(split > 1e-10 * scale):
            raise SymbolDecayError("L(s) does not equal A|s| + L0(s) at sampled points")
        tail = np.geomspace(10.0, 1e4, 25)
        bound = np.abs(np.asarray(self.L0(tail))) * tail ** (1.0 + self.decay)
        early = float(np.max(bound[: len(bound) // 2]))
        late = float(np.max(bound[len(bound) // 2 :]))
        if late > 3.0 * early + 1e-12:
            raise SymbolDecayError(
                f"|L0(s)| s^(1+delta) grows from {early:.3e} to {late:.3e}; "
                "the stated decay rate is too optimistic"
            )

    def remainder_bound(self) -> float:
        """Max of |L0(s)| s^(1+delta) over the sampled high-frequency range."""
        tail = np.geomspace(10.0, 1e4, 25)
        return float(np.max(np.abs(np.asarray(self.L0(tail))) * tail ** (1.0 + self.decay)))


@dataclass
class CrackParams:
    """Pressurized straight crack: load sigma0, shear modulus mu, Poisson nu, half-length a."""

    sigma0: float
    mu: float
    nu: float
    a: float

    def __post_init__(self) -> None:
        if self.mu <= 0:
            raise ValueError(f"shear modulus must be positive, got {self.mu}")
        if not (0.0 < self.nu < 0.5):
            raise ValueError(f"Poisson ratio must lie in (0, 1/2), got {self.nu}")
        if self.a <= 0:
            raise ValueError(f"half-length must be positive, got {self.a}")


@dataclass
class ScreenParams:
    """Rigid screen under a normally incident plane wave: wavenumber k, half-length a."""

    k: float
    a: float

    def __post_init__(self) -> None:
        if self.k <= 0:
            raise ValueError(f"wavenumber must be positive, got {self.k}")
        if self.a <= 0:
            raise ValueError(f"half-length must be positive, got {self.a}")


def _convolution_eval(profile_batch: Callable) -> Callable:
    def eval_(x, t):
        diff = np.asarray(x) - np.asarray(t)
        flat = np.atleast_1d(diff).ravel()
        vals = profile_batch(flat)
        return vals.reshape(np.shape(diff)) if np.shape(diff) else vals[0]

    return eval_


def zero_kernel() -> RegularKernel:
    """The identically zero regular kernel (characteristic equation)."""

    def profile_batch(d):
        return np.zeros(np.shape(np.atleast_1d(d)), dtype=float)

    return RegularKernel(
        eval=lambda x, t: np.zeros(np.broadcast(np.asarray(x), np.asarray(t)).shape),
        kind="closed-form",
        k1=lambda x, t: np.zeros(np.broadcast(np.asarray(x), np.asarray(t)).shape),
        profile=lambda d: np.zeros(np.shape(np.asarray(d))),
        profile_batch=profile_batch,
        metadata="zero kernel",
    )


def polynomial_kernel(A: float) -> RegularKernel:
    """Linear convolution kernel K0(x, t) = A (x - t).

    Carries the antiderivative K1(x, t) = A (x^2/2 - x t), so the
    second-kind reduction diagnostics accept it.
    """

    def profile_batch(d):
        return A * np.atleast_1d(np.asarray(d, dtype=float))

    return RegularKernel(
        eval=lambda x, t: A * (np.asarray(x) - np.asarray(t)),
        kind="convolution",
        k1=lambda x, t: A * (np.asarray(x) ** 2 / 2.0 - np.asarray(x) * np.asarray(t)),
        profile=lambda d: A * np.asarray(d, dtype=float),
        profile_batch=profile_batch,
        metadata=f"linear convolution kernel, slope {A}",
    )


def kernel_from_symbol(
    symbol: FourierSymbol, quad_cap: float, tol: float = 1e-8
) -> RegularKernel:
    """Synthesize the regular kernel from a symbol by a truncated cosine transform.

    K0(x - t) = (1/pi) int_0^quad_cap L0(s) cos(s (x-t)) ds, with the
    discarded tail bounded through the stated decay rate; the bound must
    not exceed ``tol``.  An even remainder is assumed, which is what a
    real symmetric kernel produces.
    """
    if quad_cap <= 0:
        raise ValueError(f"truncation frequency must be positive, got {quad_cap}")
    symbol.validate()
    bound = symbol.remainder_bound() / (np.pi * symbol.decay * quad_cap**symbol.decay)
    if bound > tol:
        raise TailTruncationError(
            f"tail beyond s={quad_cap:g} is bounded by {bound:.3e} > tol={tol:g}; "
            "raise the truncation frequency"
        )
    sample = np.asarray(symbol.L0(np.array([1.0])))
    is_complex = np.iscomplexobj(sample)
    dtype = np.complex128 if is_complex else np.float64

    def profile_batch(d):
        dd = np.abs(np.atleast_1d(np.asarray(d, dtype=float)))
        out = np.empty(dd.shape, dtype=dtype)
        for start in range(0, dd.size, _BATCH_CHUNK):
            chunk = dd[start : start + _BATCH_CHUNK]

            def integrand(s):
                return np.asarray(symbol.L0(s))[:, None] * np.cos(np.outer(s, chunk))

            out[start : start + _BATCH_CHUNK] = adaptive_gauss_batch(
                integrand, 0.0, quad_cap, tol * np.pi, chunk.size, dtype=dtype
            )
        return out / np.pi

    return RegularKernel(
        eval=_convolution_eval(profile_batch),
        kind="symbol-derived",
        profile=lambda d: profile_batch(np.atleast_1d(d))[0],
        profile_batch=profile_batch,
        metadata=f"cosine transform of symbol remainder, cap={quad_cap:g}",
        is_complex=is_complex,
    )


def acoustic_kernel(
    params: ScreenParams, tol: float = 1e-6, threads: int = 1
) -> RegularKernel:
    """Regular part of the rigid-screen kernel at wavenumber k.

    K0(d) = (1/pi) int_0^inf (sqrt(s^2 - k^2) - s) cos(s d) ds, where the
    root takes the outgoing-wave branch -i sqrt(k^2 - s^2) below the
    wavenumber.  The integral is split at s = k and truncated at a
    frequency S chosen so the dropped terms stay below ``tol``; beyond S
    the integrand is replaced by its two-term expansion
    -k^2/(2s) - k^4/(8 s^3), integrated in closed form through the cosine
    integral.  The kernel is even, complex valued, and logarithmically
    singular at d = 0, where evaluation raises ValueError; interleaved
    meshes never request the diagonal.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    k = params.k
    budget = 0.25 * tol
    s_tail = max(10.0 * k, (k**6 / (64.0 * np.pi * budget)) ** 0.25)
    if not np.isfinite(s_tail) or s_tail > 1e7:
        raise TailTruncationError(
            f"tail bound cannot reach tol={tol:g} at k={k:g} "
            f"(required truncation frequency {s_tail:.3e})"
        )

    def _chunk_profile(d_abs: np.ndarray) -> np.ndarray:
        size = d_abs.size

        def below(s):
            radicand = -1j * np.sqrt(np.clip(k * k - s * s, 0.0, None)) - s
            return radicand[:, None] * np.cos(np.outer(s, d_abs))

        def above(s):
            radicand = np.sqrt(np.clip(s * s - k * k, 0.0, None)) - s
            return (radicand[:, None] * np.cos(np.outer(s, d_abs))).astype(complex)

        part_below = adaptive_gauss_batch(below, 0.0, k, budget * np.pi, size)
        part_above = adaptive_gauss_batch(above, k, s_tail, budget * np.pi, size)
        z = s_tail * d_abs
        ci = cosine_integral(z)
        tail = 0.5 * k * k * ci - (k**4 / 8.0) * d_abs * d_abs * (
            np.cos(z) / (2.0 * z * z) - np.sin(z) / (2.0 * z) + 0.5 * ci
        )
        return (part_below + part_above + tail) / np.pi

    # Repeated difference sets (same mesh or quadrature grid) are common;
    # keep a few evaluated tables around.
    cache: dict[bytes, np.ndarray] = {}

    def profile_batch(d):
        dd = np.abs(np.atleast_1d(np.asarray(d, dtype=float)))
        if np.any(dd == 0.0):
            raise ValueError("screen kernel is logarithmically singular at x = t")
        key = dd.tobytes()
        hit = cache.get(key)
        if hit is not None:
            return hit.copy()
        chunks = [dd[i : i + _BATCH_CHUNK] for i in range(0, dd.size, _BATCH_CHUNK)]
        if threads > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(_chunk_profile, chunks))
        else:
            parts = [_chunk_profile(c) for c in chunks]
        out = np.concatenate(parts)
        if len(cache) < 8:
            cache[key] = out.copy()
        return out

    return RegularKernel(
        eval=_convolution_eval(profile_batch),
        kind="convolution",
        profile=lambda d: profile_batch(np.atleast_1d(d))[0],
        profile_batch=profile_batch,
        metadata=(
            f"rigid-screen regular kernel, k={k:g}; outgoing-wave branch "
            "-i*sqrt(k^2-s^2) below the wavenumber (validated against the "
            "sign of Im g at k=0.5)"
        ),
        is_complex=True,
    )


def normalize_to_canonical(
    coefficient: complex, rhs: RightHandSide, kernel: RegularKernel
) -> tuple[RightHandSide, RegularKernel]:
    """Rescale an equation so its 1/(x-t)^2 part has unit coefficient.

    Given the equation  coefficient * int g/(x-t)^2 + int K0 g = f', both
    the kernel and the right-hand side are divided by ``coefficient``.
    Raises ValueError when the singular coefficient is zero.
    """
    if coefficient == 0:
        raise ValueError("singular-part coefficient must be nonzero")
    factor = 1.0 / coefficient
    old_f = rhs.f
    scaled_rhs = RightHandSide(
        fprime=lambda x, _fp=rhs.fprime: factor * np.asarray(_fp(x)),
        f=None if old_f is None else (lambda x, _f=old_f: factor * np.asarray(_f(x))),
        description=rhs.description,
    )
    pb = kernel.profile_batch
    scaled = RegularKernel(
        eval=lambda x, t, _e=kernel.eval: factor * np.asarray(_e(x, t)),
        kind=kernel.kind,
        k1=None if kernel.k1 is None else (lambda x, t, _k=kernel.k1: factor * np.asarray(_k(x, t))),
        profile=None if kernel.profile is None else (lambda d, _p=kernel.profile: factor * np.asarray(_p(d))),
        profile_batch=None if pb is None else (lambda d, _pb=pb: factor * _pb(d)),
        metadata=kernel.metadata + f"; scaled by {factor!r}",
        is_complex=kernel.is_complex or bool(np.iscomplexobj(np.asarray(factor))),
    )
    return scaled_rhs, scaled


def crack_problem(params: CrackParams, n: int) -> FullProblem:
    """Collocation problem for the crack opening under constant load.

    Starting from the raw convolution form with kernel -2/x^2 and
    right-hand side 2 pi (1-nu) sigma0 / mu, normalizing by the singular
    coefficient -2 leaves the characteristic equation with
    f'(x) = -pi (1-nu) sigma0 / mu; the antiderivative is attached so the
    closed-form inversion can serve as an oracle.
    """
    load = 2.0 * np.pi * (1.0 - params.nu) * params.sigma0 / params.mu
    raw = RightHandSide(
        fprime=lambda x: load * np.ones_like(np.asarray(x, dtype=float)),
        f=lambda x: load * np.asarray(x, dtype=float),
        description=f"crack under constant normal load sigma0={params.sigma0:g}",
    )
    rhs, kernel = normalize_to_canonical(-2.0, raw, zero_kernel())
    mesh = make_mesh(-params.a, params.a, n)
    return FullProblem(mesh=mesh, rhs=rhs, kernel=kernel)


def screen_problem(
    params: ScreenParams, n: int, tol: float = 1e-6, threads: int = 1
) -> FullProblem:
    """Collocation problem for plane-wave diffraction by a rigid screen.

    The raw equation int g(t) K(x-t) dt = -ik has kernel
    K(x) = -1/(pi x^2) + K0(x); dividing by the singular coefficient -1/pi
    yields the canonical problem with kernel -pi K0 and constant
    right-hand side i pi k (antiderivative i pi k x attached).  The
    scalar field is complex.
    """
    k = params.k
    raw = RightHandSide(
        fprime=lambda x: np.full(np.shape(np.asarray(x)), -1j * k),
        f=lambda x: -1j * k * np.asarray(x, dtype=complex),
        description=f"rigid screen, wavenumber k={k:g}",
    )
    rhs, kernel = normalize_to_canonical(
        -1.0 / np.pi, raw, acoustic_kernel(params, tol=tol, threads=threads)
    )
    mesh = make_mesh(-params.a, params.a, n)
    return FullProblem(mesh=mesh, rhs=rhs, kernel=kernel)
