"""Dense LU with partial pivoting, determinant, and a 1-norm condition estimate.

Self-contained on purpose: the collocation systems are modest dense
matrices (a few thousand unknowns at most), and owning the factorization
keeps the determinant and the transpose solves needed by the condition
estimator in one place over both real and complex scalars.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_PIVOT_RTOL = 1e-13
_HAGER_MAX_SWEEPS = 6


class SingularMatrixError(ValueError):
    """Raised when a pivot falls below the singularity threshold."""


def _divide(values, divisor):
    """values / divisor, componentwise when the divisor has no imaginary part.

    numpy's complex-by-complex division rounds through (ac+bd)/(c^2+d^2)
    and so differs in the last bit from real division even when every
    imaginary part is zero; dividing the components keeps a real-valued
    complex system bit-identical to its real counterpart.
    """
    if np.iscomplexobj(values) and np.iscomplexobj(divisor) and divisor.imag == 0:
        out = np.empty_like(values)
        out.real = values.real / divisor.real
        out.imag = values.imag / divisor.real
        return out
    return values / divisor


def _forward_back(lu: np.ndarray, x: np.ndarray) -> np.ndarray:
    # x arrives permuted; L then U substitution in place.
    n = len(x)
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = _divide(x[i] - lu[i, i + 1 :] @ x[i + 1 :], lu[i, i])
    return x


def _adjoint_substitute(lu: np.ndarray, y: np.ndarray) -> np.ndarray:
    # A^H = U^H L^H P: forward-substitute with U^H, back with L^H.
    n = len(y)
    for i in range(n):
        y[i] = _divide(y[i] - np.conj(lu[:i, i]) @ y[:i], np.conj(lu[i, i]))
    for i in range(n - 1, -1, -1):
        y[i] -= np.conj(lu[i + 1 :, i]) @ y[i + 1 :]
    return y


@dataclass
class LUFactorization:
    """P A = L U with partial pivoting; L has unit diagonal.

    ``lu`` packs L (strict lower part) and U (upper part), ``perm`` maps
    factored row -> original row, ``sign`` is the permutation parity and
    ``norm1`` the 1-norm of the original matrix.

    Complex storage holding purely real values is detected once; such
    systems are solved componentwise through real arithmetic, which is the
    same calculation and keeps the result bit-identical to the real path.
    """

    lu: np.ndarray
    perm: np.ndarray
    sign: float
    norm1: float
    real_valued: bool = True
    _core_cache: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.lu.shape[0]

    def determinant(self):
        return self.sign * np.prod(np.diag(self.lu))

    def _real_core(self) -> np.ndarray:
        # Contiguous copy: a strided .real view would push BLAS onto a
        # different (differently ordered) reduction kernel.
        if np.iscomplexobj(self.lu):
            if self._core_cache is None:
                self._core_cache = np.ascontiguousarray(self.lu.real)
            return self._core_cache
        return self.lu

    def _componentwise(self, substitute, b: np.ndarray) -> np.ndarray:
        core = self._real_core()
        out_dtype = np.promote_types(self.lu.dtype, b.dtype)
        if not np.issubdtype(out_dtype, np.complexfloating):
            return substitute(core, b.astype(np.float64, copy=True))
        out = np.empty(self.n, dtype=np.complex128)
        out.real = substitute(core, np.ascontiguousarray(b.real, dtype=np.float64))
        out.imag = substitute(core, np.ascontiguousarray(b.imag, dtype=np.float64))
        return out

    def solve(self, b: np.ndarray) -> np.ndarray:
        """Solve A x = b for one right-hand side."""
        b = np.asarray(b)
        if b.shape != (self.n,):
            raise ValueError(f"rhs must have shape ({self.n},), got {b.shape}")
        if not np.all(np.isfinite(b)):
            raise ValueError("rhs contains nonfinite entries")
        pb = b[self.perm]
        if self.real_valued:
            return self._componentwise(_forward_back, pb)
        return _forward_back(self.lu, pb.astype(np.complex128))

    def solve_adjoint(self, b: np.ndarray) -> np.ndarray:
        """Solve A^H x = b (plain transpose for real matrices)."""
        b = np.asarray(b)
        if self.real_valued:
            y = self._componentwise(_adjoint_substitute, b)
        else:
            y = _adjoint_substitute(self.lu, b.astype(np.complex128, copy=True))
        out = np.empty_like(y)
        out[self.perm] = y
        return out


def lu_factor(a: np.ndarray) -> LUFactorization:
    """Factor a square matrix with partial pivoting.

    Raises SingularMatrixError when the best available pivot is smaller
    than 1e-13 times the largest entry of the input.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains nonfinite entries")
    n = a.shape[0]
    dtype = np.complex128 if np.iscomplexobj(a) else np.float64
    lu = a.astype(dtype, copy=True)
    scale = float(np.max(np.abs(a))) if n else 0.0
    threshold = _PIVOT_RTOL * scale
    perm = np.arange(n)
    sign = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if np.abs(lu[p, k]) <= threshold:
            raise SingularMatrixError(
                f"pivot {np.abs(lu[p, k]):.3e} at column {k} below threshold {threshold:.3e}"
            )
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        if k + 1 < n:
            lu[k + 1 :, k] = _divide(lu[k + 1 :, k], lu[k, k])
            lu[k + 1 :, k + 1 :] -= np.outer(lu[k + 1 :, k], lu[k, k + 1 :])
    norm1 = float(np.max(np.abs(a).sum(axis=0))) if n else 0.0
    real_valued = not np.iscomplexobj(a) or not np.any(a.imag)
    return LUFactorization(
        lu=lu, perm=perm, sign=sign, norm1=norm1, real_valued=bool(real_valued)
    )


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Factor-and-solve convenience for a single system."""
    return lu_factor(a).solve(b)


def condition_estimate_1norm(fact: LUFactorization) -> float:
    """Hager-style estimate of cond_1(A) = ||A||_1 * ||A^{-1}||_1.

    The inverse norm is probed through a few solve/adjoint-solve sweeps;
    the result is reliably within a factor of 10 of the true value.
    """
    n = fact.n
    if n == 0:
        return 1.0
    x = np.full(n, 1.0 / n, dtype=fact.lu.dtype)
    est = 0.0
    last_j = -1
    for _ in range(_HAGER_MAX_SWEEPS):
        y = fact.solve(x)
        est = float(np.abs(y).sum())
        mags = np.abs(y)
        xi = np.where(mags > 0, y / np.where(mags > 0, mags, 1.0), 1.0)
        z = fact.solve_adjoint(xi)
        j = int(np.argmax(np.abs(z)))
        if np.abs(z[j]) <= np.real(np.vdot(z, x)) or j == last_j:
            break
        x = np.zeros(n, dtype=fact.lu.dtype)
        x[j] = 1.0
        last_j = j
    return est * fact.norm1
