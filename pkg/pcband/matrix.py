"""
Complex 2x2 linear algebra.

Matrices are numpy arrays of shape (2, 2) and dtype complex128. Products,
determinants and traces work on stacks of shape (..., 2, 2) as well, which
the stratified and staircase code use to process many frequencies or many
interfaces at once.
"""

import cmath
import math
from typing import Tuple

import numpy as np

from pcband.constants import (
    EXP_SCALED_NORM,
    EXP_TAYLOR_TERMS,
    SINHC_SERIES_THRESHOLD,
    TRACELESS_TOLERANCE,
)
from pcband.exceptions import NotTracelessError

Mat2c = np.ndarray


class Mat2:
    """Static helpers for complex 2x2 matrices."""

    @staticmethod
    def identity() -> Mat2c:
        return np.eye(2, dtype=complex)

    @staticmethod
    def from_entries(a11: complex, a12: complex, a21: complex, a22: complex) -> Mat2c:
        return np.array([[a11, a12], [a21, a22]], dtype=complex)

    @staticmethod
    def mul(a: Mat2c, b: Mat2c) -> Mat2c:
        return np.matmul(a, b)

    @staticmethod
    def det(m: Mat2c) -> complex:
        return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]

    @staticmethod
    def trace(m: Mat2c) -> complex:
        return m[..., 0, 0] + m[..., 1, 1]

    @staticmethod
    def norm(m: Mat2c) -> float:
        """Maximum absolute row sum (induced ∞-norm)."""
        return float(np.max(np.sum(np.abs(m), axis=-1)))

    @staticmethod
    def product(matrices: np.ndarray) -> Mat2c:
        """
        Ordered product M[n-1]·…·M[1]·M[0] of a stack of shape (n, ..., 2, 2).

        Pairs are multiplied level by level, so the cost is a handful of
        vectorized matmuls rather than n Python-level products.
        """
        stack = np.asarray(matrices, dtype=complex)
        if stack.shape[0] == 0:
            return np.broadcast_to(np.eye(2, dtype=complex), stack.shape[1:]).copy()
        while stack.shape[0] > 1:
            if stack.shape[0] % 2 == 1:
                pad = np.broadcast_to(np.eye(2, dtype=complex), (1,) + stack.shape[1:])
                stack = np.concatenate([stack, pad], axis=0)
            stack = np.matmul(stack[1::2], stack[0::2])
        return stack[0]

    @staticmethod
    def exp(m: Mat2c) -> Mat2c:
        """
        Matrix exponential by scaling and squaring.

        The matrix is scaled by 2^-s until its norm is at most 0.5, the
        exponential of the scaled matrix is summed as a truncated Taylor series
        (Horner form), and the result is squared s times.
        """
        m = np.asarray(m, dtype=complex)
        norm = Mat2.norm(m)
        if not math.isfinite(norm):
            raise ValueError("Matrix exponential requires finite entries")
        s = 0
        if norm > EXP_SCALED_NORM:
            s = int(math.ceil(math.log2(norm / EXP_SCALED_NORM)))
        scaled = m / (2.0**s)

        eye = np.eye(2, dtype=complex)
        result = eye.copy()
        for n in range(EXP_TAYLOR_TERMS, 0, -1):
            result = eye + (scaled @ result) / n
        for _ in range(s):
            result = result @ result
        return result

    @staticmethod
    def is_traceless(m: Mat2c) -> bool:
        scale = Mat2.norm(m)
        return abs(Mat2.trace(m)) <= TRACELESS_TOLERANCE * scale

    @staticmethod
    def exp_traceless(m: Mat2c) -> Mat2c:
        """
        Closed-form exponential of a traceless matrix.

        With λ² = a11² + a12·a21 (so ±λ are the eigenvalues),
        exp(m) = cosh(λ)·I + (sinh(λ)/λ)·m. Either root may be used; the
        principal one is taken.

        Raises:
            NotTracelessError: If |tr m| exceeds 1e-12·||m||
        """
        m = np.asarray(m, dtype=complex)
        if not Mat2.is_traceless(m):
            raise NotTracelessError(
                f"Matrix trace {Mat2.trace(m)} is not negligible; use Mat2.exp instead"
            )
        lam = cmath.sqrt(m[0, 0] * m[0, 0] + m[0, 1] * m[1, 0])
        return cmath.cosh(lam) * np.eye(2, dtype=complex) + sinhc(lam) * m

    @staticmethod
    def eigenvalues(m: Mat2c) -> Tuple[complex, complex]:
        """
        Roots of λ² - tr(m)·λ + det(m), ordered by real then imaginary part.

        The larger-magnitude root is formed without cancellation and the other
        follows from the product det(m).
        """
        half_trace = complex(Mat2.trace(m)) / 2.0
        det = complex(Mat2.det(m))
        disc = cmath.sqrt(half_trace * half_trace - det)
        if (half_trace.conjugate() * disc).real >= 0:
            big = half_trace + disc
        else:
            big = half_trace - disc
        if big == 0:
            return (0j, 0j)
        small = det / big
        return tuple(sorted((big, small), key=lambda z: (z.real, z.imag)))  # type: ignore[return-value]


def sinhc(lam: complex) -> complex:
    """sinh(λ)/λ with its even series near λ = 0."""
    if abs(lam) < SINHC_SERIES_THRESHOLD:
        lam2 = lam * lam
        return 1.0 + lam2 / 6.0 + lam2 * lam2 / 120.0
    return cmath.sinh(lam) / lam
