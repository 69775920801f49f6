"""
Bloch dispersion equations and band-state classification.

Three equivalent forms of cos(κL) are provided: the general form from any
one-period transfer matrix and its reference wavenumber, the closed form for
even-symmetric real-k media built from the symmetric M matrix, and the
stratified form that uses q11 alone.
"""

import cmath
import logging
import math
from typing import Tuple, Union

import numpy as np

from pcband.config import Allowed, BandState, Edge, Forbidden
from pcband.constants import (
    EDGE_TOLERANCE,
    REAL_OUTPUT_TOLERANCE,
    REFERENCE_OFFSETS,
    TRACELESS_TOLERANCE,
)
from pcband.exceptions import NotTracelessError, NumericalError
from pcband.matrix import Mat2, sinhc
from pcband.transfer.dtmm import IntervalMatrix, TransferContext, period_transfer_general

logger = logging.getLogger(__name__)

ComplexLike = Union[complex, np.ndarray]


def bloch_cos_general(q11: ComplexLike, q22: ComplexLike, k_ref: ComplexLike, period: float) -> ComplexLike:
    """
    cos(κL) = (q11/2)·e^{-jk_ref·L} + (q22/2)·e^{+jk_ref·L}.

    k_ref is the wavenumber of the medium at the start of the period window
    the transfer matrix was computed over. Works elementwise on arrays.
    """
    phase = np.exp(1j * np.asarray(k_ref) * period)
    value = 0.5 * (np.asarray(q11) / phase + np.asarray(q22) * phase)
    return complex(value) if np.ndim(value) == 0 else value


def bloch_cos_symmetric(m: IntervalMatrix, u: float, kbar_L: float, branch: int = 1) -> float:
    """
    Closed-form cos(κL) for an even-symmetric, real-k period.

    cos(κL) = cosh(λ)·cos(u) + α·sinh(λ)·sin(u), with ±λ the eigenvalues of
    the traceless M, u = k(L/2)·L and α = (u - k̄L)/λ. The product α·sinh(λ)
    is evaluated as (u - k̄L)·sinh(λ)/λ, which is even in λ, so either branch
    gives the same value.

    Args:
        m: Symmetric-window interval matrix
        u: k(L/2)·L
        kbar_L: k̄·L
        branch: +1 or -1, the eigenvalue branch used

    Returns:
        Real cos(κL)

    Raises:
        NotTracelessError: If M has a non-negligible trace
        NumericalError: If M is not purely imaginary or the result is not real
    """
    mat = np.asarray(m.m, dtype=complex)
    scale = max(1.0, Mat2.norm(mat))
    if abs(Mat2.trace(mat)) > TRACELESS_TOLERANCE * scale:
        raise NotTracelessError(f"Symmetric M has trace {Mat2.trace(mat)}")
    if np.max(np.abs(mat.real)) > REAL_OUTPUT_TOLERANCE * scale:
        raise NumericalError(
            f"Symmetric M is not purely imaginary (max |Re| = {np.max(np.abs(mat.real)):.3e})"
        )
    if branch not in (1, -1):
        raise ValueError(f"Unknown eigenvalue branch: {branch}. Valid options: 1, -1")

    lam = branch * cmath.sqrt(mat[0, 0] * mat[0, 0] + mat[0, 1] * mat[1, 0])
    value = cmath.cosh(lam) * math.cos(u) + (u - kbar_L) * sinhc(lam) * math.sin(u)
    if abs(value.imag) > REAL_OUTPUT_TOLERANCE:
        raise NumericalError(
            f"Symmetric dispersion produced a complex value ({value}); the real-k precondition fails"
        )
    return value.real


def bloch_cos_stratified(q11: ComplexLike, k1: ComplexLike, period: float) -> Union[float, np.ndarray]:
    """cos(κL) = Re(q11·e^{-jk1·L}) for a real-k layer stack, k1 of the leftmost layer."""
    value = np.real(np.asarray(q11) * np.exp(-1j * np.asarray(k1) * period))
    return float(value) if np.ndim(value) == 0 else value


def classify(c: float) -> BandState:
    """
    Band state of a real discriminant value c = cos(κL).

    Raises:
        ValueError: If c is NaN or infinite
    """
    if not math.isfinite(c):
        raise ValueError(f"Cannot classify a non-finite discriminant: {c}")
    excess = abs(c) - 1.0
    parity = 0 if c > 0 else 1
    if abs(excess) <= EDGE_TOLERANCE:
        return Edge(parity)
    if excess < 0:
        return Allowed(math.acos(c))
    return Forbidden(parity, math.acosh(abs(c)))


def reference_offset_spread(
    ctx: TransferContext, offsets: int = REFERENCE_OFFSETS
) -> Tuple[np.ndarray, float]:
    """
    General-path cos(κL) with the period window started at several offsets.

    Window starts are -L/2 + i·L/offsets. The spread (max - min of the real
    parts) is at round-off for layered media; for graded media it measures how
    far the integrated-M construction is from a true one-period map.

    Returns:
        Tuple of (values, spread)
    """
    if offsets < 1:
        raise ValueError(f"Need at least one offset, got {offsets}")
    period = ctx.period
    starts = -0.5 * period + period * np.arange(offsets) / offsets
    values = []
    for x0 in starts:
        q, k_ref = period_transfer_general(ctx, float(x0))
        values.append(bloch_cos_general(q[0, 0], q[1, 1], k_ref, period))
    values_arr = np.asarray(values, dtype=complex)
    spread = float(np.ptp(values_arr.real))
    logger.debug(f"Reference-offset spread for '{ctx.profile.name}' at k0 = {ctx.k0:.6g}: {spread:.3e}")
    return values_arr, spread
