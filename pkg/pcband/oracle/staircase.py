"""
Staircase-limit oracle.

The midpoint staircase of a graded profile converges to the continuous
medium with an error proportional to 1/N². Three refinements N_max/4,
N_max/2 and N_max are combined by Richardson extrapolation.
"""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np

from pcband.config import IncidenceConfig, Polarization
from pcband.constants import CONVERGENCE_FLOOR, STAIRCASE_MIN_N_MAX, STAIRCASE_N_MAX
from pcband.dispersion import bloch_cos_general
from pcband.exceptions import OracleError
from pcband.profile.base import Profile
from pcband.transfer.stratified import LayerStack, layer_wavenumbers, period_transfer, staircase

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


@dataclass
class StaircaseEstimate:
    """Extrapolated cos(κL) with its error estimate and the raw sequence."""

    value: ArrayLike
    error: ArrayLike
    raw: np.ndarray  # shape (3, ...) for N_max/4, N_max/2, N_max


def _stack_cos(stack: LayerStack, inc: IncidenceConfig, k0: np.ndarray, pol: Polarization) -> np.ndarray:
    q = period_transfer(stack, inc, k0, pol)
    k1 = layer_wavenumbers(stack, inc, k0)[..., 0]
    return np.real(bloch_cos_general(q[..., 0, 0], q[..., 1, 1], k1, stack.period))


def staircase_limit_cos(
    p: Profile,
    inc: IncidenceConfig,
    k0: ArrayLike,
    pol: Polarization,
    n_max: int = STAIRCASE_N_MAX,
) -> StaircaseEstimate:
    """
    Richardson-extrapolated staircase value of cos(κL).

    Piecewise-constant profiles are evaluated once on their exact stack.

    Args:
        p: Index profile
        inc: Incidence configuration
        k0: Free-space wavenumber or array of them
        pol: Polarization
        n_max: Finest layer count, a power of two >= 64

    Raises:
        ValueError: If n_max is not a power of two >= 64
        OracleError: If the three refinements do not converge monotonically
    """
    if n_max < STAIRCASE_MIN_N_MAX or n_max & (n_max - 1):
        raise ValueError(f"n_max must be a power of two >= {STAIRCASE_MIN_N_MAX}, got {n_max}")
    k0_arr = np.atleast_1d(np.asarray(k0, dtype=float))
    scalar = np.ndim(k0) == 0

    if p.is_piecewise_constant:
        exact = _stack_cos(LayerStack.from_profile(p), inc, k0_arr, pol)
        raw = np.stack([exact, exact, exact])
        error = np.zeros_like(exact)
        if scalar:
            return StaircaseEstimate(float(exact[0]), 0.0, raw[:, 0])
        return StaircaseEstimate(exact, error, raw)

    raw = np.stack(
        [_stack_cos(staircase(p, n), inc, k0_arr, pol) for n in (n_max // 4, n_max // 2, n_max)]
    )
    coarse_step = raw[1] - raw[0]
    fine_step = raw[2] - raw[1]
    settled = np.abs(coarse_step) <= CONVERGENCE_FLOOR
    diverging = ~settled & (
        (np.sign(coarse_step) != np.sign(fine_step))
        & (np.abs(fine_step) > CONVERGENCE_FLOOR)
        | (np.abs(fine_step) > np.abs(coarse_step))
    )
    if np.any(diverging):
        i = int(np.argmax(diverging))
        raise OracleError(
            f"Staircase of '{p.name}' does not converge monotonically at k0 = {k0_arr[i]:.6g}: "
            f"N = {n_max // 4}, {n_max // 2}, {n_max} give {raw[0, i]!r}, {raw[1, i]!r}, {raw[2, i]!r}"
        )
    value = raw[2] + fine_step / 3.0
    error = np.abs(fine_step) / 3.0
    logger.debug(f"Staircase limit of '{p.name}': max error estimate {float(error.max()):.3e}")
    if scalar:
        return StaircaseEstimate(float(value[0]), float(error[0]), raw[:, 0])
    return StaircaseEstimate(value, error, raw)
