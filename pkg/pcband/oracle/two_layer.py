"""Closed-form dispersion of a periodic two-layer stack."""

from typing import Tuple, Union

import numpy as np

from pcband.config import IncidenceConfig, Polarization
from pcband.exceptions import OracleError
from pcband.profile.wavenumber import wavenumber_factor
from pcband.transfer.stratified import LayerStack

ArrayLike = Union[float, np.ndarray]


def analytic_two_layer(
    n1: float,
    n2: float,
    d1: float,
    d2: float,
    inc: IncidenceConfig,
    k0: ArrayLike,
    pol: Polarization,
) -> ArrayLike:
    """
    cos(κL) = cos(k1d1)cos(k2d2) - ½(η + 1/η)·sin(k1d1)sin(k2d2).

    η = k1/k2 for TE and (n2²k1)/(n1²k2) for TM. Evaluated in complex
    arithmetic, so an evanescent layer still gives the right (real) value.
    """
    k0_arr = np.asarray(k0, dtype=float)
    k1 = k0_arr * wavenumber_factor(n1, inc.n_eff)
    k2 = k0_arr * wavenumber_factor(n2, inc.n_eff)
    if np.any(k1 == 0) or np.any(k2 == 0):
        raise OracleError("Two-layer formula is undefined at a layer cutoff")
    eta = k1 / k2
    if Polarization(pol) == Polarization.TM:
        eta = eta * (n2 * n2) / (n1 * n1)
    phi1 = k1 * d1
    phi2 = k2 * d2
    value = np.cos(phi1) * np.cos(phi2) - 0.5 * (eta + 1.0 / eta) * np.sin(phi1) * np.sin(phi2)
    value = np.real(value)
    return float(value) if np.ndim(value) == 0 else value


def two_layer_parameters(stack: LayerStack) -> Tuple[float, float, float, float]:
    """
    Reduce a stack to (n1, n2, d1, d2) by merging cyclically adjacent layers of equal index.

    Raises:
        OracleError: If the period does not consist of exactly two distinct layers
    """
    merged = []
    for n, d in stack.layers:
        if merged and merged[-1][0] == n:
            merged[-1][1] += d
        else:
            merged.append([n, d])
    if len(merged) > 1 and merged[0][0] == merged[-1][0]:
        merged[0][1] += merged.pop()[1]
    if len(merged) != 2:
        raise OracleError(
            f"Two-layer oracle needs exactly two layers per period; '{stack.name}' has {len(merged)}"
        )
    (n1, d1), (n2, d2) = merged
    return n1, n2, d1, d2
