"""
Local wavenumber induced by a profile under a given illumination.

k(x) = k0·sqrt(n(x)² - n_eff²), on the principal branch: real and positive
where n(x) > n_eff, positive imaginary where n(x) < n_eff.
"""

import functools
from typing import Union

import numpy as np

from pcband.config import IncidenceConfig
from pcband.exceptions import ConfigurationError
from pcband.profile.base import Profile
from pcband.utils.quadrature import AdaptiveQuadrature

ArrayLike = Union[float, np.ndarray]


def wavenumber_factor(n: ArrayLike, n_eff: float) -> np.ndarray:
    """sqrt(n² - n_eff²) on the principal complex branch (k/k0)."""
    n_arr = np.asarray(n, dtype=float)
    return np.sqrt(n_arr * n_arr - n_eff * n_eff + 0j)


def wavenumber(p: Profile, inc: IncidenceConfig, k0: float, x: ArrayLike) -> Union[complex, np.ndarray]:
    """
    Local wavenumber at position(s) x.

    Args:
        p: Index profile
        inc: Incidence configuration (supplies n_eff)
        k0: Free-space wavenumber, > 0
        x: Position or array of positions

    Returns:
        Complex wavenumber(s); Im k >= 0 always
    """
    if k0 <= 0:
        raise ValueError(f"Free-space wavenumber must be positive, got {k0}")
    k = k0 * wavenumber_factor(p.n(x), inc.n_eff)
    return complex(k) if np.ndim(k) == 0 else k


def has_real_wavenumber(p: Profile, inc: IncidenceConfig) -> bool:
    """True when n_eff < min n over the period, so k(x) is real everywhere."""
    return inc.n_eff < p.n_min


@functools.lru_cache(maxsize=128)
def mean_wavenumber_factor(p: Profile, n_eff: float) -> float:
    """Period average of sqrt(n² - n_eff²), computed once per (profile, n_eff)."""
    half = 0.5 * p.period

    def integrand(x: np.ndarray) -> np.ndarray:
        n = np.asarray(p.n(x), dtype=float)
        return np.sqrt(n * n - n_eff * n_eff)

    quad = AdaptiveQuadrature()
    total = quad.integrate(integrand, -half, half, breakpoints=p.breakpoints_between(-half, half))
    return float(total) / p.period


def average_wavenumber(p: Profile, inc: IncidenceConfig, k0: float) -> float:
    """
    Average wavenumber k̄ = L⁻¹∫k(x)dx over the period window.

    The average of k/k0 is integrated to 1e-10 once per (profile, n_eff) and
    scaled by k0, so the absolute tolerance is 1e-10·k0.

    Raises:
        ConfigurationError: If k is not real over the whole period
        QuadratureError: If the quadrature does not converge
    """
    if k0 <= 0:
        raise ValueError(f"Free-space wavenumber must be positive, got {k0}")
    if not has_real_wavenumber(p, inc):
        raise ConfigurationError(
            f"Average wavenumber needs real k: n_eff = {inc.n_eff:.6g} is not below "
            f"min n = {p.n_min:.6g}"
        )
    return k0 * mean_wavenumber_factor(p, inc.n_eff)
