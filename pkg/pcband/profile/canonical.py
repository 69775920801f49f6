"""
Canonical index profiles.

Four profiles varying between n = 1 and n = 3 over one period: a sinusoid, an
even triangle wave, a square (step) profile, and an asymmetric ramp with one
jump per period.
"""

from typing import Callable, Dict

import numpy as np

from pcband.constants import CANONICAL_N_MAX, CANONICAL_N_MIN, CANONICAL_PERIOD, TWO_PI
from pcband.exceptions import ProfileError
from pcband.profile.base import Discontinuity, Profile, layered_profile

_MEAN = 0.5 * (CANONICAL_N_MAX + CANONICAL_N_MIN)
_SWING = 0.5 * (CANONICAL_N_MAX - CANONICAL_N_MIN)


class CanonicalProfiles:
    """Factory for the canonical profiles; every method accepts an optional period."""

    @staticmethod
    def sinusoidal(period: float = CANONICAL_PERIOD) -> Profile:
        """n(x) = 2 + cos(2πx/L)."""
        q = TWO_PI / period
        return Profile(
            n_func=lambda x: _MEAN + _SWING * np.cos(q * x),
            dn_func=lambda x: -_SWING * q * np.sin(q * x),
            period=period,
            symmetric=True,
            name="sinusoidal",
        )

    @staticmethod
    def triangular(period: float = CANONICAL_PERIOD) -> Profile:
        """Even triangle wave, n(0) = 3, n(±L/2) = 1, linear in between."""
        slope = 2.0 * (CANONICAL_N_MAX - CANONICAL_N_MIN) / period
        return Profile(
            n_func=lambda x: CANONICAL_N_MAX - slope * np.abs(x),
            dn_func=lambda x: -slope * np.sign(x),
            period=period,
            kinks=(-0.5 * period, 0.0),
            symmetric=True,
            name="triangular",
        )

    @staticmethod
    def square(period: float = CANONICAL_PERIOD) -> Profile:
        """n = 3 for |x| < L/4, n = 1 elsewhere."""
        quarter = 0.25 * period
        return layered_profile(
            [(CANONICAL_N_MIN, quarter), (CANONICAL_N_MAX, 2.0 * quarter), (CANONICAL_N_MIN, quarter)],
            name="square",
            symmetric=True,
        )

    @staticmethod
    def ramp_jump(period: float = CANONICAL_PERIOD) -> Profile:
        """n rises linearly from 1 at -L/2 to 3 at L/2, then drops back to 1."""
        slope = (CANONICAL_N_MAX - CANONICAL_N_MIN) / period
        half = 0.5 * period
        return Profile(
            n_func=lambda x: CANONICAL_N_MIN + slope * (x + half),
            dn_func=lambda x: np.full(np.shape(x), slope),
            period=period,
            discontinuities=(Discontinuity(-half, CANONICAL_N_MAX, CANONICAL_N_MIN),),
            symmetric=False,
            name="ramp_jump",
        )


_FACTORIES: Dict[str, Callable[[float], Profile]] = {
    "sinusoidal": CanonicalProfiles.sinusoidal,
    "triangular": CanonicalProfiles.triangular,
    "square": CanonicalProfiles.square,
    "ramp_jump": CanonicalProfiles.ramp_jump,
}

CANONICAL_NAMES = tuple(_FACTORIES)


def canonical_profile(name: str, period: float = CANONICAL_PERIOD) -> Profile:
    """
    Build a canonical profile by name.

    Raises:
        ProfileError: If the name is not one of the four canonical profiles
    """
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise ProfileError(
            f"Unknown canonical profile: {name}. Valid options: {', '.join(CANONICAL_NAMES)}"
        ) from None
    return factory(period)
