"""
Periodic refractive-index profiles.

A Profile evaluates n(x) and n'(x) for any real x by wrapping x into the
period window [-L/2, L/2). Jumps in n are declared explicitly as
Discontinuity records with their one-sided limits; positions where only the
derivative jumps (kinks) are declared so that quadrature and ODE steps can
place panel edges on them.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from pcband.constants import POSITION_TOLERANCE, PROFILE_SAMPLE_POINTS, SYMMETRY_TOLERANCE
from pcband.exceptions import NonPositiveIndexError, ProfileError

logger = logging.getLogger(__name__)

IndexFunction = Callable[[np.ndarray], np.ndarray]
ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class Discontinuity:
    """Index jump at `position` (inside the window) from n_left to n_right."""

    position: float
    n_left: float
    n_right: float


@dataclass(frozen=True, eq=False)
class Profile:
    """
    Immutable periodic index profile.

    n_func and dn_func receive positions already wrapped into [-L/2, L/2) and
    must accept numpy arrays. Instances hash by identity, which the per-profile
    caches in the transfer module rely on.
    """

    n_func: IndexFunction
    dn_func: IndexFunction
    period: float = 1.0
    discontinuities: Tuple[Discontinuity, ...] = ()
    kinks: Tuple[float, ...] = ()
    symmetric: bool = False
    name: str = "profile"
    layers: Optional[Tuple[Tuple[float, float], ...]] = None
    expression: Optional[str] = None
    n_min: float = field(init=False)
    n_max: float = field(init=False)

    def __post_init__(self) -> None:
        if not self.period > 0:
            raise ProfileError(f"Period must be greater than zero, got {self.period}")
        ordered = tuple(sorted(self.discontinuities, key=lambda d: d.position))
        object.__setattr__(self, "discontinuities", ordered)
        object.__setattr__(self, "kinks", tuple(sorted(self.kinks)))

        half = 0.5 * self.period
        for d in ordered:
            if not -half <= d.position < half:
                raise ProfileError(
                    f"Discontinuity at {d.position} lies outside the window [-L/2, L/2)"
                )

        xs = np.linspace(-half, half, PROFILE_SAMPLE_POINTS + 1)
        values = np.asarray(self.n(xs), dtype=float)
        limits = [v for d in ordered for v in (d.n_left, d.n_right)]
        if limits:
            values = np.concatenate([values, np.asarray(limits, dtype=float)])
        if not np.all(np.isfinite(values)):
            raise NonPositiveIndexError(f"Profile '{self.name}' is not finite on the sample grid")
        if np.any(values <= 0):
            worst = int(np.argmin(values[: xs.size])) if values[: xs.size].min() <= 0 else 0
            raise NonPositiveIndexError(
                f"Profile '{self.name}' has non-positive index (n = {values.min():.6g}) "
                f"near x = {xs[worst]:.6g}"
            )
        object.__setattr__(self, "n_min", float(values.min()))
        object.__setattr__(self, "n_max", float(values.max()))

    def wrap(self, x: ArrayLike) -> np.ndarray:
        """Map positions into [-L/2, L/2)."""
        arr = np.asarray(x, dtype=float)
        half = 0.5 * self.period
        return arr - self.period * np.floor((arr + half) / self.period)

    def n(self, x: ArrayLike) -> ArrayLike:
        arr = np.asarray(x, dtype=float)
        values = np.asarray(self.n_func(self.wrap(arr)), dtype=float)
        values = values + np.zeros(arr.shape)
        return float(values) if values.ndim == 0 else values

    def dn_dx(self, x: ArrayLike) -> ArrayLike:
        arr = np.asarray(x, dtype=float)
        values = np.asarray(self.dn_func(self.wrap(arr)), dtype=float)
        values = values + np.zeros(arr.shape)
        return float(values) if values.ndim == 0 else values

    @property
    def is_smooth(self) -> bool:
        return not self.discontinuities

    @property
    def is_piecewise_constant(self) -> bool:
        return self.layers is not None

    def _circular_offset(self, a: float, b: float) -> float:
        half = 0.5 * self.period
        return ((a - b + half) % self.period) - half

    def discontinuity_at(self, x: float) -> Optional[Discontinuity]:
        """Declared jump located at x (modulo L), if any."""
        tol = POSITION_TOLERANCE * self.period
        for d in self.discontinuities:
            if abs(self._circular_offset(x, d.position)) <= tol:
                return d
        return None

    def n_limit(self, x: float, side: str) -> float:
        """One-sided limit of n at x; side is 'left' or 'right'."""
        if side not in ("left", "right"):
            raise ValueError(f"Unknown side: {side}. Valid options: left, right")
        d = self.discontinuity_at(x)
        if d is None:
            return float(self.n(x))
        return d.n_left if side == "left" else d.n_right

    def _images_between(self, positions: Sequence[float], a: float, b: float) -> List[float]:
        tol = POSITION_TOLERANCE * self.period
        found = []
        for p in positions:
            m_lo = math.ceil((a - p) / self.period)
            m_hi = math.floor((b - p) / self.period)
            for m in range(m_lo, m_hi + 1):
                x = p + m * self.period
                if a + tol < x < b - tol:
                    found.append(x)
        return sorted(found)

    def discontinuities_between(self, a: float, b: float) -> List[float]:
        """Absolute positions of jumps strictly inside (a, b)."""
        return self._images_between([d.position for d in self.discontinuities], a, b)

    def kinks_between(self, a: float, b: float) -> List[float]:
        return self._images_between(self.kinks, a, b)

    def breakpoints_between(self, a: float, b: float) -> List[float]:
        """Jumps and kinks strictly inside (a, b), sorted."""
        return sorted(self.discontinuities_between(a, b) + self.kinks_between(a, b))


def detect_symmetry(n_func: IndexFunction, period: float) -> bool:
    """True when n(x) and n(-x) agree to 1e-12 on a grid over half a period."""
    half = 0.5 * period
    xs = (np.arange(PROFILE_SAMPLE_POINTS // 2) + 0.5) * half / (PROFILE_SAMPLE_POINTS // 2)
    forward = np.asarray(n_func(xs), dtype=float) + np.zeros(xs.shape)
    backward = np.asarray(n_func(-xs), dtype=float) + np.zeros(xs.shape)
    return bool(np.all(np.abs(forward - backward) <= SYMMETRY_TOLERANCE))


def layered_profile(
    layers: Sequence[Tuple[float, float]],
    name: str = "layers",
    symmetric: Optional[bool] = None,
) -> Profile:
    """
    Piecewise-constant profile from (n, d) layers laid out upward from -L/2.

    Interfaces between layers of different index become discontinuities; the
    wrap-around interface between the last and first layer is placed at -L/2
    when their indices differ.
    """
    if len(layers) == 0:
        raise ProfileError("A layered profile needs at least one layer")
    ns = np.array([float(n) for n, _ in layers])
    ds = np.array([float(d) for _, d in layers])
    if np.any(ds <= 0):
        raise ProfileError("Layer thicknesses must be greater than zero")
    period = float(ds.sum())
    bounds = -0.5 * period + np.cumsum(ds)[:-1]

    def n_func(x: np.ndarray) -> np.ndarray:
        return ns[np.searchsorted(bounds, x, side="right")]

    def dn_func(x: np.ndarray) -> np.ndarray:
        return np.zeros(np.shape(x))

    jumps = [
        Discontinuity(float(bounds[i]), float(ns[i]), float(ns[i + 1]))
        for i in range(len(bounds))
        if ns[i] != ns[i + 1]
    ]
    if ns[-1] != ns[0]:
        jumps.append(Discontinuity(-0.5 * period, float(ns[-1]), float(ns[0])))

    if symmetric is None:
        symmetric = detect_symmetry(n_func, period)

    return Profile(
        n_func=n_func,
        dn_func=dn_func,
        period=period,
        discontinuities=tuple(jumps),
        symmetric=symmetric,
        name=name,
        layers=tuple((float(n), float(d)) for n, d in layers),
    )
