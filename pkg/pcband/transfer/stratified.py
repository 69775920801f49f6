"""
Stratified (piecewise-homogeneous) media.

Inside a homogeneous layer the envelope amplitudes are constant, so the
one-period transfer matrix of a layer stack is the ordered product of jump
matrices at its interfaces, including the wrap-around interface from the
last layer back into the first one. All routines here are exact up to
round-off and accept arrays of free-space wavenumbers, returning stacks of
matrices of shape (..., 2, 2).
"""

import functools
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from pcband.config import IncidenceConfig, Polarization
from pcband.constants import POSITION_TOLERANCE
from pcband.exceptions import ProfileError
from pcband.matrix import Mat2
from pcband.profile.base import Profile, layered_profile
from pcband.profile.wavenumber import wavenumber_factor
from pcband.utils.validation import InputValidator

logger = logging.getLogger(__name__)

ArrayLike = Union[float, complex, np.ndarray]


@dataclass(frozen=True, eq=False)
class LayerStack:
    """
    One period of homogeneous layers, laid out upward from -L/2.

    layers holds (n, d) pairs. interfaces[j] is the upper boundary of layer j;
    the last one, at +L/2, is the period-closing interface.
    """

    layers: Tuple[Tuple[float, float], ...]
    name: str = "layers"

    def __post_init__(self) -> None:
        validated, warnings = InputValidator.validate_layers(list(self.layers))
        for message in warnings:
            logger.warning(message)
        object.__setattr__(self, "layers", tuple(validated))

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[float, float]], name: str = "layers") -> "LayerStack":
        return cls(tuple((float(n), float(d)) for n, d in pairs), name=name)

    @classmethod
    def from_profile(cls, p: Profile) -> "LayerStack":
        """Exact stack of a piecewise-constant profile."""
        if p.layers is None:
            raise ProfileError(f"Profile '{p.name}' is not piecewise constant")
        return cls(p.layers, name=p.name)

    @property
    def indices(self) -> np.ndarray:
        return np.array([n for n, _ in self.layers])

    @property
    def thicknesses(self) -> np.ndarray:
        return np.array([d for _, d in self.layers])

    @property
    def period(self) -> float:
        return float(self.thicknesses.sum())

    @property
    def interfaces(self) -> np.ndarray:
        return -0.5 * self.period + np.cumsum(self.thicknesses)

    @property
    def n_min(self) -> float:
        return float(self.indices.min())

    def is_propagating(self, inc: IncidenceConfig) -> bool:
        """All layer wavenumbers real."""
        return inc.n_eff < self.n_min

    @functools.cached_property
    def profile(self) -> Profile:
        """Equivalent piecewise-constant profile (built once per stack)."""
        return layered_profile(self.layers, name=self.name)

    def to_profile(self) -> Profile:
        return self.profile


def jump_matrix(
    pol: Polarization,
    n_j: float,
    n_j1: float,
    k_j: ArrayLike,
    k_j1: ArrayLike,
    x_j: float,
) -> np.ndarray:
    """
    Transfer matrix across an index step at X_j from medium j into medium j+1.

    TE keeps A and A' continuous, TM keeps A and A'/n² continuous. With
    p = k_j (TE) or p = (n_{j+1}/n_j)²·k_j (TM):

        q11 = (k_{j+1} + p)/(2k_{j+1})·e^{+j(k_{j+1} - k_j)X}
        q12 = (k_{j+1} - p)/(2k_{j+1})·e^{+j(k_{j+1} + k_j)X}
        q21 = (k_{j+1} - p)/(2k_{j+1})·e^{-j(k_{j+1} + k_j)X}
        q22 = (k_{j+1} + p)/(2k_{j+1})·e^{-j(k_{j+1} - k_j)X}

    so det = p/k_{j+1}.

    Raises:
        ValueError: If either wavenumber is zero
    """
    kj = np.asarray(k_j, dtype=complex)
    kj1 = np.asarray(k_j1, dtype=complex)
    if np.any(kj == 0) or np.any(kj1 == 0):
        raise ValueError("Jump matrix is undefined for a zero wavenumber (cutoff)")
    pol = Polarization(pol)
    p = kj if pol == Polarization.TE else (n_j1 / n_j) ** 2 * kj

    same = (kj1 + p) / (2.0 * kj1)
    cross = (kj1 - p) / (2.0 * kj1)
    diff_phase = np.exp(1j * (kj1 - kj) * x_j)
    sum_phase = np.exp(1j * (kj1 + kj) * x_j)

    out = np.empty(np.broadcast(kj, kj1).shape + (2, 2), dtype=complex)
    out[..., 0, 0] = same * diff_phase
    out[..., 0, 1] = cross * sum_phase
    out[..., 1, 0] = cross / sum_phase
    out[..., 1, 1] = same / diff_phase
    return out


def layer_wavenumbers(stack: LayerStack, inc: IncidenceConfig, k0: ArrayLike) -> np.ndarray:
    """Wavenumbers of every layer, shape k0.shape + (n_layers,)."""
    k0_arr = np.asarray(k0, dtype=float)
    return k0_arr[..., None] * wavenumber_factor(stack.indices, inc.n_eff)


def period_transfer(
    stack: LayerStack, inc: IncidenceConfig, k0: ArrayLike, pol: Polarization
) -> np.ndarray:
    """
    One-period transfer matrix Q = J_n·…·J_2·J_1 of a layer stack.

    J_j is the jump from layer j into layer j+1 at its upper interface; the
    last jump closes the period back into the first layer at +L/2. Evanescent
    layers (n_j < n_eff) are allowed; the q11 = conj(q22) structure only holds
    when every layer wavenumber is real.

    Args:
        stack: Layer stack
        inc: Incidence configuration
        k0: Free-space wavenumber or array of them
        pol: Polarization

    Returns:
        Matrix of shape (2, 2), or (len(k0), 2, 2) for array input
    """
    ks = layer_wavenumbers(stack, inc, k0)
    ns = stack.indices
    count = len(stack.layers)
    jumps = np.stack(
        [
            jump_matrix(
                pol, ns[j], ns[(j + 1) % count], ks[..., j], ks[..., (j + 1) % count], x_j
            )
            for j, x_j in enumerate(stack.interfaces)
        ]
    )
    if not stack.is_propagating(inc):
        logger.debug(f"Stack '{stack.name}' has evanescent layers at n_eff = {inc.n_eff:.6g}")
    return Mat2.product(jumps)


def staircase(p: Profile, layer_count: int) -> LayerStack:
    """
    Approximate a profile by layer_count equal layers sampled at their midpoints.

    Declared jumps of the profile are inserted as extra layer boundaries, so
    discontinuities are never smeared. The approximation is second order in
    the layer width for smooth profiles and exact for piecewise-constant ones.
    """
    if layer_count < 2:
        raise ValueError(f"Staircase needs at least 2 layers, got {layer_count}")
    half = 0.5 * p.period
    bounds = np.linspace(-half, half, layer_count + 1)
    jumps = [d.position for d in p.discontinuities if d.position > -half]
    if jumps:
        bounds = np.unique(np.concatenate([bounds, jumps]))
        keep = np.concatenate([[True], np.diff(bounds) > POSITION_TOLERANCE * p.period])
        bounds = bounds[keep]
        bounds[-1] = half
    mids = 0.5 * (bounds[:-1] + bounds[1:])
    ns = np.asarray(p.n(mids), dtype=float)
    widths = np.diff(bounds)
    return LayerStack(tuple(zip(ns.tolist(), widths.tolist())), name=f"{p.name}[{layer_count}]")
