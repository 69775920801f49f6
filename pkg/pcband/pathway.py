"""
Dispersion pathways.

A DispersionEvaluator turns a medium (a Profile or a LayerStack) plus
polarization and incidence into cos(κL) as a function of the normalized
frequency Ω = L/λ₀, by one of three routes:

- symmetric: closed form from the symmetric M matrix (even, smooth, real-k media)
- general: exponentiated M over the period window with spliced jump matrices
- stratified: exact jump-matrix products of a layer stack, or of a staircase
  approximation of a graded profile
"""

import logging
from typing import Union

import numpy as np

from pcband.config import IncidenceConfig, Pathway, Polarization
from pcband.constants import DEFAULT_STAIRCASE_LAYERS
from pcband.dispersion import bloch_cos_general, bloch_cos_stratified, bloch_cos_symmetric
from pcband.exceptions import ConfigurationError
from pcband.profile.base import Profile
from pcband.profile.wavenumber import average_wavenumber
from pcband.transfer.dtmm import (
    TransferContext,
    m_symmetric,
    m_symmetric_tm,
    period_transfer_general,
)
from pcband.transfer.stratified import (
    LayerStack,
    layer_wavenumbers,
    period_transfer,
    staircase,
)
from pcband.utils.conversions import UnitConversions

logger = logging.getLogger(__name__)

Medium = Union[Profile, LayerStack]


def as_profile(medium: Medium) -> Profile:
    return medium.to_profile() if isinstance(medium, LayerStack) else medium


def symmetric_eligible(p: Profile, inc: IncidenceConfig) -> bool:
    """Even, jump-free and real-k over the whole period."""
    return p.symmetric and p.is_smooth and inc.n_eff < p.n_min


class DispersionEvaluator:
    """
    cos(κL) of one medium under fixed polarization and incidence.

    The requested pathway is resolved once at construction; `pathway` holds
    the resolved value (never AUTO).
    """

    def __init__(
        self,
        medium: Medium,
        pol: Polarization = Polarization.TE,
        inc: IncidenceConfig = IncidenceConfig(),
        pathway: Pathway = Pathway.AUTO,
        staircase_layers: int = DEFAULT_STAIRCASE_LAYERS,
        reuse_diagonal: bool = True,
    ):
        self.medium = medium
        self.profile = as_profile(medium)
        self.pol = Polarization(pol)
        self.inc = inc
        self.reuse_diagonal = reuse_diagonal
        self.pathway = self.resolve(Pathway(pathway))
        self.stack = None
        if self.pathway == Pathway.STRATIFIED:
            self.stack = self._layer_stack(staircase_layers)
        logger.info(
            f"Dispersion of '{self.profile.name}' ({self.pol.value.upper()}, "
            f"n_eff = {inc.n_eff:.6g}) via the {self.pathway.value} pathway"
        )

    def resolve(self, requested: Pathway) -> Pathway:
        """
        Pick the pathway for AUTO and check the preconditions of SYMMETRIC.

        Raises:
            ConfigurationError: If the symmetric pathway is requested for an ineligible medium
        """
        eligible = symmetric_eligible(self.profile, self.inc)
        if requested == Pathway.SYMMETRIC and not eligible:
            p = self.profile
            reasons = []
            if not p.symmetric:
                reasons.append("profile is not even-symmetric")
            if not p.is_smooth:
                reasons.append("profile has index jumps")
            if not self.inc.n_eff < p.n_min:
                reasons.append(
                    f"k is not real everywhere (n_eff = {self.inc.n_eff:.6g} >= min n = {p.n_min:.6g})"
                )
            raise ConfigurationError(
                f"Symmetric pathway unavailable for '{p.name}': {'; '.join(reasons)}"
            )
        if requested != Pathway.AUTO:
            return requested
        if eligible:
            return Pathway.SYMMETRIC
        if isinstance(self.medium, LayerStack):
            return Pathway.STRATIFIED
        return Pathway.GENERAL

    def _layer_stack(self, staircase_layers: int) -> LayerStack:
        if isinstance(self.medium, LayerStack):
            return self.medium
        if self.profile.is_piecewise_constant:
            return LayerStack.from_profile(self.profile)
        logger.info(f"Approximating '{self.profile.name}' by {staircase_layers} layers")
        return staircase(self.profile, staircase_layers)

    def context(self, omega: float) -> TransferContext:
        k0 = UnitConversions.omega_to_k0(omega, self.profile.period)
        return TransferContext(self.profile, self.inc, k0, self.pol)

    def cos_kl(self, omega: float) -> complex:
        """
        cos(κL) at one normalized frequency.

        The imaginary part is round-off on the real-k pathways and carries the
        residual of the general form otherwise.
        """
        if self.pathway == Pathway.STRATIFIED:
            return complex(self.cos_kl_many(np.array([omega]))[0])
        ctx = self.context(omega)
        period = self.profile.period
        if self.pathway == Pathway.SYMMETRIC:
            builder = m_symmetric if self.pol == Polarization.TE else m_symmetric_tm
            m = builder(ctx, reuse_diagonal=self.reuse_diagonal)
            u = float(np.real(ctx.k(0.5 * period))) * period
            kbar_L = average_wavenumber(self.profile, self.inc, ctx.k0) * period
            return complex(bloch_cos_symmetric(m, u, kbar_L))
        q, k_ref = period_transfer_general(ctx)
        return complex(bloch_cos_general(q[0, 0], q[1, 1], k_ref, period))

    def cos_kl_many(self, omegas: np.ndarray) -> np.ndarray:
        """Vectorized cos(κL) for the stratified pathway; a plain loop otherwise."""
        omegas = np.asarray(omegas, dtype=float)
        if self.pathway != Pathway.STRATIFIED:
            return np.array([self.cos_kl(w) for w in omegas], dtype=complex)
        stack = self.stack
        k0 = UnitConversions.omega_to_k0(omegas, stack.period)
        q = period_transfer(stack, self.inc, k0, self.pol)
        k1 = layer_wavenumbers(stack, self.inc, k0)[..., 0]
        if stack.is_propagating(self.inc):
            return np.asarray(bloch_cos_stratified(q[..., 0, 0], k1, stack.period), dtype=complex)
        return np.asarray(bloch_cos_general(q[..., 0, 0], q[..., 1, 1], k1, stack.period))

    def real_cos_kl(self, omega: float) -> float:
        return float(self.cos_kl(omega).real)
