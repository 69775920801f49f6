"""
Differential transfer matrices.

The field in a graded medium is written A(x) = F+(x)e^{-jk(x)x} + F-(x)e^{+jk(x)x},
with the phase measured from the origin. The amplitudes obey F' = U(x)F (TE)
or F' = V(x)F (TM), and the transfer matrix from a to b is taken as
Q_{a→b} = exp(M_{a→b}) with M_{a→b} the entrywise integral of U (or V).

Over a period window that contains index jumps, the smooth segments are
exponentiated separately and the jump matrices from the stratified module
are spliced in between them.
"""

import functools
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from pcband.config import IncidenceConfig, Polarization
from pcband.constants import (
    CUTOFF_GUARD,
    INVERSE_BISECTION_TOLERANCE,
    MONOTONIC_SAMPLE_POINTS,
    PHASE_SAMPLE_POINTS,
)
from pcband.exceptions import (
    ConfigurationError,
    CutoffSingularityError,
    DiscontinuityError,
    NumericalError,
)
from pcband.matrix import Mat2, Mat2c
from pcband.profile.base import Profile
from pcband.profile.wavenumber import (
    has_real_wavenumber,
    mean_wavenumber_factor,
    wavenumber_factor,
)
from pcband.transfer.stratified import jump_matrix
from pcband.utils.quadrature import AdaptiveQuadrature

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class TransferContext:
    """Profile, illumination, free-space wavenumber and polarization of one evaluation."""

    profile: Profile
    inc: IncidenceConfig
    k0: float
    pol: Polarization = Polarization.TE

    def __post_init__(self) -> None:
        if not self.k0 > 0:
            raise ValueError(f"Free-space wavenumber must be positive, got {self.k0}")
        object.__setattr__(self, "pol", Polarization(self.pol))

    @property
    def period(self) -> float:
        return self.profile.period

    def with_k0(self, k0: float) -> "TransferContext":
        return TransferContext(self.profile, self.inc, k0, self.pol)

    def k(self, x: ArrayLike) -> np.ndarray:
        return self.k0 * wavenumber_factor(self.profile.n(x), self.inc.n_eff)

    def k_of_index(self, n: float) -> complex:
        return complex(self.k0 * wavenumber_factor(n, self.inc.n_eff))

    def dk(self, x: ArrayLike) -> np.ndarray:
        """k'(x) = k0²·n·n'/k by the chain rule."""
        n = np.asarray(self.profile.n(x), dtype=float)
        dn = np.asarray(self.profile.dn_dx(x), dtype=float)
        return self.k0 * self.k0 * n * dn / self.k(x)

    def real_k(self) -> bool:
        return has_real_wavenumber(self.profile, self.inc)


@dataclass(frozen=True)
class IntervalMatrix:
    """Integrated coefficient matrix M_{a→b} (TE) or N_{a→b} (TM)."""

    m: Mat2c
    a: float
    b: float
    pol: Polarization

    @property
    def trace(self) -> complex:
        return complex(Mat2.trace(self.m))


def _coefficient_entries(ctx: TransferContext, x: np.ndarray) -> np.ndarray:
    """Entries (11, 12, 21, 22) of U or V at positions x, shape (4, len(x))."""
    x = np.asarray(x, dtype=float)
    n = np.asarray(ctx.profile.n(x), dtype=float)
    dn = np.asarray(ctx.profile.dn_dx(x), dtype=float)
    k = ctx.k0 * wavenumber_factor(n, ctx.inc.n_eff)
    if np.any(k == 0):
        raise CutoffSingularityError(f"Local wavenumber vanishes inside the interval (k0 = {ctx.k0})")
    dk = ctx.k0 * ctx.k0 * n * dn / k
    f = dk / (2.0 * k)
    forward = np.exp(2j * k * x)
    drift = 1j * dk * x

    if ctx.pol == Polarization.TE:
        return np.stack([-f + drift, f * forward, f / forward, -f - drift])

    log_dn = dn / n
    cross = f - log_dn
    return np.stack(
        [-f + log_dn + drift, cross * forward, cross / forward, -f + log_dn - drift]
    )


def u_matrix(ctx: TransferContext, x: float) -> Mat2c:
    """
    TE coefficient matrix at a smooth point x.

    U(x) = (k'/2k)·[[-1 + j2kx, e^{+j2kx}], [e^{-j2kx}, -1 - j2kx]]

    Raises:
        ValueError: If the context is not TE
        CutoffSingularityError: If k(x) = 0
    """
    if ctx.pol != Polarization.TE:
        raise ValueError("u_matrix is the TE coefficient matrix; use v_matrix for TM")
    return Mat2.from_entries(*_coefficient_entries(ctx, np.array([x]))[:, 0])


def v_matrix(ctx: TransferContext, x: float) -> Mat2c:
    """
    TM coefficient matrix at a smooth point x.

    Differs from U by the n'/n terms: v11 = -k'/2k + n'/n + jk'x, and the
    off-diagonal factor k'/2k becomes k'/2k - n'/n.

    Raises:
        ValueError: If the context is not TM
        CutoffSingularityError: If k(x) = 0
    """
    if ctx.pol != Polarization.TM:
        raise ValueError("v_matrix is the TM coefficient matrix; use u_matrix for TE")
    return Mat2.from_entries(*_coefficient_entries(ctx, np.array([x]))[:, 0])


def _check_cutoff(ctx: TransferContext, a: float, b: float) -> None:
    xs = np.linspace(a, b, PHASE_SAMPLE_POINTS)[1:-1]
    if xs.size == 0:
        return
    smallest = float(np.min(np.abs(ctx.k(xs))))
    if smallest < CUTOFF_GUARD * ctx.k0:
        raise CutoffSingularityError(
            f"Local wavenumber nearly vanishes on [{a:.6g}, {b:.6g}] "
            f"(min |k| = {smallest:.3e}, k0 = {ctx.k0:.6g})"
        )


def interval_matrix(ctx: TransferContext, a: float, b: float) -> IntervalMatrix:
    """
    Integrate U (or V) entrywise over [a, b].

    Panel density follows the local phase 2k(x)x; kinks of the profile are
    panel edges. b < a gives the integral with the opposite sign.

    Raises:
        DiscontinuityError: If an index jump lies strictly inside the interval
        CutoffSingularityError: If |k| < 1e-8·k0 somewhere on the interval
        QuadratureError: If the quadrature does not converge
    """
    p = ctx.profile
    lo, hi = (a, b) if a <= b else (b, a)
    inside = p.discontinuities_between(lo, hi)
    if inside:
        raise DiscontinuityError(
            f"Interval [{lo:.6g}, {hi:.6g}] contains index jumps at {inside}; "
            f"splice jump matrices instead"
        )
    if a == b or p.is_piecewise_constant:
        return IntervalMatrix(np.zeros((2, 2), dtype=complex), a, b, ctx.pol)
    _check_cutoff(ctx, lo, hi)

    def phase(x: np.ndarray) -> np.ndarray:
        return np.real(2.0 * ctx.k(x) * x)

    quad = AdaptiveQuadrature()
    entries = quad.integrate(
        lambda x: _coefficient_entries(ctx, x), a, b, phase=phase, breakpoints=p.kinks_between(lo, hi)
    )
    return IntervalMatrix(Mat2.from_entries(*entries), a, b, ctx.pol)


def exponentiate(m: Mat2c) -> Mat2c:
    """exp(m), in closed form when m is traceless."""
    if Mat2.is_traceless(m):
        return Mat2.exp_traceless(m)
    return Mat2.exp(m)


def transfer_matrix(ctx: TransferContext, a: float, b: float) -> Mat2c:
    """Q_{a→b} = exp(M_{a→b}) over a jump-free interval."""
    return exponentiate(interval_matrix(ctx, a, b).m)


def _jump_at(ctx: TransferContext, x: float) -> Mat2c:
    p = ctx.profile
    n_left = p.n_limit(x, "left")
    n_right = p.n_limit(x, "right")
    return jump_matrix(
        ctx.pol, n_left, n_right, ctx.k_of_index(n_left), ctx.k_of_index(n_right), x
    )


def period_transfer_general(
    ctx: TransferContext, x0: Optional[float] = None
) -> Tuple[Mat2c, complex]:
    """
    One-period transfer matrix over the window [x0, x0 + L].

    Smooth segments are exponentiated individually and jump matrices are
    applied at every declared discontinuity inside the window. A window that
    starts on a jump starts in the right-hand medium and is closed by the
    same jump at x0 + L.

    Args:
        ctx: Transfer context
        x0: Window start (defaults to -L/2)

    Returns:
        Tuple of (Q, k_ref) with k_ref the wavenumber of the medium at the window start
    """
    p = ctx.profile
    if x0 is None:
        x0 = -0.5 * p.period
    x_end = x0 + p.period
    cuts: List[float] = [x0] + p.discontinuities_between(x0, x_end) + [x_end]

    q = Mat2.identity()
    for i, (a, b) in enumerate(zip(cuts[:-1], cuts[1:])):
        if i > 0:
            q = _jump_at(ctx, a) @ q
        if not p.is_piecewise_constant:
            q = transfer_matrix(ctx, a, b) @ q
    if p.discontinuity_at(x0) is not None:
        q = _jump_at(ctx, x_end) @ q

    k_ref = ctx.k_of_index(p.n_limit(x0, "right"))
    return q, k_ref


def _require_symmetric(ctx: TransferContext, pol: Polarization) -> None:
    p = ctx.profile
    if ctx.pol != pol:
        raise ConfigurationError(
            f"Symmetric {pol.value.upper()} matrix requested for a {ctx.pol.value.upper()} context"
        )
    if not p.symmetric:
        raise ConfigurationError(f"Profile '{p.name}' is not even-symmetric; use interval_matrix")
    if not p.is_smooth:
        raise ConfigurationError(
            f"Profile '{p.name}' has index jumps; use the general or stratified pathway"
        )
    if not ctx.real_k():
        raise ConfigurationError(
            f"The symmetric pathway needs real k over the period (n_eff = {ctx.inc.n_eff:.6g}, "
            f"min n = {p.n_min:.6g}); use interval_matrix"
        )


@functools.lru_cache(maxsize=128)
def _diagonal_factor(p: Profile, n_eff: float) -> float:
    """L·(s(L/2) - s̄) with s = k/k0, so that m11 = j·k0·(this)."""
    half = 0.5 * p.period
    edge = float(np.real(wavenumber_factor(p.n(half), n_eff)))
    logger.debug(f"Computing symmetric diagonal factor for '{p.name}' at n_eff = {n_eff:.6g}")
    return p.period * (edge - mean_wavenumber_factor(p, n_eff))


def _half_period_sine_integral(ctx: TransferContext, tm: bool) -> complex:
    """j∫₀^{L/2} sin(2kx)·g(x) dx with g = k'/k (TE) or k'/k - 2n'/n (TM)."""
    p = ctx.profile
    half = 0.5 * p.period

    def integrand(x: np.ndarray) -> np.ndarray:
        n = np.asarray(p.n(x), dtype=float)
        dn = np.asarray(p.dn_dx(x), dtype=float)
        k = ctx.k0 * np.real(wavenumber_factor(n, ctx.inc.n_eff))
        g = ctx.k0 * ctx.k0 * n * dn / (k * k)
        if tm:
            g = g - 2.0 * dn / n
        return np.sin(2.0 * k * x) * g

    def phase(x: np.ndarray) -> np.ndarray:
        return np.real(2.0 * ctx.k(x) * x)

    quad = AdaptiveQuadrature()
    value = quad.integrate(integrand, 0.0, half, phase=phase, breakpoints=p.kinks_between(0.0, half))
    return 1j * float(value)


def _symmetric(ctx: TransferContext, tm: bool, reuse_diagonal: bool) -> IntervalMatrix:
    p = ctx.profile
    half = 0.5 * p.period
    if reuse_diagonal:
        m11 = 1j * ctx.k0 * _diagonal_factor(p, ctx.inc.n_eff)
    else:
        quad = AdaptiveQuadrature()
        te_ctx = TransferContext(p, ctx.inc, ctx.k0, Polarization.TE)
        # real part is -ln(k(L/2)/k(-L/2))/2 = 0 over an even period
        m11 = 1j * complex(
            quad.integrate(
                lambda x: _coefficient_entries(te_ctx, x)[0],
                -half,
                half,
                phase=lambda x: np.real(2.0 * ctx.k(x) * x),
                breakpoints=p.kinks_between(-half, half),
            )
        ).imag
    m12 = _half_period_sine_integral(ctx, tm)
    return IntervalMatrix(Mat2.from_entries(m11, m12, -m12, -m11), -half, half, ctx.pol)


def m_symmetric(ctx: TransferContext, reuse_diagonal: bool = True) -> IntervalMatrix:
    """
    M over the symmetric window [-L/2, L/2] for an even, real-k TE medium.

    m11 = -m22 = jL(k(L/2) - k̄) and m12 = -m21 = j∫₀^{L/2} sin(2kx)·k'/k dx.
    The diagonal depends on k0 only through a linear factor, which is computed
    once per (profile, n_eff) and rescaled. reuse_diagonal=False integrates
    the diagonal entry of U over the whole period instead.

    Raises:
        ConfigurationError: Asymmetric or discontinuous profile, complex k, or a TM context
    """
    _require_symmetric(ctx, Polarization.TE)
    return _symmetric(ctx, tm=False, reuse_diagonal=reuse_diagonal)


def m_symmetric_tm(ctx: TransferContext, reuse_diagonal: bool = True) -> IntervalMatrix:
    """
    TM counterpart of m_symmetric.

    The diagonal is the same as for TE (the n'/n term integrates to zero over
    an even period); the off-diagonal integrand is sin(2kx)·(k'/k - 2n'/n).
    """
    _require_symmetric(ctx, Polarization.TM)
    return _symmetric(ctx, tm=True, reuse_diagonal=reuse_diagonal)


def _invert_monotonic(ctx: TransferContext, targets: np.ndarray, increasing: bool) -> np.ndarray:
    """Positions x in [0, L/2] with k(x) = target, by vectorized bisection."""
    half = 0.5 * ctx.period
    lo = np.zeros_like(targets)
    hi = np.full_like(targets, half)
    tol = INVERSE_BISECTION_TOLERANCE * ctx.period
    while np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        below = np.real(ctx.k(mid)) < targets
        go_right = below if increasing else ~below
        lo = np.where(go_right, mid, lo)
        hi = np.where(go_right, hi, mid)
    return 0.5 * (lo + hi)


def m12_by_substitution(ctx: TransferContext) -> complex:
    """
    m12 of the symmetric TE matrix, integrated in the wavenumber variable.

    With k(x) strictly monotonic on [0, L/2], m12 = j∫ sin(2x(k)k)/k dk from
    k(0) to k(L/2), where x(k) is inverted numerically. x(k) is smooth only
    where k'(x) stays away from zero; profiles with a flat extremum at 0 or
    L/2 (the sinusoid) put a square-root endpoint into the integrand.

    Raises:
        ConfigurationError: Same preconditions as m_symmetric
        NumericalError: If k(x) is not strictly monotonic on [0, L/2]
        QuadratureError: If the endpoint behaviour defeats the quadrature
    """
    _require_symmetric(ctx, Polarization.TE)
    half = 0.5 * ctx.period
    xs = np.linspace(0.0, half, MONOTONIC_SAMPLE_POINTS)
    ks = np.real(ctx.k(xs))
    k_start, k_end = float(ks[0]), float(ks[-1])
    steps = np.diff(ks)
    if np.all(steps == 0):
        return 0j
    increasing = bool(np.all(steps > 0))
    if not increasing and not np.all(steps < 0):
        raise NumericalError(
            f"k(x) is not strictly monotonic on [0, L/2] for profile '{ctx.profile.name}'"
        )

    def integrand(k: np.ndarray) -> np.ndarray:
        x = _invert_monotonic(ctx, k, increasing)
        return np.sin(2.0 * x * k) / k

    def phase(k: np.ndarray) -> np.ndarray:
        return 2.0 * _invert_monotonic(ctx, k, increasing) * k

    quad = AdaptiveQuadrature()
    return 1j * float(quad.integrate(integrand, k_start, k_end, phase=phase))
