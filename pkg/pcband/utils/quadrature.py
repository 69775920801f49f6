"""
Adaptive composite Gauss-Legendre quadrature for oscillatory integrands.

The integrands of the transfer-matrix entries carry factors e^{±j2k(x)x},
which oscillate faster at high frequency and far from the origin. The
initial panel layout therefore follows the variation of a caller-supplied
phase function (at least PANELS_PER_OSCILLATION panels per 2π), after which
every panel is compared against its two halves and split until the
entrywise error budget is met.
"""

import logging
import math
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from pcband.constants import (
    GAUSS_LEGENDRE_ORDER,
    PANELS_PER_OSCILLATION,
    PHASE_SAMPLE_POINTS,
    QUADRATURE_ABS_TOL,
    QUADRATURE_MAX_DEPTH,
    TWO_PI,
)
from pcband.exceptions import QuadratureError

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]
PhaseFunction = Callable[[np.ndarray], np.ndarray]


class AdaptiveQuadrature:
    """
    Vectorized adaptive Gauss-Legendre integrator.

    The integrand maps a 1-D array of positions to either an array of the
    same length or an array of shape (m, len(x)) for m components integrated
    together; all components share the panel layout and the error test.
    """

    def __init__(
        self,
        order: int = GAUSS_LEGENDRE_ORDER,
        abs_tol: float = QUADRATURE_ABS_TOL,
        max_depth: int = QUADRATURE_MAX_DEPTH,
        panels_per_oscillation: int = PANELS_PER_OSCILLATION,
    ):
        if order < 2:
            raise ValueError(f"Gauss-Legendre order must be >= 2, got {order}")
        if abs_tol <= 0:
            raise ValueError(f"Quadrature tolerance must be positive, got {abs_tol}")
        self.order = order
        self.abs_tol = abs_tol
        self.max_depth = max_depth
        self.panels_per_oscillation = panels_per_oscillation
        self._nodes, self._weights = leggauss(order)

    def initial_edges(
        self,
        a: float,
        b: float,
        phase: Optional[PhaseFunction] = None,
        breakpoints: Sequence[float] = (),
    ) -> np.ndarray:
        """
        Panel edges on [a, b] (a < b): breakpoints are always edges, and each
        piece between them gets enough equal panels for the phase variation.
        """
        inner = sorted(p for p in breakpoints if a < p < b)
        cuts = [a] + inner + [b]
        edges = [a]
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            count = 1
            if phase is not None:
                xs = np.linspace(lo, hi, PHASE_SAMPLE_POINTS)
                variation = float(np.sum(np.abs(np.diff(np.real(phase(xs))))))
                count = max(1, int(math.ceil(self.panels_per_oscillation * variation / TWO_PI)))
            edges.extend(np.linspace(lo, hi, count + 1)[1:].tolist())
        return np.asarray(edges, dtype=float)

    def _panel_sums(self, func: Integrand, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        x = mid[:, None] + half[:, None] * self._nodes[None, :]
        values = np.asarray(func(x.ravel()))
        values = values.reshape(values.shape[:-1] + (lo.size, self.order))
        return (values @ self._weights) * half

    def integrate(
        self,
        func: Integrand,
        a: float,
        b: float,
        phase: Optional[PhaseFunction] = None,
        breakpoints: Sequence[float] = (),
    ) -> np.ndarray:
        """
        Integrate func over [a, b] to the configured absolute tolerance.

        Args:
            func: Vectorized integrand
            a: Lower limit
            b: Upper limit (b < a integrates with the opposite sign)
            phase: Optional real phase function that sets the initial panel density
            breakpoints: Positions that must be panel edges (kinks of the integrand)

        Returns:
            Integral value, scalar-shaped or of shape (m,)

        Raises:
            QuadratureError: If panels still fail the error test at max depth
        """
        if a == b:
            sample = np.asarray(func(np.array([a], dtype=float)))
            return np.zeros(sample.shape[:-1], dtype=sample.dtype)
        sign = 1.0
        if b < a:
            a, b = b, a
            sign = -1.0

        edges = self.initial_edges(a, b, phase, breakpoints)
        lo = edges[:-1]
        hi = edges[1:]
        span = b - a
        coarse = self._panel_sums(func, lo, hi)
        total = np.zeros(coarse.shape[:-1], dtype=coarse.dtype)

        depth = 0
        while lo.size:
            mid = 0.5 * (lo + hi)
            left = self._panel_sums(func, lo, mid)
            right = self._panel_sums(func, mid, hi)
            fine = left + right
            err = np.abs(fine - coarse)
            if err.ndim > 1:
                err = err.max(axis=0)
            ok = err <= self.abs_tol * (hi - lo) / span
            total = total + fine[..., ok].sum(axis=-1)

            bad = ~ok
            if not bad.any():
                break
            if depth >= self.max_depth:
                worst = float(err[bad].max())
                raise QuadratureError(
                    f"Quadrature on [{a}, {b}] did not converge after {depth} refinements "
                    f"({int(bad.sum())} panels left, worst error estimate {worst:.3e})",
                    worst_estimate=worst,
                )
            lo, hi = np.concatenate([lo[bad], mid[bad]]), np.concatenate([mid[bad], hi[bad]])
            coarse = np.concatenate([left[..., bad], right[..., bad]], axis=-1)
            depth += 1

        if depth > 4:
            logger.debug(f"Quadrature on [{a:.6g}, {b:.6g}] needed {depth} refinement levels")
        return sign * total
