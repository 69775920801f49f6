"""
Monodromy oracle.

Integrates the wave equation directly over one period with classical
fourth-order Runge-Kutta and returns half the trace of the monodromy
matrix. The state is (A, P) with P = A' for TE and P = A'/n² for TM; both
components are continuous across index jumps, so jumps only split the
integration, and the system matrix [[0, a], [-b, 0]] is traceless, so the
exact monodromy has unit determinant in both polarizations.
"""

import logging
import math
from typing import List, Tuple, Union

import numpy as np

from pcband.config import IncidenceConfig, Polarization
from pcband.constants import MONODROMY_STEPS, POSITION_TOLERANCE, WRONSKIAN_TOLERANCE
from pcband.exceptions import OracleError
from pcband.profile.base import Profile

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def _apply(a: ArrayLike, b: np.ndarray, w: np.ndarray) -> np.ndarray:
    """[[0, a], [-b, 0]] @ w for a stack of 2x2 matrices w."""
    out = np.empty_like(w)
    out[..., 0, :] = np.asarray(a)[..., None] * w[..., 1, :]
    out[..., 1, :] = -b[..., None] * w[..., 0, :]
    return out


class MonodromyIntegrator:
    """
    Fixed-step RK4 integrator of W' = C(x)·W over one period.

    Vectorized over free-space wavenumbers: W has shape (len(k0), 2, 2).
    The period is split at jumps and kinks; each segment gets its share of
    the step budget, and the coefficients at a segment end are the one-sided
    limits taken from inside the segment.
    """

    def __init__(
        self,
        profile: Profile,
        inc: IncidenceConfig,
        pol: Polarization,
        steps: int = MONODROMY_STEPS,
    ):
        if steps < 1:
            raise ValueError(f"Step count must be positive, got {steps}")
        self.profile = profile
        self.inc = inc
        self.pol = Polarization(pol)
        self.steps = steps
        self._segments = self._build_segments()

    def _build_segments(self) -> List[Tuple[float, np.ndarray, np.ndarray]]:
        p = self.profile
        half = 0.5 * p.period
        cuts = [-half] + p.breakpoints_between(-half, half) + [half]
        nudge = 10.0 * POSITION_TOLERANCE * p.period
        segments = []
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            count = max(1, int(math.ceil(self.steps * (hi - lo) / p.period)))
            h = (hi - lo) / count
            nodes = lo + h * np.arange(count + 1)
            nodes[0] = lo + nudge
            nodes[-1] = hi - nudge
            mids = lo + h * (np.arange(count) + 0.5)
            segments.append(
                (h, np.asarray(p.n(nodes), dtype=float), np.asarray(p.n(mids), dtype=float))
            )
        return segments

    def _coefficients(self, n: np.ndarray, k0: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """a and b of the system matrix at indices n, shapes (len(n),) and (len(k0), len(n))."""
        k_sq = (k0 * k0)[:, None] * (n * n - self.inc.n_eff**2)[None, :]
        if self.pol == Polarization.TE:
            return np.ones_like(n), k_sq
        return n * n, k_sq / (n * n)[None, :]

    def monodromy(self, k0: ArrayLike) -> np.ndarray:
        """Monodromy matrices, shape (2, 2) or (len(k0), 2, 2)."""
        k0_arr = np.atleast_1d(np.asarray(k0, dtype=float))
        w = np.broadcast_to(np.eye(2), (k0_arr.size, 2, 2)).copy()
        logger.debug(
            f"RK4 monodromy of '{self.profile.name}': {len(self._segments)} segments, "
            f"{k0_arr.size} wavenumbers"
        )
        for h, n_nodes, n_mids in self._segments:
            a_nodes, b_nodes = self._coefficients(n_nodes, k0_arr)
            a_mids, b_mids = self._coefficients(n_mids, k0_arr)
            for i in range(n_mids.size):
                k1 = _apply(a_nodes[i], b_nodes[:, i], w)
                k2 = _apply(a_mids[i], b_mids[:, i], w + 0.5 * h * k1)
                k3 = _apply(a_mids[i], b_mids[:, i], w + 0.5 * h * k2)
                k4 = _apply(a_nodes[i + 1], b_nodes[:, i + 1], w + h * k3)
                w = w + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        return w[0] if np.ndim(k0) == 0 else w


def monodromy_cos(
    p: Profile,
    inc: IncidenceConfig,
    k0: ArrayLike,
    pol: Polarization,
    steps: int = MONODROMY_STEPS,
) -> ArrayLike:
    """
    Floquet discriminant cos(κL) = tr(W)/2 from direct integration.

    Args:
        p: Index profile
        inc: Incidence configuration
        k0: Free-space wavenumber or array of them
        pol: Polarization
        steps: RK4 steps per period

    Returns:
        cos(κL), float or array matching k0

    Raises:
        OracleError: If |det W - 1| exceeds 1e-6 (step too coarse for the frequency)
    """
    w = MonodromyIntegrator(p, inc, pol, steps).monodromy(k0)
    det = w[..., 0, 0] * w[..., 1, 1] - w[..., 0, 1] * w[..., 1, 0]
    drift = np.max(np.abs(det - 1.0))
    if drift > WRONSKIAN_TOLERANCE:
        raise OracleError(
            f"Monodromy of '{p.name}' lost unit determinant (|det W - 1| = {drift:.3e}); "
            f"increase the step count"
        )
    value = 0.5 * (w[..., 0, 0] + w[..., 1, 1])
    return float(value) if np.ndim(value) == 0 else value
