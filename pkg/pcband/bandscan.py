"""
Band-structure scans.

This module contains the BandScanner orchestrator, which sweeps a uniform
grid of normalized frequencies, classifies every sample, locates gap edges
by bisection and assigns band indices, plus the low-frequency effective
index fit and the first-gap comparison report.
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import bisect

from pcband.config import (
    Allowed,
    BandStructure,
    DispersionSample,
    Forbidden,
    GapInterval,
    IncidenceConfig,
    LowFrequencyFit,
    Pathway,
    Polarization,
    ScanConfig,
)
from pcband.constants import (
    BISECTION_OMEGA_TOLERANCE,
    EDGE_TOLERANCE,
    FOLD_DETECTION_LEVEL,
    LOW_FREQ_OMEGA_MAX,
    LOW_FREQ_OMEGA_MIN,
    LOW_FREQ_POINTS,
    MAX_FAILED_FRACTION,
    RAD_TO_DEG,
)
from pcband.dispersion import classify
from pcband.exceptions import NumericalError, ScanError
from pcband.pathway import DispersionEvaluator, Medium
from pcband.utils.conversions import UnitConversions
from pcband.utils.validation import InputValidator

logger = logging.getLogger(__name__)

Discriminant = Callable[[float], float]


def _gap_excess(c: float) -> float:
    """Positive inside gaps, non-positive in bands (edges included)."""
    return abs(c) - 1.0 - EDGE_TOLERANCE


def _locate_edge(discriminant: Discriminant, lo: float, hi: float) -> float:
    """Bisect |c(Ω)| - 1 on [lo, hi], one end in a band and the other in the gap."""
    try:
        return float(
            bisect(
                lambda w: _gap_excess(discriminant(w)),
                lo,
                hi,
                xtol=BISECTION_OMEGA_TOLERANCE,
            )
        )
    except (NumericalError, ValueError) as e:
        mid = 0.5 * (lo + hi)
        logger.warning(f"Gap edge bisection on [{lo:.9g}, {hi:.9g}] failed ({e}); using {mid:.9g}")
        return mid


def find_gap_edges(
    samples: Sequence[DispersionSample],
    discriminant: Optional[Discriminant] = None,
) -> List[GapInterval]:
    """
    Extract gaps from frequency-ordered samples.

    Each run of consecutive forbidden samples is one gap. When a
    discriminant is given, both edges are bisected between the last band
    sample and the first gap sample to 1e-9 in Ω; otherwise the gap sample
    frequencies are used. A run touching the first or last sample is a
    half-open gap and keeps the scan boundary as its edge.

    Failed samples are skipped.

    Args:
        samples: Samples ordered by frequency
        discriminant: Real cos(κL) as a function of Ω, used for bisection

    Returns:
        Disjoint, ordered gap intervals
    """
    valid = [s for s in samples if not s.failed]
    if len(valid) < 2:
        return []

    gaps: List[GapInterval] = []
    i = 0
    while i < len(valid):
        if not isinstance(valid[i].state, Forbidden):
            i += 1
            continue
        start = i
        while i + 1 < len(valid) and isinstance(valid[i + 1].state, Forbidden):
            i += 1
        stop = i
        run = valid[start : stop + 1]
        open_below = start == 0
        open_above = stop == len(valid) - 1

        if open_below:
            omega_lo = valid[start].omega_norm
        elif discriminant is not None:
            omega_lo = _locate_edge(discriminant, valid[start - 1].omega_norm, valid[start].omega_norm)
        else:
            omega_lo = valid[start].omega_norm
        if open_above:
            omega_hi = valid[stop].omega_norm
        elif discriminant is not None:
            omega_hi = _locate_edge(discriminant, valid[stop].omega_norm, valid[stop + 1].omega_norm)
        else:
            omega_hi = valid[stop].omega_norm

        gap = GapInterval(
            omega_lo=omega_lo,
            omega_hi=omega_hi,
            max_xi=max(s.xi for s in run),
            parity=run[0].state.parity,  # type: ignore[union-attr]
            open_below=open_below,
            open_above=open_above,
        )
        if open_below or open_above:
            logger.warning(
                f"Gap [{gap.omega_lo:.6g}, {gap.omega_hi:.6g}] is open at the scan boundary"
            )
        gaps.append(gap)
        i += 1
    return gaps


def assign_band_indices(samples: Sequence[DispersionSample], start: int = 0) -> int:
    """
    Set band_index on every sample in place and return the last index.

    The index grows by one after every traversed gap, and at every closed
    zone boundary: a reversal of the direction of c while |c| > 0.9 with no
    gap in between. Gap samples carry the index of the band below them.
    """
    nu = start
    previous: Optional[DispersionSample] = None
    direction = 0
    in_gap = False
    for s in samples:
        if s.failed:
            s.band_index = nu
            continue
        if isinstance(s.state, Forbidden):
            in_gap = True
            s.band_index = nu
            previous = None
            direction = 0
            continue
        if in_gap:
            nu += 1
            in_gap = False
        elif previous is not None:
            step = s.cos_kl - previous.cos_kl
            new_direction = int(np.sign(step))
            if (
                new_direction != 0
                and direction != 0
                and new_direction != direction
                and abs(previous.cos_kl) > FOLD_DETECTION_LEVEL
            ):
                nu += 1
            if new_direction != 0:
                direction = new_direction
        s.band_index = nu
        previous = s
    return nu


def _classified(omega: float, value: complex) -> DispersionSample:
    """Classified sample, or a failed one when the discriminant is not finite."""
    try:
        state = classify(value.real)
    except ValueError as e:
        return DispersionSample(omega, math.nan, None, error=str(e))
    return DispersionSample(omega, value.real, state, cos_kl_imag=value.imag)


class BandScanner:
    """
    Frequency sweep of one configuration.

    Samples are independent; with threads > 1 they are evaluated by a thread
    pool whose map keeps the grid order. Numerical failures are recorded on
    the sample instead of aborting, up to 5% of the grid.
    """

    def __init__(self, config: ScanConfig):
        """
        Initialize the scanner.

        Args:
            config: Scan configuration

        Raises:
            ValueError: If the configuration is invalid
        """
        _, warnings = InputValidator.validate_scan_parameters(
            {
                "omega_min": config.omega_min,
                "omega_max": config.omega_max,
                "samples": config.samples,
                "theta": config.inc.theta,
                "n_ambient": config.inc.n_ambient,
            }
        )
        for warning in warnings:
            logger.warning(warning)
        self.config = config

    def evaluator(self, medium: Medium) -> DispersionEvaluator:
        cfg = self.config
        return DispersionEvaluator(
            medium,
            pol=cfg.pol,
            inc=cfg.inc,
            pathway=cfg.pathway,
            staircase_layers=cfg.staircase_layers,
        )

    def _sample(self, evaluator: DispersionEvaluator, omega: float) -> DispersionSample:
        try:
            value = evaluator.cos_kl(omega)
        except NumericalError as e:
            return DispersionSample(omega, math.nan, None, error=str(e))
        return _classified(omega, complex(value))

    def _evaluate_grid(self, evaluator: DispersionEvaluator, omegas: np.ndarray) -> List[DispersionSample]:
        if evaluator.pathway == Pathway.STRATIFIED:
            values = evaluator.cos_kl_many(omegas)
            return [_classified(float(w), complex(c)) for w, c in zip(omegas, values)]
        if self.config.threads > 1:
            with ThreadPoolExecutor(max_workers=self.config.threads) as pool:
                return list(pool.map(lambda w: self._sample(evaluator, float(w)), omegas))
        return [self._sample(evaluator, float(w)) for w in omegas]

    def _band_offset(self, evaluator: DispersionEvaluator, omegas: np.ndarray) -> int:
        """Band index at omega_min, from a coarse sweep of (0, omega_min]."""
        step = omegas[1] - omegas[0]
        count = int(math.ceil(omegas[0] / step))
        if count < 2:
            return 0
        coarse = np.linspace(0.0, omegas[0], count + 1)[1:]
        samples = self._evaluate_grid(evaluator, coarse)
        return assign_band_indices(samples)

    def run(self, medium: Medium) -> BandStructure:
        """
        Scan the configured frequency grid.

        Args:
            medium: Profile or layer stack

        Returns:
            BandStructure with classified samples, located gaps and band indices

        Raises:
            ConfigurationError: If the requested pathway cannot handle the medium
            ScanError: If more than 5% of the samples fail
        """
        started = time.perf_counter()
        cfg = self.config
        evaluator = self.evaluator(medium)
        omegas = cfg.omega_grid()
        samples = self._evaluate_grid(evaluator, omegas)

        failed = [s for s in samples if s.failed]
        if failed:
            for s in failed:
                logger.warning(f"Sample at omega = {s.omega_norm:.6g} failed: {s.error}")
            if len(failed) > MAX_FAILED_FRACTION * len(samples):
                raise ScanError(
                    f"{len(failed)} of {len(samples)} samples failed "
                    f"(more than {MAX_FAILED_FRACTION:.0%}); first error: {failed[0].error}"
                )

        discriminant = evaluator.real_cos_kl if cfg.locate_edges else None
        gaps = find_gap_edges(samples, discriminant)
        assign_band_indices(samples, start=self._band_offset(evaluator, omegas))

        logger.info(
            f"Scanned {len(samples)} samples of '{evaluator.profile.name}' in "
            f"{time.perf_counter() - started:.2f} s: {len(gaps)} gaps, {len(failed)} failed"
        )
        return BandStructure(samples=samples, gaps=gaps, pol=cfg.pol, pathway=evaluator.pathway)


def scan(medium: Medium, cfg: ScanConfig) -> BandStructure:
    """Run one band-structure scan."""
    return BandScanner(cfg).run(medium)


def low_freq_effective_index(
    medium: Medium,
    inc: IncidenceConfig = IncidenceConfig(),
    pol: Polarization = Polarization.TE,
    pathway: Pathway = Pathway.AUTO,
) -> LowFrequencyFit:
    """
    Fit κ against k0 for Ω in [0.001, 0.01].

    The slope is the long-wavelength phase index of the medium.

    Raises:
        NumericalError: If any sample falls in a gap or fails
    """
    evaluator = DispersionEvaluator(medium, pol=pol, inc=inc, pathway=pathway)
    period = evaluator.profile.period
    omegas = np.linspace(LOW_FREQ_OMEGA_MIN, LOW_FREQ_OMEGA_MAX, LOW_FREQ_POINTS)
    k0 = UnitConversions.omega_to_k0(omegas, period)
    kappa = np.empty_like(omegas)
    for i, value in enumerate(evaluator.cos_kl_many(omegas)):
        state = classify(float(value.real))
        if isinstance(state, Forbidden):
            raise NumericalError(
                f"Sample at omega = {omegas[i]:.6g} is in a gap; no low-frequency fit possible"
            )
        kappa[i] = (state.kappa_L if isinstance(state, Allowed) else 0.0) / period

    slope, intercept = np.polyfit(k0, kappa, 1)
    residual = np.abs(kappa - (slope * k0 + intercept)) / np.abs(kappa)
    fit = LowFrequencyFit(float(slope), float(intercept), float(residual.max()))
    logger.info(
        f"Low-frequency index of '{evaluator.profile.name}': {fit.slope:.8g} "
        f"(max relative residual {fit.max_relative_residual:.2e})"
    )
    return fit


def compare_first_gaps(
    media: Mapping[str, Medium],
    base: ScanConfig,
    pols: Iterable[Polarization] = (Polarization.TE, Polarization.TM),
    thetas: Iterable[float] = (0.0,),
) -> pd.DataFrame:
    """
    First-gap table for every (medium, polarization, angle) combination.

    Angles are in radians. Missing first gaps appear as NaN rows.

    Returns:
        DataFrame with columns profile, pol, theta_deg, omega_lo, omega_hi, width
    """
    rows: List[Tuple] = []
    for name, medium in media.items():
        for pol in pols:
            for theta in thetas:
                cfg = ScanConfig(
                    omega_min=base.omega_min,
                    omega_max=base.omega_max,
                    samples=base.samples,
                    pol=pol,
                    inc=IncidenceConfig(n_ambient=base.inc.n_ambient, theta=theta),
                    pathway=base.pathway,
                    staircase_layers=base.staircase_layers,
                    threads=base.threads,
                )
                gap = scan(medium, cfg).first_gap()
                lo, hi = (gap.omega_lo, gap.omega_hi) if gap else (math.nan, math.nan)
                rows.append((name, Polarization(pol).value, theta * RAD_TO_DEG, lo, hi, hi - lo))
    return pd.DataFrame(rows, columns=["profile", "pol", "theta_deg", "omega_lo", "omega_hi", "width"])
