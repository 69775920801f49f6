"""
Verification of the dispersion pathways against the oracles.

A verification run evaluates cos(κL) on a frequency grid through every
applicable pathway and every selected oracle, records one OracleReport per
(frequency, pathway, oracle), and summarizes the maximum and mean errors
against per-medium thresholds: layered media are exact on every pathway,
graded media are held to the looser continuous threshold.
"""

import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from pcband.config import IncidenceConfig, OracleReport, Pathway, Polarization
from pcband.constants import (
    RAD_TO_DEG,
    REFERENCE_OFFSETS,
    STAIRCASE_N_MAX,
    VERIFY_OMEGA_MAX,
    VERIFY_OMEGA_MIN,
    VERIFY_OMEGA_POINTS,
    VERIFY_TOL_CONTINUOUS,
    VERIFY_TOL_STRATIFIED,
)
from pcband.dispersion import reference_offset_spread
from pcband.exceptions import OracleError
from pcband.oracle.monodromy import monodromy_cos
from pcband.oracle.staircase import staircase_limit_cos
from pcband.oracle.two_layer import analytic_two_layer, two_layer_parameters
from pcband.pathway import DispersionEvaluator, Medium, as_profile, symmetric_eligible
from pcband.transfer.stratified import LayerStack
from pcband.utils.conversions import UnitConversions

logger = logging.getLogger(__name__)

ORACLE_KINDS = ("monodromy", "staircase", "two_layer")


def parse_oracle_selection(name: str) -> List[str]:
    """Map a CLI oracle name (monodromy, staircase, two-layer, all) to oracle kinds."""
    key = name.replace("-", "_")
    if key == "all":
        return list(ORACLE_KINDS)
    if key not in ORACLE_KINDS:
        raise ValueError(
            f"Unknown oracle: {name}. Valid options: monodromy, staircase, two-layer, all"
        )
    return [key]


@dataclass
class VerificationReport:
    """Per-sample oracle comparisons plus their summary."""

    profile: str
    pol: Polarization
    theta: float
    exact_medium: bool
    thresholds: Dict[str, float]
    reports: List[OracleReport] = field(default_factory=list)
    reference_offsets: List[Dict[str, float]] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    def threshold_for(self, pathway: str) -> float:
        """Layered media are exact on every pathway."""
        if self.exact_medium:
            return self.thresholds["stratified"]
        return self.thresholds["continuous"]

    def summary(self) -> List[Dict[str, Any]]:
        """Max and mean absolute error per (pathway, oracle)."""
        groups: Dict[tuple, List[float]] = {}
        for r in self.reports:
            groups.setdefault((r.pathway, r.oracle_kind), []).append(r.abs_error)
        rows = []
        for (pathway, oracle), errors in groups.items():
            threshold = self.threshold_for(pathway)
            worst = float(np.max(errors))
            rows.append(
                {
                    "pathway": pathway,
                    "oracle": oracle,
                    "max_abs_error": worst,
                    "mean_abs_error": float(np.mean(errors)),
                    "threshold": threshold,
                    "passed": bool(worst <= threshold),
                }
            )
        return rows

    @property
    def passed(self) -> bool:
        return all(row["passed"] for row in self.summary())

    def failures(self) -> List[OracleReport]:
        """Samples whose error exceeds the threshold of their pathway."""
        return [r for r in self.reports if r.abs_error > self.threshold_for(r.pathway)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "profile": self.profile,
            "pol": self.pol.value,
            "theta_deg": self.theta * RAD_TO_DEG,
            "exact_medium": self.exact_medium,
            "thresholds": self.thresholds,
            "passed": self.passed,
            "summary": self.summary(),
            "skipped_oracles": self.skipped,
            "reference_offset_spread": self.reference_offsets,
            "reports": [asdict(r) for r in self.reports],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)


def _pathways_for(medium: Medium, inc: IncidenceConfig) -> List[Pathway]:
    p = as_profile(medium)
    pathways = []
    if symmetric_eligible(p, inc):
        pathways.append(Pathway.SYMMETRIC)
    if isinstance(medium, LayerStack) or p.is_piecewise_constant:
        pathways.append(Pathway.STRATIFIED)
    pathways.append(Pathway.GENERAL)
    return pathways


def _oracle_values(
    kind: str, medium: Medium, inc: IncidenceConfig, k0: np.ndarray, pol: Polarization, n_max: int
) -> np.ndarray:
    p = as_profile(medium)
    if kind == "monodromy":
        return np.asarray(monodromy_cos(p, inc, k0, pol))
    if kind == "staircase":
        return np.asarray(staircase_limit_cos(p, inc, k0, pol, n_max).value)
    stack = medium if isinstance(medium, LayerStack) else None
    if stack is None:
        if not p.is_piecewise_constant:
            raise OracleError(f"Two-layer oracle needs a layered medium; '{p.name}' is graded")
        stack = LayerStack.from_profile(p)
    n1, n2, d1, d2 = two_layer_parameters(stack)
    return np.asarray(analytic_two_layer(n1, n2, d1, d2, inc, k0, pol))


def verify(
    medium: Medium,
    pol: Polarization = Polarization.TE,
    inc: IncidenceConfig = IncidenceConfig(),
    oracles: Sequence[str] = ORACLE_KINDS,
    omega_points: int = VERIFY_OMEGA_POINTS,
    omega_min: float = VERIFY_OMEGA_MIN,
    omega_max: float = VERIFY_OMEGA_MAX,
    tol_stratified: float = VERIFY_TOL_STRATIFIED,
    tol_continuous: float = VERIFY_TOL_CONTINUOUS,
    n_max: int = STAIRCASE_N_MAX,
    offset_frequencies: Optional[Sequence[float]] = None,
) -> VerificationReport:
    """
    Compare every applicable pathway with the selected oracles.

    With several oracles selected, the two-layer oracle is skipped for media
    it does not apply to; selected alone, an inapplicable oracle is an error.
    For graded media the reference-offset spread of the general pathway is
    recorded at a few frequencies (the grid midpoint and end by default).

    Raises:
        OracleError: If an oracle precondition or self-check fails
    """
    pol = Polarization(pol)
    p = as_profile(medium)
    exact = isinstance(medium, LayerStack) or p.is_piecewise_constant
    omegas = np.linspace(omega_min, omega_max, omega_points)
    k0 = UnitConversions.omega_to_k0(omegas, p.period)
    report = VerificationReport(
        profile=p.name,
        pol=pol,
        theta=inc.theta,
        exact_medium=exact,
        thresholds={"stratified": tol_stratified, "continuous": tol_continuous},
    )

    oracle_values: Dict[str, np.ndarray] = {}
    for kind in oracles:
        try:
            oracle_values[kind] = _oracle_values(kind, medium, inc, k0, pol, n_max)
        except OracleError as e:
            if kind == "two_layer" and len(oracles) > 1:
                logger.info(f"Skipping two-layer oracle: {e}")
                report.skipped.append(kind)
                continue
            raise

    for pathway in _pathways_for(medium, inc):
        evaluator = DispersionEvaluator(medium, pol=pol, inc=inc, pathway=pathway)
        values = np.real(evaluator.cos_kl_many(omegas))
        for kind, reference in oracle_values.items():
            for w, dtmm_value, oracle_value in zip(omegas, values, reference):
                report.reports.append(
                    OracleReport.compare(
                        float(w), float(dtmm_value), float(oracle_value), kind, pathway.value
                    )
                )

    if not exact:
        freqs = offset_frequencies
        if freqs is None:
            freqs = (omegas[len(omegas) // 2], omegas[-1])
        evaluator = DispersionEvaluator(medium, pol=pol, inc=inc, pathway=Pathway.GENERAL)
        for w in freqs:
            _, spread = reference_offset_spread(evaluator.context(float(w)), REFERENCE_OFFSETS)
            report.reference_offsets.append({"omega": float(w), "spread": spread})

    for row in report.summary():
        logger.info(
            f"{row['pathway']} vs {row['oracle']}: max {row['max_abs_error']:.3e}, "
            f"mean {row['mean_abs_error']:.3e} (threshold {row['threshold']:.1e})"
        )
    if not report.passed:
        logger.warning(
            f"Verification of '{p.name}' exceeded its thresholds at {len(report.failures())} samples"
        )
    return report
