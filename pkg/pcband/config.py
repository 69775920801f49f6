"""
Configuration and data model classes for pcband.

This module contains dataclasses for incidence and scan configuration, the
band-state classification, per-frequency samples, gap intervals, band
structures and verification records.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Union

import numpy as np
import pandas as pd

from pcband.constants import (
    DEFAULT_STAIRCASE_LAYERS,
    PI,
)
from pcband.utils.conversions import UnitConversions


class Polarization(str, Enum):
    """Polarization of the incident wave."""

    TE = "te"
    TM = "tm"


class Pathway(str, Enum):
    """Dispersion evaluation pathway."""

    AUTO = "auto"
    SYMMETRIC = "symmetric"
    GENERAL = "general"
    STRATIFIED = "stratified"


@dataclass(frozen=True)
class IncidenceConfig:
    """
    Illumination from a homogeneous ambient medium.

    The transverse phase-matching constant n_eff = n_ambient·sin(theta) is
    conserved through the whole structure.
    """

    n_ambient: float = 1.0
    theta: float = 0.0  # radians, 0 ≤ theta < π/2

    def __post_init__(self) -> None:
        if not self.n_ambient > 0:
            raise ValueError(f"Ambient index must be positive, got {self.n_ambient}")
        if not 0.0 <= self.theta < PI / 2:
            raise ValueError(f"Incidence angle must satisfy 0 <= theta < pi/2, got {self.theta}")

    @property
    def n_eff(self) -> float:
        return self.n_ambient * math.sin(self.theta)

    @classmethod
    def from_degrees(cls, n_ambient: float, theta_deg: float) -> "IncidenceConfig":
        return cls(n_ambient=n_ambient, theta=UnitConversions.deg_to_rad(theta_deg))


@dataclass
class ScanConfig:
    """
    Parameters of a frequency sweep.

    Frequencies are normalized, Ω = L/λ₀, so the free-space wavenumber is
    k0 = 2πΩ/L.
    """

    omega_min: float
    omega_max: float
    samples: int
    pol: Polarization = Polarization.TE
    inc: IncidenceConfig = field(default_factory=IncidenceConfig)
    pathway: Pathway = Pathway.AUTO
    staircase_layers: int = DEFAULT_STAIRCASE_LAYERS
    threads: int = 1
    locate_edges: bool = True

    def __post_init__(self) -> None:
        self.pol = Polarization(self.pol)
        self.pathway = Pathway(self.pathway)
        if not 0.0 < self.omega_min < self.omega_max:
            raise ValueError(
                f"Frequency range must satisfy 0 < omega_min < omega_max, "
                f"got [{self.omega_min}, {self.omega_max}]"
            )
        if self.samples < 2:
            raise ValueError(f"At least 2 samples are required, got {self.samples}")
        if self.staircase_layers < 2:
            raise ValueError(f"Staircase layer count must be >= 2, got {self.staircase_layers}")
        if self.threads < 1:
            raise ValueError(f"Thread count must be a positive integer, got {self.threads}")

    def omega_grid(self) -> np.ndarray:
        return np.linspace(self.omega_min, self.omega_max, self.samples)


@dataclass(frozen=True)
class Allowed:
    """Propagating Bloch wave; kappa_L is the reduced Bloch phase in [0, π]."""

    kappa_L: float


@dataclass(frozen=True)
class Edge:
    """Band edge, |cos κL| = 1. Parity 0 for cos κL = 1, parity 1 for cos κL = -1."""

    parity: int


@dataclass(frozen=True)
class Forbidden:
    """
    Evanescent Bloch wave inside a gap.

    parity 0: cos κL > 1, κL = 2νπ + jξ
    parity 1: cos κL < -1, κL = (2ν+1)π + jξ
    """

    parity: int
    xi: float


BandState = Union[Allowed, Edge, Forbidden]


def state_name(state: Optional[BandState]) -> str:
    """Lower-case label of a band state, 'failed' when the sample has none."""
    if isinstance(state, Allowed):
        return "allowed"
    if isinstance(state, Edge):
        return "edge"
    if isinstance(state, Forbidden):
        return "forbidden"
    return "failed"


@dataclass
class DispersionSample:
    """Bloch discriminant and classification at one normalized frequency."""

    omega_norm: float
    cos_kl: float
    state: Optional[BandState]
    band_index: int = 0
    cos_kl_imag: float = 0.0  # residual imaginary part from the general pathway
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.state is None

    @property
    def kappa_L(self) -> float:
        """Reduced Bloch phase in [0, π], NaN inside gaps and for failed samples."""
        if isinstance(self.state, Allowed):
            return self.state.kappa_L
        if isinstance(self.state, Edge):
            return 0.0 if self.state.parity == 0 else PI
        return math.nan

    @property
    def xi(self) -> float:
        """Decay constant per period, NaN outside gaps."""
        if isinstance(self.state, Forbidden):
            return self.state.xi
        return math.nan


@dataclass(frozen=True)
class GapInterval:
    """
    Forbidden frequency interval.

    open_below / open_above flag gaps that were already open at the first
    sample or still open at the last one; the corresponding edge is the scan
    boundary, not a located band edge.
    """

    omega_lo: float
    omega_hi: float
    max_xi: float
    parity: int
    open_below: bool = False
    open_above: bool = False

    @property
    def width(self) -> float:
        return self.omega_hi - self.omega_lo

    @property
    def center(self) -> float:
        return 0.5 * (self.omega_lo + self.omega_hi)


@dataclass
class LowFrequencyFit:
    """Linear fit of κ against k0 in the long-wavelength limit."""

    slope: float  # effective (phase) index
    intercept: float
    max_relative_residual: float


@dataclass
class BandStructure:
    """Frequency-ordered dispersion samples with the extracted gaps."""

    samples: List[DispersionSample]
    gaps: List[GapInterval]
    pol: Polarization = Polarization.TE
    pathway: Pathway = Pathway.AUTO

    @property
    def omegas(self) -> np.ndarray:
        return np.array([s.omega_norm for s in self.samples])

    @property
    def cos_kl(self) -> np.ndarray:
        return np.array([s.cos_kl for s in self.samples])

    @property
    def band_indices(self) -> np.ndarray:
        return np.array([s.band_index for s in self.samples], dtype=int)

    def first_gap(self) -> Optional[GapInterval]:
        """First gap with both edges located, or None."""
        for gap in self.gaps:
            if not gap.open_below and not gap.open_above:
                return gap
        return None

    def unfolded_kappa_L(self) -> np.ndarray:
        """
        Extended-zone Bloch phase.

        Band ν (counted from Ω = 0) covers [νπ, (ν+1)π]; even bands run the
        reduced phase forward, odd bands backward. NaN inside gaps.
        """
        out = np.full(len(self.samples), np.nan)
        for i, s in enumerate(self.samples):
            kappa = s.kappa_L
            if math.isnan(kappa):
                continue
            nu = s.band_index
            out[i] = nu * PI + kappa if nu % 2 == 0 else (nu + 1) * PI - kappa
        return out

    def group_velocity(self) -> np.ndarray:
        """
        Normalized group velocity dΩ/d(κL) along each allowed band.

        Finite differences on the unfolded phase within runs of consecutive
        propagating samples of the same band; NaN in gaps and on isolated samples.
        """
        kappa = self.unfolded_kappa_L()
        omegas = self.omegas
        bands = self.band_indices
        out = np.full(len(self.samples), np.nan)

        start = 0
        while start < len(self.samples):
            if np.isnan(kappa[start]):
                start += 1
                continue
            stop = start
            while (
                stop + 1 < len(self.samples)
                and not np.isnan(kappa[stop + 1])
                and bands[stop + 1] == bands[start]
            ):
                stop += 1
            if stop > start:
                dk = np.diff(kappa[start : stop + 1])
                dw = np.diff(omegas[start : stop + 1])
                with np.errstate(divide="ignore", invalid="ignore"):
                    slopes = dw / dk
                run = np.empty(stop - start + 1)
                run[0] = slopes[0]
                run[-1] = slopes[-1]
                if len(slopes) > 1:
                    run[1:-1] = 0.5 * (slopes[:-1] + slopes[1:])
                out[start : stop + 1] = run
            start = stop + 1
        return out

    def to_dataframe(self) -> pd.DataFrame:
        """Tabular form with the frozen output column order."""
        records = [OutputRecord.from_sample(s) for s in self.samples]
        return pd.DataFrame(
            {
                "omega": [r.omega_norm for r in records],
                "cos_kl": [r.cos_kl for r in records],
                "kappa_L": [r.kappa_L_reduced for r in records],
                "xi": [r.xi for r in records],
                "state": [r.state for r in records],
                "band": [r.band_index for r in records],
            }
        )

    def gaps_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "index": list(range(len(self.gaps))),
                "omega_lo": [g.omega_lo for g in self.gaps],
                "omega_hi": [g.omega_hi for g in self.gaps],
                "width": [g.width for g in self.gaps],
                "max_xi": [g.max_xi for g in self.gaps],
                "parity": [g.parity for g in self.gaps],
                "open_below": [g.open_below for g in self.gaps],
                "open_above": [g.open_above for g in self.gaps],
            }
        )


@dataclass(frozen=True)
class OutputRecord:
    """One output row; exactly one of kappa_L_reduced / xi is set for non-edge rows."""

    omega_norm: float
    cos_kl: float
    kappa_L_reduced: Optional[float]
    xi: Optional[float]
    state: str
    band_index: int

    @classmethod
    def from_sample(cls, sample: DispersionSample) -> "OutputRecord":
        kappa = sample.kappa_L
        xi = sample.xi
        return cls(
            omega_norm=sample.omega_norm,
            cos_kl=sample.cos_kl,
            kappa_L_reduced=None if math.isnan(kappa) else kappa,
            xi=None if math.isnan(xi) else xi,
            state=state_name(sample.state),
            band_index=sample.band_index,
        )


@dataclass(frozen=True)
class OracleReport:
    """Comparison of a DTMM pathway value against an independent oracle."""

    omega_norm: float
    dtmm_value: float
    oracle_value: float
    abs_error: float
    oracle_kind: str  # monodromy | two_layer | staircase
    pathway: str

    @classmethod
    def compare(
        cls, omega_norm: float, dtmm_value: float, oracle_value: float, oracle_kind: str, pathway: str
    ) -> "OracleReport":
        return cls(
            omega_norm=omega_norm,
            dtmm_value=dtmm_value,
            oracle_value=oracle_value,
            abs_error=abs(dtmm_value - oracle_value),
            oracle_kind=oracle_kind,
            pathway=pathway,
        )
