"""
Unit tests for configuration and data model classes.
"""

import math

import numpy as np
import pytest

from pcband.config import (
    Allowed,
    BandStructure,
    DispersionSample,
    Edge,
    Forbidden,
    GapInterval,
    IncidenceConfig,
    OracleReport,
    OutputRecord,
    Pathway,
    Polarization,
    ScanConfig,
    state_name,
)
from pcband.utils.conversions import UnitConversions


class TestIncidenceConfig:
    """Test suite for IncidenceConfig."""

    def test_defaults(self):
        """Test normal incidence from vacuum by default."""
        inc = IncidenceConfig()
        assert inc.n_ambient == 1.0
        assert inc.theta == 0.0
        assert inc.n_eff == 0.0

    def test_n_eff(self):
        """Test the conserved tangential index n_a·sin(θ)."""
        inc = IncidenceConfig(n_ambient=1.5, theta=math.pi / 6)
        assert inc.n_eff == pytest.approx(0.75)

    def test_from_degrees(self):
        """Test construction from an angle in degrees."""
        inc = IncidenceConfig.from_degrees(1.0, 45.0)
        assert inc.theta == pytest.approx(math.pi / 4)
        assert IncidenceConfig.from_degrees(1.5, 30.0).theta == UnitConversions.deg_to_rad(30.0)

    def test_invalid_ambient(self):
        """Test rejection of a non-positive ambient index."""
        with pytest.raises(ValueError, match="Ambient index must be positive"):
            IncidenceConfig(n_ambient=0.0)

    @pytest.mark.parametrize("theta", [-0.01, math.pi / 2])
    def test_invalid_angle(self, theta):
        """Test rejection of angles outside [0, π/2)."""
        with pytest.raises(ValueError, match="Incidence angle"):
            IncidenceConfig(theta=theta)

    def test_frozen(self):
        """Test that incidence settings are immutable."""
        with pytest.raises(AttributeError):
            IncidenceConfig().theta = 0.1


class TestScanConfig:
    """Test suite for ScanConfig."""

    def test_enum_coercion(self):
        """Test that string polarization and pathway are coerced to enums."""
        cfg = ScanConfig(0.1, 1.0, 10, pol="tm", pathway="stratified")
        assert cfg.pol is Polarization.TM
        assert cfg.pathway is Pathway.STRATIFIED

    def test_omega_grid(self):
        """Test the uniform frequency grid includes both ends."""
        grid = ScanConfig(0.1, 0.5, 5).omega_grid()
        np.testing.assert_allclose(grid, [0.1, 0.2, 0.3, 0.4, 0.5])

    def test_invalid_range(self):
        """Test rejection of an empty frequency range."""
        with pytest.raises(ValueError, match="Frequency range"):
            ScanConfig(0.5, 0.5, 10)

    def test_invalid_samples(self):
        """Test rejection of a single-sample grid."""
        with pytest.raises(ValueError, match="At least 2 samples"):
            ScanConfig(0.1, 1.0, 1)

    def test_invalid_staircase(self):
        """Test rejection of a one-layer staircase."""
        with pytest.raises(ValueError, match="Staircase layer count"):
            ScanConfig(0.1, 1.0, 10, staircase_layers=1)

    def test_invalid_threads(self):
        """Test rejection of a zero thread count."""
        with pytest.raises(ValueError, match="Thread count"):
            ScanConfig(0.1, 1.0, 10, threads=0)

    def test_unknown_pathway(self):
        """Test rejection of an unknown pathway name."""
        with pytest.raises(ValueError):
            ScanConfig(0.1, 1.0, 10, pathway="fast")


class TestDispersionSample:
    """Test suite for DispersionSample accessors."""

    def test_allowed(self):
        """Test accessors of an allowed sample."""
        s = DispersionSample(0.1, 0.5, Allowed(math.acos(0.5)))
        assert s.kappa_L == pytest.approx(math.pi / 3)
        assert math.isnan(s.xi)
        assert not s.failed

    def test_edges(self):
        """Test the reduced phase at both band-edge parities."""
        assert DispersionSample(0.1, 1.0, Edge(0)).kappa_L == 0.0
        assert DispersionSample(0.1, -1.0, Edge(1)).kappa_L == pytest.approx(math.pi)

    def test_forbidden(self):
        """Test accessors of a forbidden sample."""
        s = DispersionSample(0.1, -2.0, Forbidden(1, math.acosh(2.0)))
        assert math.isnan(s.kappa_L)
        assert s.xi == pytest.approx(math.acosh(2.0))

    def test_failed(self):
        """Test accessors of a failed sample."""
        s = DispersionSample(0.1, math.nan, None, error="boom")
        assert s.failed
        assert state_name(s.state) == "failed"
        assert math.isnan(s.kappa_L)


class TestGapInterval:
    """Test suite for GapInterval."""

    def test_width_and_center(self):
        """Test gap width and center."""
        gap = GapInterval(0.2, 0.3, max_xi=0.4, parity=1)
        assert gap.width == pytest.approx(0.1)
        assert gap.center == pytest.approx(0.25)
        assert not gap.open_below


class TestOutputRecord:
    """Test suite for OutputRecord.from_sample."""

    def test_allowed_record(self):
        """Test the output record of an allowed sample."""
        record = OutputRecord.from_sample(DispersionSample(0.2, 0.0, Allowed(math.pi / 2), band_index=3))
        assert record.kappa_L_reduced == pytest.approx(math.pi / 2)
        assert record.xi is None
        assert record.state == "allowed"
        assert record.band_index == 3

    def test_forbidden_record(self):
        """Test the output record of a forbidden sample."""
        record = OutputRecord.from_sample(DispersionSample(0.2, 2.0, Forbidden(0, 1.3)))
        assert record.kappa_L_reduced is None
        assert record.xi == 1.3
        assert record.state == "forbidden"

    def test_edge_record(self):
        """Test the output record of a band-edge sample."""
        record = OutputRecord.from_sample(DispersionSample(0.2, 1.0, Edge(0)))
        assert record.kappa_L_reduced == 0.0
        assert record.xi is None
        assert record.state == "edge"


class TestOracleReport:
    """Test suite for OracleReport.compare."""

    def test_compare(self):
        """Test the absolute error of an oracle comparison."""
        report = OracleReport.compare(0.3, 0.25, 0.5, "monodromy", "general")
        assert report.abs_error == pytest.approx(0.25)
        assert report.oracle_kind == "monodromy"


class TestBandStructure:
    """Test suite for BandStructure."""

    def make_structure(self):
        samples = [
            DispersionSample(0.1, 0.5, Allowed(math.acos(0.5)), band_index=0),
            DispersionSample(0.2, -2.0, Forbidden(1, math.acosh(2.0)), band_index=0),
            DispersionSample(0.3, -0.5, Allowed(math.acos(-0.5)), band_index=1),
        ]
        gaps = [
            GapInterval(0.0, 0.05, 0.1, 0, open_below=True),
            GapInterval(0.15, 0.25, math.acosh(2.0), 1),
        ]
        return BandStructure(samples, gaps)

    def test_first_gap_skips_open_gaps(self):
        """Test that first_gap ignores a gap open at the scan boundary."""
        assert self.make_structure().first_gap().omega_lo == 0.15

    def test_first_gap_none(self):
        """Test first_gap on an empty structure."""
        assert BandStructure([], []).first_gap() is None

    def test_arrays(self):
        """Test the frequency and band index arrays."""
        bs = self.make_structure()
        np.testing.assert_allclose(bs.omegas, [0.1, 0.2, 0.3])
        np.testing.assert_array_equal(bs.band_indices, [0, 0, 1])

    def test_unfolded_kappa(self):
        """Test even bands run forward and odd bands backward."""
        unfolded = self.make_structure().unfolded_kappa_L()
        assert unfolded[0] == pytest.approx(math.pi / 3)
        assert math.isnan(unfolded[1])
        assert unfolded[2] == pytest.approx(2 * math.pi - 2 * math.pi / 3)

    def test_group_velocity_isolated_samples(self):
        """Test single-sample runs have no finite-difference velocity."""
        assert np.all(np.isnan(self.make_structure().group_velocity()))

    def test_to_dataframe(self):
        """Test the sample table columns and missing values."""
        df = self.make_structure().to_dataframe()
        assert list(df.columns) == ["omega", "cos_kl", "kappa_L", "xi", "state", "band"]
        assert df["state"].tolist() == ["allowed", "forbidden", "allowed"]
        assert df["kappa_L"].isna().tolist() == [False, True, False]

    def test_gaps_dataframe(self):
        """Test the gap table."""
        df = self.make_structure().gaps_dataframe()
        assert df["index"].tolist() == [0, 1]
        assert df["open_below"].tolist() == [True, False]
        assert df["width"].iloc[1] == pytest.approx(0.1)
