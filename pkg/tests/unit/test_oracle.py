"""
Unit tests for the independent oracles and the verification run.
"""

import json
import math

import numpy as np
import pytest

from pcband.config import IncidenceConfig, Polarization
from pcband.exceptions import OracleError
from pcband.oracle import (
    MonodromyIntegrator,
    analytic_two_layer,
    monodromy_cos,
    parse_oracle_selection,
    staircase_limit_cos,
    two_layer_parameters,
    verify,
)
from pcband.profile.canonical import CanonicalProfiles
from pcband.profile.expression import parse_profile_expr
from pcband.transfer.stratified import LayerStack

NORMAL = IncidenceConfig()


def square_cos(omega):
    y = np.cos(2.0 * np.pi * np.asarray(omega))
    return (8.0 * y * y - y - 4.0) / 3.0


@pytest.fixture
def bragg():
    return LayerStack.from_pairs([(1, 0.5), (3, 0.5)])


class TestAnalyticTwoLayer:
    """Test suite for analytic_two_layer."""

    def test_equal_layers_are_homogeneous(self):
        """Test that two equal layers reduce to free propagation."""
        assert analytic_two_layer(1.5, 1.5, 0.3, 0.7, NORMAL, 2.0, Polarization.TE) == pytest.approx(
            math.cos(3.0)
        )

    def test_square_closed_form(self):
        """Test the canonical square stack against its polynomial in cos(2πΩ)."""
        omegas = np.array([0.1, 0.25, 0.5, 0.9])
        values = analytic_two_layer(1.0, 3.0, 0.5, 0.5, NORMAL, 2.0 * np.pi * omegas, Polarization.TE)
        np.testing.assert_allclose(values, square_cos(omegas), atol=1e-13)

    def test_te_equals_tm_at_normal_incidence(self):
        """Test that TE and TM agree at normal incidence."""
        te = analytic_two_layer(1.2, 2.5, 0.4, 0.6, NORMAL, 3.3, Polarization.TE)
        tm = analytic_two_layer(1.2, 2.5, 0.4, 0.6, NORMAL, 3.3, Polarization.TM)
        assert te == pytest.approx(tm, abs=1e-13)

    def test_evanescent_layer_is_real(self):
        """Test a real finite value when one layer is evanescent."""
        value = analytic_two_layer(1.0, 3.0, 0.5, 0.5, IncidenceConfig(2.5, math.pi / 6), 2.0, "te")
        assert isinstance(value, float)
        assert math.isfinite(value)

    def test_cutoff(self):
        """Test that a zero wavenumber raises OracleError."""
        with pytest.raises(OracleError, match="cutoff"):
            analytic_two_layer(1.0, 3.0, 0.5, 0.5, IncidenceConfig(1.0, math.pi / 2 - 1e-9), 1.0, "te")


class TestTwoLayerParameters:
    """Test suite for two_layer_parameters."""

    def test_plain_stack(self, bragg):
        """Test the parameters of a plain two-layer stack."""
        assert two_layer_parameters(bragg) == (1.0, 3.0, 0.5, 0.5)

    def test_wrap_around_merge(self):
        """Test the first and last layer merge when their indices agree."""
        stack = LayerStack.from_pairs([(1.0, 0.25), (3.0, 0.5), (1.0, 0.25)])
        assert two_layer_parameters(stack) == (1.0, 3.0, 0.5, 0.5)

    def test_adjacent_merge(self):
        """Test that adjacent layers of equal index merge."""
        stack = LayerStack.from_pairs([(1.0, 0.2), (1.0, 0.3), (3.0, 0.5)])
        assert two_layer_parameters(stack) == (1.0, 3.0, 0.5, 0.5)

    @pytest.mark.parametrize("pairs", [[(1.5, 1.0)], [(1.0, 0.3), (2.0, 0.3), (3.0, 0.4)]])
    def test_not_two_layers(self, pairs):
        """Test rejection of one or three distinct layers."""
        with pytest.raises(OracleError, match="exactly two layers"):
            two_layer_parameters(LayerStack.from_pairs(pairs))


class TestMonodromy:
    """Test suite for the RK4 monodromy oracle."""

    def test_homogeneous(self):
        """Test the integrated discriminant of a uniform medium."""
        value = monodromy_cos(parse_profile_expr("1.5"), NORMAL, 2.0, Polarization.TE, steps=2000)
        assert value == pytest.approx(math.cos(3.0), abs=1e-10)

    @pytest.mark.parametrize("pol", [Polarization.TE, Polarization.TM])
    def test_square_matches_analytic(self, pol):
        """Test the integrated square stack against the closed form."""
        omegas = np.array([0.15, 0.3, 0.55])
        values = monodromy_cos(CanonicalProfiles.square(), NORMAL, 2.0 * np.pi * omegas, pol, steps=4000)
        np.testing.assert_allclose(values, square_cos(omegas), atol=1e-7)

    def test_oblique_square_matches_analytic(self):
        """Test the integrated square stack off normal incidence."""
        inc = IncidenceConfig(1.0, math.pi / 4)
        value = monodromy_cos(CanonicalProfiles.square(), inc, 2.5, Polarization.TM, steps=4000)
        expected = analytic_two_layer(1.0, 3.0, 0.5, 0.5, inc, 2.5, Polarization.TM)
        assert value == pytest.approx(expected, abs=1e-7)

    def test_te_equals_tm_at_normal_incidence(self):
        """Test that TE and TM agree at normal incidence."""
        p = CanonicalProfiles.sinusoidal()
        te = monodromy_cos(p, NORMAL, 2.0, Polarization.TE, steps=4000)
        tm = monodromy_cos(p, NORMAL, 2.0, Polarization.TM, steps=4000)
        assert te == pytest.approx(tm, abs=1e-7)

    def test_coarse_step_detected(self):
        """Test that a too coarse step is caught by the determinant check."""
        with pytest.raises(OracleError, match="lost unit determinant"):
            monodromy_cos(CanonicalProfiles.sinusoidal(), NORMAL, 50.0, Polarization.TE, steps=4)

    def test_shapes(self):
        """Test monodromy shapes for scalar and array wavenumbers."""
        integrator = MonodromyIntegrator(CanonicalProfiles.triangular(), NORMAL, "te", steps=500)
        assert integrator.monodromy(1.0).shape == (2, 2)
        assert integrator.monodromy(np.array([1.0, 2.0])).shape == (2, 2, 2)

    def test_invalid_steps(self):
        """Test rejection of a zero step count."""
        with pytest.raises(ValueError, match="Step count must be positive"):
            MonodromyIntegrator(CanonicalProfiles.sinusoidal(), NORMAL, "te", steps=0)


class TestStaircaseLimit:
    """Test suite for staircase_limit_cos."""

    @pytest.mark.parametrize("n_max", [32, 100, 0])
    def test_invalid_n_max(self, n_max):
        """Test rejection of a finest layer count that is not a power of two."""
        with pytest.raises(ValueError, match="power of two"):
            staircase_limit_cos(CanonicalProfiles.sinusoidal(), NORMAL, 1.0, "te", n_max=n_max)

    def test_layered_profile_is_exact(self):
        """Test that a piecewise-constant profile skips extrapolation."""
        estimate = staircase_limit_cos(CanonicalProfiles.square(), NORMAL, 2.0 * math.pi * 0.37, "te")
        assert estimate.value == pytest.approx(float(square_cos(0.37)), abs=1e-12)
        assert estimate.error == 0.0
        assert estimate.raw.shape == (3,)

    def test_sinusoid_agrees_with_monodromy(self):
        """Test the extrapolated staircase against the integrated ODE."""
        estimate = staircase_limit_cos(CanonicalProfiles.sinusoidal(), NORMAL, 2.0, "te", n_max=256)
        reference = monodromy_cos(CanonicalProfiles.sinusoidal(), NORMAL, 2.0, "te", steps=4000)
        assert estimate.value == pytest.approx(reference, abs=1e-5)
        assert estimate.error < 1e-3

    def test_array_input(self):
        """Test value and raw shapes for an array of wavenumbers."""
        k0 = np.array([1.0, 2.0, 3.0])
        estimate = staircase_limit_cos(CanonicalProfiles.triangular(), NORMAL, k0, "te", n_max=256)
        assert estimate.value.shape == (3,)
        assert estimate.raw.shape == (3, 3)


class TestParseOracleSelection:
    """Test suite for parse_oracle_selection."""

    def test_names(self):
        """Test oracle names and the all selection."""
        assert parse_oracle_selection("monodromy") == ["monodromy"]
        assert parse_oracle_selection("two-layer") == ["two_layer"]
        assert parse_oracle_selection("all") == ["monodromy", "staircase", "two_layer"]

    def test_unknown(self):
        """Test rejection of an unknown oracle name."""
        with pytest.raises(ValueError, match="Unknown oracle: exact"):
            parse_oracle_selection("exact")


class TestVerify:
    """Test suite for verify."""

    def test_layered_stack_passes(self, bragg):
        """Test that a layered stack passes every oracle on both pathways."""
        report = verify(bragg, omega_points=11)
        assert report.exact_medium
        assert report.passed
        assert report.skipped == []
        assert report.failures() == []
        rows = report.summary()
        assert {row["pathway"] for row in rows} == {"stratified", "general"}
        assert {row["oracle"] for row in rows} == {"monodromy", "staircase", "two_layer"}
        assert all(row["max_abs_error"] <= 1e-8 for row in rows)
        assert report.reference_offsets == []

    def test_report_serializes(self, bragg):
        """Test the JSON form of a verification report."""
        report = verify(bragg, oracles=["two_layer"], omega_points=5)
        doc = json.loads(report.to_json())
        assert doc["passed"] is True
        assert doc["profile"] == "layers"
        assert len(doc["reports"]) == 2 * 5
        assert doc["thresholds"] == {"stratified": 1e-8, "continuous": 1e-3}

    def test_graded_profile_exceeds_threshold(self):
        """Test the DTMM discrepancy on a continuous profile is reported, not hidden."""
        report = verify(
            CanonicalProfiles.sinusoidal(), oracles=["monodromy"], omega_points=5, omega_max=0.5
        )
        assert not report.exact_medium
        assert not report.passed
        assert report.failures()
        assert report.threshold_for("general") == 1e-3
        assert len(report.reference_offsets) == 2
        assert {row["pathway"] for row in report.summary()} == {"symmetric", "general"}

    def test_two_layer_alone_on_graded_profile(self):
        """Test that the two-layer oracle alone refuses a graded profile."""
        with pytest.raises(OracleError, match="needs a layered medium"):
            verify(CanonicalProfiles.sinusoidal(), oracles=["two_layer"], omega_points=3)

    def test_two_layer_skipped_in_combination(self):
        """Test that the two-layer oracle is skipped next to others."""
        report = verify(
            CanonicalProfiles.triangular(), oracles=["monodromy", "two_layer"], omega_points=3
        )
        assert report.skipped == ["two_layer"]
        assert {row["oracle"] for row in report.summary()} == {"monodromy"}

    def test_custom_offset_frequencies(self):
        """Test reference-offset spreads at chosen frequencies."""
        report = verify(
            CanonicalProfiles.triangular(),
            oracles=["staircase"],
            omega_points=3,
            omega_max=0.6,
            n_max=256,
            offset_frequencies=[0.2],
        )
        assert [row["omega"] for row in report.reference_offsets] == [0.2]
        assert report.reference_offsets[0]["spread"] >= 0.0
