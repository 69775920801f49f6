"""
End-to-end acceptance checks.

Each suite exercises one behavior of the whole engine against an exact
result, an independent oracle or a qualitative physical claim made
quantitative. The expensive suites are marked slow.
"""

import math
import time

import numpy as np
import pytest

from pcband.bandscan import compare_first_gaps, low_freq_effective_index, scan
from pcband.config import Allowed, Forbidden, IncidenceConfig, Pathway, Polarization, ScanConfig
from pcband.dispersion import bloch_cos_symmetric, classify
from pcband.matrix import Mat2
from pcband.oracle import analytic_two_layer, monodromy_cos, staircase_limit_cos, verify
from pcband.pathway import DispersionEvaluator
from pcband.profile.canonical import CANONICAL_NAMES, CanonicalProfiles, canonical_profile
from pcband.transfer.dtmm import (
    TransferContext,
    exponentiate,
    interval_matrix,
    m_symmetric,
    m_symmetric_tm,
    transfer_matrix,
)
from pcband.transfer.stratified import LayerStack

pytestmark = pytest.mark.integration

OBLIQUE = IncidenceConfig(1.0, math.pi / 4)
BOTH_POLS = [Polarization.TE, Polarization.TM]


@pytest.fixture
def bragg():
    return LayerStack.from_pairs([(1, 0.5), (3, 0.5)])


class TestExactStratifiedPathway:
    """The stratified pathway reproduces the closed-form two-layer relation."""

    @pytest.mark.parametrize("inc", [IncidenceConfig(), OBLIQUE])
    @pytest.mark.parametrize("pol", BOTH_POLS)
    def test_matches_analytic_two_layer(self, bragg, inc, pol):
        """Test 200 frequencies against the closed form within a second."""
        omegas = np.linspace(0.01, 1.5, 200)
        start = time.perf_counter()
        values = np.real(DispersionEvaluator(bragg, pol=pol, inc=inc).cos_kl_many(omegas))
        elapsed = time.perf_counter() - start
        expected = analytic_two_layer(1.0, 3.0, 0.5, 0.5, inc, 2.0 * np.pi * omegas, pol)
        np.testing.assert_allclose(values, expected, rtol=0, atol=1e-10)
        assert elapsed < 1.0


class TestTransferMatrixAlgebra:
    """Group properties of Q = exp(M) on random smooth intervals of the sinusoidal profile."""

    @pytest.fixture
    def intervals(self):
        rng = np.random.default_rng(20240611)
        ends = rng.uniform(-0.5, 0.5, size=(100, 3))
        k0s = rng.uniform(0.5, 10.0, size=100)
        return [(tuple(sorted(e)), k0) for e, k0 in zip(ends, k0s)]

    def test_identity_on_empty_interval(self, intervals):
        """Test that a zero-length interval transfers as the identity."""
        p = CanonicalProfiles.sinusoidal()
        for (a, _, _), k0 in intervals:
            q = transfer_matrix(TransferContext(p, IncidenceConfig(), k0), a, a)
            np.testing.assert_allclose(q, np.eye(2), atol=1e-12)

    def test_inverse_and_determinant(self, intervals):
        """Test Q(b, a)·Q(a, b) = I and det Q = n(a)/n(b)."""
        p = CanonicalProfiles.sinusoidal()
        for (a, _, b), k0 in intervals:
            ctx = TransferContext(p, IncidenceConfig(), k0)
            forward = transfer_matrix(ctx, a, b)
            backward = transfer_matrix(ctx, b, a)
            np.testing.assert_allclose(forward @ backward, np.eye(2), atol=1e-8)
            ratio = p.n(a) / p.n(b)
            assert complex(Mat2.det(forward)) == pytest.approx(ratio, rel=1e-8)

    def test_additive_exponent(self, intervals):
        """Test that M over [a, c] is the sum of M over [a, b] and [b, c]."""
        p = CanonicalProfiles.sinusoidal()
        for (a, b, c), k0 in intervals:
            ctx = TransferContext(p, IncidenceConfig(), k0)
            split = interval_matrix(ctx, a, b).m + interval_matrix(ctx, b, c).m
            whole = interval_matrix(ctx, a, c).m
            np.testing.assert_allclose(split, whole, atol=1e-8)


class TestRealWavenumberStructure:
    """Symmetric real-k media give traceless, purely imaginary M and a real discriminant."""

    @pytest.mark.parametrize("name", ["sinusoidal", "triangular"])
    @pytest.mark.parametrize("pol", BOTH_POLS)
    def test_structure(self, name, pol):
        """Test M is traceless and purely imaginary with a real discriminant."""
        p = canonical_profile(name)
        build = m_symmetric if pol == Polarization.TE else m_symmetric_tm
        for omega in (0.05, 0.3, 0.75, 1.2):
            ctx = TransferContext(p, IncidenceConfig(), 2.0 * math.pi * omega, pol)
            m = build(ctx)
            scale = max(1.0, Mat2.norm(m.m))
            assert abs(m.trace) <= 1e-10 * scale
            assert np.max(np.abs(m.m.real)) <= 1e-10 * scale
            q = exponentiate(m.m)
            assert abs(q[0, 0] - np.conj(q[1, 1])) <= 1e-10 * max(1.0, Mat2.norm(q))
            value = DispersionEvaluator(p, pol=pol, pathway="symmetric").cos_kl(omega)
            assert abs(value.imag) <= 1e-10

    def test_closed_form_is_real(self):
        """Test that the closed form returns a float."""
        ctx = TransferContext(CanonicalProfiles.sinusoidal(), IncidenceConfig(), 3.0)
        assert isinstance(bloch_cos_symmetric(m_symmetric(ctx), 3.0, 2.5), float)


@pytest.mark.slow
class TestPathwayEquivalence:
    """The symmetric fast path and the general path agree on graded symmetric media."""

    @pytest.mark.parametrize("name", ["sinusoidal", "triangular"])
    @pytest.mark.parametrize("pol", BOTH_POLS)
    @pytest.mark.parametrize("inc", [IncidenceConfig(), OBLIQUE])
    def test_symmetric_matches_general(self, name, pol, inc):
        """Test the fast and general pathways agree over a full scan."""
        p = canonical_profile(name)
        omegas = np.linspace(0.01, 1.5, 100)
        fast = DispersionEvaluator(p, pol=pol, inc=inc, pathway="symmetric").cos_kl_many(omegas)
        general = DispersionEvaluator(p, pol=pol, inc=inc, pathway="general").cos_kl_many(omegas)
        fast, general = fast.real, general.real
        scale = np.maximum(1.0, np.abs(general))
        assert np.all(np.abs(fast - general) <= 1e-8 * scale)


@pytest.mark.slow
class TestNormalIncidencePolarizationIdentity:
    """TE and TM scans coincide at normal incidence."""

    @pytest.mark.parametrize("name", CANONICAL_NAMES)
    def test_full_scan(self, name):
        """Test TE and TM scans of each canonical profile coincide."""
        p = canonical_profile(name)
        te = scan(p, ScanConfig(0.01, 1.5, 600, pol=Polarization.TE))
        tm = scan(p, ScanConfig(0.01, 1.5, 600, pol=Polarization.TM))
        np.testing.assert_allclose(te.cos_kl, tm.cos_kl, rtol=0, atol=1e-8)

    def test_square_via_stratified(self):
        """Test TE and TM scans of the square stack coincide with equal gap counts."""
        p = CanonicalProfiles.square()
        te = scan(p, ScanConfig(0.01, 1.5, 600, pol="te", pathway=Pathway.STRATIFIED))
        tm = scan(p, ScanConfig(0.01, 1.5, 600, pol="tm", pathway=Pathway.STRATIFIED))
        np.testing.assert_allclose(te.cos_kl, tm.cos_kl, rtol=0, atol=1e-8)
        assert len(te.gaps) == len(tm.gaps)


@pytest.mark.slow
class TestFirstGapOrdering:
    """First-gap widths, measured on the converged staircase of each profile."""

    @pytest.fixture
    def base(self):
        return ScanConfig(0.01, 0.4, 200, pathway=Pathway.STRATIFIED)

    def test_profile_ordering_at_normal_incidence(self, base):
        """Test the abrupt profile opens the widest first gap and the triangle the narrowest."""
        media = {name: canonical_profile(name) for name in ("square", "sinusoidal", "triangular")}
        table = compare_first_gaps(media, base, pols=[Polarization.TE])
        widths = dict(zip(table["profile"], table["width"]))
        assert widths["square"] > widths["sinusoidal"] > widths["triangular"]

    def test_square_gap_by_polarization_at_oblique_incidence(self, bragg, base):
        """Test the TE gap of the two-layer stack is wider than the TM gap at 45 degrees."""
        table = compare_first_gaps({"bragg": bragg}, base, thetas=[math.pi / 4])
        widths = dict(zip(table["pol"], table["width"]))
        # TM interface reflection is weaker off normal incidence
        assert widths["te"] > widths["tm"] > 0

    @pytest.mark.parametrize(
        "name, te_width, tm_width",
        [("square", 0.136, 0.078), ("sinusoidal", 0.111, 0.062), ("triangular", 0.103, 0.056)],
    )
    def test_polarization_widths_at_oblique_incidence(self, name, te_width, tm_width):
        """Test TE and TM first-gap widths of each even profile at 45 degrees."""
        base = ScanConfig(0.01, 0.5, 250)
        table = compare_first_gaps({name: canonical_profile(name)}, base, thetas=[math.pi / 4])
        widths = dict(zip(table["pol"], table["width"]))
        assert widths["te"] == pytest.approx(te_width, abs=2e-3)
        assert widths["tm"] == pytest.approx(tm_width, abs=2e-3)
        assert widths["te"] > widths["tm"] > 0

    def test_ramp_jump_second_gap(self):
        """
        Test the second gap of the asymmetric ramp against the even profiles.

        The single jump opens a wider second gap than either graded even
        profile, but the two-jump square still beats it.
        """

        def second_gap_width(name):
            bands = scan(canonical_profile(name), ScanConfig(0.01, 0.75, 300))
            closed = [g for g in bands.gaps if g.parity == 0 and not (g.open_below or g.open_above)]
            assert closed, f"no second gap for {name}"
            return closed[0].width

        widths = {name: second_gap_width(name) for name in CANONICAL_NAMES}
        assert widths["square"] == pytest.approx(0.161, abs=2e-3)
        assert widths["ramp_jump"] == pytest.approx(0.064, abs=3e-3)
        assert widths["ramp_jump"] > widths["sinusoidal"]
        assert widths["ramp_jump"] > widths["triangular"]
        assert widths["ramp_jump"] < widths["square"]


class TestLowFrequencyLinearity:
    """κ grows linearly with k0 in the long-wavelength limit."""

    @pytest.mark.parametrize("name", CANONICAL_NAMES)
    def test_linear_fit(self, name):
        """Test a linear κ(k0) with an effective index above one."""
        fit = low_freq_effective_index(canonical_profile(name))
        assert fit.max_relative_residual < 0.01
        assert fit.slope > 1.0


@pytest.mark.slow
class TestOracleAgreement:
    """Independent oracles agree with each other; DTMM discrepancies are reported."""

    @pytest.mark.parametrize("inc", [IncidenceConfig(), OBLIQUE])
    @pytest.mark.parametrize("pol", BOTH_POLS)
    @pytest.mark.parametrize("name", CANONICAL_NAMES)
    def test_monodromy_matches_staircase(self, name, pol, inc):
        """Test the integrated ODE and the extrapolated staircase agree to 1e-6."""
        p = canonical_profile(name)
        omegas = np.array([0.05, 0.25, 0.5, 0.8, 1.1, 1.5])
        k0 = 2.0 * np.pi * omegas
        integrated = monodromy_cos(p, inc, k0, pol)
        estimate = staircase_limit_cos(p, inc, k0, pol)
        np.testing.assert_allclose(integrated, estimate.value, rtol=0, atol=1e-6)

    def test_discrepancy_is_reported_per_frequency(self):
        """Test that monodromy failures are listed per frequency."""
        report = verify(CanonicalProfiles.sinusoidal(), oracles=["monodromy"], omega_points=11)
        assert not report.passed
        omegas = sorted({r.omega_norm for r in report.failures()})
        assert omegas
        assert all(0.01 <= w <= 1.5 for w in omegas)

    def test_layered_medium_passes_every_oracle(self, bragg):
        """Test that a layered stack passes every oracle."""
        assert verify(bragg, omega_points=21).passed


class TestClassificationIdentities:
    """Reported phases and decay constants reproduce the discriminant."""

    def test_random_discriminants(self):
        """Test cos and cosh identities on random discriminants."""
        rng = np.random.default_rng(7)
        for c in rng.uniform(-3.0, 3.0, size=100_000):
            state = classify(float(c))
            if isinstance(state, Allowed):
                assert abs(math.cos(state.kappa_L) - c) <= 1e-12
            elif isinstance(state, Forbidden):
                assert abs(math.cosh(state.xi) - abs(c)) <= 1e-12 * abs(c)


@pytest.mark.slow
class TestPerformance:
    """Timing of the symmetric fast path."""

    def test_oblique_sinusoid_scan(self):
        """Test a 600-sample oblique sinusoid scan takes at most five seconds."""
        cfg = ScanConfig(0.01, 1.5, 600, inc=OBLIQUE, pathway=Pathway.SYMMETRIC)
        start = time.perf_counter()
        bands = scan(CanonicalProfiles.sinusoidal(), cfg)
        elapsed = time.perf_counter() - start
        assert bands.pathway == Pathway.SYMMETRIC
        assert elapsed <= 5.0

    def test_diagonal_reuse_speedup(self):
        """Test that reusing the diagonal is at least 1.5 times faster."""
        p = CanonicalProfiles.sinusoidal()
        contexts = [
            TransferContext(p, IncidenceConfig(), 2.0 * math.pi * w) for w in np.linspace(0.05, 1.5, 60)
        ]
        m_symmetric(contexts[0])

        start = time.perf_counter()
        for ctx in contexts:
            m_symmetric(ctx, reuse_diagonal=True)
        reused = time.perf_counter() - start

        start = time.perf_counter()
        for ctx in contexts:
            m_symmetric(ctx, reuse_diagonal=False)
        naive = time.perf_counter() - start

        assert naive >= 1.5 * reused
