import math

import numpy as np
import pytest

from sphwell import classical as cl
from sphwell import numerics as nm


class TestPSigma:
    def test_radial_motion_is_uniform(self):
        for r in [1e-6, 0.2, 0.5, 1.0]:
            assert cl.p_sigma(r, 0.0) == pytest.approx(1.0)

    def test_direct_evaluation(self):
        want = 0.8 / (math.sqrt(0.75) * math.sqrt(0.39))
        assert cl.p_sigma(0.8, 0.5) == pytest.approx(want, rel=1e-15)

    def test_classically_forbidden_region(self):
        assert cl.p_sigma(0.3, 0.5) == 0.0

    def test_turning_point_rejected(self):
        with pytest.raises(ValueError):
            cl.p_sigma(0.5, 0.5)
        with pytest.raises(ValueError):
            cl.p_sigma(0.5 + 1e-16, 0.5)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            cl.p_sigma(1.5, 0.2)
        with pytest.raises(ValueError):
            cl.p_sigma(0.5, 1.0)
        with pytest.raises(ValueError):
            cl.p_sigma(0.5, -0.1)

    @pytest.mark.parametrize("sigma", [0.0, 0.25, 0.5, 0.9])
    def test_each_chord_density_normalized(self, sigma):
        assert cl.p_sigma_mass(sigma) == pytest.approx(1.0, abs=1e-9)


class TestAngularMomentumWeight:
    def test_vanishes_at_ends(self):
        assert cl.angular_momentum_weight(0.0) == 0.0
        assert cl.angular_momentum_weight(1.0 - 1e-12) == pytest.approx(0.0, abs=1e-5)

    def test_normalized(self):
        value = nm.integrate(cl.angular_momentum_weight, 0.0, 1.0 - 1e-14, 1e-11)
        assert value == pytest.approx(1.0, abs=1e-10)

    def test_known_shape(self):
        assert cl.angular_momentum_weight(0.6) == pytest.approx(3 * 0.6 * 0.8)


class TestClassicalTotalDensity:
    def test_origin(self):
        assert cl.classical_total_density(0.0) == 0.0

    def test_midpoint(self):
        assert cl.classical_total_density(0.5) == pytest.approx(0.5 * math.log(3.0), rel=1e-15)

    def test_near_boundary(self):
        assert cl.classical_total_density(0.99) == pytest.approx(0.99 * math.log(199.0), rel=1e-14)

    def test_strictly_increasing(self):
        r = np.linspace(0.01, 0.99, 99)
        values = cl.classical_total_density(r)
        assert (np.diff(values) > 0).all()

    def test_boundary_rejected(self):
        with pytest.raises(ValueError):
            cl.classical_total_density(1.0)
        with pytest.raises(ValueError):
            cl.classical_total_density(1.5)

    def test_unit_mass(self):
        assert cl.classical_density_mass(1e-10) == pytest.approx(1.0, abs=1e-9)


class TestQuadratureDefinition:
    @pytest.mark.parametrize("r", [0.01, 0.1, 0.5, 0.9, 0.99])
    def test_matches_closed_form(self, r):
        got = cl.classical_total_density_by_quadrature(r, 1e-11)
        assert got == pytest.approx(cl.classical_total_density(r), abs=1e-10)

    def test_sup_agreement_on_grid(self):
        rs = np.arange(0.01, 0.995, 0.01)
        worst = max(
            abs(cl.classical_total_density_by_quadrature(r, 1e-10) - cl.classical_total_density(r))
            for r in rs
        )
        assert worst < 1e-8

    def test_vanishes_toward_origin(self):
        assert cl.classical_total_density_by_quadrature(1e-4, 1e-12) < 1e-7

    def test_liouville_mixture_identity(self):
        # 3 int_0^r P_sigma(r) sigma sqrt(1-sigma^2) dsigma = 3 r^2, via the
        # same sin substitution: 3 r^2 int sin(phi) dphi = 3 r^2
        for r in [0.2, 0.5, 0.95]:
            def integrand(phi, r=r):
                s = r * np.sin(phi)
                p = r / (np.sqrt(1 - s * s) * (r * np.cos(phi)))
                weight = 3 * s * np.sqrt(1 - s * s)
                return p * weight * r * np.cos(phi)

            got = nm.integrate(integrand, 0.0, math.pi / 2, 1e-11)
            assert got == pytest.approx(cl.liouville_total_density(r), abs=1e-8)


class TestChordSampling:
    def test_paper_sigma_law(self):
        # sigma = sqrt(u) has CDF sigma^2: quantile check
        rng = nm.seeded_rng(5)
        sigma, t, r = cl.draw_chords(rng, 200_000, "paper")
        for q in [0.3, 0.6, 0.9]:
            frac = float(np.mean(sigma <= q))
            assert frac == pytest.approx(q * q, abs=0.005)
        np.testing.assert_allclose(r * r - t * t, sigma * sigma, atol=1e-14)
        assert (sigma <= r).all() and (r <= 1.0).all()

    def test_liouville_sigma_law(self):
        rng = nm.seeded_rng(5)
        sigma, _, _ = cl.draw_chords(rng, 200_000, "liouville")
        for q in [0.3, 0.6, 0.9]:
            want = 1.0 - (1.0 - q * q) ** 1.5
            assert float(np.mean(sigma <= q)) == pytest.approx(want, abs=0.005)

    def test_single_sample_lands_in_one_bin(self):
        config = cl.McConfig(mode="paper", samples=1, bins=10, seed=9, r_max=0.99)
        hist = cl.mc_histogram(config)
        assert hist.counts.sum() == 1
        assert (hist.counts == 1).sum() == 1


class TestMcRadialDensity:
    def test_paper_mode_matches_closed_form(self):
        config = cl.McConfig(mode="paper", samples=2_000_000, bins=100, seed=42, r_max=0.99)
        curve = cl.mc_radial_density(config)
        want = cl.classical_total_density(curve.grid.points)
        sup = float(np.max(np.abs(curve.values - want)))
        assert sup < 0.02 * want.max()

    def test_liouville_mode_matches_uniform_ball(self):
        config = cl.McConfig(mode="liouville", samples=2_000_000, bins=100, seed=42, r_max=0.99)
        curve = cl.mc_radial_density(config)
        want = cl.liouville_total_density(curve.grid.points)
        sup = float(np.max(np.abs(curve.values - want)))
        assert sup < 0.02 * want.max()

    def test_in_range_mass_bounded(self):
        config = cl.McConfig(mode="paper", samples=500_000, bins=50, seed=1, r_max=0.9)
        hist = cl.mc_histogram(config)
        mass = hist.counts.sum() / hist.total_weight
        assert mass <= 1.0
        # -> integral of the closed form over [0, 0.9] as samples grow
        want = nm.integrate(cl.classical_total_density, 0.0, 0.9, 1e-10)
        assert mass == pytest.approx(want, abs=0.005)

    def test_deterministic_given_seed(self):
        config = cl.McConfig(mode="paper", samples=300_000, bins=20, seed=77, r_max=0.99)
        a = cl.mc_histogram(config)
        b = cl.mc_histogram(config)
        np.testing.assert_array_equal(a.counts, b.counts)

    def test_thread_count_invariance(self):
        config = cl.McConfig(mode="liouville", samples=2_500_000, bins=30, seed=8, r_max=0.99)
        serial = cl.mc_histogram(config, threads=1)
        threaded = cl.mc_histogram(config, threads=4)
        np.testing.assert_array_equal(serial.counts, threaded.counts)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            cl.McConfig(mode="bogus", samples=1, bins=1, seed=0)
        with pytest.raises(ValueError):
            cl.McConfig(mode="paper", samples=0, bins=1, seed=0)
        with pytest.raises(ValueError):
            cl.McConfig(mode="paper", samples=1, bins=0, seed=0)
        with pytest.raises(ValueError):
            cl.McConfig(mode="paper", samples=1, bins=1, seed=0, r_max=1.5)
