import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from panelalloc import (
    ConfigurationError,
    PanelAllocation,
    SystemConfig,
    average_rsnr,
    average_se_upper_bound,
    heq_pdf_real,
    los_concentration,
    outage_probability,
    path_variances,
    rsnr_cdf,
    rsnr_mixture,
    rsnr_pdf,
    run_trials,
    sample_channel,
    se_cdf,
    uniform_allocation,
)
from panelalloc.analytic import mixture_components


def random_allocation(rng, n_p, num_paths):
    cuts = np.sort(rng.integers(0, n_p + 1, size=num_paths - 1))
    q = np.diff(np.concatenate(([0], cuts, [n_p])))
    if q[0] == 0:  # keep at least one LoS panel, like the optimizer's candidates
        donor = int(np.argmax(q))
        q[donor] -= 1
        q[0] += 1
    return PanelAllocation(tuple(int(v) for v in q))


class TestMixture:
    def test_single_beam_is_one_exponential(self, baseline):
        mix = rsnr_mixture(los_concentration(baseline), baseline)
        assert mix.zero_mass == pytest.approx(baseline.p_blk)
        assert len(mix.weights) == 1
        assert mix.weights[0] == pytest.approx(1 - baseline.p_blk)
        sigma1 = baseline.rician_k / (baseline.rician_k + 1)
        expected_scale = (
            baseline.tx_snr * baseline.n_a**2 / baseline.n_t * sigma1 * baseline.n_p**2
        )
        assert mix.scales[0] == pytest.approx(expected_scale, rel=1e-12)

    def test_uniform_allocation_components(self, baseline):
        mix = rsnr_mixture(uniform_allocation(baseline), baseline)
        assert mix.zero_mass == pytest.approx(0.4**4)
        assert len(mix.weights) == 2**4 - 1
        assert np.all(mix.scales > 0)

    def test_component_count_and_normalization(self, baseline, rng):
        for _ in range(20):
            alloc = random_allocation(rng, baseline.n_p, baseline.num_paths)
            mix = rsnr_mixture(alloc, baseline)
            assert len(mix.weights) == 2**alloc.n_b - 1
            assert mix.zero_mass + mix.weights.sum() == pytest.approx(1.0, abs=1e-12)

    @given(
        p_blk=st.floats(0.0, 1.0),
        kappa=st.floats(0.0, 100.0),
        seed=st.integers(0, 2**31),
    )
    @settings(max_examples=50, deadline=None)
    def test_normalization_property(self, p_blk, kappa, seed):
        gen = np.random.default_rng(seed)
        q = gen.integers(0, 4, size=4)
        q[gen.integers(4)] += 1  # nonempty support
        variances = path_variances(kappa, 4).variances
        zero_mass, weights, _ = mixture_components(q, variances, p_blk)
        assert zero_mass + weights.sum() == pytest.approx(1.0, abs=1e-12)

    def test_degenerate_los_variance_folds_into_zero_mass(self):
        # kappa = 0 makes the LoS gain identically zero: subsets containing
        # only the LoS path are zero-scale and merge with the atom
        cfg = SystemConfig(n_p=4, num_paths=2, rician_k=0.0)
        mix = rsnr_mixture(PanelAllocation((2, 2)), cfg)
        p = cfg.p_blk
        assert mix.zero_mass == pytest.approx(p**2 + p * (1 - p))
        assert np.all(mix.scales > 0)
        assert mix.zero_mass + mix.weights.sum() == pytest.approx(1.0, abs=1e-12)

    def test_zero_allocation_paths_do_not_matter(self, baseline):
        variances = path_variances(baseline.rician_k, baseline.num_paths).variances
        full = mixture_components(np.array([3, 5, 0, 0]), variances, baseline.p_blk)
        trimmed = mixture_components(np.array([3, 5]), variances[:2], baseline.p_blk)
        assert full[0] == trimmed[0]
        np.testing.assert_allclose(np.sort(full[1]), np.sort(trimmed[1]))
        np.testing.assert_allclose(np.sort(full[2]), np.sort(trimmed[2]))

    def test_mismatched_allocation_rejected(self, baseline):
        with pytest.raises(ConfigurationError):
            rsnr_mixture(PanelAllocation((4, 4, 4, 4)), baseline)


class TestHeqPdf:
    def test_four_pattern_weights(self):
        # two paths, two panels each: blockage patterns weigh
        # {0.16 atom, 0.24, 0.24, 0.36}
        cfg = SystemConfig(n_a=32, n_p=4, num_paths=2)
        variances = path_variances(cfg.rician_k, cfg.num_paths).variances
        zero_mass, weights, _ = mixture_components(np.array([2, 2]), variances, cfg.p_blk)
        assert zero_mass == pytest.approx(0.16)
        np.testing.assert_allclose(np.sort(weights), [0.24, 0.24, 0.36])

    def test_continuous_part_integrates_to_one_minus_atom(self, baseline):
        alloc = uniform_allocation(baseline)
        density = lambda x: heq_pdf_real(alloc, baseline, x)[0]
        _, zero_mass = heq_pdf_real(alloc, baseline, 0.0)
        total, _ = quad(density, -np.inf, np.inf, limit=200)
        assert total == pytest.approx(1.0 - zero_mass, abs=1e-6)
        assert zero_mass == pytest.approx(baseline.p_blk**4)

    def test_symmetry(self, baseline):
        alloc = PanelAllocation((5, 1, 1, 1))
        x = np.linspace(0.0, 30.0, 64)
        left, _ = heq_pdf_real(alloc, baseline, -x)
        right, _ = heq_pdf_real(alloc, baseline, x)
        np.testing.assert_allclose(left, right, rtol=1e-12)


class TestRsnrCdf:
    def test_value_at_zero_is_atom(self, baseline):
        for alloc in (los_concentration(baseline), uniform_allocation(baseline)):
            mix = rsnr_mixture(alloc, baseline)
            assert rsnr_cdf(mix, 0.0) == pytest.approx(baseline.p_blk**alloc.n_b)

    def test_limit_is_one(self, baseline):
        mix = rsnr_mixture(uniform_allocation(baseline), baseline)
        assert rsnr_cdf(mix, 1e9) == pytest.approx(1.0, abs=1e-9)

    def test_negative_argument_rejected(self, baseline):
        mix = rsnr_mixture(los_concentration(baseline), baseline)
        with pytest.raises(ValueError):
            rsnr_cdf(mix, -0.5)

    def test_nondecreasing_and_continuous_above_zero(self, baseline, rng):
        alloc = random_allocation(rng, baseline.n_p, baseline.num_paths)
        mix = rsnr_mixture(alloc, baseline)
        grid = np.linspace(0.0, 4000.0, 2000)
        values = rsnr_cdf(mix, grid)
        assert np.all(np.diff(values) >= 0)
        assert rsnr_cdf(mix, 1e-9) - rsnr_cdf(mix, 0.0) < 1e-6

    def test_matches_monte_carlo_at_unit_threshold(self, baseline, rng):
        # oracle: idealized simulation of the same model, 1e6 trials
        alloc = uniform_allocation(baseline)
        aods = sample_channel(baseline, rng=rng).aods
        result = run_trials(baseline, alloc, aods, "idealized", 10**6, 777)
        empirical = np.mean((2.0 ** result.se_samples - 1.0) <= 1.0)
        analytic = rsnr_cdf(rsnr_mixture(alloc, baseline), 1.0)
        assert analytic == pytest.approx(empirical, abs=0.005)

    def test_oracle_equivalence_over_allocation_grid(self, baseline, rng):
        # five allocations x five SE points, binomial 3-sigma band plus slack
        aods = sample_channel(baseline, rng=rng).aods
        n = 10**6
        allocations = [
            PanelAllocation(q)
            for q in [(8, 0, 0, 0), (2, 2, 2, 2), (1, 2, 2, 3), (4, 0, 2, 2), (5, 1, 1, 1)]
        ]
        se_points = np.array([0.25, 1.0, 2.0, 4.0, 8.0])
        for seed, alloc in enumerate(allocations, start=400):
            result = run_trials(baseline, alloc, aods, "idealized", n, seed)
            mix = rsnr_mixture(alloc, baseline)
            analytic = se_cdf(mix, se_points)
            empirical = result.empirical_cdf(se_points)
            band = 3.0 * np.sqrt(analytic * (1 - analytic) / n) + 0.002
            assert np.all(np.abs(analytic - empirical) <= band)

    def test_pdf_quadrature_matches_cdf(self, baseline):
        alloc = PanelAllocation((2, 3, 2, 1))
        mix = rsnr_mixture(alloc, baseline)
        total, _ = quad(lambda g: rsnr_pdf(mix, g), 0, np.inf, limit=500)
        assert total == pytest.approx(1.0 - mix.zero_mass, abs=1e-6)
        for gamma in np.linspace(0.5, 400.0, 15):
            running, _ = quad(lambda g: rsnr_pdf(mix, g), 0, gamma, limit=500)
            assert running + mix.zero_mass == pytest.approx(
                float(rsnr_cdf(mix, gamma)), abs=1e-6
            )

    def test_se_cdf_is_change_of_variables(self, baseline):
        mix = rsnr_mixture(uniform_allocation(baseline), baseline)
        xi = np.linspace(0.0, 9.0, 41)
        np.testing.assert_allclose(se_cdf(mix, xi), rsnr_cdf(mix, 2.0**xi - 1.0))


class TestOutage:
    def test_atom_reached_as_target_vanishes(self, baseline):
        assert outage_probability(los_concentration(baseline), baseline, 1e-12) == pytest.approx(
            0.4, abs=1e-9
        )
        assert outage_probability(uniform_allocation(baseline), baseline, 1e-12) == pytest.approx(
            0.0256, abs=1e-9
        )

    def test_zero_target_is_exactly_atom(self, baseline, rng):
        alloc = random_allocation(rng, baseline.n_p, baseline.num_paths)
        assert outage_probability(alloc, baseline, 0.0) == pytest.approx(
            baseline.p_blk**alloc.n_b, abs=1e-12
        )

    def test_negative_target_rejected(self, baseline):
        with pytest.raises(ValueError):
            outage_probability(los_concentration(baseline), baseline, -1.0)


class TestAverageRsnr:
    def test_fully_blocked_is_zero(self):
        cfg = SystemConfig(p_min=1.0, p_max=1.0)
        assert average_rsnr(los_concentration(cfg), cfg) == 0.0

    def test_baseline_los_value(self, baseline):
        # gamma_tx N_a^2 (1-p) kappa (L-1) N_p^2 / (N_t (kappa+1)(L-1)) = 15360/11
        assert average_rsnr(los_concentration(baseline), baseline) == pytest.approx(
            15360.0 / 11.0, rel=1e-12
        )

    def test_closed_form_equals_mixture_mean(self, baseline, rng):
        for _ in range(20):
            alloc = random_allocation(rng, baseline.n_p, baseline.num_paths)
            mix = rsnr_mixture(alloc, baseline)
            assert average_rsnr(alloc, baseline) == pytest.approx(mix.mean(), rel=1e-9)

    def test_monte_carlo_confirms_mean(self, baseline, rng):
        aods = sample_channel(baseline, rng=rng).aods
        for seed, alloc in [
            (5, los_concentration(baseline)),
            (6, uniform_allocation(baseline)),
            (7, PanelAllocation((1, 3, 3, 1))),
        ]:
            result = run_trials(baseline, alloc, aods, "idealized", 10**6, seed)
            assert result.mean_rsnr == pytest.approx(average_rsnr(alloc, baseline), rel=0.01)


class TestAverageSeBound:
    def test_zero_rsnr_gives_zero_bound(self):
        cfg = SystemConfig(p_min=1.0, p_max=1.0)
        assert average_se_upper_bound(los_concentration(cfg), cfg) == 0.0

    def test_jensen_bound_dominates_simulation(self, baseline, rng):
        aods = sample_channel(baseline, rng=rng).aods
        for alloc in (
            los_concentration(baseline),
            uniform_allocation(baseline),
            PanelAllocation((4, 2, 1, 1)),
        ):
            result = run_trials(baseline, alloc, aods, "idealized", 10**5, 11)
            bound = average_se_upper_bound(alloc, baseline)
            assert bound >= result.mean_se
            if alloc.n_b >= 2:
                # strict gap: the SE distribution is far from degenerate
                assert bound - result.mean_se > 0.1
