import math

import numpy as np
import pytest
from scipy import integrate
from scipy.special import ndtr

from twostage import (
    BonferroniOverUnfiltered,
    ChiSquarePValue,
    EstimatePair,
    FiltrationAware,
    Method,
    MinPValue,
    NoFilter,
    ProductThreshold,
    RandomStream,
    ScenarioMixture,
    MixtureRow,
    PowerSequence,
    Truth,
    conditional_rejection_stats,
    evaluate_filter,
    filtration_prob_at_theta0,
    fwer_bound_from_survivors,
    run_experiment,
    run_two_stage,
)


def pair(g, b, sg=1.0, sb=1.0, n=100):
    return EstimatePair(g, b, sg, sb, n)


class TestRuleValidation:
    def test_thresholds_in_unit_interval(self):
        with pytest.raises(ValueError):
            MinPValue(0.0)
        with pytest.raises(ValueError):
            ChiSquarePValue(1.0)
        with pytest.raises(ValueError):
            ProductThreshold(-1.0, 0.8)
        with pytest.raises(ValueError):
            ProductThreshold(2.0, 0.0)


class TestEvaluateFilter:
    def test_nofilter_never_filters(self):
        assert evaluate_filter(NoFilter(), pair(0.0, 0.0)) is False

    def test_product_threshold_arithmetic(self):
        # |0.01| < 2.5 * 100**-1 = 0.025 -> filtered
        e = pair(0.1, 0.1, n=100)
        assert evaluate_filter(ProductThreshold(2.5, 1.0), e) is True
        e2 = pair(0.2, 0.2, n=100)  # product 0.04 >= 0.025
        assert evaluate_filter(ProductThreshold(2.5, 1.0), e2) is False

    def test_minp_filters_double_null_origin(self):
        assert evaluate_filter(MinPValue(0.0004), pair(0.0, 0.0)) is True

    def test_chisq_filters_origin(self):
        assert evaluate_filter(ChiSquarePValue(0.001), pair(0.0, 0.0)) is True

    def test_product_monotone_in_c(self):
        rng = np.random.default_rng(3)
        es = [pair(g, b, n=50) for g, b in rng.normal(scale=0.3, size=(100, 2))]
        small = {i for i, e in enumerate(es) if evaluate_filter(ProductThreshold(1.0, 0.9), e)}
        large = {i for i, e in enumerate(es) if evaluate_filter(ProductThreshold(2.0, 0.9), e)}
        assert small <= large


class TestRunTwoStage:
    def test_all_filtered_gives_empty_stage_two(self):
        es = [pair(0.0, 0.0) for _ in range(5)]
        out = run_two_stage(es, MinPValue(0.0004), alpha=0.05)
        assert out.F == 0
        assert out.rejected_count == 0
        assert all(h.adjusted_threshold == 0.0 for h in out.per_hypothesis)

    def test_nofilter_threshold_is_plain_bonferroni(self):
        rng = np.random.default_rng(1)
        es = [pair(g, b, n=400) for g, b in rng.normal(scale=0.1, size=(200, 2))]
        out = run_two_stage(es, NoFilter(), alpha=0.05)
        assert out.F == 200
        assert out.per_hypothesis[0].adjusted_threshold == pytest.approx(2.5e-4)

    def test_single_survivor_rejected(self):
        strong = pair(2.0, 2.0, n=100)  # joint p-value ~ 0, survives any filter
        weak = pair(0.0, 0.0, n=100)
        out = run_two_stage([strong, weak], MinPValue(0.0004), alpha=0.05)
        assert out.F == 1
        assert out.rejected_count == 1
        assert out.per_hypothesis[0].rejected and not out.per_hypothesis[1].rejected

    def test_rejected_implies_unfiltered(self):
        rng = np.random.default_rng(5)
        es = [pair(g, b, n=100) for g, b in rng.normal(scale=0.4, size=(300, 2))]
        out = run_two_stage(es, ProductThreshold(2.0, 0.9), alpha=0.05)
        for h in out.per_hypothesis:
            assert not (h.rejected and h.filtered)
        assert out.F == sum(not h.filtered for h in out.per_hypothesis)

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(8)
        es = [pair(g, b, n=100) for g, b in rng.normal(scale=0.4, size=(64, 2))]
        perm = rng.permutation(64)
        out = run_two_stage(es, ProductThreshold(2.0, 0.9), alpha=0.05)
        out_perm = run_two_stage([es[i] for i in perm], ProductThreshold(2.0, 0.9), alpha=0.05)
        assert out.F == out_perm.F
        for new_pos, old_pos in enumerate(perm):
            assert out.per_hypothesis[old_pos] == out_perm.per_hypothesis[new_pos]

    def test_filtration_aware_threshold(self):
        strong = pair(2.0, 2.0, n=100)
        out = run_two_stage([strong], NoFilter(), alpha=0.05, adjustment=FiltrationAware(0.5))
        assert out.per_hypothesis[0].adjusted_threshold == pytest.approx(0.025)

    def test_alpha_validation(self):
        with pytest.raises(ValueError):
            run_two_stage([pair(0.0, 0.0)], NoFilter(), alpha=1.0)
        with pytest.raises(ValueError):
            run_two_stage([], NoFilter(), alpha=0.05)


def survival_prob_product_oracle(t: float) -> float:
    """P(|Z1 * Z2| >= t) for independent standard normals, by quadrature."""
    f = lambda z: math.exp(-z * z / 2.0) / math.sqrt(2.0 * math.pi) * (1.0 - ndtr(t / z))
    val, _ = integrate.quad(f, 0.0, np.inf, limit=200)
    return 4.0 * val


class TestFiltrationProb:
    def test_nofilter_is_one(self):
        p0, se = filtration_prob_at_theta0(NoFilter(), 1.0, 1.0, 100, 1000, RandomStream(1, 0))
        assert p0 == 1.0 and se == 0.0

    def test_loose_minp_approaches_one(self):
        p0, _ = filtration_prob_at_theta0(
            MinPValue(1.0 - 1e-9), 1.0, 1.0, 100, 5000, RandomStream(2, 0)
        )
        assert p0 > 0.999

    def test_product_threshold_matches_quadrature(self):
        # |g*b| >= 2.5/n at theta0 is |Z1*Z2| >= 2.5 on the z scale
        rule = ProductThreshold(2.5, 1.0)
        p0, se = filtration_prob_at_theta0(rule, 1.0, 1.0, 100, 200_000, RandomStream(3, 0))
        oracle = survival_prob_product_oracle(2.5)
        assert abs(p0 - oracle) < 3.0 * max(se, 1e-12)

    def test_chisq_survival_matches_threshold(self):
        # survive iff exp(-W/2) < tau, i.e. with probability tau at theta0
        rule = ChiSquarePValue(0.001)
        p0, se = filtration_prob_at_theta0(rule, 1.0, 1.0, 100, 400_000, RandomStream(4, 0))
        assert abs(p0 - 0.001) < 4.0 * max(se, 1e-12)


class TestFwerBound:
    def test_zero_q(self):
        assert fwer_bound_from_survivors(0.0, [1, 5, 10]) == 0.0

    def test_certain_rejection(self):
        assert fwer_bound_from_survivors(1.0, [3, 7]) == 1.0

    def test_arithmetic(self):
        assert fwer_bound_from_survivors(0.1, [1, 2]) == pytest.approx(0.145)

    def test_f_zero_contributes_nothing(self):
        assert fwer_bound_from_survivors(0.5, [0, 0]) == 0.0

    def test_validation(self):
        with pytest.raises(ValueError):
            fwer_bound_from_survivors(1.5, [1])
        with pytest.raises(ValueError):
            fwer_bound_from_survivors(0.1, [])


def _all_null_scenario(reps=400):
    rows = (
        MixtureRow(PowerSequence(0.0), PowerSequence(0.0), 0.7, Truth.NULL00),
        MixtureRow(PowerSequence(0.0, ((3.0, 0.5),)), PowerSequence(0.0), 0.3, Truth.NULL10),
    )
    return ScenarioMixture("all-null", rows, m=100, reps=reps, n=200, sigma=1.0, alpha=0.05)


class TestFwerGuarantees:
    def test_filtration_aware_controls_fwer(self):
        # adjustment scaled by the survival probability at the double null
        scenario = _all_null_scenario()
        rule = ProductThreshold(2.0, 0.9)
        p0, _ = filtration_prob_at_theta0(
            rule, 1.0, 1.0, scenario.n, 200_000, RandomStream(77, 2**48)
        )
        report = run_experiment(scenario, [Method(rule, FiltrationAware(p0))], master_seed=77)
        res = report.methods[0]
        assert res.empirical_fwer <= 0.05 + 3.0 * math.sqrt(0.05 * 0.95 / scenario.reps)

    def test_survivor_count_bound_holds(self):
        # empirical FWER stays below the bound built from the same run
        scenario = _all_null_scenario()
        rule = ProductThreshold(2.0, 0.9)
        stats = conditional_rejection_stats(scenario, Method(rule), master_seed=78)
        bound = fwer_bound_from_survivors(stats.q_max, stats.F_samples)
        assert stats.fwer <= bound + 3.0 * max(stats.fwer_se, 1e-12)
