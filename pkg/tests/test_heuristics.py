import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from slslab.benchmarks import (
    ContractViolation,
    SearchPoint,
    cliff,
    evaluate,
    onemax,
)
from slslab.heuristics import (
    HeuristicConfig,
    SdState,
    heavy_tail_cdf,
    ma_global_step,
    metropolis_step,
    oea_step,
    run,
    sample_heavy_tailed_rate,
    sd_oea_step,
    sd_thresholds,
)


class TestHeuristicConfig:
    def test_ma_requires_alpha(self):
        with pytest.raises(ContractViolation):
            HeuristicConfig("ma")

    def test_irrelevant_parameter_rejected(self):
        with pytest.raises(ContractViolation):
            HeuristicConfig("rls", alpha=5.0)
        with pytest.raises(ContractViolation):
            HeuristicConfig("oea", p=0.1, beta=1.5)

    def test_p_range(self):
        with pytest.raises(ContractViolation):
            HeuristicConfig("oea", p=0.5)

    def test_alpha_inf_is_valid(self):
        cfg = HeuristicConfig("ma", alpha=math.inf)
        assert math.isinf(cfg.alpha)

    def test_label(self):
        assert HeuristicConfig("ma", alpha=20.0).label() == "ma(alpha=20)"
        assert HeuristicConfig("rls").label() == "rls"


class TestMetropolisStep:
    def test_single_bit_flip(self):
        rng = np.random.default_rng(0)
        inst = onemax(16)
        x = SearchPoint.all_zeros(16)
        y, f_y = metropolis_step(x, 0.0, inst, 5.0, rng)
        assert int(np.sum(y.bits != x.bits)) in (0, 1)
        assert f_y == evaluate(inst, y)

    def test_improvement_always_accepted(self):
        # from all-zeros on OneMax any flip improves: state must change
        rng = np.random.default_rng(1)
        inst = onemax(8)
        x = SearchPoint.all_zeros(8)
        y, _ = metropolis_step(x, 0.0, inst, 5.0, rng)
        assert y.ones == 1

    def test_worsening_rate_one_step(self):
        # from all-ones, every flip worsens by 1: empirical acceptance ~ 1/alpha
        rng = np.random.default_rng(2)
        inst = onemax(6)
        alpha = 20.0
        x = SearchPoint.all_ones(6)
        accepted = 0
        trials = 20000
        for _ in range(trials):
            y, _ = metropolis_step(x, 6.0, inst, alpha, rng)
            accepted += y.ones != 6
        se = math.sqrt(trials / alpha * (1 - 1 / alpha))
        assert abs(accepted - trials / alpha) <= 4 * se

    def test_infinite_alpha_rejects_worsening(self):
        rng = np.random.default_rng(3)
        inst = onemax(5)
        x = SearchPoint.all_ones(5)
        for _ in range(200):
            y, _ = metropolis_step(x, 5.0, inst, math.inf, rng)
            assert y.ones == 5


class TestOeaStep:
    def test_elitism(self):
        rng = np.random.default_rng(4)
        inst = cliff(20, 1, 4)
        x = SearchPoint(rng.integers(0, 2, 20, dtype=np.uint8))
        f_x = evaluate(inst, x)
        for _ in range(300):
            x, f_new = oea_step(x, f_x, inst, 0.1, rng)
            assert f_new >= f_x
            f_x = f_new

    def test_valley_jump_accepted(self):
        # flipping floor(d)+2 zero-bits from the local optimum beats it
        inst = cliff(10, 1, 3)
        bits = np.ones(10, dtype=np.uint8)
        bits[:3] = 0
        f_local = evaluate(inst, SearchPoint(bits))
        jumped = SearchPoint(np.ones(10, dtype=np.uint8))
        assert evaluate(inst, jumped) > f_local

    def test_p_validated(self):
        rng = np.random.default_rng(5)
        with pytest.raises(ContractViolation):
            oea_step(SearchPoint.all_zeros(4), 0.0, onemax(4), 0.9, rng)


class TestHeavyTailedRate:
    def test_support_two(self):
        # n=4: support {1, 2}, P(r=1) = 1 / (1 + 2^-1.5)
        rng = np.random.default_rng(6)
        draws = np.array([sample_heavy_tailed_rate(4, 1.5, rng) for _ in range(30000)])
        p1 = 1 / (1 + 2**-1.5)
        se = math.sqrt(p1 * (1 - p1) / draws.size)
        assert set(draws) == {1, 2}
        assert abs(np.mean(draws == 1) - p1) <= 4 * se

    def test_singleton_support(self):
        rng = np.random.default_rng(7)
        assert all(sample_heavy_tailed_rate(2, 1.5, rng) == 1 for _ in range(50))

    def test_cdf_matches_empirical(self):
        n, beta = 30, 1.5
        cdf = heavy_tail_cdf(n, beta)
        rng = np.random.default_rng(8)
        draws = np.array(
            [sample_heavy_tailed_rate(n, beta, rng) for _ in range(200_000)]
        )
        p1 = cdf[0]
        se = math.sqrt(p1 * (1 - p1) / draws.size)
        assert abs(np.mean(draws == 1) - p1) <= 3 * se
        assert draws.max() <= n // 2 and draws.min() >= 1


class TestSdOea:
    def test_threshold_value(self):
        # n=100, r=1, R=n^3: about 5.2e3
        t = sd_thresholds(100, 100**3)[0]
        expected = 100 * (100 / 99) ** 99 * math.log(math.e * 100 * 100**3)
        assert t == pytest.approx(expected, rel=1e-12)
        assert 5.1e3 < t < 5.4e3

    def test_reset_on_improvement(self):
        inst = onemax(12)
        rng = np.random.default_rng(9)
        state = SdState(SearchPoint.all_zeros(12), 0.0, r=3, u=17)
        while True:
            new = sd_oea_step(state, inst, rng)
            if new.fitness > state.fitness:
                assert new.r == 1 and new.u == 0
                break
            state = new

    def test_counter_increments(self):
        # at the optimum no strict improvement exists; u must step up by 1
        inst = onemax(6)
        rng = np.random.default_rng(10)
        state = SdState(SearchPoint.all_ones(6), 6.0, r=1, u=0)
        new = sd_oea_step(state, inst, rng)
        assert new.u == 1 and new.r == 1

    def test_strength_escalates_past_threshold(self):
        inst = onemax(6)
        rng = np.random.default_rng(11)
        threshold = sd_thresholds(6, 6**3)[0]
        state = SdState(SearchPoint.all_ones(6), 6.0, r=1, u=int(threshold))
        new = sd_oea_step(state, inst, rng)
        assert new.r == 2 and new.u == 0


class TestMaGlobalStep:
    def test_equal_fitness_accepted(self):
        inst = onemax(10)
        rng = np.random.default_rng(12)
        x = SearchPoint.all_zeros(10)
        # p tiny: offspring almost surely equals x; must never error
        y, f_y = ma_global_step(x, 0.0, inst, 20.0, ("std", 1e-9), rng)
        assert f_y >= 0.0

    def test_worsening_probability(self):
        # from all-ones every non-identity offspring is worse; acceptance
        # probability for a 1-bit loss is alpha^-1
        inst = onemax(4)
        rng = np.random.default_rng(13)
        x = SearchPoint.all_ones(4)
        stays = moves = 0
        for _ in range(20000):
            y, _ = ma_global_step(x, 4.0, inst, 20.0, ("std", 0.05), rng)
            if y.ones != 4:
                moves += 1
            else:
                stays += 1
        assert moves > 0 and stays > moves  # most worsenings rejected

    def test_heavy_mutation_runs(self):
        inst = cliff(16, 1, 4)
        rng = np.random.default_rng(14)
        x = SearchPoint(rng.integers(0, 2, 16, dtype=np.uint8))
        y, f_y = ma_global_step(x, evaluate(inst, x), inst, 10.0, ("heavy", 1.5), rng)
        assert f_y == evaluate(inst, y)


class TestRun:
    def test_determinism(self):
        cfg = HeuristicConfig("ma", alpha=8.0)
        inst = cliff(24, 1, 4)
        a = run(cfg, inst, 12345)
        b = run(cfg, inst, 12345)
        assert a == b

    def test_rls_equals_ma_with_infinite_alpha(self):
        inst = onemax(30)
        for seed in range(40):
            a = run(HeuristicConfig("rls"), inst, seed)
            b = run(HeuristicConfig("ma", alpha=math.inf), inst, seed)
            assert a.iterations == b.iterations

    def test_trivial_n1(self):
        recs = [run(HeuristicConfig("rls"), onemax(1), s) for s in range(400)]
        started_at_zero = [r for r in recs if r.iterations > 0]
        # single flip always reaches the optimum in exactly one step
        assert all(r.iterations == 1 for r in started_at_zero)
        assert all(r.hit_optimum for r in recs)

    def test_optimal_start_is_zero_iterations(self):
        # find a seed whose uniform init is all-ones for n=2
        cfg = HeuristicConfig("rls")
        for seed in range(200):
            bits = np.random.default_rng(seed).integers(0, 2, 2, dtype=np.uint8)
            if bits.sum() == 2:
                assert run(cfg, onemax(2), seed).iterations == 0
                return
        pytest.fail("no all-ones initialization found in seed range")

    def test_censoring(self):
        cfg = HeuristicConfig("ma", alpha=5.0, budget=3)
        rec = run(cfg, onemax(64), 0)
        if not rec.hit_optimum:
            assert rec.iterations == 3
            assert rec.censored_at == 3
            assert rec.final_distance > 0

    def test_budget_only_truncates(self):
        # same seed, growing budget: once the optimum is hit the hitting time
        # is fixed, smaller budgets only censor
        inst = onemax(48)
        hit_time = None
        for budget in (10, 1000, 10**6):
            rec = run(HeuristicConfig("oea", p=1 / 48, budget=budget), inst, 7)
            if rec.hit_optimum:
                if hit_time is None:
                    hit_time = rec.iterations
                assert rec.iterations == hit_time
        assert hit_time is not None

    def test_all_kinds_reach_optimum(self):
        # rls excluded: one-bit elitist search cannot descend into the valley
        inst = cliff(20, 1, 3)
        configs = [
            HeuristicConfig("ma", alpha=10.0),
            HeuristicConfig("oea", p=0.05),
            HeuristicConfig("fast", beta=1.5),
            HeuristicConfig("sd"),
            HeuristicConfig("ma-gstd", alpha=10.0, p=0.05),
            HeuristicConfig("ma-gheavy", alpha=10.0, beta=1.5),
        ]
        for cfg in configs:
            rec = run(cfg, inst, 3)
            assert rec.hit_optimum, cfg.label()
            assert rec.final_distance == 0


def test_stochastic_dominance_over_rls():
    """On OneMax, MA(alpha) with alpha <= n is slower than RLS on average."""
    inst = onemax(40)
    trials = 4000
    ma = np.array(
        [
            run(HeuristicConfig("ma", alpha=20.0), inst, 500 + i).iterations
            for i in range(trials)
        ],
        dtype=float,
    )
    rls = np.array(
        [run(HeuristicConfig("rls"), inst, 500 + i).iterations for i in range(trials)],
        dtype=float,
    )
    gap = ma.mean() - rls.mean()
    se = math.sqrt(ma.var(ddof=1) / trials + rls.var(ddof=1) / trials)
    assert gap > 3 * se


@given(st.integers(0, 10_000))
@settings(max_examples=20, deadline=None)
def test_ma_distance_changes_by_at_most_one(seed):
    inst = onemax(10)
    rng = np.random.default_rng(seed)
    x = SearchPoint(rng.integers(0, 2, 10, dtype=np.uint8))
    f_x = evaluate(inst, x)
    for _ in range(30):
        y, f_y = metropolis_step(x, f_x, inst, 3.0, rng)
        assert abs(y.ones - x.ones) <= 1
        x, f_x = y, f_y
