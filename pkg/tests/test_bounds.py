import math

import numpy as np
import pytest

from slslab.benchmarks import ContractViolation, onemax
from slslab.bounds import (
    cliff_ea_bound,
    cliff_ma_bounds,
    e1_bounds,
    e1_expansion,
    onemax_ma_bound,
    optimal_parameters,
    posdrift_bounds,
)
from slslab.oracle import build_level_chain, expected_upgrade_times


class TestOnemaxMaBound:
    def test_indicator_on_at_alpha_n(self):
        n = 50
        r = onemax_ma_bound(n, n)
        assert r.main_term == pytest.approx(n * math.log(n) + n * math.e, rel=1e-12)

    def test_indicator_off_above_n(self):
        n = 50
        r = onemax_ma_bound(n, 2 * n)
        assert r.main_term == pytest.approx(n * math.log(n), rel=1e-12)

    def test_frozen_value(self):
        r = onemax_ma_bound(100, 20)
        assert r.main_term == pytest.approx(
            100 * math.log(100) + 20 * math.exp(5), rel=1e-10
        )

    def test_asymptotic_hypothesis_recorded(self):
        r = onemax_ma_bound(100, 20)
        assert any("omega" in k for k in r.validity)
        assert r.asymptotic_slack


class TestPosdriftBounds:
    def test_infinite_alpha(self):
        n = 64
        r = posdrift_bounds(n, math.inf)
        assert r.upper == pytest.approx(n * (math.log(n) + 1))

    def test_frozen_lower(self):
        r = posdrift_bounds(100, 99)  # k = 1
        assert r.lower == pytest.approx(100 * math.log(100), rel=1e-12)

    def test_ordering_on_grid(self):
        for n in (10, 100, 1000, 10_000):
            for alpha in (math.sqrt(n), n / 2, n, n**2):
                if alpha <= 1:
                    continue
                r = posdrift_bounds(n, alpha)
                assert r.lower <= r.upper + 1e-9, (n, alpha)


class TestE1Expansion:
    def test_single_term(self):
        assert e1_expansion(100, 50, 1, 0.0) == pytest.approx(100.0)
        assert e1_expansion(100, 50, 1, 7.0) == pytest.approx(100 + 2 * 7.0)

    def test_infinite_alpha_collapses_to_n(self):
        assert e1_expansion(64, math.inf, 5, 123.0) == pytest.approx(64.0)

    def test_against_exact_oracle(self):
        n, alpha, ell = 40, 20, 5
        ht = expected_upgrade_times(build_level_chain(onemax(n), alpha))
        e1_plus = e1_expansion(n, alpha, ell, ht.E[ell + 1])
        assert ht.E[1] <= e1_plus
        assert ht.E[1] >= 0.9 * e1_plus


class TestE1Bounds:
    def test_sharpened_at_two_n(self):
        n = 100
        r = e1_bounds(n, 2 * n)
        assert r.upper == 2 * n

    def test_frozen_value(self):
        r = e1_bounds(100, 50)
        assert r.upper == pytest.approx(50 * math.exp(2), rel=1e-12)

    def test_oracle_never_exceeds_upper(self):
        for n in (30, 60, 100):
            for alpha in np.linspace(1.1 * math.sqrt(n), 3 * n, 8):
                exact = expected_upgrade_times(build_level_chain(onemax(n), alpha)).E[1]
                assert exact <= e1_bounds(n, alpha).upper * (1 + 1e-12)


class TestCliffMaBounds:
    def test_case_selection(self):
        r = cliff_ma_bounds(100, 8, 3, 20)
        assert "positive" in r.validity["case"]  # k* = 100/21 < 9
        r2 = cliff_ma_bounds(100, 30, 1, 2.2)
        assert "negative" in r2.validity["case"]  # k* = 31.25 >= 31

    def test_part2_frozen_log10(self):
        r = cliff_ma_bounds(100, 30, 1, 2.2)
        expected = 3 * math.log10(2.2) + (100 / 2.2) * math.log10(math.e)
        assert r.log10_upper == pytest.approx(expected, rel=1e-12)
        assert r.log10_upper == pytest.approx(20.77, abs=0.01)

    def test_lower_below_upper(self):
        for m in (6, 10, 20):
            for alpha in (15, 30, 60):
                r = cliff_ma_bounds(100, m, 1.5, alpha)
                assert r.lower <= r.upper

    def test_case_boundary_both_finite(self):
        n, m, d = 100, 20, 1.0
        alpha_boundary = n / (m + 1) - 1  # k* = m+1 exactly
        for alpha in (alpha_boundary * 0.95, alpha_boundary * 1.05):
            r = cliff_ma_bounds(n, m, d, alpha)
            assert 0 < r.lower <= r.upper < math.inf

    def test_d_below_one_rejected(self):
        with pytest.raises(ContractViolation):
            cliff_ma_bounds(100, 8, 0.5, 20)

    def test_infinite_alpha_rejected(self):
        with pytest.raises(ContractViolation):
            cliff_ma_bounds(100, 8, 3, math.inf)


class TestCliffEaBound:
    def test_frozen_value(self):
        # n=100, m=10, d=3, p=1/n: valley term dominates, ~1.03e8
        r = cliff_ea_bound(100, 10, 3, 0.01)
        term2 = (100**5 / math.comb(10, 5)) * 0.99 ** (-95)
        term1 = 100 * 0.99 ** (-99) * (1 + math.log(100))
        assert r.upper == pytest.approx(term1 + term2, rel=1e-10)

    def test_simplified_form(self):
        n, m, d = 100, 10, 3.0
        p = 5 / n
        r = cliff_ea_bound(n, m, d, p)
        lam = 5.0
        expected = (math.exp(lam) / lam**5) / math.comb(10, 5) * n**5
        assert r.main_term == pytest.approx(expected, rel=1e-10)

    def test_increasing_above_minimizer(self):
        n, m, d = 100, 12, 3.0
        p_star = 5 / n
        grid = [p_star * f for f in (1.0, 1.3, 1.8, 2.5, 4.0)]
        values = [cliff_ea_bound(n, m, d, p).upper for p in grid]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_jump_exceeding_m_rejected(self):
        with pytest.raises(ContractViolation):
            cliff_ea_bound(100, 4, 2.5, 0.01)  # floor(2.5)+2 = 4 <= m ok; 3.5 not
            cliff_ea_bound(100, 4, 3.5, 0.01)


class TestOptimalParameters:
    def test_case1_asymptotic(self):
        n = 100
        rec = optimal_parameters(n, 22, 3)
        assert rec["alpha_star_case1_asym"] == pytest.approx(math.e * n / 20)

    def test_case2(self):
        rec = optimal_parameters(100, 22, 3)
        assert rec["alpha_star_case2"] == pytest.approx(100 / 5.5)

    def test_p_star(self):
        rec = optimal_parameters(100, 22, 3)
        assert rec["p_star"] == pytest.approx(5 / 100)

    def test_case1_exact_formula(self):
        n, m, d = 100, 6, 1.0
        rec = optimal_parameters(n, m, d)
        expected = n * ((m - d - 2) / (d * math.factorial(m - 2))) ** (1 / (m - 2))
        assert rec["alpha_star_case1_exact"] == pytest.approx(expected, rel=1e-10)

    def test_case1_exact_absent_when_invalid(self):
        rec = optimal_parameters(100, 5, 3.5)  # m - d - 2 < 0
        assert rec["alpha_star_case1_exact"] is None


def test_log_and_linear_agree():
    cases = [
        onemax_ma_bound(200, 30),
        posdrift_bounds(500, 12),
        e1_bounds(80, 15),
        cliff_ma_bounds(100, 10, 2, 25),
        cliff_ea_bound(100, 12, 3, 0.02),
    ]
    for r in cases:
        if r.upper is not None and math.isfinite(r.upper) and r.log10_upper is not None:
            assert 10**r.log10_upper == pytest.approx(r.upper, rel=1e-9)
        if r.lower and math.isfinite(r.lower) and r.log10_lower is not None:
            assert 10**r.log10_lower == pytest.approx(r.lower, rel=1e-9)
