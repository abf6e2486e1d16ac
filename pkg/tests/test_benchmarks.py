import numpy as np
import pytest
from hypothesis import given, strategies as st

from slslab.benchmarks import (
    ContractViolation,
    SearchPoint,
    cliff,
    distance,
    evaluate,
    is_global_optimum,
    onemax,
)


def point_with_ones(n, ones):
    bits = np.zeros(n, dtype=np.uint8)
    bits[:ones] = 1
    return SearchPoint(bits)


class TestEvaluate:
    def test_cliff_before_drop(self):
        assert evaluate(cliff(10, 1, 3), point_with_ones(10, 7)) == 7

    def test_cliff_after_drop(self):
        # 8 ones > n - m = 7, so fitness is 8 - 1 - 1
        assert evaluate(cliff(10, 1, 3), point_with_ones(10, 8)) == 6

    def test_onemax_optimum(self):
        assert evaluate(onemax(5), SearchPoint.all_ones(5)) == 5

    def test_fractional_d(self):
        assert evaluate(cliff(10, 1.5, 4), SearchPoint.all_ones(10)) == 7.5

    def test_length_mismatch(self):
        with pytest.raises(ContractViolation):
            evaluate(onemax(5), SearchPoint.all_ones(4))

    def test_penalized_region_formula(self):
        inst = cliff(12, 2.0, 5)
        for ones in range(12 - 5 + 1, 13):
            assert evaluate(inst, point_with_ones(12, ones)) == ones - 3.0


class TestDistance:
    def test_all_ones(self):
        assert distance(onemax(7), SearchPoint.all_ones(7)) == 0

    def test_partial(self):
        assert distance(onemax(10), point_with_ones(10, 7)) == 3

    def test_all_zeros(self):
        assert distance(onemax(10), SearchPoint.all_zeros(10)) == 10


class TestIsGlobalOptimum:
    def test_all_ones(self):
        assert is_global_optimum(cliff(10, 1, 3), SearchPoint.all_ones(10))

    def test_all_zeros(self):
        assert not is_global_optimum(onemax(3), SearchPoint.all_zeros(3))

    def test_cliff_local_optimum(self):
        inst = cliff(10, 1, 3)
        assert not is_global_optimum(inst, point_with_ones(10, 7))


class TestValidation:
    def test_d_too_deep(self):
        with pytest.raises(ContractViolation):
            cliff(10, 3.0, 4)  # needs d < m - 1

    def test_m_out_of_range(self):
        with pytest.raises(ContractViolation):
            cliff(10, 1.0, 10)

    def test_onemax_takes_no_extras(self):
        from slslab.benchmarks import ProblemInstance

        with pytest.raises(ContractViolation):
            ProblemInstance("onemax", 10, m=3)

    def test_nonbinary_bits_rejected(self):
        with pytest.raises(ContractViolation):
            SearchPoint(np.array([0, 1, 2], dtype=np.uint8))


@given(st.integers(3, 40), st.data())
def test_permutation_symmetry(n, data):
    m = data.draw(st.integers(2, n - 1))
    d = data.draw(st.floats(0.25, m - 1.25))
    bits = np.array(data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)))
    inst = cliff(n, d, m)
    x = SearchPoint(bits.astype(np.uint8))
    shuffled = SearchPoint(np.roll(bits, 7).astype(np.uint8))
    assert evaluate(inst, x) == evaluate(inst, shuffled)


@given(st.integers(4, 30))
def test_cliff_drop_is_exactly_d(n):
    m, d = 3, 1.25
    inst = cliff(n, d, m)
    at_edge = evaluate(inst, point_with_ones(n, n - m))
    past_edge = evaluate(inst, point_with_ones(n, n - m + 1))
    assert at_edge - past_edge == d


def test_monotone_off_the_cliff():
    inst = cliff(20, 2.5, 6)
    for ones in range(20):
        lo = evaluate(inst, point_with_ones(20, ones))
        hi = evaluate(inst, point_with_ones(20, ones + 1))
        if ones == 20 - 6:
            assert hi < lo
        else:
            assert hi > lo


def test_global_max_unique():
    inst = cliff(15, 1.5, 4)
    best = evaluate(inst, SearchPoint.all_ones(15))
    assert best == 15 - 1.5 - 1
    others = [evaluate(inst, point_with_ones(15, k)) for k in range(15)]
    assert all(v < best for v in others)
