"""Exact expected optimization times for one-bit-flip search on OneMax/Cliff.

Because fitness depends on a search point only through its one-bit count, the
Metropolis algorithm (and RLS as its ``alpha = inf`` limit) collapses to a
birth–death chain over distance levels ``i = 0..n``, where level ``i`` holds
all points with ``i`` zero-bits.  This module builds that chain, computes the
expected level-upgrade times ``E_i`` by the standard backward recursion,
cross-checks them against a direct linear first-passage solve, and evaluates
gambler's-ruin hitting probabilities.

All quantities are carried both in linear and in natural-log form: for small
``alpha`` the expected times grow like ``alpha^(d+2) * exp(n/alpha)`` and can
overflow double precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from .benchmarks import CLIFF, ONEMAX, ContractViolation, ProblemInstance

__all__ = [
    "LevelChain",
    "HittingTimes",
    "UnreachableOptimumError",
    "build_level_chain",
    "expected_upgrade_times",
    "solve_first_passage_linear",
    "hitting_probability_before",
    "equilibrium_point",
]


class UnreachableOptimumError(ValueError):
    """The optimum cannot be reached: some level has zero downward probability."""


@dataclass(frozen=True)
class LevelChain:
    """Birth–death chain over distance levels 0..n.

    ``p_minus[i]`` is the one-step probability of moving from level ``i`` to
    ``i - 1`` (valid for ``i`` in 1..n); ``p_plus[i]`` of moving to ``i + 1``
    (valid for ``i`` in 0..n-1).  Remaining mass is the self-loop.
    """

    n: int
    p_minus: np.ndarray
    p_plus: np.ndarray
    label: str = ""

    def __post_init__(self):
        pm, pp = self.p_minus, self.p_plus
        if pm.shape != (self.n + 1,) or pp.shape != (self.n + 1,):
            raise ContractViolation("p_minus/p_plus must have length n+1")
        if np.any(pm[1:] + pp[1:] > 1 + 1e-12):
            raise ContractViolation("p_minus[i] + p_plus[i] must not exceed 1")


@dataclass(frozen=True)
class HittingTimes:
    """E_i (level i -> i-1), their prefix sums E_k^0, and the start average.

    ``log_E``/``log_E_total_from``/``log_E_expected_start`` hold natural logs
    and stay finite even where the linear values overflow to ``inf``.
    """

    E: np.ndarray  # index 1..n; E[0] = 0 placeholder
    log_E: np.ndarray
    E_total_from: np.ndarray  # E_total_from[k] = sum_{l=1}^{k} E_l
    log_E_total_from: np.ndarray
    E_expected_start: float
    log_E_expected_start: float


def build_level_chain(instance: ProblemInstance, alpha: float) -> LevelChain:
    """Transition probabilities of the level chain for MA(alpha).

    OneMax: ``p_minus[i] = i/n`` and ``p_plus[i] = (n-i)/(alpha*n)``.  Cliff
    changes only two levels.  At the local optimum (level ``m``) the down-move
    costs ``d`` fitness and the up-move costs 1, so
    ``p_minus[m] = alpha^{-d} * m/n`` and ``p_plus[m] = alpha^{-1} (n-m)/n``.
    Just past the drop (level ``m - 1``) both neighbours improve fitness, so
    ``p_minus[m-1] = (m-1)/n`` and ``p_plus[m-1] = (n-m+1)/n`` with no
    acceptance discount.  ``alpha = inf`` (RLS) zeroes every
    worsening acceptance.
    """
    if not (alpha > 1):
        raise ContractViolation("alpha must exceed 1 (or be +inf)")
    n = instance.n
    i = np.arange(n + 1, dtype=float)
    inv_alpha = 0.0 if np.isinf(alpha) else 1.0 / alpha
    p_minus = i / n
    p_plus = (n - i) / n * inv_alpha
    if instance.kind == CLIFF:
        m, d = instance.m, instance.d
        p_minus[m] = (inv_alpha**d) * m / n
        p_plus[m] = inv_alpha * (n - m) / n
        p_minus[m - 1] = (m - 1) / n
        p_plus[m - 1] = (n - m + 1) / n
    p_minus[0] = 0.0
    p_plus[n] = 0.0
    label = f"{instance.kind} n={n} alpha={alpha}"
    if instance.kind == CLIFF:
        label += f" m={instance.m} d={instance.d}"
    return LevelChain(n=n, p_minus=p_minus, p_plus=p_plus, label=label)


def _check_reachable(chain: LevelChain) -> None:
    if np.any(chain.p_minus[1:] == 0.0):
        bad = int(np.flatnonzero(chain.p_minus[1:] == 0.0)[0]) + 1
        raise UnreachableOptimumError(
            f"p_minus[{bad}] = 0: the optimum is unreachable from level {bad}"
        )


def _log_binomial_weights(n: int) -> np.ndarray:
    """log of C(n,k) 2^{-n} for k = 0..n, exact in log-space for any n."""
    k = np.arange(n + 1, dtype=float)
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1) - n * np.log(2.0)


def expected_upgrade_times(chain: LevelChain) -> HittingTimes:
    """Backward recursion E_i = 1/p_minus[i] + (p_plus[i]/p_minus[i]) E_{i+1}.

    Runs once in linear arithmetic (entries may overflow to ``inf``) and once
    in log-space via logaddexp; prefix sums give ``E_k^0`` and the binomial
    average over the uniform random starting level gives the expected runtime
    from a random initial point.
    """
    _check_reachable(chain)
    n = chain.n
    pm, pp = chain.p_minus, chain.p_plus
    E = np.zeros(n + 1)
    log_E = np.full(n + 1, -np.inf)
    E[n] = 1.0 / pm[n]
    log_E[n] = -np.log(pm[n])
    with np.errstate(divide="ignore", over="ignore"):
        log_pp = np.log(pp)
        for i in range(n - 1, 0, -1):
            E[i] = 1.0 / pm[i] + (pp[i] / pm[i]) * E[i + 1]
            log_E[i] = np.logaddexp(
                -np.log(pm[i]), log_pp[i] - np.log(pm[i]) + log_E[i + 1]
            )
        E_total = np.concatenate(([0.0], np.cumsum(E[1:])))
        log_E_total = np.full(n + 1, -np.inf)
        run = -np.inf
        for k in range(1, n + 1):
            run = np.logaddexp(run, log_E[k])
            log_E_total[k] = run
        log_w = _log_binomial_weights(n)
        log_start = logsumexp(log_w[1:] + log_E_total[1:])
        E_start = float(np.exp(log_start))
        if not np.isfinite(E_start):
            E_start = np.inf
    return HittingTimes(
        E=E,
        log_E=log_E,
        E_total_from=E_total,
        log_E_total_from=log_E_total,
        E_expected_start=E_start,
        log_E_expected_start=float(log_start),
    )


def _precision_for(chain: LevelChain) -> int:
    """Decimal digits needed so forward elimination keeps full accuracy.

    The hitting times are bounded by ``prod(1 + p_plus/p_minus) * sum(1/p_minus)``;
    its log10 bounds the dynamic range the solver must resolve.
    """
    pm, pp = chain.p_minus[1:], chain.p_plus[1:]
    with np.errstate(divide="ignore"):
        span = np.sum(np.log10(1.0 + pp / pm)) + np.log10(np.sum(1.0 / pm))
    return int(40 + max(0.0, span))


def solve_first_passage_linear(chain: LevelChain, target_level: int = 0) -> np.ndarray:
    """Expected hitting times of ``target_level`` by solving the linear system.

    Independent verification of :func:`expected_upgrade_times`: sets up the
    tridiagonal first-passage system
    ``(p_minus[i] + p_plus[i]) h_i - p_minus[i] h_{i-1} - p_plus[i] h_{i+1} = 1``
    over the transient levels ``target+1..n`` and eliminates it top-down (the
    opposite sweep direction from the backward recursion).  The forward sweep
    subtracts nearly equal quantities when a level is almost absorbing — the
    system's condition number reaches ``alpha^d`` scales on deep cliffs — so
    the elimination runs in extended precision sized by :func:`_precision_for`.
    Entry ``i`` of the result is the expected time from level ``i``; levels at
    or below the target are 0.
    """
    import mpmath

    n = chain.n
    if not 0 <= target_level < n:
        raise ContractViolation("target_level must lie in [0, n)")
    if np.any(chain.p_minus[target_level + 1 :] == 0.0):
        raise UnreachableOptimumError(
            "target unreachable: zero downward probability above the target level"
        )
    lo, size = target_level + 1, n - target_level
    pm = chain.p_minus[lo : n + 1]
    pp = chain.p_plus[lo : n + 1]
    with mpmath.workdps(_precision_for(chain)):
        diag = [mpmath.mpf(pm[j]) + mpmath.mpf(pp[j]) for j in range(size)]
        rhs = [mpmath.mpf(1)] * size
        # forward elimination of the subdiagonal (-pm), top row first
        for j in range(1, size):
            factor = mpmath.mpf(pm[j]) / diag[j - 1]
            diag[j] -= factor * mpmath.mpf(pp[j - 1])
            rhs[j] += factor * rhs[j - 1]
        h = [mpmath.mpf(0)] * size
        h[-1] = rhs[-1] / diag[-1]
        for j in range(size - 2, -1, -1):
            h[j] = (rhs[j] + mpmath.mpf(pp[j]) * h[j + 1]) / diag[j]
        out = np.zeros(n + 1)
        out[lo:] = [float(v) for v in h]
    return out


def hitting_probability_before(
    chain: LevelChain, start: int, low: int, high: int
) -> float:
    """P(level chain from ``start`` reaches ``low`` before ``high``).

    Gambler's ruin for an inhomogeneous birth–death chain: with
    ``w_i = prod_{k=i}^{high-1} p_plus[k]/p_minus[k]`` (``w_high = 1``),
    the probability equals
    ``sum_{i=start+1}^{high} w_i / sum_{i=low+1}^{high} w_i``.
    The products are accumulated as suffix sums of log-ratios and combined
    with logsumexp so extreme up/down biases cannot over- or underflow.
    """
    if not low < start < high:
        raise ContractViolation("need low < start < high")
    if not (0 <= low and high <= chain.n):
        raise ContractViolation("levels must lie within [0, n]")
    pm, pp = chain.p_minus, chain.p_plus
    # A level k in (low, high) with p_minus[k] = 0 can never be crossed
    # downward, so it acts as an absorbing top boundary.
    for k in range(low + 1, high):
        if pm[k] == 0.0:
            if k <= start:
                return 0.0
            high = k
            break
    with np.errstate(divide="ignore"):
        log_ratio = np.log(pp[low + 1 : high]) - np.log(pm[low + 1 : high])
    # log w_i for i = low+1 .. high (w_high = empty product = 1)
    log_w = np.concatenate((np.cumsum(log_ratio[::-1])[::-1], [0.0]))
    denom = logsumexp(log_w)
    numer = logsumexp(log_w[start - low :])
    return float(np.exp(numer - denom))


def equilibrium_point(n: int, alpha: float) -> float:
    """Level where the OneMax one-step drift changes sign: n / (alpha + 1)."""
    if np.isinf(alpha):
        return 0.0
    return n / (alpha + 1.0)
