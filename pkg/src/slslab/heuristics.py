"""Single-trajectory search heuristics.

Implements the Metropolis algorithm (one-bit flip, acceptance probability
``alpha^(f(y)-f(x))`` for worsenings), the elitist (1+1) EA family
(standard-bit, heavy-tailed and stagnation-detection mutation), RLS as the
``alpha = inf`` limit of Metropolis, and Metropolis with global mutation
operators.

Step operations are plain Python and convenient for tests; :func:`run`
executes whole trajectories through a compiled kernel.  Both honour the same
counting convention: the runtime is the first iteration at which the optimum
is *sampled* (an offspring evaluation counts even if it would be rejected),
and initialization is free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .benchmarks import ContractViolation, ProblemInstance, SearchPoint, evaluate
from ._kernels import ma_trajectory, run_trajectory

MA = "ma"
OEA = "oea"
RLS = "rls"
FAST_OEA = "fast"
SD_OEA = "sd"
MA_GLOBAL_STD = "ma-gstd"
MA_GLOBAL_HEAVY = "ma-gheavy"

ALL_KINDS = (MA, OEA, RLS, FAST_OEA, SD_OEA, MA_GLOBAL_STD, MA_GLOBAL_HEAVY)

DEFAULT_BUDGET = 10**9

_ALGO_CODES = {
    MA: _kernels.ALGO_MA,
    RLS: _kernels.ALGO_MA,
    OEA: _kernels.ALGO_OEA,
    FAST_OEA: _kernels.ALGO_FAST,
    SD_OEA: _kernels.ALGO_SD,
    MA_GLOBAL_STD: _kernels.ALGO_MA_GSTD,
    MA_GLOBAL_HEAVY: _kernels.ALGO_MA_GHEAVY,
}

# which optional parameters each kind uses
_RELEVANT = {
    MA: {"alpha"},
    OEA: {"p"},
    RLS: set(),
    FAST_OEA: {"beta"},
    SD_OEA: {"sd_R"},
    MA_GLOBAL_STD: {"alpha", "p"},
    MA_GLOBAL_HEAVY: {"alpha", "beta"},
}


@dataclass(frozen=True)
class HeuristicConfig:
    """Algorithm kind plus exactly the parameters that kind uses.

    ``alpha = math.inf`` is the sentinel for "reject every strictly worse
    offspring" (RLS behaviour).  ``sd_R = None`` means the default ``n^3``,
    resolved when the instance size is known.
    """

    kind: str
    alpha: float | None = None
    p: float | None = None
    beta: float | None = None
    sd_R: int | None = None
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise ContractViolation(f"unknown heuristic kind {self.kind!r}")
        relevant = _RELEVANT[self.kind]
        for name in ("alpha", "p", "beta"):
            if getattr(self, name) is not None and name not in relevant:
                raise ContractViolation(f"{self.kind} does not take {name}")
        if self.sd_R is not None and "sd_R" not in relevant:
            raise ContractViolation(f"{self.kind} does not take sd_R")
        if "alpha" in relevant:
            if self.alpha is None:
                raise ContractViolation(f"{self.kind} requires alpha")
            if not self.alpha > 1:
                raise ContractViolation("alpha must exceed 1 (or be +inf)")
        if "p" in relevant:
            if self.p is None:
                raise ContractViolation(f"{self.kind} requires p")
            if not 0 < self.p < 0.5:
                raise ContractViolation("p must lie in (0, 1/2)")
        if self.beta is not None and not self.beta > 1:
            raise ContractViolation("beta must exceed 1")
        if self.sd_R is not None and self.sd_R < 1:
            raise ContractViolation("sd_R must be positive")
        if self.budget < 1:
            raise ContractViolation("budget must be positive")

    def with_budget(self, budget: int) -> "HeuristicConfig":
        return replace(self, budget=budget)

    def label(self) -> str:
        """Short human-readable id, e.g. ``ma(alpha=20)``."""
        parts = []
        for name in ("alpha", "p", "beta", "sd_R"):
            v = getattr(self, name)
            if v is not None:
                parts.append(f"{name}={v:g}" if isinstance(v, float) else f"{name}={v}")
        return f"{self.kind}({', '.join(parts)})" if parts else self.kind


@dataclass(frozen=True)
class RunRecord:
    seed: int
    iterations: int
    hit_optimum: bool
    censored_at: int | None
    final_distance: int

    def __post_init__(self):
        if self.hit_optimum:
            assert self.censored_at is None and self.final_distance == 0
        else:
            assert self.censored_at == self.iterations


@dataclass(frozen=True)
class SdState:
    """Current point and the stagnation-detection bookkeeping (r, u)."""

    x: SearchPoint
    fitness: float
    r: int = 1
    u: int = 0
    sd_R: int | None = None


def _metropolis_accept(delta: float, alpha: float, rng: np.random.Generator) -> bool:
    if delta >= 0:
        return True
    if math.isinf(alpha):
        return False
    return rng.random() < alpha**delta


def metropolis_step(
    x: SearchPoint,
    f_x: float,
    instance: ProblemInstance,
    alpha: float,
    rng: np.random.Generator,
) -> tuple[SearchPoint, float]:
    """One Metropolis iteration: flip one uniform bit, accept worse moves
    with probability ``alpha^(f(y) - f(x))``."""
    pos = int(rng.integers(0, x.n))
    bits = x.bits.copy()
    bits[pos] ^= 1
    y = SearchPoint(bits)
    f_y = evaluate(instance, y)
    if _metropolis_accept(f_y - f_x, alpha, rng):
        return y, f_y
    return x, f_x


def _standard_bit_mutation(
    x: SearchPoint, p: float, rng: np.random.Generator
) -> SearchPoint:
    flips = rng.random(x.n) < p
    return SearchPoint(np.where(flips, 1 - x.bits, x.bits).astype(np.uint8))


def oea_step(
    x: SearchPoint,
    f_x: float,
    instance: ProblemInstance,
    p: float,
    rng: np.random.Generator,
) -> tuple[SearchPoint, float]:
    """One (1+1) EA iteration: standard-bit mutation, strict elitism."""
    if not 0 < p < 0.5:
        raise ContractViolation("p must lie in (0, 1/2)")
    y = _standard_bit_mutation(x, p, rng)
    f_y = evaluate(instance, y)
    return (y, f_y) if f_y >= f_x else (x, f_x)


def heavy_tail_cdf(n: int, beta: float) -> np.ndarray:
    """Cumulative law of the mutation strength r on {1..floor(n/2)},
    mass proportional to r^(-beta)."""
    if n < 2:
        raise ContractViolation("heavy-tailed mutation needs n >= 2")
    if not beta > 1:
        raise ContractViolation("beta must exceed 1")
    r = np.arange(1, n // 2 + 1, dtype=float)
    mass = r**-beta
    cdf = np.cumsum(mass / mass.sum())
    cdf[-1] = 1.0
    return cdf


def sample_heavy_tailed_rate(n: int, beta: float, rng: np.random.Generator) -> int:
    """Draw mutation strength r in [1, n/2] with mass proportional to r^(-beta)."""
    cdf = heavy_tail_cdf(n, beta)
    return int(np.searchsorted(cdf, rng.random(), side="right")) + 1


def sd_thresholds(n: int, sd_R: int) -> np.ndarray:
    """Failure-count thresholds (n/r)^r (n/(n-r))^(n-r) ln(e n R) per strength
    r = 1..floor(n/2), computed in log-space."""
    r = np.arange(1, n // 2 + 1, dtype=float)
    log_t = (
        r * (np.log(n) - np.log(r))
        + (n - r) * (np.log(n) - np.log(n - r))
        + np.log(np.log(math.e * n * sd_R))
    )
    with np.errstate(over="ignore"):
        return np.exp(log_t)


def sd_oea_step(
    state: SdState, instance: ProblemInstance, rng: np.random.Generator
) -> SdState:
    """One stagnation-detection (1+1) EA iteration.

    Mutates at rate r/n; strict improvement resets (r, u) to (1, 0); equal
    fitness is accepted only at r = 1; once u exceeds the threshold for the
    current r, the strength escalates (capped at n/2) and u resets.
    """
    n = instance.n
    R = state.sd_R if state.sd_R is not None else n**3
    y = _standard_bit_mutation(state.x, state.r / n, rng)
    f_y = evaluate(instance, y)
    if f_y > state.fitness:
        return SdState(y, f_y, r=1, u=0, sd_R=state.sd_R)
    x, f_x = state.x, state.fitness
    if f_y == state.fitness and state.r == 1:
        x, f_x = y, f_y
    u = state.u + 1
    r = state.r
    if u > sd_thresholds(n, R)[r - 1]:
        r = min(r + 1, max(1, n // 2))
        u = 0
    return SdState(x, f_x, r=r, u=u, sd_R=state.sd_R)


def ma_global_step(
    x: SearchPoint,
    f_x: float,
    instance: ProblemInstance,
    alpha: float,
    mutation: tuple[str, float],
    rng: np.random.Generator,
) -> tuple[SearchPoint, float]:
    """Metropolis acceptance on an offspring from a global mutation operator.

    ``mutation`` is ``("std", p)`` or ``("heavy", beta)``.
    """
    kind, param = mutation
    if kind == "std":
        y = _standard_bit_mutation(x, param, rng)
    elif kind == "heavy":
        r = sample_heavy_tailed_rate(x.n, param, rng)
        y = _standard_bit_mutation(x, r / x.n, rng)
    else:
        raise ContractViolation(f"unknown mutation kind {kind!r}")
    f_y = evaluate(instance, y)
    if _metropolis_accept(f_y - f_x, alpha, rng):
        return y, f_y
    return x, f_x


_EMPTY_F8 = np.empty(0, dtype=np.float64)


def _binomial_cdf_rows(n: int, rates: np.ndarray) -> np.ndarray:
    """CDF of Binomial(n, rate) per row, for inversion sampling of the number
    of flipped bits inside the kernel."""
    from scipy.stats import binom

    table = binom.cdf(np.arange(n + 1)[None, :], n, np.asarray(rates)[:, None])
    table[:, -1] = 1.0
    return np.ascontiguousarray(table)


def run(config: HeuristicConfig, instance: ProblemInstance, seed: int) -> RunRecord:
    """Run one seeded trajectory to the optimum or the budget.

    The initial point is uniform over {0,1}^n; (config, instance, seed) fully
    determine the outcome.
    """
    n = instance.n
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, n, dtype=np.uint8)
    is_cliff = instance.kind == "cliff"
    m = instance.m if is_cliff else 0
    d = instance.d if is_cliff else 0.0
    algo = _ALGO_CODES[config.kind]
    alpha = config.alpha if config.alpha is not None else math.inf
    if config.kind == RLS:
        alpha = math.inf
    alpha_inf = math.isinf(alpha)
    ln_alpha = 0.0 if alpha_inf else math.log(alpha)
    beta = config.beta if config.beta is not None else 1.5
    if algo == _kernels.ALGO_MA:
        iterations, hit, final_ones = ma_trajectory(
            bits, is_cliff, m, d, ln_alpha, alpha_inf, config.budget, rng
        )
    else:
        if config.kind in (FAST_OEA, MA_GLOBAL_HEAVY):
            cdf = heavy_tail_cdf(n, beta)
        else:
            cdf = _EMPTY_F8
        if config.kind == SD_OEA:
            thresholds = sd_thresholds(n, config.sd_R if config.sd_R else n**3)
        else:
            thresholds = _EMPTY_F8
        if config.kind in (OEA, MA_GLOBAL_STD):
            rates = np.array([config.p])
        else:  # strength-based operators: one row per r = 1..floor(n/2)
            rates = np.arange(1, max(1, n // 2) + 1) / n
        binom_cdf = _binomial_cdf_rows(n, rates)
        iterations, hit, final_ones = run_trajectory(
            bits,
            is_cliff,
            m,
            d,
            algo,
            ln_alpha,
            alpha_inf,
            binom_cdf,
            cdf,
            thresholds,
            config.budget,
            rng,
        )
    return RunRecord(
        seed=seed,
        iterations=int(iterations),
        hit_optimum=bool(hit),
        censored_at=None if hit else config.budget,
        final_distance=0 if hit else n - int(final_ones),
    )
