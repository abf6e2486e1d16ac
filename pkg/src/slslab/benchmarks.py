"""Pseudo-Boolean benchmark functions: OneMax and the two-parameter Cliff.

Both functions are defined on bit strings of length ``n`` and share the
global optimum ``1^n``.  OneMax simply counts one-bits.  Cliff(n, d, m)
agrees with OneMax up to ``n - m`` one-bits; every point with more one-bits
is penalised by ``d + 1``, so that adding a one-bit to a point with exactly
``n - m`` ones *drops* the fitness by ``d`` while the gradient everywhere
else points to the global optimum.

Fitness depends on a point only through its number of one-bits, which all
simulation and Markov-chain code in this package exploits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ONEMAX = "onemax"
CLIFF = "cliff"


class ContractViolation(ValueError):
    """A precondition of an operation was violated (e.g. length mismatch)."""


@dataclass(frozen=True)
class SearchPoint:
    """A fixed-length bit vector; the state of a single-trajectory heuristic."""

    bits: np.ndarray  # uint8 array of 0/1 values

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if bits.ndim != 1 or bits.size == 0:
            raise ContractViolation("bits must be a non-empty 1-d sequence")
        if np.any(bits > 1):
            raise ContractViolation("bits must be 0/1 valued")
        object.__setattr__(self, "bits", bits)

    @property
    def n(self) -> int:
        return self.bits.size

    @property
    def ones(self) -> int:
        return int(self.bits.sum())

    @staticmethod
    def random(n: int, rng: np.random.Generator) -> "SearchPoint":
        return SearchPoint(rng.integers(0, 2, n, dtype=np.uint8))

    @staticmethod
    def all_ones(n: int) -> "SearchPoint":
        return SearchPoint(np.ones(n, dtype=np.uint8))

    @staticmethod
    def all_zeros(n: int) -> "SearchPoint":
        return SearchPoint(np.zeros(n, dtype=np.uint8))


@dataclass(frozen=True)
class ProblemInstance:
    """Descriptor of OneMax(n) or Cliff(n, d, m) with validated parameters.

    Cliff requires ``1 <= m < n`` and ``0 < d < m - 1`` (hence ``m >= 2``):
    the penalised region must exist and the global optimum ``1^n`` (fitness
    ``n - d - 1``) must beat the local optimum at ``n - m`` ones.
    """

    kind: str
    n: int
    m: int | None = None
    d: float | None = None

    def __post_init__(self):
        if self.kind not in (ONEMAX, CLIFF):
            raise ContractViolation(f"unknown problem kind {self.kind!r}")
        if self.n < 1:
            raise ContractViolation("n must be a positive integer")
        if self.kind == ONEMAX:
            if self.m is not None or self.d is not None:
                raise ContractViolation("OneMax takes no m/d parameters")
        else:
            if self.m is None or self.d is None:
                raise ContractViolation("Cliff requires both m and d")
            if not 1 <= self.m < self.n:
                raise ContractViolation("Cliff requires 1 <= m < n")
            if not 0 < self.d < self.m - 1:
                raise ContractViolation("Cliff requires 0 < d < m - 1")

    def fitness_of_ones(self, ones: int) -> float:
        """Fitness of any point with the given one-bit count."""
        if self.kind == ONEMAX or ones <= self.n - self.m:
            return float(ones)
        return ones - self.d - 1.0

    @property
    def optimum_fitness(self) -> float:
        return self.fitness_of_ones(self.n)


def onemax(n: int) -> ProblemInstance:
    return ProblemInstance(ONEMAX, n)


def cliff(n: int, d: float, m: int) -> ProblemInstance:
    return ProblemInstance(CLIFF, n, m=m, d=float(d))


def _check_length(instance: ProblemInstance, x: SearchPoint) -> None:
    if x.n != instance.n:
        raise ContractViolation(
            f"search point length {x.n} does not match instance n={instance.n}"
        )


def evaluate(instance: ProblemInstance, x: SearchPoint) -> float:
    """Fitness of ``x``: ``|x|_1`` for OneMax; Cliff subtracts ``d + 1``
    whenever ``|x|_1 > n - m``.  Exact for representable ``d``."""
    _check_length(instance, x)
    return instance.fitness_of_ones(x.ones)


def distance(instance: ProblemInstance, x: SearchPoint) -> int:
    """Hamming (= fitness) distance of ``x`` to the optimum: its zero count."""
    _check_length(instance, x)
    return instance.n - x.ones


def is_global_optimum(instance: ProblemInstance, x: SearchPoint) -> bool:
    return distance(instance, x) == 0
