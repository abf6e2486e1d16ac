"""Closed-form runtime bounds and optimal-parameter formulas.

Every operation returns a :class:`BoundReport` carrying linear values, their
log10 shadows (the cliff bounds reach ``alpha^(d+2) e^(n/alpha)`` scales), and
a ``validity`` record listing each hypothesis of the source statement with its
finite-n status.  Asymptotic correction factors — the (1 ± o(1)) and
O(alpha/n) terms of the original statements — are dropped from the numeric
values; reports flag this via ``asymptotic_slack`` so callers apply explicit
slack multipliers instead of pretending the constants are tight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.special import gammaln

from .benchmarks import ContractViolation

__all__ = [
    "BoundReport",
    "onemax_ma_bound",
    "posdrift_bounds",
    "e1_expansion",
    "e1_bounds",
    "cliff_ma_bounds",
    "cliff_ea_bound",
    "optimal_parameters",
]

LOG10_E = math.log10(math.e)


def _lin(log10_value: float) -> float:
    """Linear value for a log10 quantity; inf when it overflows a double."""
    if log10_value == -math.inf:
        return 0.0
    return 10.0**log10_value if log10_value < 308 else math.inf


def _log10_add(a: float, b: float) -> float:
    """log10(10^a + 10^b) without overflow."""
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    hi, lo = max(a, b), min(a, b)
    return hi + math.log10(1.0 + 10.0 ** (lo - hi))


@dataclass(frozen=True)
class BoundReport:
    """Numeric bound values plus hypothesis bookkeeping for one statement."""

    name: str
    lower: float | None = None
    upper: float | None = None
    main_term: float | None = None
    log10_lower: float | None = None
    log10_upper: float | None = None
    validity: dict[str, str] = field(default_factory=dict)
    notes: str = ""
    asymptotic_slack: bool = False

    def __post_init__(self):
        if self.lower is not None and self.upper is not None:
            if self.lower > self.upper * (1 + 1e-12):
                raise ContractViolation(f"{self.name}: lower exceeds upper")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lower": self.lower,
            "upper": self.upper,
            "main_term": self.main_term,
            "log10_lower": self.log10_lower,
            "log10_upper": self.log10_upper,
            "validity": self.validity,
            "notes": self.notes,
            "asymptotic_slack": self.asymptotic_slack,
        }


def _check_alpha(alpha: float) -> None:
    if not (alpha > 1):
        raise ContractViolation("alpha must exceed 1 (or be +inf)")


def onemax_ma_bound(n: int, alpha: float) -> BoundReport:
    """Main term of the MA runtime on OneMax.

    ``n ln n + [alpha <= n] * alpha * e^(n/alpha)``: the second summand is the
    cost of the last step below the equilibrium point and vanishes once alpha
    exceeds n.
    """
    if n < 2:
        raise ContractViolation("n must be at least 2")
    _check_alpha(alpha)
    log10_nlogn = math.log10(n * math.log(n))
    log10_main = log10_nlogn
    if alpha <= n:  # inf compares false, as intended
        log10_e1 = math.log10(alpha) + (n / alpha) * LOG10_E
        log10_main = _log10_add(log10_nlogn, log10_e1)
    main = _lin(log10_main)
    return BoundReport(
        name="onemax-ma",
        lower=main,
        upper=main,
        main_term=main,
        log10_lower=log10_main,
        log10_upper=log10_main,
        validity={
            "alpha = omega(sqrt(n))": "asymptotic, not checkable at finite n",
        },
        notes="Theta-statement: constants hidden; lower/upper carry the main term.",
        asymptotic_slack=True,
    )


def posdrift_bounds(n: int, alpha: float) -> BoundReport:
    """Time to first reach distance ceil(n/(alpha+1)) on OneMax.

    Upper ``(alpha/(alpha+1)) n (ln n + 1)``; lower ``n ln(n/k)`` with
    ``k = ceil(n/(alpha+1))`` (clamped to 1 so the RLS limit stays defined).
    """
    if n < 2:
        raise ContractViolation("n must be at least 2")
    _check_alpha(alpha)
    frac = 1.0 if math.isinf(alpha) else alpha / (alpha + 1.0)
    upper = frac * n * (math.log(n) + 1.0)
    k = 1 if math.isinf(alpha) else max(1, math.ceil(n / (alpha + 1.0)))
    lower = n * math.log(n / k)
    return BoundReport(
        name="posdrift",
        lower=lower,
        upper=upper,
        main_term=upper,
        log10_lower=math.log10(lower) if lower > 0 else -math.inf,
        log10_upper=math.log10(upper),
        validity={
            "k = o(n)": f"asymptotic; here k = {k}",
        },
        notes="hitting time of the equilibrium level, not of the optimum",
        asymptotic_slack=True,
    )


def e1_expansion(n: int, alpha: float, ell: int, E_ell_plus_1: float) -> float:
    """Truncated series for E_1 on OneMax.

    ``E_1^+ = n * sum_{i=0}^{ell-1} (n/alpha)^i / (i+1)!  +
    (n/alpha)^ell / ell! * E_{ell+1}``; the exact E_1 lies in
    ``[(1-o(1)) E_1^+, E_1^+]``.  Accumulated in log-space.
    """
    if ell < 1:
        raise ContractViolation("ell must be at least 1")
    if not alpha >= 1:
        raise ContractViolation("alpha must be at least 1")
    log_ratio = -math.inf if math.isinf(alpha) else math.log10(n / alpha)
    total = -math.inf
    for i in range(ell):
        power = 0.0 if i == 0 else i * log_ratio  # avoid 0 * -inf at i = 0
        term = math.log10(n) + power - gammaln(i + 2) / math.log(10.0)
        total = _log10_add(total, term)
    if E_ell_plus_1 > 0 and log_ratio > -math.inf:
        tail = (
            ell * log_ratio
            - gammaln(ell + 1) / math.log(10.0)
            + math.log10(E_ell_plus_1)
        )
        total = _log10_add(total, tail)
    elif math.isinf(alpha):
        pass  # all powers vanish; E_1^+ -> n
    return _lin(total)


def e1_bounds(n: int, alpha: float) -> BoundReport:
    """Bounds on E_1 (expected time from distance 1 to the optimum) on OneMax.

    Upper ``alpha e^(n/alpha)``, sharpened to ``2n`` once ``alpha >= 2n``;
    lower ``(1 - 2 e^(-2n/(3 alpha))) alpha e^(n/alpha)`` with the o(1)
    dropped, clamped at 0.
    """
    if n < 1:
        raise ContractViolation("n must be positive")
    _check_alpha(alpha)
    if math.isinf(alpha):
        log10_main = math.log10(2 * n)
        upper = 2.0 * n
        lower = 0.0
    else:
        log10_main = math.log10(alpha) + (n / alpha) * LOG10_E
        upper = _lin(log10_main)
        if alpha >= 2 * n:
            upper = min(upper, 2.0 * n)
            log10_main = math.log10(upper)
        lower = max(0.0, 1.0 - 2.0 * math.exp(-2.0 * n / (3.0 * alpha))) * _lin(
            math.log10(alpha) + (n / alpha) * LOG10_E
        )
        lower = min(lower, upper)
    return BoundReport(
        name="e1",
        lower=lower,
        upper=upper,
        main_term=upper,
        log10_lower=math.log10(lower) if lower > 0 else -math.inf,
        log10_upper=log10_main,
        validity={
            "lower bound o(1) term": "dropped; lower is asymptotic",
        },
        asymptotic_slack=True,
    )


def cliff_ma_bounds(n: int, m: int, d: float, alpha: float) -> BoundReport:
    """MA runtime bounds on Cliff(n, d, m), both drift regimes.

    Computes the equilibrium point ``k* = n/(alpha+1)`` and the threshold
    ``beta_hat = 2.5/(1 + 2.5/alpha) * (n/alpha)``, then:

    * ``k* < m + 1`` (positive drift at the cliff): the runtime is
      ``(X + c) * E_{m-1}`` with ``X = (n/alpha)^(m-2)/(m-2)!``, where
      ``c = 1`` for the lower bound and for the upper bound when
      ``m - 2 <= beta_hat``, and ``c = 5/3`` otherwise; ``E_{m-1}`` is
      sandwiched between
      ``(n^2 alpha^(d-1)/(m(m-1))) (alpha + n/(m+1))`` and the same prefactor
      times ``alpha + n/((m+1)(alpha+1)/alpha - n/alpha)``.
    * ``m + 1 <= k*`` (negative drift): lower
      ``alpha^(d+2) e^(n/alpha) / (sqrt(2 pi n/alpha) e^(alpha/(12n)))``
      (folding the 1/sqrt(2 pi) in), upper ``alpha^(d+2) e^(n/alpha)``.

    All asymptotic factors dropped and flagged.
    """
    if not (1 <= m < n and 0 < d < m - 1):
        raise ContractViolation("invalid Cliff parameters")
    if d < 1:
        raise ContractViolation("this bound requires d >= 1")
    _check_alpha(alpha)
    if math.isinf(alpha):
        raise ContractViolation("alpha must be finite: the MA cannot descend a cliff at alpha = inf")
    k_star = n / (alpha + 1.0)
    beta_hat = 2.5 / (1.0 + 2.5 / alpha) * (n / alpha)
    validity = {
        "alpha = omega(sqrt(n))": "asymptotic, not checkable at finite n",
        "m = o(sqrt(n))": "asymptotic, not checkable at finite n",
        "k_star": repr(k_star),
        "beta_hat": repr(beta_hat),
    }
    if k_star < m + 1:
        log10_X = (m - 2) * math.log10(n / alpha) - gammaln(m - 1) / math.log(10.0)
        X = _lin(log10_X)
        prefactor = (
            2 * math.log10(n) + (d - 1) * math.log10(alpha) - math.log10(m * (m - 1))
        )
        em1_lo = prefactor + math.log10(alpha + n / (m + 1))
        hi_denom = (m + 1) * (alpha + 1.0) / alpha - n / alpha
        if hi_denom <= 0:
            raise ContractViolation(
                "upper-bound denominator (m+1)(alpha+1)/alpha - n/alpha is not positive"
            )
        em1_hi = prefactor + math.log10(alpha + n / hi_denom)
        upper_c = 1.0 if m - 2 <= beta_hat else 5.0 / 3.0
        log10_lower = math.log10(X + 1.0) + em1_lo
        log10_upper = math.log10(X + upper_c) + em1_hi
        validity["case"] = "k* < m+1 (positive drift at the cliff)"
        validity["upper constant"] = f"{upper_c} (m-2 {'<=' if upper_c == 1.0 else '>'} beta_hat)"
    else:
        log10_core = (d + 2) * math.log10(alpha) + (n / alpha) * LOG10_E
        log10_lower = (
            log10_core
            - 0.5 * math.log10(2 * math.pi * n / alpha)
            - (alpha / (12.0 * n)) * LOG10_E
        )
        log10_upper = log10_core
        validity["case"] = "m+1 <= k* (negative drift at the cliff)"
    return BoundReport(
        name="cliff-ma",
        lower=_lin(log10_lower),
        upper=_lin(log10_upper),
        main_term=_lin(log10_upper),
        log10_lower=log10_lower,
        log10_upper=log10_upper,
        validity=validity,
        asymptotic_slack=True,
    )


def cliff_ea_bound(n: int, m: int, d: float, p: float) -> BoundReport:
    """Upper bound on the (1+1) EA runtime on Cliff(n, d, m).

    ``p^-1 (1-p)^(-n+1) (1 + ln n) + C(m, D)^-1 p^-D (1-p)^(-n+D)`` with
    ``D = floor(d) + 2``: hillclimbing cost plus the waiting time for the
    D-bit jump over the valley.  Also reports the simplification
    ``(e^lambda / lambda^D) C(m, D)^-1 n^D`` for ``p = lambda/n`` as
    ``main_term``.
    """
    if not (0 < p < 0.5):
        raise ContractViolation("p must lie in (0, 1/2)")
    if not (1 <= d < m - 1):
        raise ContractViolation("this bound requires 1 <= d < m - 1")
    D = math.floor(d) + 2
    if D > m:
        raise ContractViolation("floor(d) + 2 exceeds m")
    log10_binom = (
        gammaln(m + 1) - gammaln(D + 1) - gammaln(m - D + 1)
    ) / math.log(10.0)
    log10_q = math.log10(1.0 - p)
    term1 = -math.log10(p) + (-n + 1) * log10_q + math.log10(1.0 + math.log(n))
    term2 = -log10_binom - D * math.log10(p) + (-n + D) * log10_q
    log10_upper = _log10_add(term1, term2)
    lam = p * n
    log10_simplified = (
        lam * LOG10_E - D * math.log10(lam) - log10_binom + D * math.log10(n)
    )
    return BoundReport(
        name="cliff-ea",
        lower=None,
        upper=_lin(log10_upper),
        main_term=_lin(log10_simplified),
        log10_lower=None,
        log10_upper=log10_upper,
        validity={"1 <= d < m-1": "holds", "jump size D": str(D)},
        notes="main_term is the asymptotic simplification at p = lambda/n",
        asymptotic_slack=False,
    )


def optimal_parameters(n: int, m: int, d: float) -> dict:
    """Bound-minimizing parameter choices for Cliff(n, d, m).

    Returns ``alpha_star_case1_exact`` (only when ``m - d - 2 > 0``),
    ``alpha_star_case1_asym = e n/(m-2)``, ``alpha_star_case2 = n/(d + 5/2)``
    and the EA mutation rate ``p_star = (floor(d) + 2)/n``.
    """
    if not (1 <= m < n and 0 < d < m - 1):
        raise ContractViolation("invalid Cliff parameters")
    out: dict[str, float | None] = {}
    if m - d - 2 > 0:
        log10 = (
            math.log10(m - d - 2)
            - math.log10(d)
            - gammaln(m - 1) / math.log(10.0)
        ) / (m - 2)
        out["alpha_star_case1_exact"] = n * 10.0**log10
    else:
        out["alpha_star_case1_exact"] = None
        out["alpha_star_case1_exact_note"] = "requires m - d - 2 > 0"
    out["alpha_star_case1_asym"] = math.e * n / (m - 2)
    out["alpha_star_case2"] = n / (d + 2.5)
    out["p_star"] = (math.floor(d) + 2) / n
    return out
