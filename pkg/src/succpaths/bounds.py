"""Analytic tail bounds and their Monte Carlo validators.

Every bound is computed in log-space and exponentiated only on output, so
no intermediate factorial or power can overflow.  Probabilities smaller
than the smallest positive float64 still print as 0.0; use the ``*_log``
form when that matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class BoundReport:
    """A bound next to the violation rate observed in simulation."""

    bound_value: float
    empirical_frequency: float
    samples: int


def irwin_hall_tail_log(l: int, a: float) -> float:
    """ln of the lower-tail bound a^l / l! for a sum of l uniforms."""
    if l < 1:
        raise DomainError(f"need l >= 1, got {l}")
    if a < 0:
        raise DomainError(f"need a >= 0, got {a}")
    if a == 0.0:
        return -math.inf
    return l * math.log(a) - math.lgamma(l + 1)


def irwin_hall_tail(l: int, a: float) -> float:
    """Pr(sum of l i.i.d. U(0,1) <= a) is at most a^l / l!."""
    return math.exp(irwin_hall_tail_log(l, a))


class ExpSumTailBounds(NamedTuple):
    upper: float  # bound on Pr(X >= lambda * mu), vacuous 1.0 for lambda <= 1
    lower: float  # bound on Pr(X <= lambda * mu), vacuous 1.0 for lambda >= 1


def exp_sum_tails(rates: list[float] | np.ndarray, lam: float) -> ExpSumTailBounds:
    """Chernoff-style tails for a sum of independent exponentials.

    With a_* the minimum rate and mu the exact mean, the deviation exponent
    is a_* mu (lambda - 1 - ln lambda); the upper tail carries an extra
    1/lambda factor.  At lambda = 1 both bounds are vacuous.
    """
    rates = np.asarray(rates, dtype=np.float64)
    if rates.size == 0 or np.any(rates <= 0):
        raise DomainError("rates must be positive and nonempty")
    if lam <= 0:
        raise DomainError(f"need lambda > 0, got {lam}")
    if lam == 1.0:
        return ExpSumTailBounds(1.0, 1.0)
    a_star = float(rates.min())
    mu = float(np.sum(1.0 / rates))
    log_core = -a_star * mu * (lam - 1.0 - math.log(lam))
    if lam > 1.0:
        return ExpSumTailBounds(math.exp(log_core - math.log(lam)), 1.0)
    return ExpSumTailBounds(1.0, math.exp(log_core))


def exp_sum_two_sided(rates: list[float] | np.ndarray, epsilon: float) -> float:
    """Composite two-sided bound: upper tail at 1+eps plus lower tail at 1-eps.

    Conservative stand-in for the asymptotic two-sided form, whose constants
    are not explicit.
    """
    if not 0 < epsilon < 1:
        raise DomainError(f"need 0 < epsilon < 1, got {epsilon}")
    up = exp_sum_tails(rates, 1.0 + epsilon).upper
    lo = exp_sum_tails(rates, 1.0 - epsilon).lower
    return up + lo


def binomial_lower_tail(n_trials: int, p: float, epsilon: float) -> float:
    """Chernoff bound exp(-eps^2 n p / 2) on Pr(X < (1-eps) n p)."""
    if n_trials < 1:
        raise DomainError(f"need n_trials >= 1, got {n_trials}")
    if not 0 < p <= 1:
        raise DomainError(f"need 0 < p <= 1, got {p}")
    if not 0 < epsilon <= 1:
        raise DomainError(f"need 0 < epsilon <= 1, got {epsilon}")
    return math.exp(-(epsilon**2) * n_trials * p / 2.0)


@dataclass(frozen=True)
class MinBinomialBound:
    """Lower bound on a min-of-two-binomials tail, split by mean size.

    For lambda >= 2 the event is min >= 0.65 lambda with bound 1/4; for
    lambda <= 2 it is min >= 1 with bound 0.18 lambda^2.
    """

    case: str  # "lambda_ge_2" or "lambda_le_2"
    threshold: float
    bound: float


def min_binomial_lower_bounds(n_trials: int, p: float) -> MinBinomialBound:
    if n_trials < 1:
        raise DomainError(f"need n_trials >= 1, got {n_trials}")
    if not 0 < p <= 1:
        raise DomainError(f"need 0 < p <= 1, got {p}")
    lam = n_trials * p
    if lam >= 2.0:
        return MinBinomialBound("lambda_ge_2", 0.65 * lam, 0.25)
    return MinBinomialBound("lambda_le_2", 1.0, 0.18 * lam * lam)


# -- Monte Carlo / exact validators -----------------------------------------


def validate_irwin_hall(
    l: int, a: float, trials: int, rng_seed: int
) -> BoundReport:
    """Empirical Pr(sum of l uniforms <= a) next to the analytic bound."""
    rng = np.random.default_rng(rng_seed)
    sums = rng.random((trials, l)).sum(axis=1)
    return BoundReport(
        bound_value=irwin_hall_tail(l, a),
        empirical_frequency=float(np.mean(sums <= a)),
        samples=trials,
    )


def validate_exp_sum(
    rates: list[float] | np.ndarray, lam: float, trials: int, rng_seed: int
) -> tuple[BoundReport, BoundReport]:
    """Empirical frequencies of X >= lam*mu and X <= lam*mu vs the bounds."""
    rates = np.asarray(rates, dtype=np.float64)
    bounds = exp_sum_tails(rates, lam)
    rng = np.random.default_rng(rng_seed)
    draws = rng.exponential(1.0, (trials, rates.size)) / rates
    x = draws.sum(axis=1)
    mu = float(np.sum(1.0 / rates))
    return (
        BoundReport(bounds.upper, float(np.mean(x >= lam * mu)), trials),
        BoundReport(bounds.lower, float(np.mean(x <= lam * mu)), trials),
    )


def exact_binomial_cdf(n_trials: int, p: float, x: float) -> float:
    """Pr(Bin(n, p) <= x) by direct summation (exact combinatorics)."""
    if x < 0:
        return 0.0
    top = min(n_trials, math.floor(x))
    q = 1.0 - p
    return math.fsum(
        math.comb(n_trials, j) * p**j * q ** (n_trials - j) for j in range(top + 1)
    )


def validate_binomial_lower(
    n_trials: int, p: float, epsilon: float
) -> BoundReport:
    """Exact Pr(X < (1-eps) n p) next to the Chernoff bound."""
    lam = n_trials * p
    thr = (1.0 - epsilon) * lam
    # strict inequality: subtract an exact point mass only when thr is integral
    exact = exact_binomial_cdf(n_trials, p, math.ceil(thr) - 1)
    return BoundReport(
        bound_value=binomial_lower_tail(n_trials, p, epsilon),
        empirical_frequency=exact,
        samples=0,
    )


def validate_min_binomial(n_trials: int, p: float) -> BoundReport:
    """Exact Pr(min(Z1, Z2) >= threshold) next to the case lower bound."""
    b = min_binomial_lower_bounds(n_trials, p)
    tail = 1.0 - exact_binomial_cdf(n_trials, p, math.ceil(b.threshold) - 1)
    return BoundReport(
        bound_value=b.bound, empirical_frequency=tail * tail, samples=0
    )


def validate_min_binomial_mc(
    n_trials: int, p: float, trials: int, rng_seed: int
) -> BoundReport:
    """Monte Carlo version of the min-of-binomials check (paired draws)."""
    b = min_binomial_lower_bounds(n_trials, p)
    rng = np.random.default_rng(rng_seed)
    z = rng.binomial(n_trials, p, (trials, 2)).min(axis=1)
    return BoundReport(
        bound_value=b.bound,
        empirical_frequency=float(np.mean(z >= b.threshold)),
        samples=trials,
    )
