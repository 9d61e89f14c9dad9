"""Order statistics of the n-1 edge weights incident to a vertex.

Exact means, an exact-law spacings sampler, a sort-based reference sampler,
and empirical band-concentration reports.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .weights import EdgeWeightModel


@dataclass(frozen=True)
class OrderStatContext:
    """Order statistics of n-1 i.i.d. draws from the given model."""

    n: int
    model: EdgeWeightModel

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidParameterError(f"need n >= 2, got {self.n}")


def mean_order_stat(ctx: OrderStatContext, k: int) -> float:
    """Exact E W_(k): k/n for uniform, sum_{i=1..k} 1/(n-i) for exponential."""
    if not 1 <= k <= ctx.n - 1:
        raise InvalidParameterError(f"rank k={k} outside 1..{ctx.n - 1}")
    if ctx.model.is_exponential:
        return float(np.sum(1.0 / np.arange(ctx.n - k, ctx.n, dtype=np.float64)))
    return k / ctx.n


def all_mean_order_stats(ctx: OrderStatContext) -> np.ndarray:
    """E W_(k) for every rank k = 1 .. n-1 as one vector."""
    if ctx.model.is_exponential:
        return np.cumsum(1.0 / np.arange(ctx.n - 1, 0, -1, dtype=np.float64))
    return np.arange(1, ctx.n, dtype=np.float64) / ctx.n


def sample_order_stats(ctx: OrderStatContext, rng_seed: int) -> np.ndarray:
    """One exact-law draw of the full vector (W_(1), ..., W_(n-1)).

    Exponential: cumulative sums of independent Exp(n-1), ..., Exp(1)
    spacings.  Uniform: the inverse coupling 1 - exp(-W_(k)) applied to an
    exponential draw, which has the exact joint uniform order-statistic law.
    The output is strictly increasing.
    """
    rng = np.random.default_rng(rng_seed)
    rates = np.arange(ctx.n - 1, 0, -1, dtype=np.float64)
    spacings = rng.exponential(1.0, ctx.n - 1) / rates
    w = np.cumsum(spacings)
    if ctx.model.is_exponential:
        return w
    return -np.expm1(-w)


def sample_order_stats_sorted(ctx: OrderStatContext, rng_seed: int) -> np.ndarray:
    """Reference sampler: sort n-1 i.i.d. draws.  Kept as a test oracle."""
    rng = np.random.default_rng(rng_seed)
    if ctx.model.is_exponential:
        draws = rng.exponential(1.0, ctx.n - 1)
    else:
        draws = rng.random(ctx.n - 1)
    draws.sort()
    return draws


def sample_many(ctx: OrderStatContext, count: int, master_seed: int) -> np.ndarray:
    """Stack of ``count`` order-stat vectors with per-vector derived seeds."""
    from ._core import derive_trial_seed

    out = np.empty((count, ctx.n - 1), dtype=np.float64)
    for i in range(count):
        out[i] = sample_order_stats(ctx, derive_trial_seed(master_seed, i))
    return out


@dataclass(frozen=True)
class ConcentrationReport:
    """Violation rates of the band W_(k) / E W_(k) in [1-eps, 1+eps]."""

    epsilon: float
    a: int
    ks: np.ndarray
    per_k_violation: np.ndarray
    simultaneous_violation: float
    samples: int


def default_lower_cutoff(n: int) -> int:
    """Default lower rank cutoff: ceil(sqrt(ln n)), at least 1."""
    return max(1, int(np.ceil(np.sqrt(np.log(n)))))


def concentration_report(
    ctx: OrderStatContext,
    samples: np.ndarray,
    epsilon: float,
    a: int | None = None,
) -> ConcentrationReport:
    """Per-rank and simultaneous band-violation frequencies over many vectors.

    ``samples`` is a (m, n-1) stack of order-stat vectors.  A vector violates
    the band at rank k if W_(k)/E W_(k) lies strictly outside [1-eps, 1+eps];
    the simultaneous rate counts vectors violating anywhere in k >= a.
    """
    samples = np.atleast_2d(np.asarray(samples, dtype=np.float64))
    if samples.size == 0:
        raise InvalidParameterError("need at least one sample vector")
    if samples.shape[1] != ctx.n - 1:
        raise InvalidParameterError(
            f"sample vectors must have length n-1 = {ctx.n - 1}"
        )
    if a is None:
        a = default_lower_cutoff(ctx.n)
    if not 1 <= a <= ctx.n - 1:
        raise InvalidParameterError(f"cutoff a={a} outside 1..{ctx.n - 1}")
    mu = all_mean_order_stats(ctx)[a - 1 :]
    ratio = samples[:, a - 1 :] / mu
    viol = (ratio < 1.0 - epsilon) | (ratio > 1.0 + epsilon)
    return ConcentrationReport(
        epsilon=epsilon,
        a=a,
        ks=np.arange(a, ctx.n),
        per_k_violation=viol.mean(axis=0),
        simultaneous_violation=float(viol.any(axis=1).mean()),
        samples=samples.shape[0],
    )
