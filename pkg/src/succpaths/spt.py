"""Shortest-path-tree radius: exact law vs first-passage growth.

With Exp(1) edge weights on K_n, the distance from a root to its d-th
nearest vertex is a sum of d-1 independent exponentials with rates i(n-i).
``radius_by_law`` samples that representation directly; ``radius_by_growth``
grows the tree on a fresh graph in Dijkstra order.  The two agree in
distribution (exactly, for the exponential model).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._core import derive_trial_seed
from .errors import InvalidParameterError
from .weights import EdgeWeightModel, StorageMode, generate


@dataclass(frozen=True)
class SptRadiusSample:
    n: int
    d: int
    radius: float


def attachment_rates(n: int, d: int) -> np.ndarray:
    """Rates i(n-i) of the d-1 inter-attachment exponentials."""
    i = np.arange(1, d, dtype=np.float64)
    return i * (n - i)


def expected_radius(n: int, d: int) -> float:
    """Exact mean radius: sum_{i=1..d-1} 1/(i(n-i))."""
    return float(np.sum(1.0 / attachment_rates(n, d)))


def _check(n: int, d: int) -> None:
    if not 2 <= d <= n:
        raise InvalidParameterError(f"tree order d={d} outside 2..{n}")


def radius_by_law(n: int, d: int, rng_seed: int) -> SptRadiusSample:
    """One radius drawn from the exact spacings law."""
    _check(n, d)
    rng = np.random.default_rng(rng_seed)
    draws = rng.exponential(1.0, d - 1) / attachment_rates(n, d)
    return SptRadiusSample(n=n, d=d, radius=float(np.sum(draws)))


def sample_law_radii(n: int, d: int, count: int, rng_seed: int) -> np.ndarray:
    """``count`` radii from the exact law, vectorized."""
    _check(n, d)
    rng = np.random.default_rng(rng_seed)
    draws = rng.exponential(1.0, (count, d - 1)) / attachment_rates(n, d)
    return draws.sum(axis=1)


def radius_by_growth(
    n: int,
    d: int,
    rng_seed: int,
    model: EdgeWeightModel = EdgeWeightModel.EXPONENTIAL1,
) -> SptRadiusSample:
    """Radius of a tree grown by first-passage percolation on a fresh K_n.

    Attaches the nearest unreached vertex (Dijkstra order) until the tree
    has d vertices; returns the distance to the d-th.  The exact radius law
    is claimed for the exponential model only; growth under the uniform
    model is offered for exploration but matches no closed-form law here.
    """
    _check(n, d)
    radius, _ = _growth_distances(n, d, rng_seed, model)
    return SptRadiusSample(n=n, d=d, radius=radius)


def _growth_distances(
    n: int, d: int, rng_seed: int, model: EdgeWeightModel
) -> tuple[float, np.ndarray]:
    g = generate(n, model, rng_seed, StorageMode.IMPLICIT_PRF)
    dist, order = g.dijkstra(0, stop_count=d)
    if order.shape[0] < d:
        raise AssertionError("complete graph growth cannot stall")
    attach = dist[order[:d]]
    return float(attach[d - 1]), attach


def sample_growth_radii(
    n: int,
    d: int,
    count: int,
    master_seed: int,
    model: EdgeWeightModel = EdgeWeightModel.EXPONENTIAL1,
) -> np.ndarray:
    """``count`` growth radii with per-run derived seeds."""
    _check(n, d)
    out = np.empty(count, dtype=np.float64)
    for i in range(count):
        g = generate(
            n, model, derive_trial_seed(master_seed, i), StorageMode.IMPLICIT_PRF
        )
        dist, order = g.dijkstra(0, stop_count=d)
        out[i] = dist[order[d - 1]]
    return out
