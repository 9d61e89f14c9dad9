"""Successive edge-disjoint cheapest s-t paths on a weighted K_n.

Extraction is greedy: pull the cheapest surviving s-t path, delete its
edges, repeat.  The per-path costs are nondecreasing and the paths are
pairwise edge-disjoint by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .orderstats import OrderStatContext, mean_order_stat
from .weights import EdgeWeightModel, WeightedCompleteGraph


@dataclass(frozen=True)
class PathRecord:
    """One extracted path: 1-based rank, vertex sequence, cost, edge count."""

    index: int
    vertices: tuple[int, ...]
    cost: float
    length: int

    def edges(self) -> list[tuple[int, int]]:
        return [
            (min(a, b), max(a, b))
            for a, b in zip(self.vertices, self.vertices[1:])
        ]


@dataclass
class SuccessiveResult:
    """Records for P_1..P_k plus existence flags and prefix sums S_k."""

    k_max: int
    records: list[PathRecord]
    exists: list[bool]
    prefix_sums: list[float]


def shortest_path(
    g: WeightedCompleteGraph, source: int, target: int, *, index: int = 1
) -> PathRecord | None:
    """Cheapest simple path over non-deleted edges, or None if none survives.

    Among equal-cost optima the lexicographically smallest vertex sequence is
    returned.  This is realized by running Dijkstra from the target and then
    walking forward from the source, always taking the smallest-numbered
    vertex that preserves the optimal cost-to-go.  Requires strictly positive
    weights for the walk to be provably simple (zero-probability event for
    the continuous models; crafted tables must avoid zero weights).
    """
    if source == target:
        raise InvalidParameterError("endpoints must differ")
    g._check_pair(source, target)
    dist_to, order = g.dijkstra(target, stop_vertex=source)
    if not np.isfinite(dist_to[source]):
        return None
    settled = np.zeros(g.n, dtype=bool)
    settled[order] = True

    verts = [source]
    cost = 0.0
    u = source
    for _ in range(g.n):
        if u == target:
            break
        row = g.live_weight_row(u)
        tight = settled & ((row + dist_to) == dist_to[u])
        nxt = -1
        for v in np.nonzero(tight)[0]:
            if v not in verts:
                nxt = int(v)
                break
        if nxt < 0:
            raise AssertionError(
                "optimal-path walk failed; weights must be strictly positive"
            )
        cost += float(row[nxt])
        verts.append(nxt)
        u = nxt
    return PathRecord(
        index=index, vertices=tuple(verts), cost=cost, length=len(verts) - 1
    )


def successive_paths(g: WeightedCompleteGraph, k_max: int) -> SuccessiveResult:
    """Extract P_1..P_{k_max} greedily, deleting each path's edges as it goes.

    Mutates the graph's deletion mask.  Once some P_k does not exist, all
    later ranks are reported absent without further solver calls.
    """
    if not 1 <= k_max <= g.n - 1:
        raise InvalidParameterError(f"k_max={k_max} outside 1..{g.n - 1}")
    records: list[PathRecord] = []
    exists: list[bool] = []
    prefix_sums: list[float] = []
    running = 0.0
    for k in range(1, k_max + 1):
        rec = shortest_path(g, g.s, g.t, index=k)
        if rec is None:
            exists.extend([False] * (k_max - k + 1))
            break
        g.delete_edges(rec.edges())
        records.append(rec)
        exists.append(True)
        running += rec.cost
        prefix_sums.append(running)
    return SuccessiveResult(
        k_max=k_max, records=records, exists=exists, prefix_sums=prefix_sums
    )


def limit_formula(model: EdgeWeightModel, n: int, k: int) -> float:
    """Asymptotic value of X_k: 2 E W_(k) + ln(n)/n.

    E W_(k) is k/n for uniform weights and the harmonic partial sum
    sum_{i=1..k} 1/(n-i) for exponential ones.
    """
    ew = mean_order_stat(OrderStatContext(n, model), k)
    return 2.0 * ew + math.log(n) / n


@dataclass(frozen=True)
class RatioEntry:
    k: int
    x_k: float
    limit: float
    ratio: float


def ratio_statistics(
    result: SuccessiveResult, model: EdgeWeightModel, n: int
) -> list[RatioEntry]:
    """X_k against its limit formula for every existing rank.

    Absent ranks yield no entry.
    """
    out = []
    for rec in result.records:
        lim = limit_formula(model, n, rec.index)
        out.append(
            RatioEntry(k=rec.index, x_k=rec.cost, limit=lim, ratio=rec.cost / lim)
        )
    return out
