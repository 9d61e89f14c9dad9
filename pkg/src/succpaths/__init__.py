"""Successive edge-disjoint shortest paths and min-cost k-flows on random K_n.

A simulation and verification laboratory: greedy extraction of edge-disjoint
cheapest s-t paths, exact min-cost k-flows, order-statistic and
shortest-path-tree laws, saturating path families, and analytic tail bounds,
each checked against independent oracles or Monte Carlo at desk scale.
"""

from ._core import active_backend, derive_trial_seed, use_backend
from .flow import FlowResult, flow_ratio_statistics, min_cost_k_flow
from .orderstats import (
    OrderStatContext,
    concentration_report,
    mean_order_stat,
    sample_order_stats,
)
from .paths import (
    PathRecord,
    RatioEntry,
    SuccessiveResult,
    limit_formula,
    ratio_statistics,
    shortest_path,
    successive_paths,
)
from .spt import SptRadiusSample, radius_by_growth, radius_by_law
from .walecki import (
    HamiltonDecomposition,
    SaturatingFamily,
    saturating_family,
    walecki_decompose,
)
from .weights import (
    EdgeWeightModel,
    StorageMode,
    WeightedCompleteGraph,
    couple_to_exponential,
    generate,
)

__version__ = "0.1.0"

__all__ = [
    "EdgeWeightModel",
    "FlowResult",
    "HamiltonDecomposition",
    "OrderStatContext",
    "PathRecord",
    "RatioEntry",
    "SaturatingFamily",
    "SptRadiusSample",
    "StorageMode",
    "SuccessiveResult",
    "WeightedCompleteGraph",
    "active_backend",
    "concentration_report",
    "couple_to_exponential",
    "derive_trial_seed",
    "flow_ratio_statistics",
    "generate",
    "limit_formula",
    "mean_order_stat",
    "min_cost_k_flow",
    "radius_by_growth",
    "radius_by_law",
    "ratio_statistics",
    "sample_order_stats",
    "saturating_family",
    "shortest_path",
    "successive_paths",
    "use_backend",
    "walecki_decompose",
]
