"""Small statistics helpers: Kolmogorov-Smirnov statistics.

Only the statistics are needed here (acceptance uses fixed thresholds), so
no p-values are computed.
"""

from __future__ import annotations

from typing import Callable

import numpy as np


def ks_statistic_1samp(values: np.ndarray, cdf: Callable[[float], float]) -> float:
    """sup_x |F_n(x) - F(x)| against a model CDF."""
    x = np.sort(np.asarray(values, dtype=np.float64))
    n = x.size
    f = np.array([cdf(v) for v in x])
    lo = np.arange(0, n) / n
    hi = np.arange(1, n + 1) / n
    return float(np.max(np.maximum(f - lo, hi - f)))


def ks_statistic_2samp(a: np.ndarray, b: np.ndarray) -> float:
    """sup_x |F_a(x) - F_b(x)| between two empirical distributions."""
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    both = np.concatenate([a, b])
    fa = np.searchsorted(a, both, side="right") / a.size
    fb = np.searchsorted(b, both, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))
