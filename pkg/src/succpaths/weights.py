"""Random symmetric edge weights for K_n with deletion tracking.

Weights are derived from a counter-based PRF of (seed, min(u,v), max(u,v)),
so the dense and implicit storage modes agree bit-exactly and any weight can
be recomputed at any time.  Uniform weights map 53 PRF bits into [0, 1); the
boundary 0 is permitted (a probability-zero event for the continuous model).
Exponential weights are the coupled transform -ln(1 - u) of the same bits.
"""

from __future__ import annotations

import enum
import math
from typing import Iterable, Mapping

import numpy as np

from . import _core
from ._core import MASK64, pair_index
from .errors import DomainError, InvalidEdgeError, InvalidParameterError


class EdgeWeightModel(enum.Enum):
    """Edge weight distribution: U(0,1) or Exp(1)."""

    UNIFORM01 = "uniform"
    EXPONENTIAL1 = "exponential"

    @property
    def is_exponential(self) -> bool:
        return self is EdgeWeightModel.EXPONENTIAL1

    def cdf(self, x: float) -> float:
        """Distribution function, used by the goodness-of-fit checks."""
        if x <= 0.0:
            return 0.0
        if self.is_exponential:
            return -math.expm1(-x)
        return min(x, 1.0)


class StorageMode(enum.Enum):
    DENSE_MATERIALIZED = "dense"
    IMPLICIT_PRF = "implicit"


def couple_to_exponential(w: float) -> float:
    """Map a uniform weight to its coupled exponential weight -ln(1 - w).

    Order-preserving, and the result dominates the input.
    """
    if not 0.0 <= w < 1.0:
        raise DomainError(f"coupling needs 0 <= w < 1, got {w}")
    return -math.log1p(-w)


class WeightedCompleteGraph:
    """Symmetric edge-weight oracle over n vertices plus a deletion mask.

    The weight assignment itself is immutable; deletion only hides edges
    from path finding (``weight`` keeps answering with the original value).
    An instance is owned by one extraction run at a time, since deletion
    mutates it; regenerate from the seed for a pristine copy.
    """

    def __init__(
        self,
        n: int,
        *,
        model: EdgeWeightModel | None,
        seed: int | None,
        mode: StorageMode,
        weights: np.ndarray | None,
        s: int = 0,
        t: int = 1,
    ):
        if n < 2:
            raise InvalidParameterError(f"need n >= 2, got {n}")
        if not (0 <= s < n and 0 <= t < n and s != t):
            raise InvalidParameterError(f"bad terminals s={s}, t={t} for n={n}")
        self.n = n
        self.model = model
        self.seed = seed
        self.mode = mode
        self.s = s
        self.t = t
        self._w = weights
        # pair index -> (original weight, u, v) with u < v
        self._deleted: dict[int, tuple[float, int, int]] = {}
        self._deleted_arr: np.ndarray | None = np.empty(0, dtype=np.int64)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_weights(
        cls,
        weights: Mapping[tuple[int, int], float] | np.ndarray,
        *,
        s: int = 0,
        t: int = 1,
    ) -> "WeightedCompleteGraph":
        """Build a crafted instance from an explicit weight table.

        Accepts a full symmetric matrix (diagonal ignored) or a mapping with
        one entry per unordered pair.  Weights must be finite and >= 0; +inf
        is reserved as the deletion sentinel.
        """
        if isinstance(weights, np.ndarray):
            n = weights.shape[0]
            if weights.ndim != 2 or weights.shape != (n, n):
                raise InvalidParameterError("weight matrix must be square")
            if not np.array_equal(np.triu(weights, 1), np.tril(weights, -1).T):
                raise InvalidParameterError("weight matrix must be symmetric")
            flat = np.empty(n * (n - 1) // 2, dtype=np.float64)
            pos = 0
            for u in range(n - 1):
                flat[pos : pos + n - u - 1] = weights[u, u + 1 :]
                pos += n - u - 1
        else:
            pairs = {(min(u, v), max(u, v)) for u, v in weights}
            verts = {x for p in pairs for x in p}
            n = (max(verts) + 1) if verts else 0
            if n < 2 or len(pairs) != n * (n - 1) // 2:
                raise InvalidParameterError(
                    "weight mapping must cover every unordered pair exactly once"
                )
            flat = np.empty(n * (n - 1) // 2, dtype=np.float64)
            for (u, v), w in weights.items():
                flat[pair_index(u, v, n)] = w
        if not np.all(np.isfinite(flat)) or np.any(flat < 0):
            raise InvalidParameterError("weights must be finite and nonnegative")
        return cls(
            n,
            model=None,
            seed=None,
            mode=StorageMode.DENSE_MATERIALIZED,
            weights=flat,
            s=s,
            t=t,
        )

    # -- queries -----------------------------------------------------------

    def _check_pair(self, u: int, v: int) -> None:
        if u == v:
            raise InvalidEdgeError(f"self-loop ({u},{u}) is not an edge")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InvalidEdgeError(f"vertex pair ({u},{v}) out of range for n={self.n}")

    def weight(self, u: int, v: int) -> float:
        """Original weight of {u, v}, independent of the deletion mask."""
        self._check_pair(u, v)
        idx = pair_index(u, v, self.n)
        if idx in self._deleted:
            return self._deleted[idx][0]
        if self._w is not None:
            return float(self._w[idx])
        return self._prf_weight(u, v)

    def _prf_weight(self, u: int, v: int) -> float:
        row = _core.kernels.weight_row(
            self.seed, self.n, min(u, v), self.model.is_exponential
        )
        return float(row[max(u, v)])

    def is_deleted(self, u: int, v: int) -> bool:
        self._check_pair(u, v)
        return pair_index(u, v, self.n) in self._deleted

    def neighbors(self, u: int) -> list[tuple[int, float]]:
        """Non-deleted incident edges of u as (vertex, weight) pairs."""
        row = self.live_weight_row(u)
        return [(v, float(row[v])) for v in range(self.n) if row[v] != np.inf]

    def live_weight_row(self, u: int) -> np.ndarray:
        """Weights w(u, v) for all v, with +inf at deleted edges and at v == u."""
        if not 0 <= u < self.n:
            raise InvalidEdgeError(f"vertex {u} out of range")
        n = self.n
        if self._w is not None:
            row = np.empty(n, dtype=np.float64)
            if u > 0:
                vs = np.arange(u, dtype=np.int64)
                bases = vs * (2 * n - vs - 1) // 2
                row[:u] = self._w[bases + (u - 1) - vs]
            row[u] = np.inf
            if u < n - 1:
                b = u * (2 * n - u - 1) // 2
                row[u + 1 :] = self._w[b : b + n - u - 1]
            return row
        row = _core.kernels.weight_row(self.seed, n, u, self.model.is_exponential)
        for _, a, b in self._deleted.values():
            if a == u:
                row[b] = np.inf
            elif b == u:
                row[a] = np.inf
        return row

    def incident_weights(self, u: int) -> np.ndarray:
        """The n-1 original weights incident to u, sorted ascending."""
        if self._w is not None:
            row = self.live_weight_row(u)
            for w, a, b in self._deleted.values():
                if a == u:
                    row[b] = w
                elif b == u:
                    row[a] = w
        else:
            row = _core.kernels.weight_row(
                self.seed, self.n, u, self.model.is_exponential
            )
        vals = np.delete(row, u)
        vals.sort()
        return vals

    def weight_matrix(self) -> np.ndarray:
        """Full n-by-n live weight matrix (inf on the diagonal and at deletions)."""
        M = np.empty((self.n, self.n), dtype=np.float64)
        for u in range(self.n):
            M[u] = self.live_weight_row(u)
        return M

    @property
    def deleted_edges(self) -> set[tuple[int, int]]:
        return {(a, b) for _, a, b in self._deleted.values()}

    def deleted_index_array(self) -> np.ndarray:
        if self._deleted_arr is None:
            self._deleted_arr = np.array(sorted(self._deleted), dtype=np.int64)
        return self._deleted_arr

    # -- mutation ----------------------------------------------------------

    def delete_edges(self, edges: Iterable[tuple[int, int]]) -> None:
        """Add unordered pairs to the deletion mask.  Idempotent."""
        for u, v in edges:
            self._check_pair(u, v)
            a, b = (u, v) if u < v else (v, u)
            idx = pair_index(a, b, self.n)
            if idx in self._deleted:
                continue
            if self._w is not None:
                self._deleted[idx] = (float(self._w[idx]), a, b)
                self._w[idx] = np.inf
            else:
                self._deleted[idx] = (self._prf_weight(a, b), a, b)
            self._deleted_arr = None

    # -- shortest-path plumbing --------------------------------------------

    def dijkstra(
        self, source: int, stop_vertex: int = -1, stop_count: int = -1
    ) -> tuple[np.ndarray, np.ndarray]:
        """Distances over non-deleted edges; returns (dist, settle order)."""
        if self._w is not None:
            return _core.kernels.dijkstra_tri(
                self._w, self.n, source, stop_vertex, stop_count
            )
        return _core.kernels.dijkstra_implicit(
            self.seed,
            self.n,
            self.model.is_exponential,
            self.deleted_index_array(),
            source,
            stop_vertex,
            stop_count,
        )


def generate(
    n: int,
    model: EdgeWeightModel,
    seed: int,
    mode: StorageMode = StorageMode.DENSE_MATERIALIZED,
    *,
    s: int = 0,
    t: int = 1,
) -> WeightedCompleteGraph:
    """Draw a fresh K_n with i.i.d. weights from the model.

    Identical (n, model, seed) give an identical weight table, in either
    storage mode (dense is materialized via the same PRF).
    """
    if n < 2:
        raise InvalidParameterError(f"need n >= 2, got {n}")
    seed64 = seed & MASK64
    w = None
    if mode is StorageMode.DENSE_MATERIALIZED:
        w = _core.kernels.fill_weights(seed64, n, model.is_exponential)
    return WeightedCompleteGraph(
        n, model=model, seed=seed64, mode=mode, weights=w, s=s, t=t
    )
