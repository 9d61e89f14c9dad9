"""NumPy fallback for the hot kernels.

Bit-compatible with the compiled extension: same counter-based PRF, the
same first-minimum settle order, the same IEEE-754 operations in the same
per-edge order.  Anything that must agree across backends lives here and in
``_speedups.pyx`` only.
"""

from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)
_TWO53INV = np.float64(2.0**-53)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S32 = np.uint64(32)
_S11 = np.uint64(11)


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _S30)) * _MUL1
    z = (z ^ (z >> _S27)) * _MUL2
    return z ^ (z >> _S31)


def _edge_bits(seed: np.uint64, counters: np.ndarray) -> np.ndarray:
    return _mix64(seed ^ _mix64(counters + _GOLDEN))


def exp_transform_inplace(arr: np.ndarray) -> np.ndarray:
    """In-place -log1p(-x), the uniform-to-exponential coupling.

    The one and only transform used on weight arrays; both backends call
    this exact ufunc sequence so tables stay bit-identical (NumPy's SIMD
    log1p differs from libm's scalar log1p in the last ulps).
    """
    np.negative(arr, out=arr)
    np.log1p(arr, out=arr)
    np.negative(arr, out=arr)
    return arr


def fill_weights(seed: int, n: int, exponential: bool) -> np.ndarray:
    """All n(n-1)/2 edge weights in canonical upper-triangle order."""
    seed = np.uint64(seed)
    out = np.empty(n * (n - 1) // 2, dtype=np.float64)
    pos = 0
    for u in range(n - 1):
        hi = np.arange(u + 1, n, dtype=np.uint64)
        counters = (np.uint64(u) << _S32) | hi
        out[pos : pos + n - u - 1] = (_edge_bits(seed, counters) >> _S11) * _TWO53INV
        pos += n - u - 1
    if exponential:
        exp_transform_inplace(out)
    return out


def weight_row(seed: int, n: int, u: int, exponential: bool) -> np.ndarray:
    """Weights w(u, v) for all v, with +inf in the diagonal slot."""
    seed = np.uint64(seed)
    v = np.arange(n, dtype=np.uint64)
    uu = np.uint64(u)
    lo = np.minimum(uu, v)
    hi = np.maximum(uu, v)
    row = (_edge_bits(seed, (lo << _S32) | hi) >> _S11) * _TWO53INV
    if exponential:
        exp_transform_inplace(row)
    row[u] = np.inf
    return row


def _tri_bases(n: int) -> np.ndarray:
    u = np.arange(n, dtype=np.int64)
    return u * (2 * n - u - 1) // 2


def _gather_tri_row(w: np.ndarray, n: int, u: int, base: np.ndarray, out: np.ndarray) -> None:
    if u > 0:
        vs = np.arange(u, dtype=np.int64)
        out[:u] = w[base[:u] + (u - 1) - vs]
    out[u] = np.inf
    if u < n - 1:
        out[u + 1 :] = w[base[u] : base[u] + (n - u - 1)]


def dijkstra_tri(
    w: np.ndarray,
    n: int,
    source: int,
    stop_vertex: int = -1,
    stop_count: int = -1,
) -> tuple[np.ndarray, np.ndarray]:
    """Dense Dijkstra over a flat upper-triangle weight array.

    Deleted edges are expected to carry +inf in ``w``.  Returns the final
    distances (inf where unsettled) and the settle order.  Stops early after
    settling ``stop_vertex`` or after ``stop_count`` settles.
    """
    base = _tri_bases(n)
    dist = np.full(n, np.inf)
    work = np.full(n, np.inf)
    work[source] = 0.0
    settled = np.zeros(n, dtype=bool)
    order = np.empty(n, dtype=np.int64)
    row = np.empty(n, dtype=np.float64)
    cnt = 0
    for _ in range(n):
        u = int(np.argmin(work))
        du = work[u]
        if du == np.inf:
            break
        dist[u] = du
        settled[u] = True
        work[u] = np.inf
        order[cnt] = u
        cnt += 1
        if u == stop_vertex or cnt == stop_count:
            break
        _gather_tri_row(w, n, u, base, row)
        cand = du + row
        np.minimum(work, cand, out=work, where=~settled)
    return dist, order[:cnt]


def dijkstra_implicit(
    seed: int,
    n: int,
    exponential: bool,
    deleted_sorted: np.ndarray,
    source: int,
    stop_vertex: int = -1,
    stop_count: int = -1,
) -> tuple[np.ndarray, np.ndarray]:
    """Dijkstra with weights derived on the fly from the PRF.

    ``deleted_sorted`` holds canonical pair indices (sorted int64) of
    deleted edges.
    """
    base = _tri_bases(n)
    vall = np.arange(n, dtype=np.int64)
    dist = np.full(n, np.inf)
    work = np.full(n, np.inf)
    work[source] = 0.0
    settled = np.zeros(n, dtype=bool)
    order = np.empty(n, dtype=np.int64)
    cnt = 0
    for _ in range(n):
        u = int(np.argmin(work))
        du = work[u]
        if du == np.inf:
            break
        dist[u] = du
        settled[u] = True
        work[u] = np.inf
        order[cnt] = u
        cnt += 1
        if u == stop_vertex or cnt == stop_count:
            break
        row = weight_row(seed, n, u, exponential)
        if deleted_sorted.size:
            lo = np.minimum(u, vall)
            hi = np.maximum(u, vall)
            idxs = base[lo] + (hi - lo - 1)
            idxs[u] = -1
            pos = np.minimum(
                np.searchsorted(deleted_sorted, idxs), deleted_sorted.size - 1
            )
            row[deleted_sorted[pos] == idxs] = np.inf
        cand = du + row
        np.minimum(work, cand, out=work, where=~settled)
    return dist, order[:cnt]


def dijkstra_directed(
    C: np.ndarray,
    pi: np.ndarray,
    source: int,
    stop_vertex: int = -1,
) -> tuple[np.ndarray, np.ndarray]:
    """Dijkstra on a dense directed cost matrix under node potentials.

    Arc costs are reduced by ``C[u, v] + pi[u] - pi[v]`` and clamped at zero
    (the caller maintains nonnegativity up to rounding).  Missing arcs carry
    +inf in ``C``.  Returns reduced distances and the predecessor array.
    """
    n = C.shape[0]
    dist = np.full(n, np.inf)
    work = np.full(n, np.inf)
    work[source] = 0.0
    parent = np.full(n, -1, dtype=np.int64)
    settled = np.zeros(n, dtype=bool)
    for _ in range(n):
        u = int(np.argmin(work))
        du = work[u]
        if du == np.inf:
            break
        dist[u] = du
        settled[u] = True
        work[u] = np.inf
        if u == stop_vertex:
            break
        rc = C[u] + (pi[u] - pi)
        np.maximum(rc, 0.0, out=rc)
        cand = du + rc
        cand[settled] = np.inf
        improved = cand < work
        work[improved] = cand[improved]
        parent[improved] = u
    return dist, parent
