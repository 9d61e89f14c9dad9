# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: the edge-weight PRF and the dense Dijkstra variants.

Must stay bit-for-bit equivalent to ``_pure``.  The PRF emits uniform
deviates from C loops; the uniform-to-exponential transform is the single
shared NumPy routine in ``_pure`` (SIMD log1p differs from libm's scalar
log1p in the last ulps, so there must be exactly one code path for it).
"""

from libc.math cimport INFINITY

import numpy as np

from ._pure import exp_transform_inplace

ctypedef unsigned long long u64

cdef u64 GOLDEN = 0x9E3779B97F4A7C15ULL
cdef double TWO53INV = 2.0 ** -53


cdef inline u64 _mix64(u64 z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline double _edge_u01(u64 seed, long u, long v) nogil:
    cdef u64 lo, hi
    if u < v:
        lo = <u64> u
        hi = <u64> v
    else:
        lo = <u64> v
        hi = <u64> u
    return <double> (_mix64(seed ^ _mix64(((lo << 32) | hi) + GOLDEN)) >> 11) * TWO53INV


def fill_weights(u64 seed, long n, bint exponential):
    """All n(n-1)/2 edge weights in canonical upper-triangle order."""
    out = np.empty(n * (n - 1) // 2, dtype=np.float64)
    cdef double[::1] o = out
    cdef long u, v
    cdef Py_ssize_t pos = 0
    with nogil:
        for u in range(n - 1):
            for v in range(u + 1, n):
                o[pos] = _edge_u01(seed, u, v)
                pos += 1
    if exponential:
        exp_transform_inplace(out)
    return out


def weight_row(u64 seed, long n, long u, bint exponential):
    """Weights w(u, v) for all v, with +inf in the diagonal slot."""
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef long v
    with nogil:
        for v in range(n):
            o[v] = 0.0 if v == u else _edge_u01(seed, u, v)
    if exponential:
        exp_transform_inplace(out)
    out[u] = np.inf
    return out


cdef inline Py_ssize_t _tri_index(long n, long a, long b) nogil:
    # requires a < b
    return (<Py_ssize_t> a) * (2 * n - a - 1) // 2 + (b - a - 1)


def dijkstra_tri(double[::1] w, long n, long source,
                 long stop_vertex=-1, long stop_count=-1):
    """Dense Dijkstra over a flat upper-triangle weight array.

    Deleted edges are expected to carry +inf in ``w``.  Returns the final
    distances (inf where unsettled) and the settle order.
    """
    dist_arr = np.full(n, np.inf)
    order_arr = np.empty(n, dtype=np.int64)
    work_arr = np.full(n, np.inf)
    settled_arr = np.zeros(n, dtype=np.uint8)
    cdef double[::1] dist = dist_arr
    cdef double[::1] work = work_arr
    cdef unsigned char[::1] settled = settled_arr
    cdef long[::1] order = order_arr
    cdef long cnt = 0, u, v, rounds
    cdef double du, best, cand
    cdef Py_ssize_t rowbase

    work[source] = 0.0
    with nogil:
        for rounds in range(n):
            u = -1
            best = INFINITY
            for v in range(n):
                if work[v] < best:
                    best = work[v]
                    u = v
            if u < 0:
                break
            du = best
            dist[u] = du
            settled[u] = 1
            work[u] = INFINITY
            order[cnt] = u
            cnt += 1
            if u == stop_vertex or cnt == stop_count:
                break
            for v in range(u):
                if not settled[v]:
                    cand = du + w[_tri_index(n, v, u)]
                    if cand < work[v]:
                        work[v] = cand
            if u < n - 1:
                rowbase = _tri_index(n, u, u + 1)
                for v in range(u + 1, n):
                    if not settled[v]:
                        cand = du + w[rowbase + (v - u - 1)]
                        if cand < work[v]:
                            work[v] = cand
    return dist_arr, order_arr[:cnt]


cdef inline bint _in_sorted(const long[::1] arr, Py_ssize_t size, Py_ssize_t key) nogil:
    cdef Py_ssize_t lo = 0, hi = size, mid
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo < size and arr[lo] == key


def dijkstra_implicit(u64 seed, long n, bint exponential,
                      long[::1] deleted_sorted, long source,
                      long stop_vertex=-1, long stop_count=-1):
    """Dijkstra with weights derived on the fly from the PRF.

    Each settled vertex's row is synthesized uniform in C, transformed with
    the shared NumPy routine when exponential, then relaxed in C.
    """
    dist_arr = np.full(n, np.inf)
    order_arr = np.empty(n, dtype=np.int64)
    work_arr = np.full(n, np.inf)
    settled_arr = np.zeros(n, dtype=np.uint8)
    row_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] dist = dist_arr
    cdef double[::1] work = work_arr
    cdef unsigned char[::1] settled = settled_arr
    cdef long[::1] order = order_arr
    cdef double[::1] row = row_arr
    cdef long cnt = 0, u, v, rounds
    cdef double du, best, cand
    cdef Py_ssize_t ndel = deleted_sorted.shape[0]

    work[source] = 0.0
    for rounds in range(n):
        u = -1
        best = INFINITY
        for v in range(n):
            if work[v] < best:
                best = work[v]
                u = v
        if u < 0:
            break
        du = best
        dist[u] = du
        settled[u] = 1
        work[u] = INFINITY
        order[cnt] = u
        cnt += 1
        if u == stop_vertex or cnt == stop_count:
            break
        with nogil:
            for v in range(n):
                row[v] = 0.0 if v == u else _edge_u01(seed, u, v)
        if exponential:
            exp_transform_inplace(row_arr)
        row[u] = INFINITY
        with nogil:
            for v in range(n):
                if v == u or settled[v]:
                    continue
                cand = du + row[v]
                if cand < work[v]:
                    # deletion check only on improvement: deletions are rare
                    if ndel and _in_sorted(
                        deleted_sorted, ndel,
                        _tri_index(n, u, v) if u < v else _tri_index(n, v, u),
                    ):
                        continue
                    work[v] = cand
    return dist_arr, order_arr[:cnt]


def dijkstra_directed(double[:, ::1] C, double[::1] pi, long source,
                      long stop_vertex=-1):
    """Dijkstra on a dense directed cost matrix under node potentials.

    Reduced arc costs ``C[u, v] + pi[u] - pi[v]`` are clamped at zero.
    Returns reduced distances and the predecessor array.
    """
    cdef long n = C.shape[0]
    dist_arr = np.full(n, np.inf)
    work_arr = np.full(n, np.inf)
    parent_arr = np.full(n, -1, dtype=np.int64)
    settled_arr = np.zeros(n, dtype=np.uint8)
    cdef double[::1] dist = dist_arr
    cdef double[::1] work = work_arr
    cdef long[::1] parent = parent_arr
    cdef unsigned char[::1] settled = settled_arr
    cdef long u, v, rounds
    cdef double du, best, rc, cand, pi_u

    work[source] = 0.0
    with nogil:
        for rounds in range(n):
            u = -1
            best = INFINITY
            for v in range(n):
                if work[v] < best:
                    best = work[v]
                    u = v
            if u < 0:
                break
            du = best
            dist[u] = du
            settled[u] = 1
            work[u] = INFINITY
            if u == stop_vertex:
                break
            pi_u = pi[u]
            for v in range(n):
                if settled[v]:
                    continue
                rc = C[u, v] + (pi_u - pi[v])
                if rc < 0.0:
                    rc = 0.0
                cand = du + rc
                if cand < work[v]:
                    work[v] = cand
                    parent[v] = u
    return dist_arr, parent_arr
