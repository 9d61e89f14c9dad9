"""Hamilton-path decompositions of K_{2r} and saturating s-t path families.

The decomposition uses the classical zig-zag layout rotated r times: the
base path 0, 1, 2r-1, 2, 2r-2, ... uses each cyclic difference class once,
so its rotations partition the edge set, and the 2r path terminals are all
distinct.  Linking a source to one end of each path and a sink to the other
(plus the bare source-sink edge) yields n/2 edge-disjoint s-t paths whose
removal disconnects s from t.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameterError


@dataclass(frozen=True)
class HamiltonDecomposition:
    """r edge-disjoint Hamilton paths partitioning the edges of K_{2r}."""

    r: int
    paths: list[tuple[int, ...]]


@dataclass(frozen=True)
class SaturatingFamily:
    """n/2 edge-disjoint s-t paths in K_n whose removal separates s from t."""

    n: int
    s: int
    t: int
    st_paths: list[tuple[int, ...]]


def walecki_decompose(r: int) -> HamiltonDecomposition:
    """Decompose K_{2r} into r edge-disjoint Hamilton paths, terminals distinct."""
    if r < 1:
        raise InvalidParameterError(f"need r >= 1, got {r}")
    m = 2 * r
    base = [0]
    for i in range(1, r + 1):
        base.append(i)
        if i < r:
            base.append(m - i)
    paths = [tuple((v + j) % m for v in base) for j in range(r)]
    return HamiltonDecomposition(r=r, paths=paths)


def saturating_family(n: int, s: int, t: int) -> SaturatingFamily:
    """Build the n/2 edge-disjoint s-t paths of the saturating construction.

    Decomposes K_n minus {s, t} into Hamilton paths, links s to each path's
    start terminal and t to each end terminal, and adds the bare edge {s, t}.
    """
    if n % 2 != 0 or n < 4:
        raise InvalidParameterError(f"need even n >= 4, got {n}")
    if s == t or not (0 <= s < n and 0 <= t < n):
        raise InvalidParameterError(f"bad terminals s={s}, t={t}")
    middle = [v for v in range(n) if v not in (s, t)]
    decomp = walecki_decompose((n - 2) // 2)
    st_paths = [
        (s,) + tuple(middle[v] for v in p) + (t,) for p in decomp.paths
    ]
    st_paths.append((s, t))
    return SaturatingFamily(n=n, s=s, t=t, st_paths=st_paths)


def family_edges(family: SaturatingFamily) -> list[tuple[int, int]]:
    """All edges used by the family, canonically ordered pairs."""
    out = []
    for p in family.st_paths:
        out.extend((min(a, b), max(a, b)) for a, b in zip(p, p[1:]))
    return out
