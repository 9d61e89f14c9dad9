"""Kernel backend selection and the seed-derivation conventions.

The hot kernels (edge-weight PRF and the dense Dijkstra variants) exist
twice: a Cython extension (``_speedups``) and a NumPy fallback (``_pure``).
Both are bit-for-bit equivalent; the compiled one is picked at import when
available.  Set ``SUCCPATHS_PURE=1`` to force the fallback, or call
:func:`use_backend` (used by the benchmark and the parity tests).
"""

from __future__ import annotations

import os

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix64(x: int) -> int:
    """One SplitMix64 step evaluated at ``x`` (stateless form)."""
    return mix64((x + GOLDEN) & MASK64)


def derive_trial_seed(master_seed: int, trial_index: int) -> int:
    """Fixed rule for per-trial seeds: master XOR splitmix of the trial index.

    Documented so archived experiment rows stay replayable.
    """
    return (master_seed & MASK64) ^ splitmix64(trial_index)


def pair_index(u: int, v: int, n: int) -> int:
    """Canonical index of the unordered pair {u, v} in the flat upper triangle."""
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


from . import _pure  # noqa: E402

try:
    from . import _speedups  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on the build
    _speedups = None

kernels = _pure if (_speedups is None or os.environ.get("SUCCPATHS_PURE")) else _speedups


def active_backend() -> str:
    """Name of the kernel backend in use: ``"compiled"`` or ``"pure"``."""
    return "compiled" if kernels is _speedups else "pure"


def use_backend(name: str) -> None:
    """Switch kernels at runtime (``"compiled"`` or ``"pure"``)."""
    global kernels
    if name == "pure":
        kernels = _pure
    elif name == "compiled":
        if _speedups is None:
            raise RuntimeError("compiled extension is not available")
        kernels = _speedups
    else:
        raise ValueError(f"unknown backend {name!r}")
