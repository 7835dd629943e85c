"""Hot numeric kernels with a compiled core and a NumPy fallback.

The compiled extension (`itfmap._core._kernels`, built from Cython) is
preferred; when it is missing (no compiler at install time, or a source-only
checkout) the pure-NumPy implementations take over transparently.

`BACKEND` reports which one is active; `benchmarks/bench_backends.py`
compares the two.
"""

from itfmap._core import _kernels_py

try:  # pragma: no cover - exercised only when the extension is built
    from itfmap._core import _kernels as _impl

    BACKEND = "cython"
except ImportError:  # pragma: no cover
    _impl = _kernels_py
    BACKEND = "numpy"

correlate_full = _impl.correlate_full
kalman_local_level = _impl.kalman_local_level

# fallback implementations stay importable for the backend benchmark/tests
correlate_full_py = _kernels_py.correlate_full
kalman_local_level_py = _kernels_py.kalman_local_level

__all__ = [
    "BACKEND",
    "correlate_full",
    "correlate_full_py",
    "kalman_local_level",
    "kalman_local_level_py",
]
