"""Compiled-kernel vs NumPy-fallback equivalence."""

import numpy as np

from itfmap import _core


def test_backend_reported():
    assert _core.BACKEND in ("cython", "numpy")


def test_correlate_full_backends_agree():
    rng = np.random.default_rng(0)
    for n in (2, 5, 64, 256, 300):
        x = rng.normal(size=n)
        y = rng.normal(size=n)
        a = _core.correlate_full(x, y)
        b = _core.correlate_full_py(x, y)
        assert a.shape == (2 * n - 1,)
        np.testing.assert_allclose(a, b, atol=1e-12)


def test_kalman_backends_agree():
    rng = np.random.default_rng(1)
    z = rng.normal(size=5000)
    for q, r in ((0.0, 1.0), (0.01, 0.5), (1.0, 0.1)):
        a = _core.kalman_local_level(z, q, r)
        b = _core.kalman_local_level_py(z, q, r)
        np.testing.assert_allclose(a, b, atol=1e-12)


def test_kernels_accept_non_contiguous():
    rng = np.random.default_rng(2)
    x = rng.normal(size=512)[::2]
    y = rng.normal(size=512)[::2]
    np.testing.assert_allclose(
        _core.correlate_full(x, y), _core.correlate_full_py(x, y), atol=1e-12
    )
