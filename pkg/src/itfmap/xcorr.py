"""Per-window time-difference estimation by normalized cross-correlation.

Three routes to the same lag axis: direct time-domain (`cc_time`), conjugate
spectral product (`cc_freq`) and undecimated-wavelet-domain (`cc_wavelet`).
`refine_peak` interpolates the peak to fractional lags; `lag_to_tdoa`
converts lags to seconds and phase.

Sign convention, fixed project-wide: a positive lag means the second input
is delayed relative to the first.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np
from scipy.interpolate import CubicSpline

from itfmap._core import correlate_full
from itfmap import wavelets
from itfmap.wavelets import WaveletBasis

CENTER_FREQUENCY = 60e6          # Hz, band center used for phase readout
DEFAULT_SIGNAL_BAND = (40e6, 80e6)
DEFAULT_CCWD_LEVELS = 2
INTERP_NEIGHBORHOOD = 8          # integer lags kept on each side of the peak

BASELINE_BC = "BC"
BASELINE_BD = "BD"


class DegenerateWindowError(ValueError):
    """Correlation requested on a zero-variance (flagged constant) segment."""


@dataclass(frozen=True)
class CorrelationSeries:
    """Normalized correlation coefficients over lags -(W-1) .. +(W-1)."""

    lags: np.ndarray
    coefficients: np.ndarray

    def peak(self) -> tuple[int, float]:
        """(integer lag, coefficient) of the maximum; ties -> smallest |lag|."""
        c = self.coefficients
        best = np.flatnonzero(c == c.max())
        i = best[np.argmin(np.abs(self.lags[best]))]
        return int(self.lags[i]), float(c[i])


@dataclass(frozen=True)
class InterpSpec:
    """Peak refinement: method in {none, linear, cubic}, factor in {1,2,4,8}."""

    method: str = "none"
    factor: int = 1

    def __post_init__(self):
        if self.method not in ("none", "linear", "cubic"):
            raise ValueError(f"unknown interpolation method {self.method!r}")
        if self.factor not in (1, 2, 4, 8):
            raise ValueError(f"interpolation factor must be 1, 2, 4 or 8, got {self.factor}")

    @classmethod
    def parse(cls, text: str) -> "InterpSpec":
        """Parse ``none`` or ``<method>:<factor>`` (e.g. ``cubic:8``)."""
        t = text.strip().lower()
        if t in ("none", "", "1"):
            return cls()
        if ":" not in t:
            raise ValueError(f"bad interpolation selector {text!r}")
        method, factor = t.split(":", 1)
        return cls(method=method, factor=int(factor))

    def label(self) -> str:
        return "none" if self.method == "none" or self.factor == 1 else f"{self.method}:{self.factor}"


@dataclass(frozen=True)
class TdoaEstimate:
    """One baseline's per-window result: fractional lag, seconds, phase."""

    window_index: int
    baseline: str
    lag_samples: float
    tau_s: float
    peak_coefficient: float
    phase_rad: float


def _validated(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError("expected two equal-length 1-D segments")
    if len(x) < 2:
        raise ValueError("segments must have at least 2 samples")
    denom = float(np.linalg.norm(x) * np.linalg.norm(y))
    if denom == 0.0:
        raise DegenerateWindowError("zero-variance segment has no correlation")
    return x, y, denom


def _lag_axis(n: int) -> np.ndarray:
    return np.arange(-(n - 1), n)


def cc_time(x: np.ndarray, y: np.ndarray) -> CorrelationSeries:
    """Direct sliding-dot-product correlation, normalized by ||x|| ||y||."""
    x, y, denom = _validated(x, y)
    return CorrelationSeries(_lag_axis(len(x)), correlate_full(x, y) / denom)


def cc_freq(x: np.ndarray, y: np.ndarray) -> CorrelationSeries:
    """Same contract as `cc_time`, via inverse transform of conj(X) * Y with
    zero padding to at least 2W-1 points."""
    x, y, denom = _validated(x, y)
    n = len(x)
    m = 1 << int(np.ceil(np.log2(2 * n - 1)))
    spec = np.conj(np.fft.rfft(x, m)) * np.fft.rfft(y, m)
    c = np.fft.irfft(spec, m)
    coeff = np.concatenate([c[m - (n - 1):], c[:n]]) / denom
    return CorrelationSeries(_lag_axis(n), coeff)


def cc_wavelet(
    x: np.ndarray,
    y: np.ndarray,
    basis: WaveletBasis,
    levels: int = DEFAULT_CCWD_LEVELS,
    dt: float = 4e-9,
    band: tuple[float, float] = DEFAULT_SIGNAL_BAND,
) -> CorrelationSeries:
    """Wavelet-domain correlation on the undecimated decomposition.

    Both segments are decomposed with the shift-invariant transform; the
    detail sequences of every level whose octave intersects `band` are
    cross-correlated and the normalized per-level series are averaged with
    weights given by the geometric mean of the two segments' level energies.
    """
    x, y, _ = _validated(x, y)
    selected = wavelets.levels_in_band(levels, dt, band)
    if not selected:
        raise ValueError(
            f"no decomposition level of {levels} intersects band {band} at dt={dt}"
        )
    wx = wavelets.modwt(x, basis, levels)
    wy = wavelets.modwt(y, basis, levels)
    acc = np.zeros(2 * len(x) - 1)
    wsum = 0.0
    for j in selected:
        dxj, dyj = wx[j - 1], wy[j - 1]
        ex = float(np.dot(dxj, dxj))
        ey = float(np.dot(dyj, dyj))
        if ex == 0.0 or ey == 0.0:
            continue
        weight = np.sqrt(ex * ey)
        acc += weight * (correlate_full(dxj, dyj) / np.sqrt(ex * ey))
        wsum += weight
    if wsum == 0.0:
        raise DegenerateWindowError("no detail energy in the selected levels")
    return CorrelationSeries(_lag_axis(len(x)), acc / wsum)


def refine_peak(series: CorrelationSeries, interp: InterpSpec) -> float:
    """Fractional-lag peak location.

    Finds the integer argmax (ties toward smallest |lag|), then resamples the
    +-8-lag neighborhood at `factor` times density with the chosen method and
    returns the argmax of the resampled curve (same tie break).  Factor 1 or
    method ``none`` return the integer peak.
    """
    if len(series.coefficients) == 0:
        raise ValueError("empty correlation series")
    lag0, _ = series.peak()
    if interp.method == "none" or interp.factor == 1:
        return float(lag0)
    lags = series.lags
    lo = max(int(lags[0]), lag0 - INTERP_NEIGHBORHOOD)
    hi = min(int(lags[-1]), lag0 + INTERP_NEIGHBORHOOD)
    base = lags[(lags >= lo) & (lags <= hi)].astype(np.float64)
    vals = series.coefficients[(lags >= lo) & (lags <= hi)]
    if len(base) < 2:
        return float(lag0)
    dense = lo + np.arange(int((hi - lo) * interp.factor) + 1) / interp.factor
    if interp.method == "linear":
        curve = np.interp(dense, base, vals)
    else:
        curve = CubicSpline(base, vals)(dense)
    best = np.flatnonzero(curve == curve.max())
    return float(dense[best[np.argmin(np.abs(dense[best]))]])


def lag_to_tdoa(lag_samples: float, dt: float, f: float = CENTER_FREQUENCY) -> tuple[float, float]:
    """(tau seconds, phase radians) for a fractional sample lag.

    tau = lag * dt and phase = 2 pi f tau at band-center frequency f.
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    if f <= 0:
        raise ValueError("f must be > 0")
    tau = lag_samples * dt
    return tau, 2.0 * pi * f * tau


CC_METHODS = ("cctd", "ccfd", "ccwd")


def correlate(
    x: np.ndarray,
    y: np.ndarray,
    method: str,
    basis: WaveletBasis | None = None,
    levels: int = DEFAULT_CCWD_LEVELS,
    dt: float = 4e-9,
    band: tuple[float, float] = DEFAULT_SIGNAL_BAND,
) -> CorrelationSeries:
    """Method-string dispatch (``cctd`` | ``ccfd`` | ``ccwd``)."""
    if method == "cctd":
        return cc_time(x, y)
    if method == "ccfd":
        return cc_freq(x, y)
    if method == "ccwd":
        if basis is None:
            basis = wavelets.get_basis("sym4")
        return cc_wavelet(x, y, basis, levels=levels, dt=dt, band=band)
    raise ValueError(f"unknown correlation method {method!r}")
