"""Interchangeable signal-to-signal preprocessing filters.

Three variants, selectable by spec string:

* ``bpf``               zero-phase Butterworth band-pass (default 20-100 MHz)
* ``kf``                scalar local-level Kalman filter
* ``wt-<basis>-<rule>`` wavelet denoising, e.g. ``wt-sym4-sure``

All filters preserve signal length and are deterministic.  ``none`` is
accepted by `parse_filter_spec` as an explicit bypass for pipelines.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.signal import butter, sosfiltfilt

from itfmap._core import kalman_local_level
from itfmap import wavelets
from itfmap.wavelets import WaveletBasis

DEFAULT_BAND = (20e6, 100e6)   # digital band-pass cut-offs
HARDWARE_BAND = (40e6, 80e6)   # analog front-end preset
DEFAULT_ORDER = 4
DEFAULT_LEVELS = 4


@dataclass(frozen=True)
class BandpassSpec:
    order: int = DEFAULT_ORDER
    low_hz: float = DEFAULT_BAND[0]
    high_hz: float = DEFAULT_BAND[1]

    def validate(self, dt: float) -> None:
        nyquist = 0.5 / dt
        if not 0 < self.low_hz < self.high_hz:
            raise ValueError(f"need 0 < low < high, got ({self.low_hz}, {self.high_hz})")
        if self.high_hz >= nyquist:
            raise ValueError(f"high cut-off {self.high_hz} at/above Nyquist {nyquist}")
        if self.order < 1:
            raise ValueError("order must be >= 1")


@dataclass(frozen=True)
class KalmanSpec:
    """q/r of None means estimate from the signal (r from first-difference
    variance over two, q = r/100)."""

    process_var: float | None = None
    measurement_var: float | None = None


@dataclass(frozen=True)
class WaveletSpec:
    basis: str = "sym4"
    levels: int = DEFAULT_LEVELS
    rule: str = "sure"

    def validate(self) -> None:
        if self.levels < 1:
            raise ValueError("levels must be >= 1")
        if self.rule not in wavelets.THRESHOLD_RULES:
            raise ValueError(f"unknown threshold rule {self.rule!r}")
        wavelets.get_basis(self.basis)  # raises KeyError on unknown basis


FilterSpec = Union[BandpassSpec, KalmanSpec, WaveletSpec, None]


def parse_filter_spec(text: str) -> FilterSpec:
    """Parse a CLI/config selector: bpf | bpf-hw | kf | wt-<basis>-<rule> | none.

    ``bpf`` is the 20-100 MHz digital preset; ``bpf-hw`` mirrors the 40-80 MHz
    analog front-end band.
    """
    t = text.strip().lower()
    if t in ("none", "bypass"):
        return None
    if t == "bpf":
        return BandpassSpec()
    if t == "bpf-hw":
        return BandpassSpec(low_hz=HARDWARE_BAND[0], high_hz=HARDWARE_BAND[1])
    if t == "kf":
        return KalmanSpec()
    if t.startswith("wt-"):
        parts = t.split("-")
        if len(parts) != 3:
            raise ValueError(f"bad wavelet selector {text!r}, expected wt-<basis>-<rule>")
        spec = WaveletSpec(basis=parts[1], rule=parts[2])
        spec.validate()
        return spec
    raise ValueError(f"unknown filter selector {text!r}")


def filter_label(spec: FilterSpec) -> str:
    if spec is None:
        return "none"
    if isinstance(spec, BandpassSpec):
        return "bpf-hw" if (spec.low_hz, spec.high_hz) == HARDWARE_BAND else "bpf"
    if isinstance(spec, KalmanSpec):
        return "kf"
    return f"wt-{spec.basis}-{spec.rule}"


def apply_filter(signal: np.ndarray, spec: FilterSpec, dt: float) -> np.ndarray:
    """Dispatch a parsed spec onto one channel."""
    if spec is None:
        return np.asarray(signal, dtype=np.float64)
    if isinstance(spec, BandpassSpec):
        return bandpass_filter(signal, spec, dt)
    if isinstance(spec, KalmanSpec):
        q, r = spec.process_var, spec.measurement_var
        if r is None:
            q, r = estimate_kalman_vars(signal)
        elif q is None:
            q = r / 100.0
        return kalman_filter(signal, q, r)
    if isinstance(spec, WaveletSpec):
        return wavelet_denoise(signal, wavelets.get_basis(spec.basis), spec.levels, spec.rule)
    raise TypeError(f"not a filter spec: {spec!r}")


def bandpass_filter(signal: np.ndarray, spec: BandpassSpec, dt: float) -> np.ndarray:
    """Butterworth band-pass, applied forward-backward (zero phase).

    The two-pass application squares the magnitude response and cancels the
    group delay, so downstream correlation lags carry no filter bias.
    """
    spec.validate(dt)
    x = np.asarray(signal, dtype=np.float64)
    sos = butter(spec.order, [spec.low_hz, spec.high_hz], btype="bandpass", fs=1.0 / dt, output="sos")
    return sosfiltfilt(sos, x)


def kalman_filter(signal: np.ndarray, q: float, r: float) -> np.ndarray:
    """Scalar local-level (random walk) Kalman filter; returns the per-step
    posterior mean.  q >= 0 is the process variance, r > 0 the measurement
    variance."""
    if r <= 0:
        raise ValueError(f"measurement variance must be > 0, got {r}")
    if q < 0:
        raise ValueError(f"process variance must be >= 0, got {q}")
    return kalman_local_level(np.asarray(signal, dtype=np.float64), q, r)


def estimate_kalman_vars(signal: np.ndarray) -> tuple[float, float]:
    """Default (q, r) when unset: r from the first-difference variance over
    two (white-noise estimate), q = r/100."""
    x = np.asarray(signal, dtype=np.float64)
    if len(x) < 3:
        return 1e-6, 1e-4
    r = float(np.var(np.diff(x))) / 2.0
    r = max(r, 1e-30)
    return r / 100.0, r


def wavelet_denoise(
    signal: np.ndarray,
    basis: WaveletBasis,
    levels: int = DEFAULT_LEVELS,
    rule: str = "sure",
) -> np.ndarray:
    """Periodic DWT, per-level soft threshold on details, reconstruct.

    The per-level noise scale is median(|d|)/0.6745; ``universal`` thresholds
    at sigma*sqrt(2 ln n) (n = signal length), ``sure`` minimizes the Stein
    unbiased risk per level.  Output length equals input length.
    """
    if rule not in wavelets.THRESHOLD_RULES:
        raise ValueError(f"unknown threshold rule {rule!r}")
    x = np.asarray(signal, dtype=np.float64)
    coeffs = wavelets.wavedec(x, basis, levels)
    *parts, lengths = coeffs
    n = len(x)
    for i in range(1, len(parts)):  # details only; approximation untouched
        d = parts[i]
        sigma = wavelets.noise_sigma(d)
        if rule == "universal":
            t = wavelets.universal_threshold(sigma, n)
        else:
            t = wavelets.sure_threshold(d, sigma)
        parts[i] = wavelets.soft_threshold(d, t)
    return wavelets.waverec(parts + [lengths], basis)
