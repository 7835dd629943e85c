"""Orthogonal wavelet machinery: filter banks, periodic DWT, undecimated
(shift-invariant) decomposition, and denoising threshold rules.

Filter coefficients ship as embedded constants (`_wavelet_tables`, generated
once by tools/make_wavelet_tables.py) and are trusted only as far as the
quadrature-mirror identities they are required to satisfy; see
`perfect_reconstruction_residual` and the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log, sqrt

import numpy as np

from itfmap._wavelet_tables import SCALING_FILTERS

THRESHOLD_RULES = ("sure", "universal")


@dataclass(frozen=True)
class WaveletBasis:
    """One orthogonal filter bank, identified by its short name (e.g. sym4).

    `rec_lo` is the synthesis lowpass h (DC gain sqrt(2)); the other three
    filters follow from h by the alternating-flip quadrature-mirror relation.
    """

    name: str
    rec_lo: np.ndarray
    rec_hi: np.ndarray
    dec_lo: np.ndarray
    dec_hi: np.ndarray

    @property
    def length(self) -> int:
        return len(self.rec_lo)


def available_bases() -> tuple[str, ...]:
    return tuple(SCALING_FILTERS)


def get_basis(name: str) -> WaveletBasis:
    """Look up a shipped filter bank; accepts e.g. 'sym4', 'coif5', 'db10', 'fk14'."""
    key = name.lower()
    if key not in SCALING_FILTERS:
        raise KeyError(f"unknown wavelet basis {name!r}; available: {', '.join(SCALING_FILTERS)}")
    h = np.array(SCALING_FILTERS[key], dtype=np.float64)
    sign = (-1.0) ** np.arange(len(h))
    g = sign * h[::-1]  # highpass by alternating flip
    return WaveletBasis(
        name=key,
        rec_lo=h,
        rec_hi=g,
        dec_lo=h[::-1].copy(),
        dec_hi=g[::-1].copy(),
    )


def perfect_reconstruction_residual(basis: WaveletBasis) -> float:
    """Worst-case violation of the orthonormality/QMF identities.

    Checks sum_n h[n] h[n+2k] = delta_k, the lowpass DC gain sqrt(2), and the
    highpass DC null.  Zero (to rounding) for a valid orthogonal bank.
    """
    h = basis.rec_lo
    L = len(h)
    worst = abs(float(np.sum(h)) - sqrt(2.0))
    worst = max(worst, abs(float(np.sum(basis.rec_hi))))
    for k in range(L // 2):
        target = 1.0 if k == 0 else 0.0
        worst = max(worst, abs(float(np.dot(h[: L - 2 * k], h[2 * k :])) - target))
    return worst


# ----------------------------------------------------------------------
# Periodic (decimating) DWT
# ----------------------------------------------------------------------

def _analysis_step(x: np.ndarray, basis: WaveletBasis) -> tuple[np.ndarray, np.ndarray, int]:
    """One periodic analysis level; odd-length inputs are padded by repeating
    the last sample (the original length is returned for the inverse).

    Correlation convention: a[k] = sum_m h[m] x[(2k+m) mod n].  The matching
    synthesis expands over circular 2k-shifts of the very same filters, which
    makes it the exact transpose of this (orthogonal) analysis operator.
    """
    n0 = len(x)
    if n0 % 2:
        x = np.concatenate([x, x[-1:]])
    n = len(x)
    L = basis.length
    # circular access x[(2k + m) mod n] without index arithmetic in the loop
    reps = int(np.ceil((n + L) / n))
    xx = np.tile(x, reps)[: n + L]
    a = np.zeros(n // 2)
    d = np.zeros(n // 2)
    h, g = basis.rec_lo, basis.rec_hi
    for m in range(L):
        sl = xx[m : m + n : 2]
        a += h[m] * sl
        d += g[m] * sl
    return a, d, n0


def _synthesis_step(a: np.ndarray, d: np.ndarray, basis: WaveletBasis, n0: int) -> np.ndarray:
    n = 2 * len(a)
    up = np.zeros(n)
    out = np.zeros(n)
    h, g = basis.rec_lo, basis.rec_hi
    for coeffs, filt in ((a, h), (d, g)):
        up[:] = 0.0
        up[::2] = coeffs
        for m in range(len(filt)):
            out += filt[m] * np.roll(up, m)
    return out[:n0]


def wavedec(x: np.ndarray, basis: WaveletBasis, levels: int) -> list[np.ndarray]:
    """Multi-level periodic DWT.

    Returns ``[a_J, d_J, d_{J-1}, ..., d_1]``.  Requires len(x) >= 2**levels.
    """
    x = np.asarray(x, dtype=np.float64)
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if len(x) < 2**levels:
        raise ValueError(f"signal of {len(x)} samples too short for {levels} levels")
    details: list[np.ndarray] = []
    lengths: list[int] = []
    a = x
    for _ in range(levels):
        a, d, n0 = _analysis_step(a, basis)
        details.append(d)
        lengths.append(n0)
    coeffs = [a] + details[::-1]
    coeffs.append(np.array(lengths))  # bookkeeping for odd-length inverses
    return coeffs


def waverec(coeffs: list[np.ndarray], basis: WaveletBasis) -> np.ndarray:
    """Inverse of `wavedec` (exact, by filter-bank orthonormality)."""
    *parts, lengths = coeffs
    a = parts[0]
    details = parts[1:]
    for d, n0 in zip(details, [int(v) for v in lengths[::-1]]):
        a = _synthesis_step(a, d, basis, n0)
    return a


# ----------------------------------------------------------------------
# Undecimated (shift-invariant) transform
# ----------------------------------------------------------------------

def modwt(x: np.ndarray, basis: WaveletBasis, levels: int) -> list[np.ndarray]:
    """Undecimated (shift-invariant) pyramid: per-level detail sequences,
    each the length of the input.

    Level j spans the octave (fs/2^(j+1), fs/2^j); filters are the bank's
    pair scaled by 1/sqrt(2) and upsampled by 2^(j-1).  The boundary is
    zero-padded (linear convolution, causal alignment) rather than circular:
    the window segments fed to wavelet-domain correlation are aperiodic, and
    circular wrap-around measurably biases the correlation peak.  A time
    shift of the input shifts every output sequence by exactly the same
    amount, with no wrap artifacts.

    Returns ``[d_1, ..., d_J, a_J]``.
    """
    x = np.asarray(x, dtype=np.float64)
    n = len(x)
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if n < 2**levels:
        raise ValueError(f"signal of {n} samples too short for {levels} levels")
    h = basis.dec_lo / sqrt(2.0)
    g = basis.dec_hi / sqrt(2.0)
    out: list[np.ndarray] = []
    v = x
    for j in range(1, levels + 1):
        stride = 2 ** (j - 1)
        hj = np.zeros((len(h) - 1) * stride + 1)
        gj = np.zeros_like(hj)
        hj[::stride] = h
        gj[::stride] = g
        w = np.convolve(v, gj, mode="full")[:n]
        v = np.convolve(v, hj, mode="full")[:n]
        out.append(w)
    out.append(v)
    return out


def level_band(level: int, dt: float) -> tuple[float, float]:
    """Nominal pass-band (Hz) of undecimated detail `level` at sample step dt."""
    fs = 1.0 / dt
    return fs / 2 ** (level + 1), fs / 2**level


def levels_in_band(levels: int, dt: float, band: tuple[float, float]) -> list[int]:
    """Detail levels (1-based) whose octave intersects the open band."""
    lo, hi = band
    picked = []
    for j in range(1, levels + 1):
        blo, bhi = level_band(j, dt)
        if max(blo, lo) < min(bhi, hi):
            picked.append(j)
    return picked


# ----------------------------------------------------------------------
# Denoising thresholds
# ----------------------------------------------------------------------

def noise_sigma(detail: np.ndarray) -> float:
    """Robust per-level noise scale: median(|d|) / 0.6745."""
    return float(np.median(np.abs(detail))) / 0.6745


def universal_threshold(sigma: float, n: int) -> float:
    """sigma * sqrt(2 ln n) with n the full signal length."""
    return sigma * sqrt(2.0 * log(n)) if n > 1 else 0.0


def sure_threshold(detail: np.ndarray, sigma: float) -> float:
    """Stein-unbiased-risk threshold for one detail level.

    Minimizes the SURE risk of soft thresholding on the sigma-normalized
    coefficients, then rescales by sigma.
    """
    if sigma <= 0:
        return 0.0
    x = np.abs(detail / sigma)
    n = len(x)
    sx2 = np.sort(x) ** 2
    cum = np.cumsum(sx2)
    i = np.arange(1, n + 1)
    risk = (n - 2 * i + cum + (n - i) * sx2) / n
    return sigma * float(np.sqrt(sx2[np.argmin(risk)]))


def soft_threshold(x: np.ndarray, t: float) -> np.ndarray:
    return np.sign(x) * np.maximum(np.abs(x) - t, 0.0)
