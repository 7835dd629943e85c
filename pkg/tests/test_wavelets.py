"""Filter-bank identities, periodic DWT reconstruction, undecimated pyramid."""

import numpy as np
import pytest

from itfmap import wavelets
from itfmap.wavelets import get_basis

ALL_BASES = wavelets.available_bases()


class TestFilterBanks:
    def test_expected_inventory(self):
        assert set(ALL_BASES) == {"sym4", "coif5", "db10", "fk14"}

    @pytest.mark.parametrize("name", ALL_BASES)
    def test_quadrature_identities(self, name):
        assert wavelets.perfect_reconstruction_residual(get_basis(name)) < 1e-12

    @pytest.mark.parametrize("name,length", [("sym4", 8), ("coif5", 30), ("db10", 20), ("fk14", 14)])
    def test_lengths(self, name, length):
        assert get_basis(name).length == length

    def test_unknown_basis(self):
        with pytest.raises(KeyError, match="unknown wavelet basis"):
            get_basis("haar99")

    def test_highpass_orthogonal_to_lowpass(self):
        for name in ALL_BASES:
            b = get_basis(name)
            L = b.length
            for k in range(L // 2):
                dot = float(np.dot(b.rec_lo[: L - 2 * k], b.rec_hi[2 * k :]))
                assert abs(dot) < 1e-12


class TestPeriodicDwt:
    @pytest.mark.parametrize("name", ALL_BASES)
    @pytest.mark.parametrize("n", [256, 300, 257, 1000])
    def test_reconstruction_identity(self, name, n):
        rng = np.random.default_rng(17)
        x = rng.normal(size=n)
        basis = get_basis(name)
        back = wavelets.waverec(wavelets.wavedec(x, basis, 4), basis)
        assert back.shape == x.shape
        assert np.max(np.abs(back - x)) < 1e-10

    def test_too_short_rejected(self):
        with pytest.raises(ValueError, match="too short"):
            wavelets.wavedec(np.zeros(7), get_basis("sym4"), 3)

    def test_energy_preserved_even_lengths(self):
        rng = np.random.default_rng(2)
        x = rng.normal(size=512)
        basis = get_basis("db10")
        *parts, _lengths = wavelets.wavedec(x, basis, 4)
        total = sum(float(np.dot(p, p)) for p in parts)
        assert abs(total - float(np.dot(x, x))) < 1e-9


class TestUndecimated:
    def test_level_count_and_lengths(self):
        x = np.zeros(128)
        out = wavelets.modwt(x, get_basis("sym4"), 3)
        assert len(out) == 4
        assert all(len(v) == 128 for v in out)

    def test_energy_preserved_for_interior_support(self):
        rng = np.random.default_rng(0)
        x = np.zeros(256)
        x[40:180] = rng.normal(size=140)
        out = wavelets.modwt(x, get_basis("sym4"), 3)
        total = sum(float(np.dot(v, v)) for v in out)
        assert abs(total / float(np.dot(x, x)) - 1.0) < 1e-12

    def test_shift_invariance_linear(self):
        rng = np.random.default_rng(1)
        x = np.zeros(256)
        x[40:180] = rng.normal(size=140)
        w = wavelets.modwt(x, get_basis("sym4"), 3)
        s = 9
        xs = np.zeros(256)
        xs[s:] = x[:-s]
        ws = wavelets.modwt(xs, get_basis("sym4"), 3)
        for j in range(4):
            assert np.max(np.abs(ws[j][s:200] - w[j][: 200 - s])) < 1e-12

    def test_level_band_accounting(self):
        # at 4 ns (250 MS/s): level 1 = 62.5-125 MHz, level 2 = 31.25-62.5 MHz
        assert wavelets.level_band(1, 4e-9) == pytest.approx((62.5e6, 125e6))
        assert wavelets.level_band(2, 4e-9) == pytest.approx((31.25e6, 62.5e6))
        assert wavelets.levels_in_band(4, 4e-9, (40e6, 80e6)) == [1, 2]
        assert wavelets.levels_in_band(2, 6.25e-9, (40e6, 80e6)) == [1]


class TestThresholds:
    def test_universal_value(self):
        assert wavelets.universal_threshold(2.0, 1000) == pytest.approx(
            2.0 * np.sqrt(2 * np.log(1000))
        )

    def test_sigma_estimate_gaussian(self):
        rng = np.random.default_rng(4)
        d = rng.normal(0, 3.0, 200_000)
        assert wavelets.noise_sigma(d) == pytest.approx(3.0, rel=0.02)

    def test_soft_threshold_shrinks(self):
        x = np.array([-3.0, -0.5, 0.0, 0.5, 3.0])
        np.testing.assert_allclose(wavelets.soft_threshold(x, 1.0), [-2, 0, 0, 0, 2])

    def test_sure_threshold_brute_force_oracle(self):
        # oracle: scan candidate thresholds, evaluate the SURE risk directly
        rng = np.random.default_rng(11)
        d = rng.normal(size=300) * 1.7
        sigma = 1.7
        t_fast = wavelets.sure_threshold(d, sigma)
        x = d / sigma

        def risk(t):
            clipped = np.minimum(np.abs(x), t)
            return len(x) - 2 * np.sum(np.abs(x) <= t) + np.sum(clipped**2)

        cands = np.abs(x)
        best = cands[np.argmin([risk(t) for t in cands])]
        assert t_fast == pytest.approx(sigma * best, abs=1e-12)
