import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bjlab import oracles
from bjlab.errors import GridError, InvalidParameterError
from bjlab.signals import AtomSpec, Signal, gaussian, tf_shift
from bjlab.transforms import (
    MOYAL_KAPPA,
    ambiguity,
    ambiguity_axes,
    calibrate_moyal_kappa,
    cross_wigner,
    dft,
    idft,
    signed_index,
    spectrogram,
    stft,
    symplectic_2d,
    wigner,
)


def rsig(rng, n):
    return Signal(rng.standard_normal(n) + 1j * rng.standard_normal(n))


def impulse(n, at):
    x = np.zeros(n, complex)
    x[at] = 1
    return Signal(x)


class TestDFT:
    def test_impulse_and_ones(self):
        assert np.allclose(dft(impulse(8, 0).samples), np.ones(8))
        expected = np.zeros(8)
        expected[0] = 8
        assert np.allclose(dft(np.ones(8)), expected)

    @given(st.integers(1, 64), st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_round_trip_and_parseval(self, n, seed):
        rng = np.random.default_rng(seed)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        assert np.max(np.abs(idft(dft(v)) - v)) <= 1e-12 * max(1, np.max(np.abs(v)))
        lhs = np.sum(np.abs(dft(v)) ** 2)
        assert lhs == pytest.approx(n * np.sum(np.abs(v) ** 2), rel=1e-12)

    def test_matches_definition(self):
        v = np.random.default_rng(0).standard_normal(12)
        j = np.arange(12)
        direct = np.array([np.sum(v * np.exp(-2j * np.pi * j * k / 12)) for k in range(12)])
        assert np.allclose(dft(v), direct, atol=1e-12)

    def test_empty(self):
        with pytest.raises(InvalidParameterError):
            dft([])


class TestSTFT:
    def test_impulse(self):
        d = impulse(8, 0)
        v = stft(d, d).values
        assert np.allclose(v[0], 1)
        assert np.allclose(v[1:], 0)

    def test_shape_is_ceil_n_over_hop(self):
        rng = np.random.default_rng(1)
        v = stft(rsig(rng, 20), rsig(rng, 4), hop=3, nfft=8)
        assert v.values.shape == (7, 8)

    def test_global_phase_invariance(self):
        rng = np.random.default_rng(2)
        f, g = rsig(rng, 16), rsig(rng, 6)
        a = np.abs(stft(f, g).values)
        b = np.abs(stft(f.with_samples(np.exp(0.7j) * f.samples), g).values)
        assert np.allclose(a, b, atol=1e-12)

    @pytest.mark.parametrize("hop,nfft", [(1, 16), (2, 16), (3, 8)])
    def test_direct_sum(self, hop, nfft):
        rng = np.random.default_rng(hop)
        f, g = rsig(rng, 16), rsig(rng, 6)
        assert np.allclose(stft(f, g, hop, nfft).values, oracles.stft_direct(f, g, hop, nfft), atol=1e-10)

    def test_fundamental_identity(self):
        # |V_g f(x, k)| = (1/N) |V_ghat fhat(k, -x)| for the circular STFT; with f
        # vanishing on [0, L) the zero-extended STFT coincides with it.
        rng = np.random.default_rng(3)
        n, width = 32, 8
        x = np.zeros(n, complex)
        x[width:] = rng.standard_normal(n - width) + 1j * rng.standard_normal(n - width)
        g = rng.standard_normal(width) + 1j * rng.standard_normal(width)
        lhs = np.abs(stft(Signal(x), Signal(g)).values)

        fh, gh = dft(x), dft(np.r_[g, np.zeros(n - width)])
        eta = np.arange(n)
        rhs = np.empty((n, n))
        for k in range(n):
            for t in range(n):
                rhs[t, k] = abs(np.sum(fh * np.conj(gh[(eta - k) % n]) * np.exp(-2j * np.pi * eta * (-t) / n))) / n
        assert np.max(np.abs(lhs - rhs)) <= 1e-10

    def test_errors(self):
        f = rsig(np.random.default_rng(4), 8)
        with pytest.raises(InvalidParameterError):
            stft(f, f, hop=0)
        with pytest.raises(InvalidParameterError):
            stft(f, f, nfft=4)


class TestSpectrogram:
    def test_nonnegative_and_zero(self):
        f = rsig(np.random.default_rng(5), 32)
        assert np.all(spectrogram(f).values >= 0)
        assert np.all(spectrogram(Signal(np.zeros(16)), f.with_samples(f.samples[:8])).values == 0)

    def test_atom_argmax(self):
        f = gaussian(128, AtomSpec(50, 0.2, 1.0, 6))
        window = gaussian(34, AtomSpec(17, 0.0, 1.0, 6))
        d = spectrogram(f, window)
        t, k = np.unravel_index(np.argmax(d.values), d.values.shape)
        assert abs(t - 50) <= 1
        assert abs(k * d.freq_step - 0.2) <= d.freq_step

    def test_default_window_is_signal(self):
        f = gaussian(64, AtomSpec(20, 0.1, 1.0, 4))
        assert np.array_equal(spectrogram(f).values, spectrogram(f, f).values)
        # with g = f the peak sits at zero lag and zero frequency
        t, k = np.unravel_index(np.argmax(spectrogram(f).values), (64, 64))
        assert (t, k) == (32, 0)


class TestWigner:
    def test_impulse(self):
        w = cross_wigner(impulse(16, 5), impulse(16, 5)).values
        assert np.allclose(w[5], 2)
        assert np.allclose(np.delete(w, 5, axis=0), 0)

    def test_gaussian_closed_form(self):
        n, width = 256, 8.0
        w = wigner(gaussian(n, AtomSpec(n / 2, 0.0, 1.0, width))).values
        x = np.arange(n) - n / 2
        k = np.arange(n)
        # bins above N/2 alias to negative frequencies (period 1/2)
        omega = np.where(k < n // 2, k, k - n) / (2 * n)
        closed = math.sqrt(2) * width * np.exp(-2 * np.pi * (x[:, None] / width) ** 2) * np.exp(
            -2 * np.pi * (width * omega[None, :]) ** 2
        )
        assert np.max(np.abs(w - closed)) / np.max(closed) <= 1e-3

    @pytest.mark.parametrize("n", [8, 12, 16])
    def test_direct_sum(self, n):
        rng = np.random.default_rng(n)
        f, g = rsig(rng, n), rsig(rng, n)
        assert np.max(np.abs(cross_wigner(f, g).values - oracles.cross_wigner_direct(f, g))) <= 1e-10

    def test_conjugate_symmetry(self):
        rng = np.random.default_rng(6)
        f, g = rsig(rng, 32), rsig(rng, 32)
        assert np.max(np.abs(cross_wigner(g, f).values - np.conj(cross_wigner(f, g).values))) <= 1e-12

    def test_bilinearity(self):
        rng = np.random.default_rng(7)
        f1, f2 = rsig(rng, 32), rsig(rng, 32)
        total = cross_wigner(Signal(f1.samples + f2.samples), Signal(f1.samples + f2.samples)).values
        parts = wigner(f1).values + wigner(f2).values + 2 * cross_wigner(f1, f2).values.real
        assert np.max(np.abs(total - parts)) <= 1e-10

    def test_real(self):
        d = wigner(rsig(np.random.default_rng(8), 64))
        assert np.isrealobj(d.values)
        assert d.meta["imag_residual"] <= 1e-10

    def test_covariance(self):
        n = 64
        f = gaussian(n, AtomSpec(24, 0.1, 1.0, 4))
        shifted = wigner(tf_shift(f, 10, 0.125)).values
        base = wigner(f).values
        # 0.125 cycles/sample is 16 bins of 1/(2N); frequency is periodic
        moved = np.roll(np.roll(base, 10, axis=0), 16, axis=1)
        assert np.max(np.abs(shifted[12:-12] - moved[12:-12])) <= 1e-8

    def test_errors(self):
        with pytest.raises(GridError):
            cross_wigner(Signal(np.ones(4)), Signal(np.ones(6)))


class TestAmbiguity:
    def test_axes(self):
        assert list(signed_index(6)) == [0, 1, 2, -3, -2, -1]
        delays, dopplers = ambiguity_axes(6)
        assert list(delays) == [0, 2, 4, -6, -4, -2]
        assert np.allclose(dopplers, np.array([0, 1, 2, -3, -2, -1]) / 6)

    def test_origin_is_energy(self):
        f = rsig(np.random.default_rng(9), 32)
        a = ambiguity(f)
        w = wigner(f).values
        # sum of W over the grid is 2N times the energy; the TF weight 1/(2N) cancels it
        assert np.sum(w) == pytest.approx(2 * 32 * f.energy(), rel=1e-12)
        assert a.values[0, 0] == pytest.approx(np.sum(w) * a.metadata()["origin_normalization"], rel=1e-12)

    def test_impulse_constant_along_doppler(self):
        a = ambiguity(impulse(16, 3)).values
        assert np.allclose(np.abs(a[0]), 1)

    @pytest.mark.parametrize("n", [8, 12, 16])
    def test_direct_sum(self, n):
        rng = np.random.default_rng(100 + n)
        f, g = rsig(rng, n), rsig(rng, n)
        assert np.max(np.abs(ambiguity(f, g).values - oracles.ambiguity_direct(f, g))) <= 1e-10

    def test_modulus_invariant_under_shift(self):
        f = gaussian(128, AtomSpec(40, 0.1, 1.0, 4))
        a = np.abs(ambiguity(f).values)
        b = np.abs(ambiguity(tf_shift(f, 30, 0.2)).values)
        assert np.max(np.abs(a - b)) <= 1e-8


class TestSymplectic:
    def test_involution(self):
        m = np.random.default_rng(10).standard_normal((64, 64))
        back = symplectic_2d(symplectic_2d(m, "tf"), "ambiguity")
        assert np.max(np.abs(back - m)) <= 1e-12 * np.max(np.abs(m))

    def test_constant_to_impulse(self):
        out = symplectic_2d(np.ones((8, 8)), "tf")
        expected = np.zeros((8, 8))
        expected[0, 0] = 8 / 2
        assert np.allclose(out, expected, atol=1e-12)

    def test_direct_oracle(self):
        m = np.random.default_rng(11).standard_normal((8, 8)) + 1j
        assert np.max(np.abs(symplectic_2d(m, "tf") - oracles.symplectic_direct(m, 1 / 16))) <= 1e-12

    def test_errors(self):
        with pytest.raises(GridError):
            symplectic_2d(np.ones((4, 6)))
        with pytest.raises(InvalidParameterError):
            symplectic_2d(np.ones((4, 4)), "time")


class TestMoyal:
    def test_kappa_reproducible(self):
        assert calibrate_moyal_kappa() == MOYAL_KAPPA

    def test_metadata(self):
        d = wigner(rsig(np.random.default_rng(12), 16))
        meta = d.metadata()
        assert meta["cell_area"] == 1 / 32
        assert meta["freq_step"] == 1 / 32
        assert "inverse: 1/N" in meta["dft_normalization"]
        amb = ambiguity(rsig(np.random.default_rng(13), 16)).metadata()
        assert amb["cell_area"] == 2 / 16
