import math
import wave

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bjlab.errors import (
    ConstellationError,
    ConstellationOutOfBandError,
    InvalidParameterError,
    ShiftOutOfRangeError,
    WavFormatError,
)
from bjlab.signals import (
    FOUR_ATOM_CENTERS,
    AtomSpec,
    Constellation,
    Signal,
    analytic_projection,
    four_atoms,
    gaussian,
    load_wav,
    modulate,
    rotate_constellation,
    signal_to_csv,
    synthesize,
    tf_shift,
    translate,
    write_wav,
)


def impulse(n, at):
    x = np.zeros(n, complex)
    x[at] = 1
    return Signal(x)


def random_signal(rng, n):
    return Signal(rng.standard_normal(n) + 1j * rng.standard_normal(n))


class TestSignal:
    def test_rejects_odd_and_short(self):
        with pytest.raises(InvalidParameterError):
            Signal(np.ones(5))
        with pytest.raises(InvalidParameterError):
            Signal(np.ones(0))

    def test_rejects_nan(self):
        with pytest.raises(InvalidParameterError):
            Signal([1.0, np.nan])

    def test_samples_are_read_only(self):
        s = Signal(np.ones(4))
        with pytest.raises(ValueError):
            s.samples[0] = 2


class TestGaussian:
    def test_peak_is_one(self):
        g = gaussian(64, AtomSpec(32, 0.0, 1.0, 8))
        assert g.samples[32] == pytest.approx(1.0)

    def test_modulation_phase_at_centre(self):
        g = gaussian(128, AtomSpec(20, 0.25, 1.0, 1))
        assert abs(g.samples[20] - 1) < 1e-12

    def test_energy_matches_gaussian_integral(self):
        # sum of exp(-2 pi (t/8)^2) approximates its integral 8 / sqrt(2)
        g = gaussian(64, AtomSpec(32, 0.0, 1.0, 8))
        direct = sum(abs(z) ** 2 for z in g.samples)
        assert direct == pytest.approx(8 / math.sqrt(2), rel=1e-6)

    def test_tail_warning(self):
        assert not gaussian(128, AtomSpec(64, 0.0, 1.0, 4)).meta["tail_warning"]
        assert gaussian(128, AtomSpec(5, 0.0, 1.0, 4)).meta["tail_warning"]

    @pytest.mark.parametrize("bad", [
        dict(time_center=float("nan"), freq_center=0.1),
        dict(time_center=1.0, freq_center=0.5),
        dict(time_center=1.0, freq_center=-0.1),
        dict(time_center=1.0, freq_center=0.1, width=0.0),
        dict(time_center=1.0, freq_center=0.1, amplitude=complex("inf")),
    ])
    def test_invalid_specs(self, bad):
        with pytest.raises(InvalidParameterError):
            AtomSpec(**bad)


class TestShifts:
    def test_translate_identity(self):
        f = random_signal(np.random.default_rng(0), 16)
        assert np.array_equal(translate(f, 0).samples, f.samples)

    def test_translate_impulse(self):
        out = translate(impulse(16, 5), 3)
        assert np.array_equal(out.samples, impulse(16, 8).samples)

    def test_translate_round_trip_masks(self):
        f = random_signal(np.random.default_rng(1), 16)
        back = translate(translate(f, 2), -2).samples
        expected = f.samples.copy()
        expected[-2:] = 0
        assert np.array_equal(back, expected)

    def test_translate_out_of_range(self):
        with pytest.raises(ShiftOutOfRangeError):
            translate(impulse(8, 0), 8)
        with pytest.raises(ShiftOutOfRangeError):
            translate(impulse(8, 0), -9)

    def test_modulate_identity_and_nyquist(self):
        f = Signal(np.ones(8))
        assert np.array_equal(modulate(f, 0.0).samples, f.samples)
        assert np.allclose(modulate(f, 0.5).samples, [1, -1] * 4, atol=1e-12)

    def test_modulate_rejects_nonfinite(self):
        with pytest.raises(InvalidParameterError):
            modulate(Signal(np.ones(4)), float("inf"))

    @given(st.floats(-3, 3, allow_nan=False), st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_modulate_preserves_modulus(self, omega, seed):
        f = random_signal(np.random.default_rng(seed), 32)
        out = modulate(f, omega)
        assert np.allclose(np.abs(out.samples), np.abs(f.samples), rtol=1e-13)
        assert np.linalg.norm(out.samples) == pytest.approx(np.linalg.norm(f.samples), rel=1e-13)

    def test_tf_shift_identity(self):
        f = random_signal(np.random.default_rng(2), 16)
        assert np.array_equal(tf_shift(f, 0, 0.0).samples, f.samples)

    def test_tf_shift_impulse_phase(self):
        out = tf_shift(impulse(16, 0), 5, 0.25)
        assert abs(out.samples[5] - 1j) < 1e-12

    @given(st.integers(-10, 10), st.floats(0, 0.5), st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_tf_shift_order_phase(self, x, omega, seed):
        f = random_signal(np.random.default_rng(seed), 32)
        a = tf_shift(f, x, omega).samples
        b = translate(modulate(f, omega), x).samples
        # translate after modulate picks up exp(-2 pi i x omega) relative to tf_shift
        assert np.allclose(a, np.exp(2j * np.pi * x * omega) * b, atol=1e-12)

    def test_tf_shift_differs_from_reverse_order(self):
        f = random_signal(np.random.default_rng(3), 16)
        a = tf_shift(f, 3, 0.1).samples
        b = translate(modulate(f, 0.1), 3).samples
        assert not np.allclose(a, b)


class TestConstellation:
    def test_rhombus_preset(self):
        c = four_atoms()
        assert c.centers == list(FOUR_ATOM_CENTERS)
        f = synthesize(c)
        expected = sum(gaussian(128, a).samples for a in c.atoms)
        assert np.array_equal(f.samples, expected)

    def test_single_atom_equals_gaussian(self):
        a = AtomSpec(30, 0.2, 1.0, 5)
        assert np.array_equal(synthesize(Constellation((a,), 64)).samples, gaussian(64, a).samples)

    def test_two_identical_atoms_double(self):
        a = AtomSpec(30, 0.2, 1.0, 5)
        two = synthesize(Constellation((a, a), 64)).samples
        assert np.allclose(two, 2 * gaussian(64, a).samples, atol=0)

    def test_linear_in_amplitude(self):
        c1 = Constellation.from_centers(FOUR_ATOM_CENTERS, 128, 4.0, amplitude=1.0)
        c2 = Constellation.from_centers(FOUR_ATOM_CENTERS, 128, 4.0, amplitude=2.0)
        assert np.allclose(synthesize(c2).samples, 2 * synthesize(c1).samples, atol=1e-15)

    def test_empty_and_outside(self):
        with pytest.raises(ConstellationError):
            Constellation((), 16)
        with pytest.raises(ConstellationError):
            Constellation.from_centers([(16, 0.1)], 16)

    def test_rotation_identities(self):
        c = four_atoms()
        assert rotate_constellation(c, 0.0).centers == c.centers
        full = rotate_constellation(c, 2 * math.pi)
        assert np.allclose(full.centers, c.centers, atol=1e-12)

    def test_rhombus_rotated_stays_in_band(self):
        r = rotate_constellation(four_atoms(), math.pi / 6)
        assert len(r.atoms) == 4
        assert all(0 <= a.freq_center < 0.5 and 0 <= a.time_center < 128 for a in r.atoms)
        # oracle: rotate in (x/N, 2w) about the centroid by hand
        cx, cw = 40 / 128, 0.5
        x, w = 20 / 128 - cx, 0.5 - cw
        rx = cx + x * math.cos(math.pi / 6) - w * math.sin(math.pi / 6)
        ry = cw + x * math.sin(math.pi / 6) + w * math.cos(math.pi / 6)
        assert r.centers[0] == pytest.approx((rx * 128, ry / 2), abs=1e-12)

    @given(st.floats(-math.pi, math.pi, allow_nan=False))
    @settings(max_examples=50, deadline=None)
    def test_rotation_inverse(self, angle):
        c = four_atoms()
        back = rotate_constellation(rotate_constellation(c, angle), -angle)
        assert np.allclose(back.centers, c.centers, atol=1e-9)

    def test_rotation_out_of_band(self):
        c = Constellation.from_centers([(10, 0.02), (100, 0.45)], 128)
        with pytest.raises(ConstellationOutOfBandError):
            rotate_constellation(c, math.pi / 2)


class TestAnalytic:
    def test_cosine_to_half_exponential(self):
        j = np.arange(100)
        out = analytic_projection(Signal(np.cos(2 * np.pi * 0.1 * j))).samples
        assert np.max(np.abs(out - 0.5 * np.exp(2j * np.pi * 0.1 * j))) < 1e-10

    def test_analytic_input_unchanged(self):
        rng = np.random.default_rng(4)
        spec = np.zeros(64, complex)
        spec[1:32] = rng.standard_normal(31) + 1j * rng.standard_normal(31)
        f = Signal(np.fft.ifft(spec))
        assert np.allclose(analytic_projection(f).samples, f.samples, atol=1e-14)

    def test_zero(self):
        assert np.all(analytic_projection(Signal(np.zeros(8))).samples == 0)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_idempotent_without_dc_and_nyquist(self, seed):
        # halving bins 0 and N/2 is only idempotent when they are empty
        rng = np.random.default_rng(seed)
        spec = np.fft.fft(rng.standard_normal(64) + 1j * rng.standard_normal(64))
        spec[0] = spec[32] = 0
        f = Signal(np.fft.ifft(spec))
        once = analytic_projection(f).samples
        twice = analytic_projection(analytic_projection(f)).samples
        assert np.max(np.abs(twice - once)) <= 1e-12


def _write_raw_wav(path, frames, channels=1, width=2, rate=8000):
    with wave.open(str(path), "wb") as w:
        w.setnchannels(channels)
        w.setsampwidth(width)
        w.setframerate(rate)
        w.writeframes(np.asarray(frames, dtype=f"<i{width}").tobytes())


class TestWav:
    def test_scaling(self, tmp_path):
        p = tmp_path / "a.wav"
        _write_raw_wav(p, [0, 16384, -16384, 0])
        s = load_wav(p)
        assert np.array_equal(s.samples.real, [0, 0.5, -0.5, 0])
        assert s.sample_period == pytest.approx(1 / 8000)

    def test_stereo_average(self, tmp_path):
        p = tmp_path / "s.wav"
        _write_raw_wav(p, [1000, 3000, -200, 200], channels=2)
        s = load_wav(p)
        assert np.allclose(s.samples.real, [2000 / 32768, 0.0])

    def test_round_trip_tone(self, tmp_path):
        p = tmp_path / "tone.wav"
        x = 0.8 * np.sin(2 * np.pi * 0.05 * np.arange(256))
        write_wav(p, Signal(x), rate=11025)
        s = load_wav(p)
        assert np.max(np.abs(s.samples.real - x)) <= 2.0**-15
        assert s.sample_period == pytest.approx(1 / 11025)

    def test_window(self, tmp_path):
        p = tmp_path / "w.wav"
        _write_raw_wav(p, np.arange(10) * 100)
        s = load_wav(p, start=2, length=4)
        assert np.allclose(s.samples.real * 32768, [200, 300, 400, 500])

    def test_window_out_of_range(self, tmp_path):
        p = tmp_path / "w.wav"
        _write_raw_wav(p, np.arange(10))
        with pytest.raises(WavFormatError):
            load_wav(p, start=8, length=4)
        with pytest.raises(WavFormatError):
            load_wav(p, start=12)

    def test_malformed_and_codec(self, tmp_path):
        bad = tmp_path / "bad.wav"
        bad.write_bytes(b"RIFF\x00\x00\x00\x00JUNK")
        with pytest.raises(WavFormatError):
            load_wav(bad)
        eight = tmp_path / "u8.wav"
        _write_raw_wav(eight, [1, 2, 3, 4], width=1)
        with pytest.raises(WavFormatError, match="sample width"):
            load_wav(eight)


def test_signal_csv():
    text = signal_to_csv(Signal([1 + 2j, -0.5]))
    lines = text.splitlines()
    assert lines[0] == "index,re,im"
    assert complex(*map(float, lines[1].split(",")[1:])) == 1 + 2j
