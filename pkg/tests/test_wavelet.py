import numpy as np
import pytest

from bivmoments import (
    AnalyticVector,
    EllipseSeries,
    MorseParams,
    RealSeries,
    SampleGrid,
    ScaleGrid,
    amplitude_phase,
    analytic_signal,
    bivariate_frequency_from_ellipse,
    combine_bivariate_ridges,
    cwt,
    inst_frequency,
    joint_inst_frequency,
    morse_peak,
    morse_time_width,
    morse_values,
    morse_wavelet_fd,
    noise_floor,
    ridge_detect,
    ridge_to_analytic,
    synthesize,
)
from oracles import central, smooth_ellipse_params

SCALES = ScaleGrid.from_periods()
PARAMS = MorseParams()

# temporal standard deviation at unit peak frequency, by mpmath quadrature of
# ∫|Ψ'|²/∫|Ψ|² with Ψ(ω) = ω^β exp(-ω^γ) rescaled to peak at 1
FROZEN_WIDTHS = {
    (3.0, 3.0): 2.1941475450051175,
    (2.0, 3.0): 1.8316126468152436,
    (8.0, 3.0): 3.5031359145523527,
}


def grid(n, dt=1.0):
    return SampleGrid(0.0, dt, n)


def real(g, x):
    return RealSeries(g, x)


def ridges_of(x, g, **kw):
    return ridge_detect(cwt(real(g, x), SCALES, PARAMS), **kw)


class TestMorse:
    @pytest.mark.parametrize("beta,gamma", list(FROZEN_WIDTHS))
    def test_unscaled_peak_location(self, beta, gamma):
        w = np.linspace(1e-6, 5, 2_000_001)
        dense = w ** beta * np.exp(-w ** gamma)
        assert abs(w[np.argmax(dense)] - morse_peak(MorseParams(beta, gamma))) < 1e-4

    @pytest.mark.parametrize("beta,gamma", list(FROZEN_WIDTHS))
    def test_scaled_peak_and_value(self, beta, gamma):
        p = MorseParams(beta, gamma)
        w = np.linspace(1e-6, 3, 1_000_001)
        psi = morse_values(p, w, 0.7)
        assert abs(w[np.argmax(psi)] - 0.7) < 1e-4
        assert morse_values(p, [0.7], 0.7)[0] == pytest.approx(2.0, abs=1e-12)

    def test_zero_on_nonpositive_frequencies(self):
        psi = morse_wavelet_fd(PARAMS, 1.0, grid(256))
        omega = np.fft.fftfreq(256)
        assert np.all(psi[omega <= 0] == 0)
        assert np.all(psi[omega > 0] > 0)

    def test_rejects_beyond_nyquist(self):
        with pytest.raises(ValueError):
            morse_wavelet_fd(PARAMS, 4.0, grid(64))
        with pytest.raises(ValueError):
            MorseParams(0.0, 3.0)

    @pytest.mark.parametrize("key", list(FROZEN_WIDTHS))
    def test_time_width(self, key):
        assert morse_time_width(MorseParams(*key)) == pytest.approx(FROZEN_WIDTHS[key], rel=1e-6)
        assert morse_time_width(MorseParams(*key), 0.5) == pytest.approx(
            FROZEN_WIDTHS[key] / 0.5, rel=1e-6)


class TestScaleGrid:
    def test_default(self):
        f = SCALES.peak_frequencies
        assert len(SCALES) == 50
        assert f[0] == pytest.approx(2 * np.pi / 2.6)
        assert f[-1] == pytest.approx(2 * np.pi / 53)

    def test_validation(self):
        with pytest.raises(ValueError):
            ScaleGrid(np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            ScaleGrid(np.array([1.0]))
        with pytest.raises(ValueError):
            ScaleGrid.from_periods(10, 5)


class TestCWT:
    def test_tone_on_grid(self):
        g = grid(2000)
        j = 20
        w0 = SCALES.peak_frequencies[j]
        w = cwt(real(g, np.cos(w0 * g.times)), SCALES, PARAMS)
        mod = np.abs(w.coefficients)
        assert np.argmax(mod[:, 1000]) == j
        c = central(2000)
        err = np.abs(w.coefficients[j, c] - np.exp(1j * w0 * g.times[c]))
        assert np.max(err) < 0.02

    def test_linear(self, rng):
        g = grid(300)
        x, y = rng.standard_normal(300), rng.standard_normal(300)
        a, b = 1.7, -0.4
        lhs = cwt(real(g, a * x + b * y), SCALES).coefficients
        rhs = a * cwt(real(g, x), SCALES).coefficients + b * cwt(real(g, y), SCALES).coefficients
        assert np.max(np.abs(lhs - rhs)) < 1e-12 * np.max(np.abs(lhs))

    def test_zero(self):
        assert not np.any(cwt(real(grid(100), np.zeros(100)), SCALES).coefficients)

    def test_real_is_half_of_analytic(self, rng):
        g = grid(400)
        x = real(g, rng.standard_normal(400))
        xp = analytic_signal(x).values
        w = cwt(x, SCALES).coefficients
        X = np.fft.fft(xp)
        for j, f in enumerate(SCALES.peak_frequencies):
            half = np.fft.ifft(X * morse_wavelet_fd(PARAMS, f, g)) / 2
            assert np.max(np.abs(w[j] - half)) < 1e-10

    def test_coi(self):
        w = cwt(real(grid(200), np.zeros(200)), SCALES)
        np.testing.assert_allclose(w.coi * SCALES.peak_frequencies,
                                   np.sqrt(2) * FROZEN_WIDTHS[(3.0, 3.0)], rtol=1e-6)


class TestRidges:
    def test_single_tone(self):
        # whole number of cycles, so the circular transform has no edges
        g = grid(2000)
        w0 = 2 * np.pi / 20
        rs = ridges_of(np.cos(w0 * g.times), g)
        assert len(rs) == 1
        r = rs[0]
        assert len(r) >= 0.95 * 2000
        assert np.std(r.scale_index) < 0.1
        assert np.mean(r.inst_frequency) == pytest.approx(w0, rel=0.01)

    def test_two_tones(self):
        g = grid(2000)
        f = SCALES.peak_frequencies
        x = np.cos(f[10] * g.times) + np.cos(f[26] * g.times)
        rs = ridges_of(x, g)
        assert len(rs) == 2
        centers = sorted(np.mean(r.scale_index) for r in rs)
        np.testing.assert_allclose(centers, [10, 26], atol=0.3)

    def test_noise_smoke(self):
        g = grid(1500)
        floor = noise_floor(SCALES, PARAMS, g)
        clean = 0
        for seed in range(20):
            x = np.random.default_rng(seed).standard_normal(1500)
            w = cwt(real(g, x), SCALES, PARAMS)
            if not ridge_detect(w, min_length=106, min_amplitude=2 * floor):
                clean += 1
        assert clean >= 18

    def test_noise_floor_matches_transform(self):
        g = grid(4096)
        x = np.random.default_rng(7).standard_normal(4096)
        w = cwt(real(g, x), SCALES, PARAMS)
        rms = np.sqrt(np.mean(np.abs(w.coefficients) ** 2, axis=1))
        floor = noise_floor(SCALES, PARAMS, g)
        np.testing.assert_allclose(rms[10:40], floor[10:40], rtol=0.15)

    def test_empty(self):
        assert ridges_of(np.zeros(300), grid(300)) == []

    def test_trim_coi(self):
        g = grid(2000)
        w = cwt(real(g, np.cos(2 * np.pi / 20 * g.times)), SCALES, PARAMS, pad="mirror")
        r = ridge_detect(w, trim_coi=True)[0]
        half = np.interp(r.scale_index[0], np.arange(len(SCALES)), w.coi)
        assert r.start >= half - 1


class TestRidgeToAnalytic:
    def test_tone(self):
        g = grid(2000)
        w0 = 2 * np.pi / 20
        r = ridges_of(np.cos(w0 * g.times), g)[0]
        xp = ridge_to_analytic(r, g)
        c = central(2000)
        amp, ph = amplitude_phase(xp)
        assert np.max(np.abs(amp.values[c] - 1)) < 0.02
        slope = np.polyfit(g.times[c], ph.values[c], 1)[0]
        assert slope == pytest.approx(w0, rel=0.01)
        # ridge frequency consistency
        om = inst_frequency(xp).values[c]
        ridge_f = np.zeros(2000)
        ridge_f[r.start:r.stop] = r.inst_frequency
        assert np.max(np.abs(om / ridge_f[c] - 1)) < 0.02

    def test_zero_outside_support(self):
        g = grid(1000)
        t = g.times
        x = np.where((t > 300) & (t < 700), np.cos(2 * np.pi * t / 20), 0.0)
        r = max(ridges_of(x, g), key=len)
        xp = ridge_to_analytic(r, g)
        outside = np.ones(1000, bool)
        outside[r.start:r.stop] = False
        assert np.all(xp.values[outside] == 0)
        assert np.all(xp.mask == outside)

    def test_am_tone(self):
        n, period = 2000, 20.0
        g = grid(n)
        t = g.times
        env = 1 + 0.5 * np.sin(2 * np.pi * t / (10 * period))
        rs = ridges_of(env * np.cos(2 * np.pi * t / period), g)
        xp = ridge_to_analytic(max(rs, key=len), g)
        c = central(n)
        assert np.max(np.abs(np.abs(xp.values[c]) / env[c] - 1)) < 0.05


class TestCombine:
    def test_circle(self):
        g = grid(2000)
        w0 = 2 * np.pi / 20
        rx = ridges_of(np.cos(w0 * g.times), g)
        ry = ridges_of(np.sin(w0 * g.times), g)
        _, e = combine_bivariate_ridges(rx, ry, g)
        c = central(2000)
        assert e.rz == 1
        assert np.max(np.abs(e.lam[c])) < 0.05
        assert "unpaired" not in e.flags

    def test_linear_fallback(self):
        g = grid(2000)
        rx = ridges_of(np.cos(2 * np.pi / 20 * g.times), g)
        ry = ridges_of(np.zeros(2000), g)
        with pytest.warns(RuntimeWarning, match="single-component"):
            pair, e = combine_bivariate_ridges(rx, ry, g)
        assert e.flags["unpaired"]
        c = central(2000)
        np.testing.assert_allclose(np.abs(e.lam[c]), 1.0, atol=1e-12)
        assert not np.any(pair.yp.values)

    def test_nothing(self):
        pair, e = combine_bivariate_ridges([], [], grid(100))
        assert e is None and pair.xp.mask.all()

    def test_modulated_ellipse(self):
        n, period = 2000, 20.0
        g = grid(n)
        e = EllipseSeries(g, *smooth_ellipse_params(g.times, period))
        (x, y), _ = synthesize(e)
        rx = ridges_of(x.values, g)
        ry = ridges_of(y.values, g)
        pair, est = combine_bivariate_ridges(rx, ry, g)
        c = central(n)
        assert np.max(np.abs(est.kappa[c] / e.kappa[c] - 1)) < 0.05
        wz = joint_inst_frequency(AnalyticVector.from_pair(pair)).values
        truth = bivariate_frequency_from_ellipse(e).values
        assert np.max(np.abs(wz[c] / truth[c] - 1)) < 0.05


def test_shift_covariance():
    n, m = 2000, 137
    g = grid(n)
    t = g.times
    x = np.exp(-((t - 900) / 250) ** 2) * np.cos(2 * np.pi * t / 18)
    # the floor keeps the ridge off the burst's far tails
    a = max(ridges_of(x, g, min_amplitude=0.01), key=len)
    b = max(ridges_of(np.roll(x, m), g, min_amplitude=0.01), key=len)
    assert b.start == a.start + m and len(b) == len(a)
    np.testing.assert_allclose(b.values, a.values, atol=1e-10)
    np.testing.assert_allclose(b.scale_index, a.scale_index, atol=1e-10)
