"""Property-based checks of the invariants the library promises."""
import numpy as np
from hypothesis import assume, given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from bivmoments import (
    AnalyticSeries,
    AnalyticVector,
    CartesianPair,
    EllipseSeries,
    RealSeries,
    SampleGrid,
    analytic_signal,
    cartesian_to_ellipse,
    cartesian_to_rotary,
    ellipse_to_rotary,
    joint_moments,
    moment_track,
    rotary_to_cartesian,
    rotary_to_ellipse,
    synthesize,
    unitary_transform,
)
from oracles import random_unitary

PROFILE = settings(max_examples=40, deadline=None)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
sizes = st.integers(8, 200)
seeds = st.integers(0, 2 ** 32 - 1)


def real_series(n, seed, smooth=False):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n + (20 if smooth else 0))
    if smooth:
        x = np.convolve(x, np.hanning(21), "valid")
    return RealSeries(SampleGrid(0.0, 1.0, n), x)


def ellipse(seed, n=64):
    rng = np.random.default_rng(seed)
    g = SampleGrid(0.0, 1.0, n)
    t = g.times
    rz = int(rng.choice([-1, 1]))
    kappa = rng.uniform(0.2, 3) * np.exp(0.3 * np.sin(t / rng.uniform(5, 30)))
    lam = rz * rng.uniform(0.0, 0.98) * np.ones(n)
    theta = rng.uniform(-1.5, 1.5) + rng.uniform(-0.05, 0.05) * t
    phi = rng.uniform(-3, 3) + rng.uniform(0.1, 1.0) * t
    return EllipseSeries(g, kappa, lam, theta, phi, rz)


@PROFILE
@given(sizes, seeds)
def test_analytic_has_no_negative_frequencies(n, seed):
    x = real_series(n, seed)
    X = np.fft.fft(analytic_signal(x).values)
    neg = np.arange(n) > n // 2  # the even-length Nyquist bin is kept
    assert np.max(np.abs(X[neg]), initial=0) <= 1e-10 * np.max(np.abs(X))
    np.testing.assert_allclose(analytic_signal(x).values.real, x.values, atol=1e-12)


@PROFILE
@given(sizes, seeds, finite, finite)
def test_analytic_is_linear(n, seed, a, b):
    x = real_series(n, seed)
    y = real_series(n, seed + 1)
    lhs = analytic_signal(RealSeries(x.grid, a * x.values + b * y.values)).values
    rhs = a * analytic_signal(x).values + b * analytic_signal(y).values
    assert np.max(np.abs(lhs - rhs)) <= 1e-11 * max(1.0, abs(a) + abs(b)) * np.sqrt(n)


@PROFILE
@given(st.integers(4, 80), seeds)
def test_rotary_cartesian_involution(n, seed):
    rng = np.random.default_rng(seed)
    g = SampleGrid(0.0, 1.0, n)
    c = CartesianPair(*(AnalyticSeries(g, rng.standard_normal(n) + 1j * rng.standard_normal(n))
                        for _ in range(2)))
    back = rotary_to_cartesian(cartesian_to_rotary(c))
    np.testing.assert_allclose(back.xp.values, c.xp.values, atol=1e-12)
    np.testing.assert_allclose(back.yp.values, c.yp.values, atol=1e-12)


@PROFILE
@given(seeds)
def test_ellipse_roundtrip_closure(seed):
    _, c = synthesize(ellipse(seed))
    r = cartesian_to_rotary(c)
    e = rotary_to_ellipse(r)
    again = rotary_to_cartesian(ellipse_to_rotary(e))
    scale = np.max(np.abs(c.xp.values)) + np.max(np.abs(c.yp.values))
    assert np.max(np.abs(again.xp.values - c.xp.values)) <= 1e-10 * scale
    assert np.max(np.abs(again.yp.values - c.yp.values)) <= 1e-10 * scale
    power = np.abs(r.zp.values) ** 2 + np.abs(r.zn.values) ** 2
    assert np.max(np.abs(power - e.kappa ** 2)) <= 1e-12 * np.max(e.kappa ** 2)


@PROFILE
@given(seeds, st.floats(-np.pi, np.pi))
def test_rotation_covariance(seed, alpha):
    e = ellipse(seed)
    _, c = synthesize(e)
    ca, sa = np.cos(alpha), np.sin(alpha)
    rot = CartesianPair(AnalyticSeries(e.grid, ca * c.xp.values - sa * c.yp.values),
                        AnalyticSeries(e.grid, sa * c.xp.values + ca * c.yp.values))
    e0, e1 = cartesian_to_ellipse(c), cartesian_to_ellipse(rot)
    np.testing.assert_allclose(e1.kappa, e0.kappa, rtol=1e-10)
    np.testing.assert_allclose(e1.lam, e0.lam, atol=1e-10)
    # θ is defined modulo π, with the π carried by φ
    np.testing.assert_allclose(np.exp(2j * e1.theta), np.exp(2j * (e0.theta + alpha)), atol=1e-9)


@PROFILE
@given(seeds, st.complex_numbers(min_magnitude=0.1, max_magnitude=10))
def test_joint_moments_unitary_invariance(seed, c):
    rng = np.random.default_rng(seed)
    v = AnalyticVector(tuple(analytic_signal(real_series(128, seed + k, smooth=True))
                             for k in range(2)))
    w = unitary_transform(v, random_unitary(rng), c)
    m0, m1 = joint_moments(v), joint_moments(w)
    np.testing.assert_allclose(m1.frequency.values, m0.frequency.values, rtol=1e-10, atol=1e-12)
    np.testing.assert_allclose(m1.second_central.values, m0.second_central.values,
                               rtol=1e-10, atol=1e-14)
    np.testing.assert_allclose(m1.bandwidth.values, m0.bandwidth.values, rtol=1e-8, atol=1e-10)


@PROFILE
@given(st.integers(64, 256), seeds, st.sampled_from(["phase", "complex"]))
def test_univariate_decomposition_identity(n, seed, method):
    m = moment_track(analytic_signal(real_series(n, seed, smooth=True)), method)
    wbar = m.global_moments.mean_frequency
    ok = ~m.second_central.mask
    lhs = m.second_central.values[ok]
    rhs = (m.frequency.values[ok] - wbar) ** 2 + m.bandwidth.values[ok] ** 2
    assert np.all(np.abs(lhs - rhs) <= 1e-8 * lhs + 1e-300)
    assert np.all(m.second_central.values >= 0)


@PROFILE
@given(seeds)
def test_joint_decomposition_identity(seed):
    v = AnalyticVector(tuple(analytic_signal(real_series(160, seed + k, smooth=True))
                             for k in range(3)))
    m = joint_moments(v)
    wbar = m.global_moments.mean_frequency
    ok = ~m.second_central.mask
    lhs = m.second_central.values[ok]
    rhs = (m.frequency.values[ok] - wbar) ** 2 + m.bandwidth.values[ok] ** 2
    assert np.all(np.abs(lhs - rhs) <= 1e-8 * lhs)


@PROFILE
@given(arrays(np.float64, st.integers(8, 64), elements=finite))
def test_amplitude_scaling_leaves_frequency(x):
    assume(np.ptp(x) > 1e-3)
    g = SampleGrid(0.0, 1.0, x.size)
    xp = analytic_signal(RealSeries(g, x))
    m1 = moment_track(xp)
    m2 = moment_track(AnalyticSeries(g, 3.5 * xp.values))
    ok = ~(m1.frequency.mask | m2.frequency.mask)
    np.testing.assert_allclose(m2.frequency.values[ok], m1.frequency.values[ok],
                               rtol=1e-8, atol=1e-8)
