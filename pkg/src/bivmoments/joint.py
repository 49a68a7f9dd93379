"""Joint instantaneous moments of a vector of analytic signals.

The joint frequency, second central moment and bandwidth use a single linear
derivative stencil on every component, which makes them exactly invariant
(to round-off) under any scaled unitary map ``c U x₊``. For ``N = 2`` the
same quantities have closed forms in the ellipse parameters; those are given
here together with the split of the bandwidth into amplitude, deformation and
precession parts.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ellipse import CartesianPair, EllipseSeries, RotaryPair
from .moments import GlobalMoments, global_moments_from_spectrum
from .spectral import (
    AMPLITUDE_FLOOR,
    AnalyticSeries,
    RealSeries,
    SampleGrid,
    Spectrum,
    nonnegative_frequencies,
)

__all__ = [
    "AnalyticVector",
    "JointMoments",
    "BandwidthDecomposition",
    "joint_spectrum",
    "joint_global_moments",
    "joint_inst_frequency",
    "joint_second_central",
    "joint_inst_bandwidth",
    "joint_moments",
    "summation_forms",
    "bivariate_frequency_from_ellipse",
    "bandwidth_decomposition",
    "deformation_equivalent_forms",
    "unitary_transform",
]

#: Deformation bandwidth is masked where |λ| exceeds 1 minus this.
LINEARITY_FLOOR = 1e-9


@dataclass(frozen=True, eq=False)
class AnalyticVector:
    """``N`` analytic series on a shared grid, the vector ``x₊(t)``."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("an analytic vector needs at least one component")
        for c in comps[1:]:
            if c.grid != comps[0].grid:
                raise ValueError("all components must share one grid")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_pair(cls, pair) -> "AnalyticVector":
        if isinstance(pair, CartesianPair):
            return cls((pair.xp, pair.yp))
        if isinstance(pair, RotaryPair):
            return cls((pair.zp, pair.zn))
        raise TypeError(f"expected a CartesianPair or RotaryPair, got {type(pair).__name__}")

    @classmethod
    def from_array(cls, grid: SampleGrid, values) -> "AnalyticVector":
        values = np.atleast_2d(values)
        return cls(tuple(AnalyticSeries(grid, v) for v in values))

    @property
    def grid(self) -> SampleGrid:
        return self.components[0].grid

    @property
    def values(self) -> np.ndarray:
        """``(N, n)`` complex array."""
        return np.stack([c.values for c in self.components])

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.grid.n, bool)
        for c in self.components:
            m |= c.mask
        return m

    def __len__(self):
        return len(self.components)


@dataclass(frozen=True, eq=False)
class BandwidthDecomposition:
    """Amplitude, deformation and precession bandwidths (signed)."""

    amplitude_bw: RealSeries
    deformation_bw: RealSeries
    precession_bw: RealSeries

    def total(self) -> np.ndarray:
        """``√(υ_κ² + υ_λ² + υ_θ²)``."""
        return np.sqrt(self.amplitude_bw.values ** 2 + self.deformation_bw.values ** 2
                       + self.precession_bw.values ** 2)


@dataclass(frozen=True, eq=False)
class JointMoments:
    frequency: RealSeries
    bandwidth: RealSeries
    second_central: RealSeries
    global_moments: GlobalMoments
    joint_spectrum: Spectrum
    diagnostics: dict = field(default_factory=dict)


def _power_and_mask(v: AnalyticVector):
    x = v.values
    power = np.sum(np.abs(x) ** 2, axis=0)
    peak = power.max()
    mask = v.mask | (power <= (AMPLITUDE_FLOOR ** 2) * peak)
    if peak == 0:
        mask[:] = True
    return x, power, mask


def _derivative(x, dt):
    return np.gradient(x, dt, axis=-1, edge_order=2)


def _safe(power, mask):
    return np.where(mask, 1.0, power)


def joint_spectrum(v: AnalyticVector) -> Spectrum:
    """Normalized average spectrum ``‖X₊(ω)‖² / ℰ`` on the nonnegative bins.

    ``X₊`` approximates the continuous transform as ``dt · DFT``, so the
    density sums to one under ``Σ S dω / 2π``.
    """
    grid = v.grid
    idx, omega = nonnegative_frequencies(grid)
    coeffs = np.fft.fft(v.values, axis=-1)[:, idx] * grid.dt
    total = np.sum(np.abs(coeffs) ** 2, axis=0)
    dw = 2 * np.pi / (grid.n * grid.dt)
    energy = float(np.sum(total) * dw / (2 * np.pi))
    if not energy > 0:
        raise ValueError("zero-energy vector has no joint spectrum")
    return Spectrum(omega, total / energy, energy)


def joint_global_moments(v: AnalyticVector) -> GlobalMoments:
    """Mean frequency and second central moment of :func:`joint_spectrum`."""
    spec = joint_spectrum(v)
    mean, second, _ = global_moments_from_spectrum(spec.frequencies, spec.density)
    return GlobalMoments(mean, second, spec.energy)


def joint_inst_frequency(v: AnalyticVector) -> RealSeries:
    """``Im{x₊ᴴ dx₊/dt} / ‖x₊‖²``, the power-weighted mean component frequency."""
    x, power, mask = _power_and_mask(v)
    dx = _derivative(x, v.grid.dt)
    num = np.sum(np.conj(x) * dx, axis=0).imag
    return RealSeries(v.grid, np.where(mask, 0.0, num / _safe(power, mask)), mask)


def _deviation(v, frequency):
    x, power, mask = _power_and_mask(v)
    dx = _derivative(x, v.grid.dt)
    dev = np.sum(np.abs(dx - 1j * frequency * x) ** 2, axis=0)
    return np.where(mask, 0.0, dev / _safe(power, mask)), mask


def joint_second_central(v: AnalyticVector, mean_frequency: float) -> RealSeries:
    """``‖dx₊/dt - i ω̄ x₊‖² / ‖x₊‖²``; nonnegative by construction."""
    out, mask = _deviation(v, mean_frequency)
    return RealSeries(v.grid, out, mask)


def joint_inst_bandwidth(v: AnalyticVector) -> RealSeries:
    """``‖dx₊/dt - i ω(t) x₊‖ / ‖x₊‖``: departure from rotation at one
    time-varying frequency."""
    omega = joint_inst_frequency(v).values
    out, mask = _deviation(v, omega)
    return RealSeries(v.grid, np.sqrt(out), mask)


def joint_moments(v: AnalyticVector) -> JointMoments:
    """All joint moments of ``v``.

    ``diagnostics["bandwidth_deficit"]`` is the largest amount by which
    ``σ² - (ω - ω̄)²`` fell below zero through round-off (it is clamped at zero
    when the bandwidth is rebuilt from that difference).
    """
    spec = joint_spectrum(v)
    mean, second, _ = global_moments_from_spectrum(spec.frequencies, spec.density)
    gm = GlobalMoments(mean, second, spec.energy)
    omega = joint_inst_frequency(v)
    sigma2 = joint_second_central(v, mean)
    ups = joint_inst_bandwidth(v)
    residual = sigma2.values - (omega.values - mean) ** 2
    deficit = float(max(0.0, -residual.min()))
    return JointMoments(
        frequency=omega,
        bandwidth=ups,
        second_central=sigma2,
        global_moments=gm,
        joint_spectrum=spec,
        diagnostics={"bandwidth_deficit": deficit},
    )


def summation_forms(v: AnalyticVector, mean_frequency: float):
    """Second central moment and squared bandwidth as power-weighted sums.

    Each component contributes ``a_n² {υ_n² + (ω_n - ref)²}`` with its own
    frequency and bandwidth taken from the same complex-difference stencil,
    where ``ref`` is ``mean_frequency`` for the second central moment and the
    joint frequency for the bandwidth. Returns ``(sigma2, upsilon2)`` arrays.
    """
    x, power, mask = _power_and_mask(v)
    dx = _derivative(x, v.grid.dt)
    a2 = np.abs(x) ** 2
    ok = a2 > 0
    w = np.divide(np.conj(x) * dx, a2, out=np.zeros_like(x), where=ok)
    om, up = w.imag, w.real
    omega = np.sum(a2 * om, axis=0) / _safe(power, mask)
    sigma2 = np.sum(a2 * (up ** 2 + (om - mean_frequency) ** 2), axis=0) / _safe(power, mask)
    ups2 = np.sum(a2 * (up ** 2 + (om - omega) ** 2), axis=0) / _safe(power, mask)
    return np.where(mask, 0.0, sigma2), np.where(mask, 0.0, ups2)


def bivariate_frequency_from_ellipse(e: EllipseSeries) -> RealSeries:
    """``ω_z = ω_φ + r_z √(1-λ²) ω_θ``."""
    root = np.sqrt(np.clip(1 - e.lam ** 2, 0.0, None))
    return RealSeries(e.grid, e.omega_phi + e.rz * root * e.omega_theta, e.mask)


def bandwidth_decomposition(e: EllipseSeries) -> BandwidthDecomposition:
    """Split the bivariate bandwidth into its three ellipse terms.

    amplitude ``d ln κ/dt``, deformation ``(dλ/dt) / (2√(1-λ²))`` and
    precession ``λ ω_θ``. The deformation term is masked where
    ``|λ| ≥ 1 - LINEARITY_FLOOR``.
    """
    g = e.grid
    logk = np.log(np.where(e.kappa > 0, e.kappa, np.finfo(float).tiny))
    amp = np.gradient(logk, g.dt, edge_order=2)
    dlam = np.gradient(e.lam, g.dt, edge_order=2)
    singular = np.abs(e.lam) >= 1 - LINEARITY_FLOOR
    root = np.sqrt(np.clip(1 - e.lam ** 2, 0.0, None))
    deform = np.where(singular, 0.0, 0.5 * dlam / np.where(singular, 1.0, root))
    prec = e.lam * e.omega_theta
    return BandwidthDecomposition(
        RealSeries(g, amp, e.mask),
        RealSeries(g, deform, e.mask | singular),
        RealSeries(g, prec, e.mask),
    )


def deformation_equivalent_forms(e: EllipseSeries):
    """Three expressions for ``|υ_λ|``, each differentiating its own quantity.

    form_a: ``|dλ/dt| / (2√(1-λ²))``;
    form_b: ``|d√(1-λ²)/dt| / (2|λ|)``;
    form_c: ``|ab/(a²+b²) · d ln|b/a|/dt|``.
    Each is masked where its own denominator vanishes.
    """
    g = e.grid
    dt = g.dt
    root = np.sqrt(np.clip(1 - e.lam ** 2, 0.0, None))
    lam_abs = np.abs(e.lam)
    bad_a = root <= LINEARITY_FLOOR
    bad_b = lam_abs <= LINEARITY_FLOOR
    a, b = e.a, e.b
    bad_c = (np.abs(a * b) <= LINEARITY_FLOOR * np.max(e.kappa) ** 2)

    fa = 0.5 * np.abs(np.gradient(e.lam, dt, edge_order=2)) / np.where(bad_a, 1.0, root)
    fb = 0.5 * np.abs(np.gradient(root, dt, edge_order=2)) / np.where(bad_b, 1.0, lam_abs)
    ratio = np.abs(np.divide(b, a, out=np.ones_like(a), where=a > 0))
    logratio = np.log(np.where(ratio > 0, ratio, 1.0))
    fc = np.abs(a * b / np.where(e.kappa > 0, 2 * e.kappa ** 2, 1.0)
                * np.gradient(logratio, dt, edge_order=2))
    return (RealSeries(g, np.where(bad_a, 0.0, fa), e.mask | bad_a),
            RealSeries(g, np.where(bad_b, 0.0, fb), e.mask | bad_b),
            RealSeries(g, np.where(bad_c, 0.0, fc), e.mask | bad_c))


def unitary_transform(v: AnalyticVector, U, c: complex = 1.0) -> AnalyticVector:
    """Apply the scaled unitary map ``y₊ = c U x₊``."""
    U = np.asarray(U, dtype=complex)
    n = len(v)
    if U.shape != (n, n):
        raise ValueError(f"U must be {n}x{n}, got {U.shape}")
    if np.max(np.abs(U.conj().T @ U - np.eye(n))) > 1e-12:
        raise ValueError("U is not unitary")
    if c == 0:
        raise ValueError("scale factor must be nonzero")
    y = c * (U @ v.values)
    mask = v.mask
    return AnalyticVector(tuple(AnalyticSeries(v.grid, row, mask) for row in y))
