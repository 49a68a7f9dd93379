"""Uniformly sampled series, the discrete analytic operator and shared numerics.

Frequencies are in radians per time unit throughout the library. The command
line converts to cycles per time unit at its boundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "AMPLITUDE_FLOOR",
    "SampleGrid",
    "RealSeries",
    "AnalyticSeries",
    "Spectrum",
    "analytic_signal",
    "amplitude_phase",
    "derivative",
    "complex_derivative",
    "power_spectrum",
    "nonnegative_frequencies",
]

#: Samples with modulus below this fraction of the series maximum are masked.
AMPLITUDE_FLOOR = 1e-12

PAD_MODES = ("none", "zero", "mirror")


@dataclass(frozen=True)
class SampleGrid:
    """Uniform time grid ``t0 + k * dt`` for ``k = 0 .. n - 1``."""

    t0: float
    dt: float
    n: int

    def __post_init__(self):
        if not np.isfinite(self.dt) or self.dt <= 0:
            raise ValueError(f"dt must be positive and finite, got {self.dt}")
        if int(self.n) != self.n or self.n < 4:
            raise ValueError(f"a grid needs at least 4 samples, got n={self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "dt", float(self.dt))

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    @property
    def duration(self) -> float:
        return self.dt * self.n

    @classmethod
    def from_times(cls, t, rtol=1e-6) -> "SampleGrid":
        """Build a grid from explicit sample times, checking uniformity."""
        t = np.asarray(t, dtype=float)
        if t.ndim != 1 or t.size < 4:
            raise ValueError("need a 1-d array of at least 4 sample times")
        steps = np.diff(t)
        # judge against the median step so one gap cannot shift the reference
        ref = float(np.median(steps))
        if not ref > 0:
            raise ValueError("sample times must increase")
        bad = np.flatnonzero(np.abs(steps - ref) > rtol * ref)
        if bad.size:
            k = int(bad[0]) + 1
            raise ValueError(
                f"non-uniform sampling at index {k} (t={t[k]:.17g}): step "
                f"{steps[k - 1]:.17g} differs from {ref:.17g}"
            )
        dt = (t[-1] - t[0]) / (t.size - 1)
        return cls(t0=float(t[0]), dt=float(dt), n=t.size)


def _check_mask(mask, n):
    if mask is None:
        return np.zeros(n, dtype=bool)
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != (n,):
        raise ValueError(f"mask shape {mask.shape} does not match n={n}")
    return mask


@dataclass(frozen=True, eq=False)
class RealSeries:
    """Real-valued samples on a :class:`SampleGrid`.

    ``mask`` flags samples whose values were filled in rather than computed
    (for example where an amplitude vanished).
    """

    grid: SampleGrid
    values: np.ndarray
    mask: np.ndarray = field(default=None)

    def __post_init__(self):
        values = np.asarray(self.values)
        if np.iscomplexobj(values):
            raise TypeError("RealSeries values must be real")
        values = values.astype(float)
        if values.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} values, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("RealSeries values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "mask", _check_mask(self.mask, self.grid.n))

    def __len__(self):
        return self.grid.n

    @property
    def times(self):
        return self.grid.times


@dataclass(frozen=True, eq=False)
class AnalyticSeries:
    """Complex-valued samples on a :class:`SampleGrid`."""

    grid: SampleGrid
    values: np.ndarray
    mask: np.ndarray = field(default=None)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} values, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("AnalyticSeries values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "mask", _check_mask(self.mask, self.grid.n))

    def __len__(self):
        return self.grid.n

    @property
    def times(self):
        return self.grid.times

    @property
    def real(self) -> RealSeries:
        return RealSeries(self.grid, self.values.real, self.mask)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """One-sided spectrum on the nonnegative DFT frequencies.

    For :func:`power_spectrum` the density is energy per frequency bin, so
    ``density.sum() == energy``. Normalized spectra (see
    :func:`bivmoments.joint.joint_spectrum`) instead satisfy
    ``density.sum() * dω / 2π == 1``.
    """

    frequencies: np.ndarray
    density: np.ndarray
    energy: float

    @property
    def resolution(self) -> float:
        return float(self.frequencies[1] - self.frequencies[0])


def nonnegative_frequencies(grid: SampleGrid) -> tuple[np.ndarray, np.ndarray]:
    """Indices and radian frequencies of the DFT bins with ω ≥ 0.

    The Nyquist bin of an even-length grid is counted as nonnegative, which is
    where :func:`analytic_signal` leaves its (undoubled) content.
    """
    n = grid.n
    idx = np.arange(n // 2 + 1)
    return idx, 2 * np.pi * idx / (n * grid.dt)


def _analytic_multiplier(n):
    h = np.zeros(n)
    h[0] = 1.0
    if n % 2 == 0:
        h[1:n // 2] = 2.0
        h[n // 2] = 1.0
    else:
        h[1:(n + 1) // 2] = 2.0
    return h


def _pad(values, mode):
    n = values.size
    if mode == "none":
        return values, 0
    if mode == "zero":
        return np.concatenate([np.zeros(n), values, np.zeros(n)]), n
    if mode == "mirror":
        return np.concatenate([values[::-1], values, values[::-1]]), n
    raise ValueError(f"pad must be one of {PAD_MODES}, got {mode!r}")


def analytic_signal(x: RealSeries, pad: str = "none") -> AnalyticSeries:
    """Analytic part of a real series, ``2 U(ω) X(ω)`` on the DFT grid.

    Positive-frequency bins are doubled, negative ones zeroed, and the DC and
    (even ``n``) Nyquist bins are kept at unit weight so that the real part of
    the result reproduces ``x``. The construction is circular; ``pad`` extends
    the record with zeros or a mirror image on both sides before transforming.
    """
    values = np.asarray(x.values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise ValueError("analytic_signal: input contains non-finite values")
    padded, offset = _pad(values, pad)
    spec = np.fft.fft(padded) * _analytic_multiplier(padded.size)
    out = np.fft.ifft(spec)[offset:offset + values.size]
    if pad != "none":
        # restore the exact real part lost to the crop
        out = values + 1j * out.imag
    return AnalyticSeries(x.grid, out)


def _fill_masked(values, mask):
    if not mask.any():
        return values
    good = np.flatnonzero(~mask)
    if good.size == 0:
        return np.zeros_like(values)
    k = np.arange(values.size)
    return np.interp(k, good, values[good])


def amplitude_phase(xp: AnalyticSeries) -> tuple[RealSeries, RealSeries]:
    """Canonical amplitude and unwrapped phase of an analytic series.

    The phase starts on the principal branch and is unwrapped forward in time.
    Samples whose modulus falls below ``AMPLITUDE_FLOOR`` times the series
    maximum are flagged in the returned masks and filled by linear
    interpolation between their unflagged neighbours.
    """
    z = xp.values
    amp = np.abs(z)
    peak = amp.max()
    mask = xp.mask | (amp <= AMPLITUDE_FLOOR * peak)
    if peak == 0:
        mask[:] = True
    phase = np.angle(z)
    if mask.any():
        good = np.flatnonzero(~mask)
        if good.size:
            unwrapped = np.unwrap(phase[good])
            phase = np.interp(np.arange(z.size), good, unwrapped)
        else:
            phase = np.zeros(z.size)
        amp = _fill_masked(amp, mask)
    else:
        phase = np.unwrap(phase)
    return RealSeries(xp.grid, amp, mask), RealSeries(xp.grid, phase, mask.copy())


def _gradient(values, dt):
    return np.gradient(values, dt, edge_order=2)


def derivative(s: RealSeries) -> RealSeries:
    """Second-order finite-difference derivative.

    Central differences in the interior, one-sided second-order stencils at the
    two endpoints; exact for quadratics.
    """
    return RealSeries(s.grid, _gradient(s.values, s.grid.dt), s.mask)


def complex_derivative(z: AnalyticSeries) -> AnalyticSeries:
    """Same stencil as :func:`derivative`, applied to a complex series.

    Being linear, it commutes with any constant matrix acting on a vector of
    series, which the joint moments rely on.
    """
    return AnalyticSeries(z.grid, _gradient(z.values, z.grid.dt), z.mask)


def power_spectrum(xp: AnalyticSeries) -> Spectrum:
    """Energy per nonnegative-frequency bin, ``|DFT|^2 dt / n``."""
    n, dt = xp.grid.n, xp.grid.dt
    idx, omega = nonnegative_frequencies(xp.grid)
    coeffs = np.fft.fft(xp.values)
    density = np.abs(coeffs[idx]) ** 2 * dt / n
    energy = float(np.sum(np.abs(xp.values) ** 2) * dt)
    return Spectrum(omega, density, energy)
