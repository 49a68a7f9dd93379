"""Global and instantaneous moments of a single analytic signal."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import (
    AMPLITUDE_FLOOR,
    AnalyticSeries,
    RealSeries,
    amplitude_phase,
    power_spectrum,
)

__all__ = [
    "GlobalMoments",
    "MomentTrack",
    "global_moments",
    "global_moments_from_spectrum",
    "log_derivative",
    "inst_frequency",
    "inst_bandwidth",
    "inst_second_central",
    "moment_track",
]

METHODS = ("phase", "complex")


@dataclass(frozen=True)
class GlobalMoments:
    mean_frequency: float
    second_central: float
    energy: float


@dataclass(frozen=True, eq=False)
class MomentTrack:
    """Instantaneous frequency, bandwidth, second central moment and power."""

    frequency: RealSeries
    bandwidth: RealSeries
    second_central: RealSeries
    power: RealSeries
    global_moments: GlobalMoments


def global_moments_from_spectrum(omega, density) -> tuple[float, float, float]:
    """Mean frequency, second central moment and total weight of a density."""
    total = float(np.sum(density))
    if not total > 0:
        raise ValueError("zero-energy signal has no spectral moments")
    mean = float(np.sum(omega * density) / total)
    second = float(np.sum((omega - mean) ** 2 * density) / total)
    return mean, second, total


def global_moments(xp: AnalyticSeries) -> GlobalMoments:
    """Mean frequency and second central moment of the one-sided spectrum.

    Sums run over the nonnegative DFT bins and are normalized by the
    spectral energy; for an analytic input this equals the time-domain energy.
    """
    spec = power_spectrum(xp)
    if not spec.energy > 0:
        raise ValueError("zero-energy signal has no spectral moments")
    mean, second, _ = global_moments_from_spectrum(spec.frequencies, spec.density)
    return GlobalMoments(mean, second, spec.energy)


def log_derivative(xp: AnalyticSeries, method: str = "phase"):
    """``d/dt ln x₊`` as a complex array, plus the mask of floored samples.

    ``method="phase"`` differentiates the log-amplitude and the unwrapped
    phase separately, which is exact for linear phases and exponential
    envelopes. ``method="complex"`` forms ``x₊* dx₊/dt / |x₊|²`` from the
    complex difference of ``x₊``; this is the form the joint moments use and
    the one that commutes with linear maps.
    """
    dt = xp.grid.dt
    if method == "phase":
        amp, phase = amplitude_phase(xp)
        loga = np.log(np.maximum(amp.values, np.finfo(float).tiny))
        w = np.gradient(loga, dt, edge_order=2) + 1j * np.gradient(phase.values, dt, edge_order=2)
        return w, amp.mask
    if method == "complex":
        z = xp.values
        power = np.abs(z) ** 2
        mask = xp.mask | (power <= (AMPLITUDE_FLOOR * np.sqrt(power.max())) ** 2)
        dz = np.gradient(z, dt, edge_order=2)
        w = np.zeros(z.size, dtype=complex)
        ok = ~mask
        w[ok] = np.conj(z[ok]) * dz[ok] / power[ok]
        if mask.any() and ok.any():
            k = np.arange(z.size)
            good = np.flatnonzero(ok)
            w = np.interp(k, good, w.real[good]) + 1j * np.interp(k, good, w.imag[good])
        return w, mask
    raise ValueError(f"method must be one of {METHODS}, got {method!r}")


def inst_frequency(xp: AnalyticSeries, method: str = "phase") -> RealSeries:
    """Instantaneous frequency, the rate of change of the canonical phase."""
    w, mask = log_derivative(xp, method)
    return RealSeries(xp.grid, w.imag, mask)


def inst_bandwidth(xp: AnalyticSeries, method: str = "phase") -> RealSeries:
    """Instantaneous bandwidth ``d ln a/dt``, the fractional rate of amplitude change."""
    w, mask = log_derivative(xp, method)
    return RealSeries(xp.grid, w.real, mask)


def inst_second_central(xp: AnalyticSeries, mean_frequency: float,
                        method: str = "phase") -> RealSeries:
    """Instantaneous second central moment about ``mean_frequency``.

    Evaluates ``|dx₊/dt - i ω̄ x₊|² / |x₊|²`` with ``dx₊/dt`` taken as
    ``x₊ · d ln x₊/dt`` from :func:`log_derivative`, which reduces to
    ``|d ln x₊/dt - i ω̄|²`` and so splits exactly into squared frequency
    deviation plus squared bandwidth.
    """
    w, mask = log_derivative(xp, method)
    # |x w - i ω̄ x|² / |x|² with the |x|² factors cancelled analytically
    out = np.abs(w - 1j * mean_frequency) ** 2
    return RealSeries(xp.grid, out, mask)


def moment_track(xp: AnalyticSeries, method: str = "phase") -> MomentTrack:
    """All instantaneous moments of ``xp`` plus its global moments."""
    gm = global_moments(xp)
    w, mask = log_derivative(xp, method)
    grid = xp.grid
    sigma2 = inst_second_central(xp, gm.mean_frequency, method)
    return MomentTrack(
        frequency=RealSeries(grid, w.imag, mask),
        bandwidth=RealSeries(grid, w.real, mask),
        second_central=sigma2,
        power=RealSeries(grid, np.abs(xp.values) ** 2, mask),
        global_moments=gm,
    )
