"""Cartesian pairs, rotary pairs and modulated-ellipse parameters.

A bivariate oscillation ``z(t) = x(t) + i y(t)`` can be held in three
equivalent forms: the analytic parts ``(x₊, y₊)`` of its two real components,
the counterclockwise / clockwise rotary pair ``(z₊, z₋)``, or the time-varying
ellipse ``(κ, λ, θ, φ, r_z)``. This module converts between them and gives the
closed-form instantaneous moments of the pairs in ellipse terms.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .spectral import AMPLITUDE_FLOOR, AnalyticSeries, RealSeries, SampleGrid

__all__ = [
    "CartesianPair",
    "RotaryPair",
    "EllipseSeries",
    "EllipseSnapshot",
    "cartesian_to_rotary",
    "rotary_to_cartesian",
    "rotary_to_ellipse",
    "ellipse_to_rotary",
    "cartesian_to_ellipse",
    "synthesize",
    "snapshot",
    "cartesian_params_from_ellipse",
    "cartesian_moments_from_ellipse",
    "rotary_moments_from_ellipse",
]

#: Rotary bandwidth denominators below this are masked.
DENOMINATOR_FLOOR = 1e-10


def _same_grid(a, b):
    if a.grid != b.grid:
        raise ValueError(f"grid mismatch: {a.grid} vs {b.grid}")


def _grad(values, grid):
    return np.gradient(values, grid.dt, edge_order=2)


@dataclass(frozen=True, eq=False)
class CartesianPair:
    """Analytic parts ``x₊ = 2A[x]``, ``y₊ = 2A[y]`` of the two components."""

    xp: AnalyticSeries
    yp: AnalyticSeries

    def __post_init__(self):
        _same_grid(self.xp, self.yp)

    @property
    def grid(self) -> SampleGrid:
        return self.xp.grid

    def signal(self) -> np.ndarray:
        """The complex bivariate signal ``Re{x₊} + i Re{y₊}``."""
        return self.xp.values.real + 1j * self.yp.values.real


@dataclass(frozen=True, eq=False)
class RotaryPair:
    """Counterclockwise ``z₊ = A[z]`` and clockwise ``z₋ = A[z*]`` parts.

    Both are stored as analytic signals; the clockwise motion is ``z₋*``.
    """

    zp: AnalyticSeries
    zn: AnalyticSeries

    def __post_init__(self):
        _same_grid(self.zp, self.zn)

    @property
    def grid(self) -> SampleGrid:
        return self.zp.grid

    def signal(self) -> np.ndarray:
        """The complex bivariate signal ``z₊ + z₋*``."""
        return self.zp.values + np.conj(self.zn.values)


@dataclass(frozen=True, eq=False)
class EllipseSeries:
    """Time-varying ellipse ``z = e^{iθ}(a cos φ + i b sin φ)``.

    ``theta`` and ``phi`` are continuous (unwrapped) so they can be
    differentiated; ``theta`` starts in (-π/2, π/2]. The orientation is
    π-periodic, and :meth:`principal_angles` folds it into that interval with
    the compensating π shifts moved into ``phi``.

    ``flags`` carries estimation warnings: ``rz_tie`` when the rotation sense
    could not be decided, ``rz_crossings`` counting samples whose dominant
    rotary component disagrees with ``rz``.
    """

    grid: SampleGrid
    kappa: np.ndarray
    lam: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    rz: int = 1
    mask: np.ndarray = None
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        n = self.grid.n
        for name in ("kappa", "lam", "theta", "phi"):
            v = np.broadcast_to(np.asarray(getattr(self, name), dtype=float), (n,)).copy()
            if not np.all(np.isfinite(v)):
                raise ValueError(f"{name} must be finite")
            v.flags.writeable = False
            object.__setattr__(self, name, v)
        if self.rz not in (-1, 1):
            raise ValueError(f"rz must be +1 or -1, got {self.rz}")
        if np.any(self.kappa < 0):
            raise ValueError("kappa must be nonnegative")
        if np.any(np.abs(self.lam) > 1 + 1e-12):
            raise ValueError("|lambda| must not exceed 1")
        if np.any(self.lam * self.rz < 0):
            raise ValueError("lambda must be zero or carry the sign of rz")
        object.__setattr__(self, "lam", np.clip(self.lam, -1.0, 1.0))
        mask = np.zeros(n, bool) if self.mask is None else np.asarray(self.mask, bool)
        object.__setattr__(self, "mask", mask)

    @property
    def a(self) -> np.ndarray:
        """Semi-major axis."""
        return self.kappa * np.sqrt(1 + np.abs(self.lam))

    @property
    def b(self) -> np.ndarray:
        """Signed semi-minor axis; its sign is the rotation sense."""
        return self.rz * self.kappa * np.sqrt(1 - np.abs(self.lam))

    @property
    def ecc(self) -> np.ndarray:
        """Eccentricity, provided for convenience only."""
        a = self.a
        ratio = np.divide(self.b, a, out=np.zeros_like(a), where=a > 0)
        return np.sqrt(1 - ratio ** 2)

    @property
    def omega_phi(self) -> np.ndarray:
        """Orbital frequency."""
        return _grad(self.phi, self.grid)

    @property
    def omega_theta(self) -> np.ndarray:
        """Precession rate."""
        return _grad(self.theta, self.grid)

    def principal_angles(self) -> tuple[np.ndarray, np.ndarray]:
        """``theta`` folded into (-π/2, π/2] and the matching ``phi``."""
        k = np.ceil(self.theta / np.pi - 0.5)
        return self.theta - k * np.pi, self.phi - k * np.pi


@dataclass(frozen=True, eq=False)
class EllipseSnapshot:
    center: tuple
    polyline: np.ndarray  # (n_points, 2), closed
    timestamp: float


def cartesian_to_rotary(c: CartesianPair) -> RotaryPair:
    """``z± = (x₊ ± i y₊) / 2``."""
    x, y = c.xp.values, c.yp.values
    mask = c.xp.mask | c.yp.mask
    return RotaryPair(
        AnalyticSeries(c.grid, (x + 1j * y) / 2, mask),
        AnalyticSeries(c.grid, (x - 1j * y) / 2, mask.copy()),
    )


def rotary_to_cartesian(r: RotaryPair) -> CartesianPair:
    """``x₊ = z₊ + z₋``, ``y₊ = -i (z₊ - z₋)``; inverse of :func:`cartesian_to_rotary`."""
    zp, zn = r.zp.values, r.zn.values
    mask = r.zp.mask | r.zn.mask
    return CartesianPair(
        AnalyticSeries(r.grid, zp + zn, mask),
        AnalyticSeries(r.grid, -1j * (zp - zn), mask.copy()),
    )


def _unwrapped_phase(z, weak):
    """Unwrapped phase of ``z``; samples flagged ``weak`` are interpolated."""
    phase = np.angle(z)
    good = np.flatnonzero(~weak)
    if good.size == 0:
        return None
    if good.size == z.size:
        return np.unwrap(phase)
    return np.interp(np.arange(z.size), good, np.unwrap(phase[good]))


def rotary_to_ellipse(r: RotaryPair) -> EllipseSeries:
    """Ellipse parameters from the rotary amplitudes and phases.

    ``a = a₊ + a₋``, ``b = a₊ - a₋``, ``φ = (φ₊ + φ₋)/2``, ``θ = (φ₊ - φ₋)/2``,
    with both phases unwrapped first. The rotation sense is the sign of the
    median of ``a₊ - a₋`` (ties, up to the amplitude floor, resolve to +1 and
    set ``flags["rz_tie"]``).
    Where one rotary amplitude is negligible its phase is undefined; it is
    interpolated from neighbouring samples, or, if the component is
    negligible everywhere, taken equal to the other phase so that ``θ ≡ 0``.
    """
    zp, zn = r.zp.values, r.zn.values
    ap, an = np.abs(zp), np.abs(zn)
    scale = np.max(ap + an)
    if scale == 0:
        raise ValueError("rotary pair is identically zero")
    floor = AMPLITUDE_FLOOR * scale
    weak_p, weak_n = ap <= floor, an <= floor
    mask = r.zp.mask | r.zn.mask | (weak_p & weak_n)

    phip = _unwrapped_phase(zp, weak_p)
    phin = _unwrapped_phase(zn, weak_n)
    if phip is None and phin is None:
        raise ValueError("both rotary components vanish everywhere")
    if phip is None:
        phip = phin.copy()
    if phin is None:
        phin = phip.copy()

    valid = ~mask
    diff = np.median((ap - an)[valid]) if valid.any() else 0.0
    flags = {}
    # differences at round-off level count as a tie (linear polarization)
    if diff > floor:
        rz = 1
    elif diff < -floor:
        rz = -1
    else:
        rz = 1
        flags["rz_tie"] = True
        warnings.warn("rotation sense undetermined (linear motion); using rz=+1",
                      RuntimeWarning, stacklevel=2)
    crossings = int(np.count_nonzero(np.sign(ap - an)[valid] == -rz))
    if crossings:
        flags["rz_crossings"] = crossings

    kappa = np.sqrt(ap ** 2 + an ** 2)
    safe = np.where(kappa > 0, kappa, 1.0)
    lam = np.where(kappa > 0, rz * 2 * ap * an / safe ** 2, 0.0)
    # equal amplitudes are a line; snap so sqrt(1 - |lam|) does not amplify round-off
    lam = np.where((np.abs(ap - an) <= floor) & (kappa > 0), float(rz), lam)
    phi = (phip + phin) / 2
    theta = (phip - phin) / 2
    # start theta in (-pi/2, pi/2]; pi shifts move into phi
    k = np.ceil(theta[0] / np.pi - 0.5)
    theta = theta - k * np.pi
    phi = phi - k * np.pi
    return EllipseSeries(r.grid, kappa, lam, theta, phi, rz, mask, flags)


def cartesian_to_ellipse(c: CartesianPair) -> EllipseSeries:
    return rotary_to_ellipse(cartesian_to_rotary(c))


def _rotary_amplitudes(e: EllipseSeries):
    root = np.sqrt(np.clip(1 - e.lam ** 2, 0.0, None))
    big = e.kappa / np.sqrt(2) * np.sqrt(1 + root)
    # 1 - sqrt(1 - λ²) written without cancellation
    small = e.kappa / np.sqrt(2) * np.sqrt(e.lam ** 2 / (1 + root))
    return (big, small) if e.rz > 0 else (small, big)


def ellipse_to_rotary(e: EllipseSeries) -> RotaryPair:
    """``z± = a± e^{i(φ ± θ)}`` with ``a± = κ/√2 · √(1 ± r_z √(1-λ²))``."""
    ap, an = _rotary_amplitudes(e)
    return RotaryPair(
        AnalyticSeries(e.grid, ap * np.exp(1j * (e.phi + e.theta)), e.mask),
        AnalyticSeries(e.grid, an * np.exp(1j * (e.phi - e.theta)), e.mask.copy()),
    )


def synthesize(e: EllipseSeries) -> tuple[tuple[RealSeries, RealSeries], CartesianPair]:
    """Trace ``z(t) = e^{iθ}(a cos φ + i b sin φ)`` and its analytic pair.

    The Cartesian pair is built from the model phases,
    ``[x₊, y₊] = e^{iφ} J(θ) [a, -ib]``, not by applying the analytic operator
    to the traced signal.
    """
    a, b = e.a, e.b
    z = np.exp(1j * e.theta) * (a * np.cos(e.phi) + 1j * b * np.sin(e.phi))
    rot = np.exp(1j * e.phi)
    xp = rot * (a * np.cos(e.theta) + 1j * b * np.sin(e.theta))
    yp = rot * (a * np.sin(e.theta) - 1j * b * np.cos(e.theta))
    pair = CartesianPair(AnalyticSeries(e.grid, xp), AnalyticSeries(e.grid, yp))
    return (RealSeries(e.grid, z.real), RealSeries(e.grid, z.imag)), pair


def snapshot(e: EllipseSeries, t_index: int, n_points: int = 64,
             center=(0.0, 0.0)) -> EllipseSnapshot:
    """The frozen ellipse at sample ``t_index``.

    The geometry is held at its value at ``t_index`` while the orbital phase
    runs through one local period ``2π/ω_φ``; the polyline is closed.
    """
    omega = e.omega_phi[t_index]
    if omega == 0 or not np.isfinite(omega):
        raise ValueError(f"zero orbital frequency at index {t_index}; no local period")
    tp = np.linspace(0.0, 2 * np.pi / abs(omega), n_points)
    ph = e.phi[t_index] + omega * tp
    a, b = e.a[t_index], e.b[t_index]
    z = np.exp(1j * e.theta[t_index]) * (a * np.cos(ph) + 1j * b * np.sin(ph))
    z[-1] = z[0]
    pts = np.column_stack([z.real + center[0], z.imag + center[1]])
    return EllipseSnapshot(tuple(center), pts, float(e.grid.times[t_index]))


def cartesian_params_from_ellipse(e: EllipseSeries):
    """Amplitudes and unwrapped phases ``(a_x, a_y, φ_x, φ_y)`` of ``x₊, y₊``."""
    lam_abs = np.abs(e.lam)
    c2 = np.cos(2 * e.theta)
    ax = e.kappa * np.sqrt(np.clip(1 + lam_abs * c2, 0.0, None))
    ay = e.kappa * np.sqrt(np.clip(1 - lam_abs * c2, 0.0, None))
    a, babs = e.a, np.abs(e.b)
    ct, st = np.cos(e.theta), np.sin(e.theta)
    phx = e.phi + np.angle(a * ct + 1j * e.rz * babs * st)
    phy = e.phi - e.rz * np.pi / 2 + np.angle(babs * ct + 1j * e.rz * a * st)
    g = e.grid
    return (RealSeries(g, ax, e.mask), RealSeries(g, ay, e.mask),
            RealSeries(g, np.unwrap(phx), e.mask), RealSeries(g, np.unwrap(phy), e.mask))


def cartesian_moments_from_ellipse(e: EllipseSeries):
    """Cartesian instantaneous frequencies and bandwidths ``(ω_x, ω_y, υ_x, υ_y)``.

    Closed forms in the ellipse parameters; derivatives of κ, |λ| and
    ``|λ| cos 2θ`` use the shared second-order stencil. Samples where either
    Cartesian amplitude (or ``1 - λ²``) vanishes are masked.
    """
    g = e.grid
    lam_abs = np.abs(e.lam)
    c2, s2 = np.cos(2 * e.theta), np.sin(2 * e.theta)
    k2 = e.kappa ** 2
    ax2 = k2 * (1 + lam_abs * c2)
    ay2 = k2 * (1 - lam_abs * c2)
    root = np.sqrt(np.clip(1 - e.lam ** 2, 0.0, None))
    floor = DENOMINATOR_FLOOR * max(k2.max(), np.finfo(float).tiny)
    bad = (ax2 <= floor) | (ay2 <= floor) | (root <= DENOMINATOR_FLOOR)
    safe_ax2 = np.where(bad, 1.0, ax2)
    safe_ay2 = np.where(bad, 1.0, ay2)
    safe_root = np.where(bad, 1.0, root)

    dlogk = _grad(np.log(np.where(e.kappa > 0, e.kappa, np.finfo(float).tiny)), g)
    dlam = _grad(lam_abs, g)
    dmix = _grad(lam_abs * c2, g)
    wphi, wth = e.omega_phi, e.omega_theta
    common = wth * root
    tilt = 0.5 * s2 / safe_root * dlam
    wx = wphi + e.rz * k2 / safe_ax2 * (common - tilt)
    wy = wphi + e.rz * k2 / safe_ay2 * (common + tilt)
    ux = dlogk + 0.5 * k2 / safe_ax2 * dmix
    uy = dlogk - 0.5 * k2 / safe_ay2 * dmix
    mask = e.mask | bad
    return tuple(RealSeries(g, np.where(bad, 0.0, v), mask) for v in (wx, wy, ux, uy))


def rotary_moments_from_ellipse(e: EllipseSeries):
    """Rotary instantaneous frequencies and bandwidths ``(ω₊, ω₋, υ₊, υ₋)``.

    ``ω± = ω_φ ± ω_θ``; the bandwidths add to ``d ln κ/dt`` a deformation
    term whose denominator ``1 ± r_z √(1-λ²)`` vanishes for the weaker
    component of a circular signal. Samples where it drops below
    ``DENOMINATOR_FLOOR`` are masked.
    """
    g = e.grid
    root = np.sqrt(np.clip(1 - e.lam ** 2, 0.0, None))
    droot = _grad(root, g)
    dlogk = _grad(np.log(np.where(e.kappa > 0, e.kappa, np.finfo(float).tiny)), g)
    wphi, wth = e.omega_phi, e.omega_theta
    out_w = (wphi + wth, wphi - wth)
    out_u, masks = [], []
    for sign in (1, -1):
        den = 1 + sign * e.rz * root
        bad = den < DENOMINATOR_FLOOR
        u = dlogk + sign * e.rz * 0.5 * droot / np.where(bad, 1.0, den)
        out_u.append(np.where(bad, 0.0, u))
        masks.append(e.mask | bad)
    return (RealSeries(g, out_w[0], e.mask), RealSeries(g, out_w[1], e.mask),
            RealSeries(g, out_u[0], masks[0]), RealSeries(g, out_u[1], masks[1]))
