"""Eddy-plus-background decomposition of bivariate records.

The observed track is modelled as a modulated elliptical signal plus a
residual that holds everything else. The elliptical part is estimated by
bivariate wavelet ridge analysis; the residual is what is left after
subtraction. Synthetic scenarios with stored truth stand in for real float
records.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import svg
from .ellipse import CartesianPair, EllipseSeries, snapshot, synthesize
from .joint import (
    AnalyticVector,
    BandwidthDecomposition,
    JointMoments,
    bandwidth_decomposition,
    bivariate_frequency_from_ellipse,
    joint_moments,
)
from .spectral import RealSeries, SampleGrid
from .wavelet import MorseParams, ScaleGrid, combine_bivariate_ridges, cwt, ridge_detect

__all__ = [
    "BivariateRecord",
    "Decomposition",
    "DecomposeConfig",
    "SynthScenario",
    "PRESETS",
    "preset",
    "load_record",
    "save_record",
    "synthesize_scenario",
    "decompose",
    "snapshot_indices",
    "moment_panels",
    "moments_report",
    "report",
    "fig3_svg",
]

TWO_PI = 2 * np.pi


@dataclass(frozen=True, eq=False)
class BivariateRecord:
    grid: SampleGrid
    x: RealSeries
    y: RealSeries
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.x.grid != self.grid or self.y.grid != self.grid:
            raise ValueError("x and y must share the record grid")

    @classmethod
    def from_arrays(cls, grid, x, y, **metadata) -> "BivariateRecord":
        return cls(grid, RealSeries(grid, x), RealSeries(grid, y), dict(metadata))

    @property
    def z(self) -> np.ndarray:
        return self.x.values + 1j * self.y.values


@dataclass(frozen=True)
class DecomposeConfig:
    beta: float = 3.0
    gamma: float = 3.0
    bands: int = 50
    period_min: float = 2.6
    period_max: float = 53.0
    min_ridge_periods: float = 2.0
    pad: str = "mirror"

    @property
    def params(self) -> MorseParams:
        return MorseParams(self.beta, self.gamma)

    @property
    def scales(self) -> ScaleGrid:
        return ScaleGrid.from_periods(self.period_min, self.period_max, self.bands)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Estimated signal, residual and the moments of the signal.

    ``signal + residual`` reproduces the input bitwise except at samples
    counted in ``flags["inexact_additivity"]``, where the two terms cancel
    so heavily that no pair of doubles near them sums to the input. ``ellipse``,
    ``moments`` and ``bandwidth`` are ``None`` when no ridge was found
    (``flags["empty"]``).
    """

    signal: BivariateRecord
    residual: BivariateRecord
    ellipse: EllipseSeries | None
    moments: JointMoments | None
    bandwidth: BandwidthDecomposition | None
    pair: CartesianPair | None = None
    flags: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class SynthScenario:
    """An elliptical eddy riding on a smooth drift, plus white noise.

    ``noise_std`` is per component. The stored ellipse and drift are the truth
    that estimates are scored against.
    """

    eddy: EllipseSeries
    drift: np.ndarray
    noise_std: float = 0.0
    seed: int = 0
    name: str = "custom"

    @property
    def grid(self) -> SampleGrid:
        return self.eddy.grid


def _ramp(t):
    return (t - t[0]) / (t[-1] - t[0])


def _paper_like(g, period, drift_speed, snr_db):
    t = g.times
    u = _ramp(t)
    T = g.duration
    w0 = TWO_PI / period
    # strong eddy early, weak and faster late, nearly circular and clockwise
    kappa = 3.0 ** (1 - u) * (1 + 0.1 * np.sin(TWO_PI * t / (0.37 * T)))
    omega = w0 * (1 + 0.15 * np.tanh((u - 0.65) / 0.08))
    phi = np.cumsum(omega) * g.dt - omega[0] * g.dt
    lam = -(0.12 + 0.08 * np.sin(TWO_PI * t / (0.31 * T)) ** 2)
    theta = 0.4 * np.sin(TWO_PI * t / (0.45 * T))
    eddy = EllipseSeries(g, kappa, lam, theta, phi, rz=-1)
    speed = drift_speed * np.mean(kappa) * w0
    heading = 0.6 + 1.2 * np.sin(TWO_PI * t / (0.8 * T))
    drift = np.cumsum(speed * np.exp(1j * heading)) * g.dt
    return eddy, drift - drift[0], snr_db


def _fig3(g, period, which, ratio=0.025):
    t = g.times - g.t0
    w0 = TWO_PI / period
    phi = w0 * t
    if which == "amplitude":
        eddy = EllipseSeries(g, np.exp(ratio * w0 * t), 0.5, 0.0, phi)
    elif which == "deformation":
        lam = np.sin(2 * ratio * w0 * t + 0.05)
        eddy = EllipseSeries(g, 1.0, lam, 0.0, phi)
    elif which == "precession":
        lam = 0.6
        # λ ω_θ = ratio · (ω_φ + √(1-λ²) ω_θ)
        w_theta = ratio * w0 / (lam - ratio * np.sqrt(1 - lam ** 2))
        eddy = EllipseSeries(g, 1.0, lam, w_theta * t, phi)
    else:
        raise ValueError(which)
    return eddy


PRESETS = ("paper-like", "circle", "linear",
           "fig3-amplitude", "fig3-deformation", "fig3-precession")


def preset(name: str = "paper-like", samples: int | None = None, period: float = 20.0,
           snr_db: float | None = None, drift_speed: float | None = None,
           seed: int = 0, dt: float = 1.0) -> SynthScenario:
    """Named synthetic scenarios.

    ``paper-like`` is the default test case: 1500 samples, orbital period 20,
    RMS amplitude falling threefold over the record, drift at a tenth of the
    orbital speed and 20 dB signal-to-noise. The ``fig3-*`` presets hold
    exactly one of the amplitude, deformation and precession bandwidths at
    0.025 of the bivariate frequency, with no drift or noise; they default to
    4.5 orbits so the deformation case stays below linear polarization.
    """
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {PRESETS}")
    if name.startswith("fig3"):
        n = samples or int(round(4.5 * period / dt)) + 1
    else:
        n = samples or 1500
    g = SampleGrid(0.0, dt, n)
    t = g.times
    w0 = TWO_PI / period
    snr = None
    drift = np.zeros(n, dtype=complex)
    if name == "paper-like":
        eddy, drift, snr = _paper_like(g, period, 0.1 if drift_speed is None else drift_speed,
                                       20.0 if snr_db is None else snr_db)
    elif name == "circle":
        eddy = EllipseSeries(g, 1.0, 0.0, 0.0, w0 * t)
    elif name == "linear":
        eddy = EllipseSeries(g, 1.0, 1.0, np.pi / 6, w0 * t)
    else:
        eddy = _fig3(g, period, name.split("-", 1)[1])
    if name != "paper-like":
        snr = snr_db
        if drift_speed:
            speed = drift_speed * np.mean(eddy.kappa) * w0
            drift = speed * (t - t[0]) * np.exp(0.6j)
    noise_std = 0.0
    if snr is not None and np.isfinite(snr):
        (x, y), _ = synthesize(eddy)
        power = np.mean(x.values ** 2 + y.values ** 2) / 2
        noise_std = float(np.sqrt(power / 10 ** (snr / 10)))
    return SynthScenario(eddy, drift, noise_std, seed, name)


def synthesize_scenario(s: SynthScenario) -> tuple[BivariateRecord, Decomposition]:
    """Sample a scenario: eddy + drift + seeded Gaussian noise, with the truth."""
    g = s.grid
    (ex, ey), pair = synthesize(s.eddy)
    rng = np.random.default_rng(s.seed)
    noise = np.zeros(g.n, dtype=complex)
    if s.noise_std > 0:
        noise = s.noise_std * (rng.standard_normal(g.n) + 1j * rng.standard_normal(g.n))
    background = s.drift + noise
    x = ex.values + background.real
    y = ey.values + background.imag
    meta = {"source": f"synthetic:{s.name}", "seed": s.seed, "noise_std": s.noise_std}
    record = BivariateRecord.from_arrays(g, x, y, **meta)
    signal = BivariateRecord(g, ex, ey, {"component": "eddy"})
    residual = BivariateRecord.from_arrays(g, x - ex.values, y - ey.values, component="residual")
    mom = joint_moments(AnalyticVector.from_pair(pair)) if np.any(s.eddy.kappa > 0) else None
    bw = bandwidth_decomposition(s.eddy) if mom is not None else None
    truth = Decomposition(signal, residual, s.eddy, mom, bw, pair, {"truth": True})
    return record, truth


def load_record(path, format: str | None = None, rtol: float = 1e-6) -> BivariateRecord:
    """Read a bivariate record.

    CSV input needs a ``t,x,y`` header (extra columns are ignored); lines
    starting with ``#`` are comments, and ``# key: value`` comments before the
    header become metadata. ``.npz`` archives need ``t``, ``x`` and ``y``
    arrays. Sampling must be uniform to ``rtol``.
    """
    path = Path(path)
    fmt = (format or path.suffix.lstrip(".") or "csv").lower()
    meta = {}
    if fmt == "npz":
        with np.load(path, allow_pickle=False) as data:
            missing = [c for c in ("t", "x", "y") if c not in data]
            if missing:
                raise ValueError(f"{path}: missing arrays {missing}")
            t, x, y = data["t"], data["x"], data["y"]
    elif fmt == "csv":
        rows, header = [], None
        with open(path, newline="", encoding="utf-8") as fh:
            for line in fh:
                s = line.strip()
                if not s:
                    continue
                if s.startswith("#"):
                    if header is None and ":" in s:
                        k, v = s[1:].split(":", 1)
                        meta[k.strip()] = v.strip()
                    continue
                if header is None:
                    header = [h.strip() for h in next(csv.reader([s]))]
                    missing = [c for c in ("t", "x", "y") if c not in header]
                    if missing:
                        raise ValueError(f"{path}: missing columns {missing} in header {header}")
                    cols = [header.index(c) for c in ("t", "x", "y")]
                    continue
                fields = next(csv.reader([s]))
                rows.append([float(fields[c]) for c in cols])
        if header is None:
            raise ValueError(f"{path}: no header line")
        data = np.asarray(rows, dtype=float).reshape(-1, 3)
        t, x, y = data.T
    else:
        raise ValueError(f"unsupported format {fmt!r}")
    try:
        grid = SampleGrid.from_times(t, rtol=rtol)
    except ValueError as err:
        raise ValueError(f"{path}: {err}") from None
    meta.setdefault("source", str(path))
    return BivariateRecord.from_arrays(grid, x, y, **meta)


def save_record(record: BivariateRecord, path) -> None:
    """Write ``t,x,y`` CSV at 17 significant digits, metadata as comments."""
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for k, v in record.metadata.items():
            fh.write(f"# {k}: {v}\n")
        fh.write("t,x,y\n")
        for row in zip(record.grid.times, record.x.values, record.y.values):
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def _split_exact(obs, est):
    """Signal near ``est`` and residual with ``signal + residual == obs`` bitwise.

    The finer-grained of the two terms absorbs the rounding leftover. Where
    both terms dwarf ``obs`` (heavy cancellation) their sum lies on a grid
    coarser than ``obs`` itself and no nudge can close it; the count of such
    samples is returned third.
    """
    residual = obs - est
    signal = obs - residual
    stuck = 0
    for k in np.flatnonzero(signal + residual != obs):
        o, sk, rk = obs[k], signal[k], residual[k]
        if min(abs(sk), abs(rk)) > abs(o):
            stuck += 1
            continue
        fine_signal = abs(sk) <= abs(rk)
        for _ in range(64):
            left = o - (sk + rk)
            if left == 0:
                break
            toward = np.inf if left > 0 else -np.inf
            if fine_signal:
                nxt = sk + left
                sk = nxt if nxt != sk else np.nextafter(sk, toward)
            else:
                nxt = rk + left
                rk = nxt if nxt != rk else np.nextafter(rk, toward)
        signal[k], residual[k] = sk, rk
        stuck += sk + rk != o
    return signal, residual, int(stuck)


def decompose(record: BivariateRecord, config: DecomposeConfig = DecomposeConfig()) -> Decomposition:
    """Split a record into a modulated elliptical signal and a residual.

    Both components are wavelet transformed with the configured Morse wavelet
    and scale grid, ridges are chained, paired and combined into analytic
    estimates ``x̂₊, ŷ₊``; the signal is their real part and the residual is
    the input minus the signal. Joint moments and the bandwidth split are
    computed from the estimated pair over its support.
    """
    g = record.grid
    longest = config.period_max
    if g.duration < 4 * longest:
        raise ValueError(f"record spans {g.duration} time units; need at least "
                         f"4 x {longest} for the longest period")
    scales, params = config.scales, config.params
    rx = ridge_detect(cwt(record.x, scales, params, pad=config.pad),
                      min_periods=config.min_ridge_periods)
    ry = ridge_detect(cwt(record.y, scales, params, pad=config.pad),
                      min_periods=config.min_ridge_periods)
    pair, ellipse = combine_bivariate_ridges(rx, ry, g)
    flags = {"ridges_x": len(rx), "ridges_y": len(ry)}
    est_x = pair.xp.values.real
    est_y = pair.yp.values.real
    sx, resx, stuck_x = _split_exact(record.x.values, est_x)
    sy, resy, stuck_y = _split_exact(record.y.values, est_y)
    if stuck_x + stuck_y:
        flags["inexact_additivity"] = stuck_x + stuck_y
    signal = BivariateRecord.from_arrays(g, sx, sy, component="signal")
    residual = BivariateRecord.from_arrays(g, resx, resy, component="residual")
    if ellipse is None:
        flags["empty"] = True
        return Decomposition(signal, residual, None, None, None, None, flags)
    flags.update(ellipse.flags)
    mom = joint_moments(AnalyticVector.from_pair(pair))
    bw = bandwidth_decomposition(ellipse)
    return Decomposition(signal, residual, ellipse, mom, bw, pair, flags)


def snapshot_indices(omega, dt: float, valid=None, spacing: float = 2.0) -> list[int]:
    """Sample indices spaced ``spacing`` local periods ``2π/|ω|`` apart."""
    omega = np.asarray(omega, float)
    valid = np.ones(omega.size, bool) if valid is None else np.asarray(valid, bool)
    valid = valid & np.isfinite(omega) & (np.abs(omega) > 0)
    idx = []
    k = int(np.argmax(valid)) if valid.any() else omega.size
    while k < omega.size:
        if not valid[k]:
            k += 1
            continue
        idx.append(k)
        k += max(1, int(round(spacing * TWO_PI / abs(omega[k]) / dt)))
    return idx


def moment_panels(d: Decomposition) -> dict:
    """Series shown in the five-panel moment figure.

    Frequencies and bandwidths in radians per time unit; ``e_*`` entries are
    the bandwidths divided by ``|ω_z|``.
    """
    e = d.ellipse
    omega_z = bivariate_frequency_from_ellipse(e).values
    panels = {
        "time": e.grid.times,
        "a_x": d.signal.x.values,
        "a_y": d.signal.y.values,
        "a_kappa": e.kappa,
        "b_linearity": np.abs(e.lam),
        "c_omega_z": omega_z,
        "c_omega_phi": e.omega_phi,
        "c_omega_theta": e.omega_theta,
        "d_upsilon_kappa": d.bandwidth.amplitude_bw.values,
        "d_upsilon_lambda": d.bandwidth.deformation_bw.values,
        "d_upsilon_theta": d.bandwidth.precession_bw.values,
    }
    scale = np.abs(omega_z)
    safe = np.where(scale > 0, scale, np.nan)
    for key in ("kappa", "lambda", "theta"):
        panels[f"e_upsilon_{key}"] = panels[f"d_upsilon_{key}"] / safe
    panels["mask"] = e.mask | d.bandwidth.deformation_bw.mask
    return panels


def _cycles(v):
    return np.asarray(v) / TWO_PI


def _jsonable(a):
    a = np.asarray(a, dtype=float)
    return [None if not math.isfinite(v) else float(v) for v in a]


def moments_report(d: Decomposition, time_unit: str = "days") -> dict:
    """JSON-ready moments report; frequencies in cycles per time unit.

    ``global`` holds the joint global moments (with ``*_rad`` radian
    equivalents); ``series`` holds ω, υ, σ² and the three bandwidth terms
    per sample in cycles, ``series_rad`` the same in radians, and ``mask``
    flags samples outside the estimate's support.
    """
    if d.moments is None:
        return {"time_unit": time_unit, "empty": True, "flags": _flag_dict(d.flags)}
    gm = d.moments.global_moments
    rad = {
        "frequency": d.moments.frequency.values,
        "bandwidth": d.moments.bandwidth.values,
        "second_central": d.moments.second_central.values,
        "upsilon_kappa": d.bandwidth.amplitude_bw.values,
        "upsilon_lambda": d.bandwidth.deformation_bw.values,
        "upsilon_theta": d.bandwidth.precession_bw.values,
    }
    cyc = {k: (v / TWO_PI ** 2 if k == "second_central" else _cycles(v)) for k, v in rad.items()}
    mask = d.moments.frequency.mask | d.ellipse.mask
    return {
        "time_unit": time_unit,
        "frequency_unit": f"cycles/{time_unit}",
        "global": {
            "mean_frequency": gm.mean_frequency / TWO_PI,
            "second_central": gm.second_central / TWO_PI ** 2,
            "energy": gm.energy,
            "mean_frequency_rad": gm.mean_frequency,
            "second_central_rad": gm.second_central,
        },
        "rz": d.ellipse.rz,
        "time": _jsonable(d.signal.grid.times),
        "series": {k: _jsonable(v) for k, v in cyc.items()},
        "series_rad": {k: _jsonable(v) for k, v in rad.items()},
        "mask": [bool(m) for m in mask],
        "flags": _flag_dict(d.flags),
    }


def _flag_dict(flags):
    return {k: (v if isinstance(v, (bool, int, float, str)) else str(v)) for k, v in flags.items()}


def _write_csv(path, columns: dict):
    keys = list(columns)
    rows = zip(*[np.asarray(columns[k]) for k in keys])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(",".join(keys) + "\n")
        for row in rows:
            fh.write(",".join(_cell(v) for v in row) + "\n")


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    return f"{float(v):.17g}"


def _trajectory_svg(record, d, snaps) -> str:
    panels, w, h = svg.row(["(a) observed", "(b) elliptical signal", "(c) residual"])
    panels[0].line(record.x.values, record.y.values, width=0.8)
    panels[0].marker(record.x.values[0], record.y.values[0], "triangle")
    res = d.residual
    for i, s in enumerate(snaps):
        color = "#000000" if i % 2 == 0 else "#8c8c8c"
        panels[1].line(s.polyline[:, 0], s.polyline[:, 1], color=color, width=0.8)
    if not snaps:
        panels[1].line(res.x.values, res.y.values, color="#cccccc")
    panels[1].marker(res.x.values[0], res.y.values[0], "triangle")
    panels[2].line(res.x.values, res.y.values, width=0.8)
    panels[2].marker(res.x.values[0], res.y.values[0], "triangle")
    return svg.figure(panels, w, h)


def _moments_svg(panels_data, time_unit) -> str:
    t = panels_data["time"]
    mask = panels_data["mask"]

    def m(v):
        return np.where(mask, np.nan, v)

    panels, w, h = svg.column([
        "(a) x, y and RMS amplitude κ",
        "(b) linearity |λ|",
        f"(c) ω_z, ω_φ, ω_θ (cycles/{time_unit})",
        f"(d) bandwidths υ_κ, υ_λ, υ_θ (cycles/{time_unit})",
        "(e) bandwidths / |ω_z|",
    ])
    panels[0].line(t, panels_data["a_x"], color="#1f4e9c", width=0.7, label="x")
    panels[0].line(t, panels_data["a_y"], color="#7f7f7f", width=0.7, dash="4,2", label="y")
    panels[0].line(t, m(panels_data["a_kappa"]), color="#000000", width=2, label="κ")
    panels[1].line(t, m(panels_data["b_linearity"]), width=1.2)
    for key, style in (("omega_z", ("#000000", 2, "")), ("omega_phi", ("#1f4e9c", 1, "")),
                       ("omega_theta", ("#b2182b", 1, "4,2"))):
        panels[2].line(t, m(_cycles(panels_data[f"c_{key}"])), color=style[0], width=style[1],
                       dash=style[2], label=key.replace("omega_", "ω_"))
    for p, prefix, conv in ((panels[3], "d", _cycles), (panels[4], "e", lambda v: v)):
        for key, style in (("kappa", ("#000000", 2, "")), ("lambda", ("#1f4e9c", 1, "")),
                           ("theta", ("#b2182b", 1, "4,2"))):
            p.line(t, m(conv(panels_data[f"{prefix}_upsilon_{key}"])), color=style[0],
                   width=style[1], dash=style[2], label=f"υ_{key}")
    return svg.figure(panels, w, h)


def report(d: Decomposition, out_dir, record: BivariateRecord | None = None,
           time_unit: str = "days", snapshot_points: int = 64) -> dict:
    """Write the moments report, series tables and figures into ``out_dir``.

    Files: ``moments.json``, ``series.csv``, ``snapshots.csv``,
    ``trajectory.svg`` and ``moments.svg``. Snapshots are placed every two
    local periods of the estimated bivariate frequency and centred on the
    residual track. Returns a mapping of file roles to paths.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if record is None:
        g = d.signal.grid
        record = BivariateRecord.from_arrays(g, d.signal.x.values + d.residual.x.values,
                                             d.signal.y.values + d.residual.y.values)
    files = {"json": out / "moments.json", "series": out / "series.csv",
             "snapshots": out / "snapshots.csv", "trajectory": out / "trajectory.svg",
             "moments_svg": out / "moments.svg"}
    with open(files["json"], "w", encoding="utf-8") as fh:
        json.dump(moments_report(d, time_unit), fh, indent=1)

    g = record.grid
    cols = {"time": g.times, "x": record.x.values, "y": record.y.values,
            "signal_x": d.signal.x.values, "signal_y": d.signal.y.values,
            "residual_x": d.residual.x.values, "residual_y": d.residual.y.values}
    snaps, snap_idx = [], []
    if d.ellipse is not None:
        panels_data = moment_panels(d)
        e = d.ellipse
        cols.update({"kappa": e.kappa, "lambda": e.lam, "theta": e.theta, "phi": e.phi})
        for k, v in panels_data.items():
            if k not in ("time", "mask") and not k.startswith("a_"):
                cols[k] = v
        cols["mask"] = panels_data["mask"]
        snap_idx = snapshot_indices(panels_data["c_omega_z"], g.dt, ~panels_data["mask"])
        for k in snap_idx:
            if e.omega_phi[k] == 0:
                continue
            center = (d.residual.x.values[k], d.residual.y.values[k])
            snaps.append(snapshot(e, k, snapshot_points, center))
    _write_csv(files["series"], cols)
    with open(files["snapshots"], "w", encoding="utf-8") as fh:
        fh.write("snapshot_id,index,time,x,y\n")
        for i, (k, s) in enumerate(zip(snap_idx, snaps)):
            for px, py in s.polyline:
                fh.write(f"{i},{k},{s.timestamp:.17g},{px:.17g},{py:.17g}\n")
    files["trajectory"].write_text(_trajectory_svg(record, d, snaps), encoding="utf-8")
    if d.ellipse is not None:
        files["moments_svg"].write_text(_moments_svg(moment_panels(d), time_unit),
                                        encoding="utf-8")
    else:
        del files["moments_svg"]
    return files


def fig3_svg(scenarios: list[SynthScenario]) -> str:
    """Side-by-side trajectories of the three single-term bandwidth presets."""
    panels, w, h = svg.row([s.name for s in scenarios])
    for p, s in zip(panels, scenarios):
        (x, y), _ = synthesize(s.eddy)
        period = TWO_PI / abs(s.eddy.omega_phi[0]) / s.grid.dt
        first = int(round(period)) + 1
        p.line(x.values, y.values, width=0.8, color="#555555")
        p.line(x.values[:first], y.values[:first], width=2.2, color="#000000")
        p.marker(x.values[0], y.values[0], "circle")
        p.marker(x.values[-1], y.values[-1], "x")
    return svg.figure(panels, w, h)


def with_config(config: DecomposeConfig, **changes) -> DecomposeConfig:
    return replace(config, **{k: v for k, v in changes.items() if v is not None})
