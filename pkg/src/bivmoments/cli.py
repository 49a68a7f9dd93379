"""Command-line front end.

Every subcommand reads a ``t,x,y`` CSV (``--input``) and writes into an
output directory (``--output``). Frequencies written to disk are in cycles
per time unit; JSON files also carry radian equivalents.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .ellipse import CartesianPair, cartesian_to_ellipse
from .joint import (
    AnalyticVector,
    bandwidth_decomposition,
    bivariate_frequency_from_ellipse,
    joint_moments,
)
from .moments import moment_track
from .pipeline import (
    PRESETS,
    BivariateRecord,
    DecomposeConfig,
    decompose,
    fig3_svg,
    load_record,
    preset,
    report,
    save_record,
    synthesize_scenario,
    _write_csv,
)
from .spectral import PAD_MODES, SampleGrid, amplitude_phase, analytic_signal
from .wavelet import cwt, ridge_detect

TWO_PI = 2 * np.pi


def _common(p, needs_input=True):
    p.add_argument("--input", required=needs_input, type=Path,
                   help="CSV with header t,x,y ('#' lines are comments)")
    p.add_argument("--output", type=Path, default=Path("."), help="output directory")
    p.add_argument("--dt", type=float, default=None,
                   help="sampling interval; overrides the spacing of the t column")
    p.add_argument("--time-unit", default="days", help="name of the time unit (default days)")


def _decompose_flags(p):
    d = DecomposeConfig()
    p.add_argument("--beta", type=float, default=d.beta)
    p.add_argument("--gamma", type=float, default=d.gamma)
    p.add_argument("--bands", type=int, default=d.bands)
    p.add_argument("--period-min", type=float, default=d.period_min)
    p.add_argument("--period-max", type=float, default=d.period_max)
    p.add_argument("--min-ridge-periods", type=float, default=d.min_ridge_periods)
    p.add_argument("--pad", choices=PAD_MODES, default=d.pad)


def _config(args) -> DecomposeConfig:
    return DecomposeConfig(args.beta, args.gamma, args.bands, args.period_min,
                           args.period_max, args.min_ridge_periods, args.pad)


def _record(args) -> BivariateRecord:
    rec = load_record(args.input)
    if args.dt is not None:
        g = SampleGrid(rec.grid.t0, args.dt, rec.grid.n)
        rec = BivariateRecord.from_arrays(g, rec.x.values, rec.y.values, **rec.metadata)
    return rec


def _outdir(args) -> Path:
    args.output.mkdir(parents=True, exist_ok=True)
    return args.output


def _analytic_pair(rec, pad="none") -> CartesianPair:
    return CartesianPair(analytic_signal(rec.x, pad), analytic_signal(rec.y, pad))


def cmd_analytic(args):
    rec = _record(args)
    pair = _analytic_pair(rec, args.pad)
    cols = {"time": rec.grid.times}
    for name, xp in (("x", pair.xp), ("y", pair.yp)):
        amp, phase = amplitude_phase(xp)
        cols.update({f"{name}_real": xp.values.real, f"{name}_imag": xp.values.imag,
                     f"{name}_amplitude": amp.values, f"{name}_phase": phase.values,
                     f"{name}_mask": amp.mask})
    path = _outdir(args) / "analytic.csv"
    _write_csv(path, cols)
    return [path]


def _global(g):
    return {"mean_frequency": g.mean_frequency / TWO_PI,
            "second_central": g.second_central / TWO_PI ** 2,
            "energy": g.energy,
            "mean_frequency_rad": g.mean_frequency,
            "second_central_rad": g.second_central}


def cmd_moments(args):
    rec = _record(args)
    pair = _analytic_pair(rec, args.pad)
    out = _outdir(args)
    cols = {"time": rec.grid.times}
    summary = {"time_unit": args.time_unit, "frequency_unit": f"cycles/{args.time_unit}",
               "method": args.method}
    for name, xp in (("x", pair.xp), ("y", pair.yp)):
        m = moment_track(xp, args.method)
        summary[name] = _global(m.global_moments)
        cols.update({f"{name}_frequency": m.frequency.values / TWO_PI,
                     f"{name}_bandwidth": m.bandwidth.values / TWO_PI,
                     f"{name}_second_central": m.second_central.values / TWO_PI ** 2,
                     f"{name}_power": m.power.values})
    jm = joint_moments(AnalyticVector.from_pair(pair))
    summary["joint"] = _global(jm.global_moments)
    cols.update({"joint_frequency": jm.frequency.values / TWO_PI,
                 "joint_bandwidth": jm.bandwidth.values / TWO_PI,
                 "joint_second_central": jm.second_central.values / TWO_PI ** 2})
    _write_csv(out / "moments.csv", cols)
    (out / "moments.json").write_text(json.dumps(summary, indent=1), encoding="utf-8")
    return [out / "moments.csv", out / "moments.json"]


def cmd_ellipse(args):
    rec = _record(args)
    e = cartesian_to_ellipse(_analytic_pair(rec, args.pad))
    bw = bandwidth_decomposition(e)
    omega_z = bivariate_frequency_from_ellipse(e).values
    out = _outdir(args)
    cols = {"time": rec.grid.times, "kappa": e.kappa, "lambda": e.lam, "theta": e.theta,
            "phi": e.phi, "a": e.a, "b": e.b,
            "omega_phi": e.omega_phi / TWO_PI, "omega_theta": e.omega_theta / TWO_PI,
            "omega_z": omega_z / TWO_PI,
            "upsilon_kappa": bw.amplitude_bw.values / TWO_PI,
            "upsilon_lambda": bw.deformation_bw.values / TWO_PI,
            "upsilon_theta": bw.precession_bw.values / TWO_PI,
            "mask": e.mask | bw.deformation_bw.mask}
    _write_csv(out / "ellipse.csv", cols)
    meta = {"rz": e.rz, "time_unit": args.time_unit, "frequency_unit": f"cycles/{args.time_unit}",
            "flags": {k: str(v) if not isinstance(v, (bool, int, float)) else v
                      for k, v in e.flags.items()}}
    (out / "ellipse.json").write_text(json.dumps(meta, indent=1), encoding="utf-8")
    return [out / "ellipse.csv", out / "ellipse.json"]


def cmd_transform(args):
    rec = _record(args)
    cfg = _config(args)
    out = _outdir(args)
    paths = []
    for name, s in (("x", rec.x), ("y", rec.y)):
        w = cwt(s, cfg.scales, cfg.params, pad=cfg.pad)
        path = out / f"transform_{name}.npz"
        np.savez(path, time=rec.grid.times, coefficients=w.coefficients,
                 peak_frequency=w.scales.peak_frequencies / TWO_PI, coi=w.coi)
        paths.append(path)
    cols = {"band": np.arange(cfg.scales.peak_frequencies.size),
            "frequency": cfg.scales.peak_frequencies / TWO_PI,
            "period": TWO_PI / cfg.scales.peak_frequencies, "coi": w.coi}
    _write_csv(out / "scales.csv", cols)
    return paths + [out / "scales.csv"]


def cmd_ridges(args):
    rec = _record(args)
    cfg = _config(args)
    out = _outdir(args)
    t = rec.grid.times
    paths = []
    for name, s in (("x", rec.x), ("y", rec.y)):
        w = cwt(s, cfg.scales, cfg.params, pad=cfg.pad)
        ridges = ridge_detect(w, min_periods=cfg.min_ridge_periods)
        path = out / f"ridges_{name}.csv"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("time,refined_scale,frequency,real,imag,ridge\n")
            for i, r in enumerate(ridges):
                for k, j, f, v in zip(r.times, r.scale_index, r.inst_frequency, r.values):
                    fh.write(f"{t[k]:.17g},{j:.17g},{f / TWO_PI:.17g},"
                             f"{v.real:.17g},{v.imag:.17g},{i}\n")
        paths.append(path)
    return paths


def cmd_decompose(args):
    rec = _record(args)
    d = decompose(rec, _config(args))
    out = _outdir(args)
    save_record(d.signal, out / "signal.csv")
    save_record(d.residual, out / "residual.csv")
    files = report(d, out, rec, args.time_unit)
    return [out / "signal.csv", out / "residual.csv", files["json"], files["series"]]


def cmd_report(args):
    rec = _record(args)
    d = decompose(rec, _config(args))
    return list(report(d, _outdir(args), rec, args.time_unit).values())


def cmd_synth(args):
    dt = 1.0 if args.dt is None else args.dt
    s = preset(args.preset, samples=args.samples, period=args.period, snr_db=args.snr_db,
               drift_speed=args.drift_speed, seed=args.seed, dt=dt)
    rec, truth = synthesize_scenario(s)
    out = _outdir(args)
    save_record(rec, out / "record.csv")
    e = truth.ellipse
    _write_csv(out / "truth.csv", {
        "time": rec.grid.times, "eddy_x": truth.signal.x.values, "eddy_y": truth.signal.y.values,
        "background_x": truth.residual.x.values, "background_y": truth.residual.y.values,
        "drift_x": s.drift.real, "drift_y": s.drift.imag,
        "kappa": e.kappa, "lambda": e.lam, "theta": e.theta, "phi": e.phi})
    paths = [out / "record.csv", out / "truth.csv"]
    if args.preset.startswith("fig3"):
        trio = [preset(f"fig3-{k}", period=args.period, dt=dt)
                for k in ("amplitude", "deformation", "precession")]
        (out / "fig3.svg").write_text(fig3_svg(trio), encoding="utf-8")
        paths.append(out / "fig3.svg")
    return paths


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bivmoments",
                                     description="Moments of modulated bivariate oscillations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analytic", help="analytic signals, amplitudes and phases of x and y")
    _common(p)
    p.add_argument("--pad", choices=PAD_MODES, default="none")
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("moments", help="univariate and joint instantaneous moments")
    _common(p)
    p.add_argument("--pad", choices=PAD_MODES, default="none")
    p.add_argument("--method", choices=("phase", "complex"), default="phase")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("ellipse", help="ellipse parameters and bandwidth terms")
    _common(p)
    p.add_argument("--pad", choices=PAD_MODES, default="none")
    p.set_defaults(func=cmd_ellipse)

    for name, func, text in (
            ("transform", cmd_transform, "Morse wavelet transforms of x and y"),
            ("ridges", cmd_ridges, "amplitude ridges of the x and y transforms"),
            ("decompose", cmd_decompose, "split into elliptical signal and residual"),
            ("report", cmd_report, "decompose and write the JSON, CSV and SVG report")):
        p = sub.add_parser(name, help=text)
        _common(p)
        _decompose_flags(p)
        p.set_defaults(func=func)

    p = sub.add_parser("synth", help="write a synthetic eddy record and its truth")
    _common(p, needs_input=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--period", type=float, default=20.0)
    p.add_argument("--snr-db", type=float, default=None)
    p.add_argument("--drift-speed", type=float, default=None)
    p.add_argument("--preset", choices=PRESETS, default="paper-like")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        paths = args.func(args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
