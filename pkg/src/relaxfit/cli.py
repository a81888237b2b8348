"""Command-line front end: ``relaxfit {fit,eval,sweep,compare}``."""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .analysis import (
    dispersion_curve,
    max_rel_diff_unnormalized,
    normalize_to_target,
    target_attenuation,
)
from .config import ConfigError, load_config
from .core import (
    RelaxfitError,
    angular_to_hz,
    attenuation_np_per_m_to_db_per_cm,
    make_log_grid,
)
from .discrete import build_relaxation_set
from .formats import SetFileError, atomic_write, format_csv, format_set, read_set

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def eval_grid(cfg):
    lo, hi = cfg.band
    return make_log_grid(lo, hi, cfg.grid_points)


def fit_from_config(cfg, n=None):
    """Build the set for ``cfg`` and compare it with the target on the output grid.

    Returns
    -------
    rset, curve, report, raw_max_rel_diff
    """
    n = cfg.n_mechanisms if n is None else n
    rset = build_relaxation_set(cfg.target, cfg.medium, n, cfg.mode, cfg.tau_sigma_margin)
    curve, report, raw = evaluate_set(rset, cfg)
    return rset, curve, report, raw


def evaluate_set(rset, cfg):
    curve = dispersion_curve(rset.compressibility, cfg.medium, eval_grid(cfg))
    _, report = normalize_to_target(curve, cfg.target, cfg.band)
    raw = max_rel_diff_unnormalized(curve, cfg.target, cfg.band)
    return curve, report, raw


def _band_mhz(band):
    return f"[{angular_to_hz(band[0]) / 1e6:.6g}, {angular_to_hz(band[1]) / 1e6:.6g}] MHz"


def format_fit(rset, report, raw):
    lines = [f"relaxation set: {len(rset)} mechanism(s), mode {rset.mode}, "
             f"calibration scale {rset.scale:.6e}"]
    if rset.source is not None:
        te = rset.tau_epsilon
        lines.append(f"  alpha={rset.source.alpha:.6g}  tau_sigma={rset.source.tau_sigma:.6e} s  "
                     f"tau_epsilon={'not representable' if te is None else f'{te:.6e} s'}")
    lines.append(f"{'nu':>3} {'f_nu [MHz]':>12} {'Omega_nu [rad/s]':>18} {'density [1/(Pa rad/s)]':>24} "
                 f"{'step [rad/s]':>14} {'kappa_nu [1/TPa]':>17}")
    for nu, m in enumerate(rset.mechanisms, start=1):
        lines.append(f"{nu:>3} {angular_to_hz(m.omega_nu) / 1e6:>12.6g} {m.omega_nu:>18.6e} "
                     f"{m.density:>24.6e} {m.step:>14.6e} {m.weight * 1e12:>17.6g}")
    lines.append(f"comparison band {_band_mhz(report.band)}: "
                 f"max rel. diff {report.max_rel_diff:.4f} normalized "
                 f"(scale {report.normalization_scale:.6g}), {raw:.4f} raw")
    return "\n".join(lines)


def report_dict(rset, report, raw):
    return {
        "n_mechanisms": len(rset),
        "mode": rset.mode,
        "calibration_scale": rset.scale,
        "tau_epsilon": rset.tau_epsilon,
        "band_rad_s": list(report.band),
        "max_rel_diff": report.max_rel_diff,
        "max_rel_diff_raw": raw,
        "normalization_scale": report.normalization_scale,
        "mechanisms": [
            {"omega_nu": m.omega_nu, "density": m.density, "step": m.step, "weight": m.weight}
            for m in rset.mechanisms
        ],
    }


def csv_text(rset, cfg):
    curve = dispersion_curve(rset.compressibility, cfg.medium, eval_grid(cfg))
    w = curve.omega
    g = curve.attenuation / target_attenuation(cfg.target, w)
    try:
        scale, _ = normalize_to_target(curve, cfg.target, cfg.band)
        g_norm = scale * g - 1.0
    except ValueError:
        # e.g. a lossless set: no normalization exists
        g_norm = np.full(w.shape, math.nan)
    rows = zip(angular_to_hz(w), w, curve.attenuation,
               attenuation_np_per_m_to_db_per_cm(curve.attenuation),
               curve.phase_velocity, g - 1.0, g_norm)
    return format_csv(rows)


def cmd_fit(args):
    cfg = load_config(args.config)
    rset, _, report, raw = fit_from_config(cfg)
    set_path = args.out or cfg.set_file
    if not args.quiet:
        print(format_fit(rset, report, raw))
    if set_path:
        atomic_write(set_path, format_set(rset))
    elif not args.quiet:
        print(format_set(rset), end="")
    if cfg.report_file:
        atomic_write(cfg.report_file, json.dumps(report_dict(rset, report, raw), indent=2) + "\n")
    return EXIT_OK


def cmd_eval(args):
    cfg = load_config(args.config)
    rset, _ = read_set(args.set)
    text = csv_text(rset, cfg)
    path = args.out or cfg.csv_file
    if path:
        atomic_write(path, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def parse_n_list(text):
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"--n expects comma-separated integers, got {text!r}") from None
    if not values or min(values) < 1:
        raise ConfigError("--n needs at least one mechanism count >= 1")
    return sorted(set(values))


def cmd_sweep(args):
    cfg = load_config(args.config)
    ns = parse_n_list(args.n) if args.n else [cfg.n_mechanisms]
    rows, failed = [], False
    for n in ns:
        try:
            _, _, report, raw = fit_from_config(cfg, n)
            rows.append((n, report.max_rel_diff, raw, None))
        except RelaxfitError as exc:
            failed = True
            rows.append((n, math.nan, math.nan, str(exc)))
    if not args.quiet:
        print(f"comparison band {_band_mhz(cfg.band)}")
        print(f"{'n':>3} {'max_rel_diff':>13} {'max_rel_diff_raw':>17}")
        for n, norm, raw, err in rows:
            if err is None:
                print(f"{n:>3} {norm:>13.4f} {raw:>17.4f}")
            else:
                print(f"{n:>3}  failed: {err}")
        good = [r[1] for r in rows if r[3] is None]
        monotone = all(b <= a for a, b in zip(good, good[1:]))
        print(f"monotone improvement: {'yes' if monotone else 'no'}")
    return EXIT_NUMERIC if failed else EXIT_OK


def cmd_compare(args):
    cfg = load_config(args.config)
    external, _ = read_set(args.set)
    fitted, _, rep_fit, raw_fit = fit_from_config(cfg)
    _, rep_ext, raw_ext = evaluate_set(external, cfg)
    if not args.quiet:
        print(f"comparison band {_band_mhz(cfg.band)}")
        print(f"{'set':<10} {'n':>3} {'max_rel_diff':>13} {'max_rel_diff_raw':>17} {'norm_scale':>11}")
        for name, rs, rep, raw in (("fitted", fitted, rep_fit, raw_fit),
                                   ("external", external, rep_ext, raw_ext)):
            print(f"{name:<10} {len(rs):>3} {rep.max_rel_diff:>13.4f} {raw:>17.4f} "
                  f"{rep.normalization_scale:>11.4g}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="relaxfit",
        description="Discrete relaxation parameters for band-limited power-law attenuation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="YAML job configuration")
        p.add_argument("--quiet", action="store_true", help="suppress human-readable output")

    p = sub.add_parser("fit", help="determine and calibrate a relaxation set")
    common(p)
    p.add_argument("--out", help="set file to write (overrides output.set_file)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("eval", help="evaluate a saved set on the output grid as CSV")
    common(p)
    p.add_argument("--set", required=True, help="relaxation set file")
    p.add_argument("--out", help="CSV file to write (default: output.csv_file or stdout)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="fit quality for several mechanism counts")
    common(p)
    p.add_argument("--n", help="comma-separated mechanism counts")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="compare the fitted set with an external one")
    common(p)
    p.add_argument("--set", required=True, help="external set file")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, SetFileError) as exc:
        print(f"relaxfit: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RelaxfitError as exc:
        print(f"relaxfit: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"relaxfit: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
