"""Command-line front end.

All energies are in units of hbar^2 / (2 M R^2).  Output is CSV (17
significant digits) or JSON with the same field names.

Exit codes: 0 success, 1 numerical check failed, 2 invalid input,
3 not enough levels found (or too many failed sweep points).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .classical import bohr_sommerfeld_level, potential_minimum
from .exceptions import InsufficientRoots, SphereHeunError, ValidationError
from .limits import landau_level, planar_limit_check
from .oracle import oracle_spectrum
from .params import make_config
from .spectrum import ScanSettings, spectrum
from .wavefunction import build_wavefunction, eval_F, norm_integral

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_INSUFFICIENT = 3

SWEEP_SUCCESS_FRACTION = 0.9
SOURCES = ("cf", "oracle", "bohr_sommerfeld", "landau")


class _Parser(argparse.ArgumentParser):
    # one line on stderr instead of the usage block
    def error(self, message):
        raise ValidationError(message)


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _emit(rows, fields, fmt, out, footer=()):
    if fmt == "json":
        payload = {"rows": [dict(zip(fields, r)) for r in rows]}
        for key, value in footer:
            payload[key] = value
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(fields)
    for r in rows:
        writer.writerow([_fmt(v) for v in r])
    for key, value in footer:
        out.write(f"# {key}={_fmt(value)}\n")


def _add_config_args(p):
    p.add_argument("--S", type=float, required=True, help="half flux of the monopole")
    p.add_argument("--m", type=int, required=True, help="azimuthal quantum number")
    p.add_argument("--coulomb", type=float, required=True, help="Coulomb ratio R / l_0")


def _add_format(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _config(args):
    return make_config(args.S, args.m, args.coulomb)


def cmd_spectrum(args, out):
    cfg = _config(args)
    levels = spectrum(cfg, args.levels, ScanSettings(eps_max=args.scan_max, step=args.step))
    rows = [(cfg.S, cfg.m, cfg.coulomb, lv.n, lv.epsilon, lv.h_n, lv.cf_residual) for lv in levels]
    _emit(rows, ["S", "m", "coulomb", "n", "epsilon", "h_n", "cf_residual"], args.format, out)
    return EXIT_OK


def _parse_range(text):
    try:
        lo, hi, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise ValidationError(f"--S-range must look like lo:hi:step, got {text!r}") from None
    if not step > 0 or hi < lo:
        raise ValidationError(f"--S-range needs step > 0 and hi >= lo, got {text!r}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + i * step for i in range(count)]


def _parse_int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ValidationError(f"expected comma-separated integers, got {text!r}") from None


def _sweep_point(task):
    S, m, coulomb, levels, source = task
    try:
        cfg = make_config(S, m, coulomb)
        if source == "cf":
            found = [(lv.epsilon, lv.h_n) for lv in spectrum(cfg, levels)]
        elif source == "oracle":
            found = [(e, None) for e in oracle_spectrum(cfg, levels)]
        elif source == "bohr_sommerfeld":
            found = [(bohr_sommerfeld_level(cfg, n), None) for n in range(levels)]
        else:
            found = [(landau_level(S, m, n), None) for n in range(levels)]
        return [(S, m, coulomb, n + 1, e, h, source, "") for n, (e, h) in enumerate(found)]
    except (SphereHeunError, ValueError, ArithmeticError) as exc:
        reason = f"{type(exc).__name__}: {exc}".replace("\n", " ")
        return [(S, m, coulomb, n + 1, None, None, source, reason) for n in range(levels)]


def cmd_sweep(args, out):
    S_values = _parse_range(args.S_range)
    m_values = _parse_int_list(args.m_list)
    if not m_values:
        raise ValidationError("--m-list is empty")
    tasks = [(S, m, args.coulomb, args.levels, args.source) for S in S_values for m in m_values]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_point, tasks))
    else:
        results = [_sweep_point(t) for t in tasks]
    rows = [r for chunk in results for r in chunk]
    rows.sort(key=lambda r: (r[0], r[1], r[3]))
    fields = ["S", "m", "coulomb", "n", "epsilon", "h_n", "source", "reason"]
    if args.out == "-":
        _emit(rows, fields, args.format, out)
    else:
        with open(args.out, "w", newline="") as fh:
            _emit(rows, fields, args.format, fh)
    ok = sum(1 for chunk in results if not chunk[0][7])
    frac = ok / len(results)
    if frac < SWEEP_SUCCESS_FRACTION:
        print(f"error: only {ok} of {len(results)} sweep points succeeded", file=sys.stderr)
        return EXIT_INSUFFICIENT
    return EXIT_OK


def cmd_wavefunction(args, out):
    cfg = _config(args)
    level = spectrum(cfg, args.n)[-1]
    wf = build_wavefunction(cfg, level)
    k = args.theta_samples
    theta = (np.arange(k) + 0.5) * (math.pi / k)
    F = eval_F(wf, theta)
    rows = list(zip(theta.tolist(), F.tolist()))
    footer = [("epsilon", level.epsilon), ("norm_integral", norm_integral(wf))]
    _emit(rows, ["theta", "F"], args.format, out, footer)
    return EXIT_OK


def cmd_classical(args, out):
    cfg = _config(args)
    eps_bs = bohr_sommerfeld_level(cfg, args.n)
    pm = potential_minimum(cfg)
    fields = ["S", "m", "coulomb", "n", "eps0", "epsilon_bs"]
    row = [cfg.S, cfg.m, cfg.coulomb, args.n, pm.eps0, eps_bs]
    if args.compare:
        # Bohr-Sommerfeld index n counts from 0, the quantum level index from 1
        eps_q = spectrum(cfg, args.n + 1)[-1].epsilon
        fields += ["epsilon_quantum", "deviation_percent"]
        row += [eps_q, 100.0 * (eps_bs - eps_q) / eps_q]
    _emit([row], fields, args.format, out)
    return EXIT_OK


def cmd_oracle_check(args, out):
    cfg = _config(args)
    cf = [lv.epsilon for lv in spectrum(cfg, args.k)]
    fd = oracle_spectrum(cfg, args.k, args.N_grid, richardson=args.richardson)
    rows = []
    worst = 0.0
    for n, (a, b) in enumerate(zip(cf, fd), start=1):
        dev = abs(a - b) / max(abs(a), 1.0)
        worst = max(worst, dev)
        rows.append((n, a, b, dev))
    _emit(rows, ["n", "epsilon_cf", "epsilon_oracle", "rel_deviation"], args.format, out,
          [("max_rel_deviation", worst)])
    if worst >= args.tol:
        print(f"error: max relative deviation {worst:.3e} exceeds {args.tol:g}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_limits(args, out):
    try:
        S_seq = [float(v) for v in args.S_sequence.split(",") if v.strip()]
    except ValueError:
        raise ValidationError(f"--S-sequence must be comma-separated numbers, got {args.S_sequence!r}") from None
    c = args.coulomb_scale
    if not (c >= 0 and math.isfinite(c)):
        raise ValidationError(f"--coulomb-scale must be finite and non-negative, got {c}")
    try:
        report = planar_limit_check(args.m, lambda S: c * math.sqrt(S), S_seq)
    except ValueError as exc:
        if isinstance(exc, SphereHeunError):
            raise
        raise ValidationError(str(exc)) from None
    rows = list(zip(report.S_sequence, report.shifts, report.scaled_levels))
    _emit(rows, ["S", "shift", "scaled_shift"], args.format, out, [("converged", report.converged)])
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="sphere-heun", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="lowest energy levels")
    _add_config_args(p)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--scan-max", type=float, default=None)
    p.add_argument("--step", type=float, default=None)
    _add_format(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sweep", help="levels over a range of S")
    p.add_argument("--m-list", required=True)
    p.add_argument("--S-range", required=True, help="lo:hi:step, both ends included")
    p.add_argument("--coulomb", type=float, required=True)
    p.add_argument("--levels", type=int, default=1)
    p.add_argument("--source", choices=SOURCES, default="cf")
    p.add_argument("--out", default="-")
    p.add_argument("--jobs", type=int, default=1)
    _add_format(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("wavefunction", help="sample the normalized F(theta) of level n")
    _add_config_args(p)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--theta-samples", type=int, default=512)
    _add_format(p)
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("classical", help="Bohr-Sommerfeld level n (counted from 0)")
    _add_config_args(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--compare", action="store_true")
    _add_format(p)
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("oracle-check", help="continued fraction against finite differences")
    _add_config_args(p)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--N-grid", type=int, default=8000)
    p.add_argument("--richardson", action="store_true")
    p.add_argument("--tol", type=float, default=1e-3)
    _add_format(p)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("limits", help="ground-level Coulomb shift for growing spheres")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--coulomb-scale", type=float, default=1.0, help="coulomb = scale * sqrt(S)")
    p.add_argument("--S-sequence", default="25,50,100,200")
    _add_format(p)
    p.set_defaults(func=cmd_limits)
    return parser


def _check_counts(args):
    for name in ("levels", "n", "theta_samples", "k", "N_grid", "jobs"):
        value = getattr(args, name, None)
        # the Bohr-Sommerfeld index starts at 0
        floor = 0 if (name == "n" and args.command == "classical") else 1
        if value is not None and value < floor:
            raise ValidationError(f"--{name.replace('_', '-')} must be at least {floor}, got {value}")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        _check_counts(args)
        buf = io.StringIO()
        code = args.func(args, buf)
        out.write(buf.getvalue())
        return code
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InsufficientRoots as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT
    except (SphereHeunError, ValueError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}".replace("\n", " "), file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
