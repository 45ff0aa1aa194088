"""Command line front end: gamma tables, Melnikov profiles, phase portraits, lobe sweeps.

Output is a flat table in csv or json, one row per computed cell. A failing
cell gets a status code and blank value columns; the sweep always continues.
Exit code is 0 when every row is ok, 1 on option validation problems and 2
when at least one row carries an error status.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from mpmath import mp, mpf

from .connection import chi_minus, chi_plus
from .heteroclinic import (
    BisectionFailed,
    FinderOptions,
    MultiplierTooLarge,
    NoSignChange,
    TailDivergence,
    lobe_area_numeric,
)
from .melnikov import anti_integrable_area, melnikov_profile
from .numerics import (
    DEFAULT_DIGITS,
    MIN_DIGITS,
    DomainError,
    gamma_asymptotic,
    gamma_elliptic,
    gamma_series,
)
from .surismap import MapParams, PhasePoint, invariant

GAMMA_COLUMNS = [
    "delta",
    "nu",
    "gamma_series",
    "gamma_elliptic",
    "gamma_asymptotic",
    "anti_integrable_minus_eps",
    "status",
]

MELNIKOV_COLUMNS = [
    "delta",
    "nu",
    "row_kind",
    "theta",
    "l_value",
    "theta_q",
    "theta_p",
    "gap",
    "status",
]

PHASE_COLUMNS = ["delta", "row_kind", "theta", "r", "invariant", "status"]

LOBE_COLUMNS = [
    "delta",
    "nu",
    "epsilon",
    "area_numeric",
    "area_over_eps",
    "gamma_series",
    "gamma_asymptotic",
    "anti_integrable",
    "rel_err",
    "digits",
    "status",
]

STATUS_CODES = {
    MultiplierTooLarge: "multiplier_too_large",
    NoSignChange: "no_sign_change",
    BisectionFailed: "bisection_failed",
    TailDivergence: "tail_divergence",
    DomainError: "domain_error",
}


def _fmt(x, digits: int):
    if x is None:
        return None
    return mp.nstr(mpf(x), digits)


def _split_values(raw):
    out = []
    for chunk in raw:
        out.extend(p for p in str(chunk).split(",") if p.strip())
    return [p.strip() for p in out]


def _load_config(path):
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config must be a JSON object")
    return cfg


def _config_list(cfg, key):
    val = cfg.get(key)
    if val is None:
        return None
    if not isinstance(val, list):
        val = [val]
    return [v if isinstance(v, str) else str(v) for v in val]


def _resolve_digits(args, cfg) -> int:
    if args.digits is not None:
        return args.digits
    env = os.environ.get("SURIS_DIGITS")
    if env:
        return int(env)
    if "digits" in cfg:
        return int(cfg["digits"])
    return DEFAULT_DIGITS


def _resolve_workers() -> int:
    env = os.environ.get("SURIS_WORKERS")
    if not env:
        return 1
    n = int(env)
    return max(1, n)


def _gamma_row(delta_str: str, digits: int) -> dict:
    row = dict.fromkeys(GAMMA_COLUMNS)
    row["delta"] = delta_str
    row["status"] = "ok"
    try:
        with mp.workdps(digits):
            params = MapParams(mpf(delta_str))
            row["delta"] = _fmt(params.delta, digits)
            row["nu"] = _fmt(params.nu, digits)
            row["gamma_series"] = _fmt(gamma_series(params.nu), digits)
            row["gamma_elliptic"] = _fmt(gamma_elliptic(params.nu), digits)
            row["gamma_asymptotic"] = _fmt(gamma_asymptotic(params.nu), digits)
            row["anti_integrable_minus_eps"] = _fmt(anti_integrable_area(params), digits)
    except tuple(STATUS_CODES) as exc:
        row["status"] = STATUS_CODES[type(exc)]
    return row


def _melnikov_rows(delta_str: str, digits: int, grid: int) -> list:
    rows = []
    try:
        with mp.workdps(digits):
            params = MapParams(mpf(delta_str))
            prof = melnikov_profile(params.nu, n_points=grid)
            for th, lv in zip(prof.thetas, prof.l_values):
                row = dict.fromkeys(MELNIKOV_COLUMNS)
                row.update(
                    delta=_fmt(params.delta, digits),
                    nu=_fmt(params.nu, digits),
                    row_kind="profile",
                    theta=_fmt(th, digits),
                    l_value=_fmt(lv, digits),
                    status="ok",
                )
                rows.append(row)
            summary = dict.fromkeys(MELNIKOV_COLUMNS)
            summary.update(
                delta=_fmt(params.delta, digits),
                nu=_fmt(params.nu, digits),
                row_kind="summary",
                theta_q=_fmt(prof.theta_q, digits),
                theta_p=_fmt(prof.theta_p, digits),
                gap=_fmt(prof.gap, digits),
                status="ok",
            )
            rows.append(summary)
    except tuple(STATUS_CODES) as exc:
        row = dict.fromkeys(MELNIKOV_COLUMNS)
        row.update(delta=delta_str, row_kind="summary", status=STATUS_CODES[type(exc)])
        rows.append(row)
    return rows


def _phase_rows(delta_str: str, digits: int, grid: int) -> list:
    rows = []
    try:
        with mp.workdps(digits):
            params = MapParams(mpf(delta_str))
            d_fmt = _fmt(params.delta, digits)
            for i in range(grid):
                th = mpf(-1) / 2 + mpf(i) / (grid - 1)
                for j in range(grid):
                    r = -1 + 2 * mpf(j) / (grid - 1)
                    row = dict.fromkeys(PHASE_COLUMNS)
                    row.update(
                        delta=d_fmt,
                        row_kind="grid",
                        theta=_fmt(th, digits),
                        r=_fmt(r, digits),
                        invariant=_fmt(invariant(params, PhasePoint(th, r)), digits),
                        status="ok",
                    )
                    rows.append(row)
            # separatrix branches r = chi^{+-}(theta), endpoints are the saddles
            n_curve = 4 * grid + 1
            for kind, fn in (("chi_plus", chi_plus), ("chi_minus", chi_minus)):
                for i in range(n_curve):
                    th = mpf(-1) / 2 + mpf(i) / (n_curve - 1)
                    r = fn(params, th)
                    row = dict.fromkeys(PHASE_COLUMNS)
                    row.update(
                        delta=d_fmt,
                        row_kind=kind,
                        theta=_fmt(th, digits),
                        r=_fmt(r, digits),
                        invariant=_fmt(invariant(params, PhasePoint(th, r)), digits),
                        status="ok",
                    )
                    rows.append(row)
    except tuple(STATUS_CODES) as exc:
        row = dict.fromkeys(PHASE_COLUMNS)
        row.update(delta=delta_str, row_kind="grid", status=STATUS_CODES[type(exc)])
        rows.append(row)
    return rows


def _lobe_cell(delta_str: str, eps_str: str, digits: int, tol_str) -> dict:
    # module level so worker processes can pickle it
    row = dict.fromkeys(LOBE_COLUMNS)
    row["delta"] = delta_str
    row["epsilon"] = eps_str
    row["digits"] = digits
    row["status"] = "ok"
    try:
        with mp.workdps(digits):
            params = MapParams(mpf(delta_str), mpf(eps_str))
            opts = FinderOptions(rho=mpf(tol_str)) if tol_str else FinderOptions()
            rec = lobe_area_numeric(params, opts)
            row["delta"] = _fmt(rec.delta, digits)
            row["nu"] = _fmt(rec.nu, digits)
            row["epsilon"] = _fmt(rec.eps, digits)
            row["area_numeric"] = _fmt(rec.area_numeric, digits)
            row["gamma_series"] = _fmt(rec.melnikov_area / rec.eps if rec.eps > 0 else gamma_series(rec.nu), digits)
            row["gamma_asymptotic"] = _fmt(rec.asymptotic_area / rec.eps if rec.eps > 0 else gamma_asymptotic(rec.nu), digits)
            row["anti_integrable"] = _fmt(rec.anti_integrable_area, digits)
            if rec.eps > 0:
                row["area_over_eps"] = _fmt(rec.area_numeric / rec.eps, digits)
                row["rel_err"] = _fmt(rec.rel_err, digits)
    except tuple(STATUS_CODES) as exc:
        row["status"] = STATUS_CODES[type(exc)]
    return row


def _lobe_rows(deltas, epss, digits, tol_str) -> list:
    cells = [(d, e) for d in deltas for e in epss]
    workers = _resolve_workers()
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_lobe_cell, [c[0] for c in cells], [c[1] for c in cells],
                                 [digits] * len(cells), [tol_str] * len(cells)))
    return [_lobe_cell(d, e, digits, tol_str) for d, e in cells]


def _emit(rows, columns, fmt: str, out_path):
    if fmt == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if row[k] is None else row[k]) for k in columns})
        text = buf.getvalue()
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(sub):
    sub.add_argument("--delta", action="append", default=None,
                     help="map parameter in (0,1); repeat or comma separate for a sweep")
    sub.add_argument("--digits", type=int, default=None, help="working precision in decimal digits")
    sub.add_argument("--out", default=None, help="output file (default stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default=None)
    sub.add_argument("--config", default=None, help="JSON file with defaults for the flags above")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="suris", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p_gamma = subs.add_parser("gamma", help="lobe-area coefficient by all three routes")
    _add_common(p_gamma)

    p_mel = subs.add_parser("melnikov", help="Melnikov sum profile over the fundamental domain")
    _add_common(p_mel)
    p_mel.add_argument("--grid", type=int, default=None, help="interior profile points (default 101)")

    p_phase = subs.add_parser("phase", help="invariant values on a phase-space grid plus separatrix curves")
    _add_common(p_phase)
    p_phase.add_argument("--grid", type=int, default=None, help="grid points per axis (default 21)")

    p_lobe = subs.add_parser("lobe", help="numerical lobe area against the Melnikov prediction")
    _add_common(p_lobe)
    p_lobe.add_argument("--eps", action="append", default=None,
                        help="perturbation strength; repeat or comma separate for a sweep")
    p_lobe.add_argument("--tol", default=None, help="symmetry-line residual target for the orbit finder")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    cfg = {}
    if args.config:
        try:
            cfg = _load_config(args.config)
        except (OSError, ValueError) as exc:
            print(f"suris: cannot read config: {exc}", file=sys.stderr)
            return 1

    try:
        digits = _resolve_digits(args, cfg)
    except ValueError:
        print("suris: digits must be an integer", file=sys.stderr)
        return 1
    if digits < MIN_DIGITS:
        print(f"suris: digits must be at least {MIN_DIGITS}", file=sys.stderr)
        return 1

    deltas = _split_values(args.delta) if args.delta else (_config_list(cfg, "delta") or ["0.5"])
    fmt = args.format or cfg.get("format") or "csv"
    out_path = args.out or cfg.get("out")

    if args.command == "gamma":
        rows = [_gamma_row(d, digits) for d in deltas]
        columns = GAMMA_COLUMNS
    elif args.command == "melnikov":
        grid = args.grid or int(cfg.get("grid", 101))
        if grid < 3:
            print("suris: melnikov grid must be at least 3", file=sys.stderr)
            return 1
        rows = [r for d in deltas for r in _melnikov_rows(d, digits, grid)]
        columns = MELNIKOV_COLUMNS
    elif args.command == "phase":
        grid = args.grid or int(cfg.get("grid", 21))
        if grid < 2:
            print("suris: phase grid must be at least 2", file=sys.stderr)
            return 1
        rows = [r for d in deltas for r in _phase_rows(d, digits, grid)]
        columns = PHASE_COLUMNS
    else:
        epss = _split_values(args.eps) if args.eps else (_config_list(cfg, "eps") or ["0.001"])
        tol = args.tol or cfg.get("tol")
        rows = _lobe_rows(deltas, epss, digits, tol)
        columns = LOBE_COLUMNS

    _emit(rows, columns, fmt, out_path)
    return 0 if all(r["status"] == "ok" for r in rows) else 2


if __name__ == "__main__":
    sys.exit(main())
