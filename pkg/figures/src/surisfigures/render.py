"""Turn sweep CSV files into the five standard figures.

This package never computes dynamics; everything plotted is read verbatim
from the CSV emitted by the suris command line tool. Rows whose status is
not ok are dropped, rendering is deterministic (fixed salt, no timestamps),
and a CSV without usable rows raises before any file is written.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rcParams["svg.hashsalt"] = "suris-figures"

KINDS = ("contours", "connections", "melnikov", "loglinear-area", "linear-area")

REQUIRED_COLUMNS = {
    "contours": {"delta", "row_kind", "theta", "r", "invariant", "status"},
    "connections": {"delta", "row_kind", "theta", "r", "invariant", "status"},
    "melnikov": {"delta", "nu", "row_kind", "theta", "l_value", "theta_q", "theta_p", "gap", "status"},
    "loglinear-area": {"delta", "epsilon", "area_over_eps", "gamma_series", "gamma_asymptotic", "status"},
    "linear-area": {"delta", "epsilon", "area_numeric", "gamma_series", "anti_integrable", "status"},
}

MARGIN = 0.05  # fractional axis padding on every auto-fit range


class FigureDataError(ValueError):
    """CSV missing, empty, or structurally unusable for the requested kind."""


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    in_path: str
    out_path: str


def load_rows(path: str, kind: str) -> list:
    if kind not in REQUIRED_COLUMNS:
        raise FigureDataError(f"unknown figure kind {kind!r}, expected one of {', '.join(KINDS)}")
    if not os.path.exists(path):
        raise FigureDataError(f"input CSV not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = set(reader.fieldnames or ())
        missing = REQUIRED_COLUMNS[kind] - header
        if missing:
            raise FigureDataError(f"CSV lacks required columns for {kind}: {', '.join(sorted(missing))}")
        rows = list(reader)
    if not rows:
        raise FigureDataError(f"CSV has no data rows: {path}")
    return rows


def _ok(rows):
    return [r for r in rows if r.get("status") == "ok"]


def _by(rows, key):
    groups = {}
    for r in rows:
        groups.setdefault(r[key], []).append(r)
    # insertion order follows the CSV; sort groups numerically for stable layout
    return dict(sorted(groups.items(), key=lambda kv: float(kv[0])))


def _need(rows, kind):
    rows = _ok(rows)
    if not rows:
        raise FigureDataError(f"no ok rows to plot for {kind}")
    return rows


def _build_contours(rows):
    groups = _by([r for r in _need(rows, "contours") if r["row_kind"] == "grid"], "delta")
    if not groups:
        raise FigureDataError("no grid rows for contours")
    fig, axes = plt.subplots(1, len(groups), figsize=(4.6 * len(groups), 4.2), squeeze=False)
    for ax, (delta, rs) in zip(axes[0], groups.items()):
        thetas = sorted({float(r["theta"]) for r in rs})
        moms = sorted({float(r["r"]) for r in rs})
        lookup = {(float(r["theta"]), float(r["r"])): float(r["invariant"]) for r in rs}
        try:
            z = [[lookup[(t, m)] for t in thetas] for m in moms]
        except KeyError as exc:
            raise FigureDataError(f"grid rows do not form a full lattice: {exc}")
        cs = ax.contour(thetas, moms, z, levels=14, linewidths=0.8)
        ax.clabel(cs, inline=True, fontsize=6, fmt="%.2f")
        # the separatrix level 1 - delta, drawn heavier
        ax.contour(thetas, moms, z, levels=[1.0 - float(delta)], colors="k", linewidths=1.6)
        ax.set_title(f"$\\delta$ = {delta}")
        ax.set_xlabel(r"$\theta$")
        ax.set_ylabel(r"$r$")
        ax.margins(MARGIN)
    fig.tight_layout()
    return fig


def _build_connections(rows):
    rows = [r for r in _need(rows, "connections") if r["row_kind"] in ("chi_plus", "chi_minus")]
    if not rows:
        raise FigureDataError("no separatrix rows for connections")
    fig, ax = plt.subplots(figsize=(5.4, 4.2))
    for delta, rs in _by(rows, "delta").items():
        for kind, style in (("chi_plus", "-"), ("chi_minus", "--")):
            branch = sorted((float(r["theta"]), float(r["r"])) for r in rs if r["row_kind"] == kind)
            if branch:
                xs, ys = zip(*branch)
                label = f"$\\delta$ = {delta}" if kind == "chi_plus" else None
                ax.plot(xs, ys, style, linewidth=1.2, label=label)
    ax.axhline(0.0, color="0.7", linewidth=0.6)
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel(r"$r$")
    ax.margins(MARGIN)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig


def _build_melnikov(rows):
    rows = _need(rows, "melnikov")
    profiles = _by([r for r in rows if r["row_kind"] == "profile"], "delta")
    summaries = {r["delta"]: r for r in rows if r["row_kind"] == "summary"}
    if not profiles:
        raise FigureDataError("no profile rows for melnikov")
    fig, ax = plt.subplots(figsize=(5.4, 4.2))
    for delta, rs in profiles.items():
        pts = sorted((float(r["theta"]), float(r["l_value"])) for r in rs)
        xs, ys = zip(*pts)
        (line,) = ax.plot(xs, ys, linewidth=1.4, label=f"$\\delta$ = {delta}")
        summ = summaries.get(delta)
        if summ and summ["theta_p"]:
            color = line.get_color()
            ax.axvline(float(summ["theta_q"]), color=color, linestyle=":", linewidth=0.8)
            ax.axvline(float(summ["theta_p"]), color=color, linestyle="--", linewidth=0.8)
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel(r"$L(\theta)$")
    ax.margins(MARGIN)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig


def _build_loglinear_area(rows):
    rows = [r for r in _need(rows, "loglinear-area") if r["area_over_eps"]]
    if not rows:
        raise FigureDataError("no rows with a measured area ratio (eps = 0 rows carry none)")
    fig, ax = plt.subplots(figsize=(5.4, 4.2))
    # numeric points first, one marker series per eps
    for eps, rs in _by(rows, "epsilon").items():
        pts = sorted((float(r["delta"]), float(r["area_over_eps"])) for r in rs)
        xs, ys = zip(*pts)
        ax.semilogy(xs, ys, "o", markersize=5, label=f"$\\epsilon$ = {eps}")
    # theory overlays from the same rows: thick Gamma, thin asymptote
    theory = sorted({(float(r["delta"]), float(r["gamma_series"]), float(r["gamma_asymptotic"])) for r in rows})
    xs = [t[0] for t in theory]
    ax.semilogy(xs, [t[1] for t in theory], "-", color="k", linewidth=2.0, label=r"$\Gamma(\nu)$")
    ax.semilogy(xs, [t[2] for t in theory], "-", color="0.5", linewidth=0.8, label="asymptotic")
    ax.set_xlabel(r"$\delta$")
    ax.set_ylabel(r"$A/\epsilon$")
    ax.margins(MARGIN)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig


def _build_linear_area(rows):
    rows = [r for r in _need(rows, "linear-area") if r["area_numeric"]]
    if not rows:
        raise FigureDataError("no rows with a measured area")
    fig, ax = plt.subplots(figsize=(5.4, 4.2))
    x_max = 0.0
    for delta, rs in _by(rows, "delta").items():
        pts = sorted((float(r["epsilon"]), float(r["area_numeric"])) for r in rs)
        xs, ys = zip(*pts)
        (line,) = ax.plot(xs, ys, "o", markersize=5, label=f"$\\delta$ = {delta}")
        color = line.get_color()
        x_max = max(x_max, max(xs))
        gamma = float(rs[0]["gamma_series"])
        grid = [x_max * k / 200 for k in range(201)]
        ax.plot(grid, [gamma * x for x in grid], "-", color=color, linewidth=1.8)
        # anti-integrable asymptote A = eps - c, drawn where it is positive
        c = float(rs[0]["epsilon"]) - float(rs[0]["anti_integrable"])
        tail = [x for x in grid if x > c]
        if tail:
            ax.plot(tail, [x - c for x in tail], "-", color=color, linewidth=0.7)
    ax.set_xlabel(r"$\epsilon$")
    ax.set_ylabel(r"$A$")
    ax.margins(MARGIN)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig


_BUILDERS = {
    "contours": _build_contours,
    "connections": _build_connections,
    "melnikov": _build_melnikov,
    "loglinear-area": _build_loglinear_area,
    "linear-area": _build_linear_area,
}


def build_figure(kind: str, rows):
    """Figure object for a row list; split out so tests can introspect axes."""
    if kind not in _BUILDERS:
        raise FigureDataError(f"unknown figure kind {kind!r}, expected one of {', '.join(KINDS)}")
    return _BUILDERS[kind](rows)


def render(spec: FigureSpec) -> str:
    """Validate, build, and write the figure; returns the output path.

    Nothing is written when validation fails, and the output is byte-stable
    across re-runs of the same CSV (svg carries no date, fixed hash salt).
    """
    rows = load_rows(spec.in_path, spec.kind)
    fig = build_figure(spec.kind, rows)
    try:
        kwargs = {}
        if spec.out_path.lower().endswith(".svg"):
            kwargs["metadata"] = {"Date": None}
        fig.savefig(spec.out_path, dpi=160, **kwargs)
    finally:
        plt.close(fig)
    return spec.out_path
