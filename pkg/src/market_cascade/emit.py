"""Text output formats: CSV tables, SVG scatter plots and plain PGM regime maps.

All writers take an open text stream and produce byte-identical output for
identical input. Floats are written with 17 significant digits so that
reading them back is exact.
"""
from __future__ import annotations

import csv
import math

import numpy as np

from .market_map import MarketState, Orbit
from .sweep import Regime, RegimeKind, SweepCell, SweepGrid

SWEEP_HEADER = ["c", "beta_ratio", "analytic_regime", "empirical_period", "lyapunov"]
BIFURCATION_HEADER = ["gamma", "z_sample"]
ORBIT_HEADER = ["n", "x", "y"]

SVG_WIDTH, SVG_HEIGHT, SVG_PAD = 1024, 768, 64

# grey level per regime in PGM maps
PGM_LEVELS = {
    RegimeKind.StableCoexistence: 255,
    RegimeKind.PriceBoundViolated: 200,
    RegimeKind.StateUnstable: 160,
    RegimeKind.PrivateUnstable: 120,
    RegimeKind.BothUnstable: 80,
    RegimeKind.NoPositiveEquilibrium: 0,
    RegimeKind.PeriodK: 220,
    RegimeKind.Chaotic: 40,
    RegimeKind.Divergent: 20,
}


def fmt(value: float) -> str:
    return format(float(value), ".17g")


def _writer(stream):
    return csv.writer(stream, lineterminator="\n")


def write_sweep_csv(grid: SweepGrid, stream) -> None:
    w = _writer(stream)
    w.writerow(SWEEP_HEADER)
    for cell in grid.cells:
        period = "" if cell.empirical_period is None else str(cell.empirical_period)
        w.writerow([fmt(cell.c), fmt(cell.beta_ratio), cell.analytic.name, period, fmt(cell.lyapunov)])


def read_sweep_csv(stream) -> list[SweepCell]:
    rows = list(csv.reader(stream))
    if not rows or rows[0] != SWEEP_HEADER:
        raise ValueError("not a sweep CSV: bad header")
    return [
        SweepCell(
            c=float(c),
            beta_ratio=float(r),
            analytic=Regime.from_name(reg),
            empirical_period=int(p) if p else None,
            lyapunov=float(lam),
        )
        for c, r, reg, p, lam in rows[1:]
    ]


def write_orbit_csv(orbit: Orbit, stream) -> None:
    w = _writer(stream)
    w.writerow(ORBIT_HEADER)
    for n, s in enumerate(orbit.states):
        w.writerow([n, fmt(s.x), fmt(s.y)])


def read_orbit_csv(stream) -> list[MarketState]:
    rows = list(csv.reader(stream))
    if not rows or rows[0] != ORBIT_HEADER:
        raise ValueError("not an orbit CSV: bad header")
    return [MarketState(float(x), float(y)) for _, x, y in rows[1:]]


def write_bifurcation_csv(scan, stream) -> None:
    """``scan`` is a sequence of ``(gamma, samples)`` pairs, one row per sample."""
    w = _writer(stream)
    w.writerow(BIFURCATION_HEADER)
    for gamma, samples in scan:
        for z in samples:
            w.writerow([fmt(gamma), fmt(z)])


def write_key_value_csv(rows, stream) -> None:
    w = _writer(stream)
    w.writerow(["key", "value"])
    for key, value in rows:
        w.writerow([key, value])


def _svg_num(v: float) -> str:
    return f"{v:.3f}"


def write_svg(points, bounds, stream, x_label: str = "", y_label: str = "") -> None:
    """Scatter plot of ``points`` on a fixed 1024x768 canvas.

    ``bounds`` is ``(x_min, x_max, y_min, y_max)`` and maps linearly onto the
    plot area inside a 64 px margin, with y growing upwards.
    """
    points = list(points)
    if not points:
        raise ValueError("write_svg needs at least one point")
    x_min, x_max, y_min, y_max = (float(b) for b in bounds)
    if not all(math.isfinite(b) for b in (x_min, x_max, y_min, y_max)):
        raise ValueError("SVG bounds must be finite")
    if not (x_max > x_min and y_max > y_min):
        raise ValueError("SVG bounds must have positive extent")
    left, right = SVG_PAD, SVG_WIDTH - SVG_PAD
    top, bottom = SVG_PAD, SVG_HEIGHT - SVG_PAD

    def px(x):
        return left + (x - x_min) / (x_max - x_min) * (right - left)

    def py(y):
        return bottom - (y - y_min) / (y_max - y_min) * (bottom - top)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>',
        f'<text x="{left}" y="{bottom + 20}" font-size="12" text-anchor="middle">{x_min:.6g}</text>',
        f'<text x="{right}" y="{bottom + 20}" font-size="12" text-anchor="middle">{x_max:.6g}</text>',
        f'<text x="{left - 8}" y="{bottom}" font-size="12" text-anchor="end">{y_min:.6g}</text>',
        f'<text x="{left - 8}" y="{top + 4}" font-size="12" text-anchor="end">{y_max:.6g}</text>',
    ]
    if x_label:
        out.append(f'<text x="{SVG_WIDTH // 2}" y="{bottom + 40}" font-size="14" text-anchor="middle">{x_label}</text>')
    if y_label:
        out.append(f'<text x="16" y="{SVG_HEIGHT // 2}" font-size="14" text-anchor="middle">{y_label}</text>')
    out.append('<g fill="black">')
    for x, y in points:
        if not (math.isfinite(x) and math.isfinite(y)):
            continue
        out.append(f'<circle cx="{_svg_num(px(x))}" cy="{_svg_num(py(y))}" r="0.5"/>')
    out.append("</g>")
    out.append("</svg>")
    stream.write("\n".join(out) + "\n")


def write_pgm(grid: SweepGrid, stream) -> None:
    """Plain (P2) greyscale regime map: columns follow the ratio axis, c grows upwards."""
    nc, nr = len(grid.c_axis), len(grid.ratio_axis)
    levels = np.empty((nc, nr), dtype=int)
    for i in range(nc):
        for j in range(nr):
            levels[i, j] = PGM_LEVELS[grid.cell(i, j).analytic.kind]
    stream.write(f"P2\n{nr} {nc}\n255\n")
    for row in levels[::-1]:
        stream.write(" ".join(str(v) for v in row) + "\n")
