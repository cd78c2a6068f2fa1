"""Parameter sweeps over (alpha, beta) / (alpha, c) grids, CSV and SVG emission.

The sweep runs every grid cell simultaneously with vectorized numpy iteration
(burn-in, then a recorded window) and applies the same period rule as the
scalar detector: the smallest p with a close return and a p-periodic branch
itinerary over the whole window.  Output is a deterministic CSV, one row per
cell in row-major order, and an optional SVG heat map with tongue-boundary
overlays.
"""

from __future__ import annotations

import colorsys
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path

import numpy as np

from .families import FAMILY_NAMES
from .tongue_solver import TongueInterval

CSV_HEADER = "alpha,c_or_beta,period,l,rotation_num,rotation_den,note"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


@dataclass
class SweepConfig:
    """Grid sweep description; the second axis is beta for linear, the cut c otherwise."""

    family: str = "linear"
    width: int = 64
    height: int = 64
    alpha_min: float = 0.05
    alpha_max: float = 0.95
    second_min: float = 0.05
    second_max: float = 0.95
    max_period: int = 64
    tol: float = 1e-9
    burn_in: int = 10_000
    seed: int = 0
    out_csv: str | None = None
    out_svg: str | None = None

    def __post_init__(self) -> None:
        if self.family not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILY_NAMES}")
        if self.width < 2 or self.height < 2:
            raise ValueError("grid dimensions must be at least 2")
        if self.max_period < 2:
            raise ValueError("max period must be at least 2")
        if not self.alpha_min < self.alpha_max or not self.second_min < self.second_max:
            raise ValueError("axis ranges must be non-degenerate and ordered")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")


@dataclass
class SweepResult:
    """Detected (period, wrap count) per cell; period 0 marks not-found."""

    config: SweepConfig
    alphas: np.ndarray
    seconds: np.ndarray
    period: np.ndarray
    wraps: np.ndarray
    notes: dict[tuple[int, int], str] = field(default_factory=dict)


def _cell_setup(cfg: SweepConfig, a: np.ndarray, y: np.ndarray):
    """Per-family vector step closure, start state, and validity mask."""
    if cfg.family == "linear":
        valid = np.ones_like(a, dtype=bool)

        def step(x):
            z = a * x + y
            wrap = z >= 1.0
            return z - wrap, wrap

        return step, np.zeros_like(a), valid
    if cfg.family == "quadratic":
        fc = a * y * y
        valid = (y > 0.0) & (y < 1.0) & (a * (1.0 - y * y) < 1.0) & (a > 0.0)

        def step(x):
            wrap = x >= y
            return a * x * x - fc + (~wrap), wrap

        return step, np.zeros_like(a), valid
    if cfg.family == "sqrt":
        sq = np.sqrt(np.maximum(y, 0.0))
        fc = a * sq
        valid = (y > 0.0) & (y < 1.0) & (a * (1.0 - sq) < 1.0) & (a > 0.0)

        def step(x):
            wrap = x >= y
            return a * np.sqrt(np.maximum(x, 0.0)) - fc + (~wrap), wrap

        return step, np.zeros_like(a), valid
    # sine: the member at cut c lives on [g(c), g(c) + 1]
    g_of_c = a * (0.5 * y + 0.25 * np.sin(y))
    valid = (y > 0.0) & (g_of_c + 1.0 > y) & (a > 0.0)

    def step(x):
        wrap = x >= y
        return a * (0.5 * x + 0.25 * np.sin(x)) + (~wrap), wrap

    return step, g_of_c.copy(), valid


def run_atlas(cfg: SweepConfig) -> SweepResult:
    """Sweep the grid and detect the locking period of every cell.

    Deterministic for a fixed config: grid nodes are linspace endpoints, cells
    iterate in lockstep, and ties resolve by the smallest period.
    """
    alphas = np.linspace(cfg.alpha_min, cfg.alpha_max, cfg.width)
    seconds = np.linspace(cfg.second_min, cfg.second_max, cfg.height)
    aa, yy = np.meshgrid(alphas, seconds, indexing="ij")
    a = aa.ravel()
    y = yy.ravel()
    step, x0, valid = _cell_setup(cfg, a, y)

    x = np.where(valid, x0, np.nan)
    for _ in range(cfg.burn_in):
        x, _ = step(x)

    cut = (1.0 - y) / a if cfg.family == "linear" else y
    window = 2 * cfg.max_period + 2
    xs = np.empty((window, x.size))
    bits = np.zeros((window, x.size), dtype=bool)
    for j in range(window):
        xs[j] = x
        bits[j] = x >= cut
        x, _ = step(x)

    period = np.zeros(x.size, dtype=int)
    wraps = np.zeros(x.size, dtype=int)
    undecided = valid.copy()
    for p in range(1, cfg.max_period + 1):
        close = np.abs(xs[p] - xs[0]) < cfg.tol
        periodic = np.all(bits[p:] == bits[: window - p], axis=0)
        hit = undecided & close & periodic
        if np.any(hit):
            period[hit] = p
            wraps[hit] = np.sum(bits[:p, hit], axis=0)
            undecided &= ~hit
        if not np.any(undecided):
            break

    notes = {}
    invalid = ~valid
    if np.any(invalid):
        for flat in np.nonzero(invalid)[0]:
            i, j = divmod(int(flat), cfg.height)
            notes[(i, j)] = "invalid-parameters"
    return SweepResult(cfg, alphas, seconds,
                       period.reshape(cfg.width, cfg.height),
                       wraps.reshape(cfg.width, cfg.height), notes)


def atlas_csv_text(result: SweepResult) -> str:
    """CSV of the sweep, one row per cell in row-major (alpha-outer) order."""
    lines = [CSV_HEADER]
    for i, a in enumerate(result.alphas):
        for j, s in enumerate(result.seconds):
            p = int(result.period[i, j])
            l = int(result.wraps[i, j])
            if p > 0:
                g = gcd(l, p) or 1
                num, den = l // g, p // g
            else:
                num, den = 0, 1
            note = result.notes.get((i, j), "")
            lines.append(f"{_fmt(a)},{_fmt(s)},{p},{l},{num},{den},{note}")
    return "\n".join(lines) + "\n"


def write_atlas_csv(result: SweepResult, path: str | Path) -> None:
    Path(path).write_text(atlas_csv_text(result), encoding="ascii")


def tongues_csv_text(tongues: list[TongueInterval]) -> str:
    """CSV of solved tongue intervals sorted by c_left, 17 significant digits."""
    lines = ["n,l,c_left,c_right,iterations,residual_left,residual_right"]
    for t in sorted(tongues, key=lambda t: t.c_left):
        lines.append(
            f"{t.rational.n},{t.rational.l},{_fmt(t.c_left)},{_fmt(t.c_right)},"
            f"{t.iterations},{_fmt(t.residuals[0])},{_fmt(t.residuals[1])}"
        )
    return "\n".join(lines) + "\n"


def write_tongues_csv(tongues: list[TongueInterval], path: str | Path) -> None:
    Path(path).write_text(tongues_csv_text(tongues), encoding="ascii")


def _build_palette() -> list[str]:
    """64 fixed cell colours; index 0 (not-found) is a light grey."""
    colors = ["#d9d9d9"]
    for i in range(1, 64):
        hue = (i * 0.6180339887498949) % 1.0
        sat = 0.62 if i % 2 else 0.78
        val = 0.88 if i % 3 else 0.70
        r, g, b = colorsys.hsv_to_rgb(hue, sat, val)
        colors.append(f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}")
    return colors


PALETTE = _build_palette()


class CsvFormatError(ValueError):
    """Malformed CSV input, carrying the offending line number."""

    def __init__(self, path: str, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.line = line


def _parse_grid_csv(path: str | Path):
    text = Path(path).read_text(encoding="ascii")
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise CsvFormatError(str(path), 1, f"expected header {CSV_HEADER!r}")
    rows = []
    for k, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 7:
            raise CsvFormatError(str(path), k, f"expected 7 fields, got {len(parts)}")
        try:
            rows.append((float(parts[0]), float(parts[1]), int(parts[2])))
        except ValueError as exc:
            raise CsvFormatError(str(path), k, str(exc)) from None
    if not rows:
        raise CsvFormatError(str(path), 2, "no data rows")
    alphas = sorted({r[0] for r in rows})
    seconds = sorted({r[1] for r in rows})
    if len(rows) != len(alphas) * len(seconds):
        raise CsvFormatError(str(path), len(lines),
                             f"{len(rows)} rows do not fill a {len(alphas)}x{len(seconds)} grid")
    return alphas, seconds, rows


def _parse_tongue_csv(path: str | Path):
    text = Path(path).read_text(encoding="ascii")
    lines = text.splitlines()
    expected = "n,l,c_left,c_right,iterations,residual_left,residual_right"
    if not lines or lines[0] != expected:
        raise CsvFormatError(str(path), 1, f"expected header {expected!r}")
    out = []
    for k, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 7:
            raise CsvFormatError(str(path), k, f"expected 7 fields, got {len(parts)}")
        try:
            out.append((int(parts[0]), int(parts[1]), float(parts[2]), float(parts[3])))
        except ValueError as exc:
            raise CsvFormatError(str(path), k, str(exc)) from None
    return out


def render_svg(grid_csv: str | Path, out_path: str | Path,
               tongue_overlays: list[tuple[float, str | Path]] | None = None,
               cell: int = 8) -> str:
    """Standalone SVG heat map of a sweep CSV with optional tongue overlays.

    Each cell becomes one rectangle coloured by period modulo the 64-entry
    palette.  Overlays are (alpha, tongue-csv) pairs; boundaries of the same
    tongue across several alphas join into polylines, a single alpha renders
    as short ticks.
    """
    alphas, seconds, rows = _parse_grid_csv(grid_csv)
    nx, ny = len(alphas), len(seconds)
    a_index = {a: i for i, a in enumerate(alphas)}
    s_index = {s: j for j, s in enumerate(seconds)}
    width_px, height_px = nx * cell, ny * cell

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width_px}" height="{height_px}" '
        f'viewBox="0 0 {width_px} {height_px}">',
    ]
    for a, s, p in rows:
        i = a_index[a]
        j = s_index[s]
        color = PALETTE[p % 64]
        x = i * cell
        yy = (ny - 1 - j) * cell
        parts.append(f'<rect x="{x}" y="{yy}" width="{cell}" height="{cell}" fill="{color}"/>')

    if tongue_overlays:
        def x_px(a: float) -> float:
            return (a - alphas[0]) / (alphas[-1] - alphas[0] or 1.0) * (nx - 1) * cell + cell / 2

        def y_px(s: float) -> float:
            return (ny - 1) * cell - (s - seconds[0]) / (seconds[-1] - seconds[0] or 1.0) * (ny - 1) * cell + cell / 2

        curves: dict[tuple[int, int], list[tuple[float, float, float]]] = {}
        for a_val, tpath in tongue_overlays:
            for n, l, c_left, c_right in _parse_tongue_csv(tpath):
                curves.setdefault((n, l), []).append((a_val, c_left, c_right))
        for (n, l), pts in sorted(curves.items()):
            pts.sort()
            for side in (1, 2):
                if len(pts) == 1:
                    a_val, *cs = pts[0]
                    xc, yc = x_px(a_val), y_px(cs[side - 1])
                    parts.append(
                        f'<line x1="{xc - cell / 2:.2f}" y1="{yc:.2f}" '
                        f'x2="{xc + cell / 2:.2f}" y2="{yc:.2f}" '
                        f'stroke="black" stroke-width="1"/>'
                    )
                else:
                    coords = " ".join(f"{x_px(p_[0]):.2f},{y_px(p_[side]):.2f}" for p_ in pts)
                    parts.append(f'<polyline points="{coords}" fill="none" '
                                 f'stroke="black" stroke-width="1"/>')
    parts.append("</svg>")
    svg = "\n".join(parts) + "\n"
    Path(out_path).write_text(svg, encoding="ascii")
    return svg
