"""Deterministic SVG line charts of sweep results.

Output is a self-contained SVG document: axes, tick labels, a legend and
one ``<polyline>`` per series. Identical input yields byte-identical
output (fixed geometry, fixed number formatting, no timestamps).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from lsqbench.core.bench import NUMERIC_COLUMNS, BenchRecord
from lsqbench.core.stats import records_frame
from lsqbench.errors import ConfigurationError

logger = logging.getLogger(__name__)

WIDTH = 640
HEIGHT = 400
MARGIN_LEFT = 80
MARGIN_RIGHT = 170
MARGIN_TOP = 40
MARGIN_BOTTOM = 56
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


@dataclass(frozen=True)
class Series:
    label: str
    xs: tuple[float, ...]
    ys: tuple[float, ...]


@dataclass(frozen=True)
class Axes:
    x_label: str
    y_label: str
    title: str = ""


@dataclass(frozen=True)
class FigurePreset:
    """Named recipe turning a records table into one chart."""

    name: str
    x: str
    ys: tuple[str, ...]
    filters: tuple[tuple[str, float], ...]
    title: str
    log_x: bool = False
    log_y: bool = False
    y_label: str = field(default="")


PRESETS: dict[str, FigurePreset] = {
    preset.name: preset
    for preset in (
        FigurePreset(
            "runtime-d-pinv", "d", ("time_pinv",), (("n", 1000), ("cond", 1.0)),
            "Pseudoinverse runtime vs d (n=1000, cond=1.0)", y_label="seconds",
        ),
        FigurePreset(
            "runtime-d-gd", "d", ("time_gd",), (("n", 1000), ("cond", 1.0)),
            "Gradient descent runtime vs d (n=1000, cond=1.0)", y_label="seconds",
        ),
        FigurePreset(
            "runtime-n-pinv", "n", ("time_pinv",), (("d", 10), ("cond", 1.0)),
            "Pseudoinverse runtime vs n (d=10, cond=1.0)", y_label="seconds",
        ),
        FigurePreset(
            "runtime-n-gd", "n", ("time_gd",), (("d", 10), ("cond", 1.0)),
            "Gradient descent runtime vs n (d=10, cond=1.0)", y_label="seconds",
        ),
        FigurePreset(
            "error-d-pinv", "d", ("err_pinv",), (("n", 1000), ("cond", 1.0)),
            "Pseudoinverse MSE vs d (n=1000, cond=1.0)", y_label="MSE",
        ),
        FigurePreset(
            "error-d-gd", "d", ("err_gd",), (("n", 1000), ("cond", 1.0)),
            "Gradient descent MSE vs d (n=1000, cond=1.0)", y_label="MSE",
        ),
        FigurePreset(
            "iters-cond-gd", "cond", ("iters_gd",), (("d", 10),),
            "Gradient descent iterations vs condition factor (d=10)",
            log_x=True, y_label="iterations",
        ),
    )
}


def parse_filters(text: str | None) -> tuple[tuple[str, float], ...]:
    """Parse ``"n=1000,cond=1.0"`` into column/value pairs."""
    if not text:
        return ()
    filters = []
    for part in text.split(","):
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or key not in NUMERIC_COLUMNS:
            raise ConfigurationError(f"invalid filter {part!r}; expected COLUMN=VALUE")
        try:
            filters.append((key, float(value)))
        except ValueError as exc:
            raise ConfigurationError(f"invalid filter value in {part!r}") from exc
    return tuple(filters)


def series_from_records(
    records: Sequence[BenchRecord],
    x: str,
    ys: Sequence[str],
    filters: Sequence[tuple[str, float]] = (),
) -> list[Series]:
    """One series per y column; rows sharing an x value are averaged."""
    for column in (x, *ys):
        if column not in NUMERIC_COLUMNS:
            raise ConfigurationError(
                f"unknown column {column!r}; choose from {', '.join(NUMERIC_COLUMNS)}"
            )
    frame = records_frame(records)
    mask = np.ones(len(frame), dtype=bool)
    for key, value in filters:
        mask &= np.isclose(frame[key].astype(float).to_numpy(), value, rtol=1e-9, atol=0.0)
    selected = frame.loc[mask]
    series = []
    for column in ys:
        grouped = (
            selected[[x, column]]
            .astype(float)
            .replace([np.inf, -np.inf], np.nan)
            .dropna()
            .groupby(x, sort=True)[column]
            .mean()
        )
        series.append(
            Series(
                label=column,
                xs=tuple(float(v) for v in grouped.index),
                ys=tuple(float(v) for v in grouped.to_numpy()),
            )
        )
    return series


def preset_series(
    records: Sequence[BenchRecord],
    preset: FigurePreset,
    extra_filters: Sequence[tuple[str, float]] = (),
) -> list[Series]:
    return series_from_records(records, preset.x, preset.ys, (*preset.filters, *extra_filters))


def _transform(values: np.ndarray, log: bool) -> np.ndarray:
    if not log:
        return values
    out = np.full(values.shape, np.nan)
    positive = values > 0.0
    out[positive] = np.log10(values[positive])
    return out


def _nice_step(span: float) -> float:
    raw = span / 4.0
    magnitude = 10.0 ** math.floor(math.log10(raw))
    for multiple in (1.0, 2.0, 5.0, 10.0):
        if raw <= multiple * magnitude:
            return multiple * magnitude
    return 10.0 * magnitude


def _axis(lo: float, hi: float, log: bool) -> tuple[float, float, list[tuple[float, str]]]:
    """Axis limits (in transformed space) and labelled ticks."""
    if log:
        lo, hi = math.floor(lo), math.ceil(hi)
        if lo == hi:
            lo, hi = lo - 1, hi + 1
        ticks = [(float(e), f"{10.0 ** e:g}") for e in range(int(lo), int(hi) + 1)]
        return float(lo), float(hi), ticks
    if lo == hi:
        pad = abs(lo) * 0.5 if lo != 0.0 else 1.0
        lo, hi = lo - pad, hi + pad
    step = _nice_step(hi - lo)
    start = math.floor(lo / step) * step
    stop = math.ceil(hi / step) * step
    count = int(round((stop - start) / step))
    ticks = []
    for i in range(count + 1):
        value = start + i * step
        ticks.append((value, f"{round(value, 12):g}"))
    return start, stop, ticks


def render_plot(
    series: Sequence[Series],
    axes: Axes,
    *,
    log_y: bool = False,
    log_x: bool = False,
    path: Path | None = None,
) -> str:
    """Render ``series`` as an SVG document; also written to ``path`` when given."""
    if not series:
        raise ConfigurationError("render_plot needs at least one series")
    prepared = []
    for item in series:
        if not item.xs or len(item.xs) != len(item.ys):
            raise ConfigurationError(
                f"series {item.label!r} must be non-empty with equal-length x and y values"
            )
        xs = _transform(np.asarray(item.xs, dtype=np.float64), log_x)
        ys = _transform(np.asarray(item.ys, dtype=np.float64), log_y)
        keep = np.isfinite(xs) & np.isfinite(ys)
        if not keep.any():
            raise ConfigurationError(f"series {item.label!r} has no plottable points")
        if not keep.all():
            logger.warning("series %r: dropped %d non-plottable points", item.label, int((~keep).sum()))
        prepared.append((item.label, xs[keep], ys[keep]))

    all_x = np.concatenate([xs for _, xs, _ in prepared])
    all_y = np.concatenate([ys for _, _, ys in prepared])
    x_lo, x_hi, x_ticks = _axis(float(all_x.min()), float(all_x.max()), log_x)
    y_lo, y_hi, y_ticks = _axis(float(all_y.min()), float(all_y.max()), log_y)

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(value: float) -> float:
        return MARGIN_LEFT + (value - x_lo) / (x_hi - x_lo) * plot_w

    def py(value: float) -> float:
        return MARGIN_TOP + plot_h - (value - y_lo) / (y_hi - y_lo) * plot_h

    bottom = MARGIN_TOP + plot_h
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if axes.title:
        lines.append(
            f'<text x="{WIDTH / 2:.2f}" y="22" text-anchor="middle" font-size="14">'
            f"{escape(axes.title)}</text>"
        )
    lines.append(
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="black"/>'
    )
    for value, label in x_ticks:
        x = px(value)
        lines.append(
            f'<line x1="{x:.2f}" y1="{bottom}" x2="{x:.2f}" y2="{bottom + 5}" stroke="black"/>'
        )
        lines.append(
            f'<text x="{x:.2f}" y="{bottom + 18}" text-anchor="middle">{escape(label)}</text>'
        )
    for value, label in y_ticks:
        y = py(value)
        lines.append(
            f'<line x1="{MARGIN_LEFT - 5}" y1="{y:.2f}" x2="{MARGIN_LEFT}" y2="{y:.2f}" '
            'stroke="black"/>'
        )
        lines.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{y + 4:.2f}" text-anchor="end">{escape(label)}</text>'
        )
    lines.append(
        f'<text x="{MARGIN_LEFT + plot_w / 2:.2f}" y="{HEIGHT - 12}" text-anchor="middle">'
        f"{escape(axes.x_label)}{' (log)' if log_x else ''}</text>"
    )
    lines.append(
        f'<text x="18" y="{MARGIN_TOP + plot_h / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {MARGIN_TOP + plot_h / 2:.2f})">'
        f"{escape(axes.y_label)}{' (log)' if log_y else ''}</text>"
    )

    legend_x = WIDTH - MARGIN_RIGHT + 16
    for index, (label, xs, ys) in enumerate(prepared):
        color = PALETTE[index % len(PALETTE)]
        points = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(xs, ys))
        lines.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{points}"/>'
        )
        for a, b in zip(xs, ys):
            lines.append(f'<circle cx="{px(a):.2f}" cy="{py(b):.2f}" r="3" fill="{color}"/>')
        legend_y = MARGIN_TOP + 12 + index * 18
        lines.append(
            f'<rect x="{legend_x}" y="{legend_y - 8}" width="12" height="12" fill="{color}"/>'
        )
        lines.append(f'<text x="{legend_x + 18}" y="{legend_y + 2}">{escape(label)}</text>')
    lines.append("</svg>")
    document = "\n".join(lines) + "\n"

    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(document, encoding="utf-8")
        logger.info("wrote plot to %s", path)
    return document
