"""Plot command - SVG charts from a records file."""

from __future__ import annotations

import logging
from argparse import Namespace
from pathlib import Path

from lsqbench.commands.output import emit_output
from lsqbench.commands.report import split_list
from lsqbench.errors import ConfigurationError, UsageError
from lsqbench.infrastructure.records import records_source
from lsqbench.services.plots import (
    PRESETS,
    Axes,
    parse_filters,
    preset_series,
    render_plot,
    series_from_records,
)

logger = logging.getLogger(__name__)

DEFAULT_FIGURE_DIR = "figures"


def run_plot(args: Namespace, *, settings=None, output_sink=print) -> int:
    label, loader = records_source(
        Path(args.input) if args.input else None, reference=args.reference
    )
    records = loader()
    json_output = getattr(args, "json", False)
    extra_filters = parse_filters(args.filter)

    if args.all:
        directory = Path(args.out or DEFAULT_FIGURE_DIR)
        written: list[str] = []
        skipped: list[str] = []
        for name, preset in PRESETS.items():
            series = preset_series(records, preset, extra_filters)
            path = directory / f"{name}.svg"
            try:
                render_plot(
                    series,
                    Axes(preset.x, preset.y_label or preset.ys[0], preset.title),
                    log_x=preset.log_x or args.log_x,
                    log_y=preset.log_y or args.log_y,
                    path=path,
                )
            except ConfigurationError as exc:
                logger.warning("skipping figure %s: %s", name, exc)
                skipped.append(name)
                continue
            written.append(str(path))
        if not written:
            raise ConfigurationError(f"no figure could be drawn from {label}")
        emit_output(
            command="plot",
            payload={"source": label, "written": written, "skipped": skipped},
            json_output=json_output,
            output_sink=output_sink,
            human_lines=[f"wrote {path}" for path in written]
            + [f"skipped {name} (no data)" for name in skipped],
        )
        return 0

    if args.figure:
        preset = PRESETS[args.figure]
        series = preset_series(records, preset, extra_filters)
        axes = Axes(preset.x, preset.y_label or preset.ys[0], preset.title)
        log_x = preset.log_x or args.log_x
        log_y = preset.log_y or args.log_y
        name = preset.name
    else:
        ys = split_list(args.y)
        if not args.x or not ys:
            raise UsageError("plot needs --figure PRESET, --all, or both --x and --y")
        series = series_from_records(records, args.x, ys, extra_filters)
        axes = Axes(args.x, ", ".join(ys), f"{', '.join(ys)} vs {args.x}")
        log_x, log_y = args.log_x, args.log_y
        name = f"{'-'.join(ys)}-vs-{args.x}"

    out = Path(args.out) if args.out else None
    document = render_plot(series, axes, log_x=log_x, log_y=log_y, path=out)
    if out is None and not json_output:
        output_sink(document.rstrip("\n"))
        return 0
    emit_output(
        command="plot",
        payload={"source": label, "figure": name, "path": str(out) if out else None,
                 "svg": None if out else document},
        json_output=json_output,
        output_sink=output_sink,
        human_lines=(f"wrote {out}",),
    )
    return 0
