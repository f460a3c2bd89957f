"""Sweep command - run the benchmark grid and write the records CSV."""

from __future__ import annotations

from argparse import Namespace
from pathlib import Path

from lsqbench.commands.output import emit_output
from lsqbench.core.bench import BenchRecord, SweepGrid, run_sweep
from lsqbench.infrastructure.records import write_records_csv
from lsqbench.settings import Settings, prefer

DEFAULT_OUT = "results.csv"


def _cell_line(record: BenchRecord) -> str:
    if record.failure:
        return f"n={record.n} d={record.d} cond={record.cond:g}: FAILED ({record.failure})"
    return (
        f"n={record.n} d={record.d} cond={record.cond:g}: "
        f"pinv {record.time_pinv:.5f}s mse={record.err_pinv:.5g} | "
        f"gd {record.time_gd:.5f}s mse={record.err_gd:.5g} iters={record.iters_gd}"
    )


def run_sweep_command(
    args: Namespace, *, settings: Settings | None = None, output_sink=print
) -> int:
    settings = settings or Settings()
    json_output = getattr(args, "json", False)
    grid = SweepGrid(
        ns=tuple(args.n or settings.ns),
        ds=tuple(args.d or settings.ds),
        conds=tuple(args.cond or settings.conds),
        noise_sigma=prefer(args.noise, settings.noise_sigma),
        base_seed=prefer(args.seed, settings.seed),
        repeats=prefer(args.repeats, settings.repeats),
        gd=settings.gd_config(
            alpha=args.alpha,
            tol=args.tol,
            max_iter=args.max_iter,
            normalized=False if args.unnormalized else None,
        ),
    )

    def progress(record: BenchRecord) -> None:
        if not json_output:
            output_sink(_cell_line(record))

    records = run_sweep(grid, progress=progress)
    path = write_records_csv(records, Path(args.out or DEFAULT_OUT))
    failures = [record for record in records if record.failure]

    emit_output(
        command="sweep",
        payload={
            "path": str(path),
            "cells": len(records),
            "failures": [
                {"n": r.n, "d": r.d, "cond": r.cond, "reason": r.failure} for r in failures
            ],
            "base_seed": grid.base_seed,
        },
        json_output=json_output,
        output_sink=output_sink,
        human_lines=(
            f"wrote {len(records)} records to {path}"
            + (f" ({len(failures)} failed)" if failures else ""),
        ),
    )
    return 0
