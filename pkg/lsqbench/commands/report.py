"""Report command - summary tables from a records file."""

from __future__ import annotations

from argparse import Namespace
from pathlib import Path

from lsqbench.commands.output import emit_output
from lsqbench.core.stats import GROUP_KEYS, describe, group_means
from lsqbench.infrastructure.records import records_source
from lsqbench.services.tables import describe_table, grouped_table, records_table, render_table

# Measured quantities of the published results table.
DEFAULT_VALUE_COLUMNS = ("time_pinv", "err_pinv", "time_gd", "err_gd", "iters_gd")


def split_list(text: str | None) -> list[str]:
    if not text:
        return []
    return [item.strip() for item in text.split(",") if item.strip()]


def run_report(args: Namespace, *, settings=None, output_sink=print) -> int:
    label, loader = records_source(
        Path(args.input) if args.input else None, reference=args.reference
    )
    records = loader()
    columns = split_list(args.columns)

    if args.describe:
        rows, headers = describe_table(describe(records), columns or None)
        kind = "describe"
    elif args.group:
        keys = split_list(args.group)
        values = columns or [c for c in DEFAULT_VALUE_COLUMNS if c not in GROUP_KEYS]
        rows, headers = grouped_table(group_means(records, keys, values))
        kind = "group"
    else:
        rows, headers = records_table(records, columns or None)
        kind = "records"

    text = render_table(rows, headers, args.format)
    json_output = getattr(args, "json", False)
    payload = {"source": label, "kind": kind, "headers": headers, "rows": rows}
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        payload["path"] = str(out)
        emit_output(
            command="report",
            payload=payload,
            json_output=json_output,
            output_sink=output_sink,
            human_lines=(f"wrote {kind} table ({len(rows)} rows) to {out}",),
        )
        return 0
    emit_output(
        command="report",
        payload=payload,
        json_output=json_output,
        output_sink=output_sink,
        human_lines=(text.rstrip("\n"),),
    )
    return 0
