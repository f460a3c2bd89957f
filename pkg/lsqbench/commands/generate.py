"""Generate command - write one synthetic regression problem as CSV."""

from __future__ import annotations

import io
from argparse import Namespace
from pathlib import Path

from lsqbench.commands.output import emit_output
from lsqbench.core.datagen import ProblemSpec, make_problem
from lsqbench.infrastructure.datasets import write_problem, write_problem_csv
from lsqbench.settings import Settings, prefer


def run_generate(args: Namespace, *, settings: Settings | None = None, output_sink=print) -> int:
    settings = settings or Settings()
    spec = ProblemSpec(
        n=args.n,
        d=args.d,
        cond=args.cond,
        noise_sigma=prefer(args.noise, settings.noise_sigma),
        seed=prefer(args.seed, settings.seed),
    )
    problem = make_problem(spec)
    json_output = getattr(args, "json", False)
    payload = spec.model_dump()

    if args.out:
        path = write_problem_csv(problem, Path(args.out))
        payload["path"] = str(path)
        emit_output(
            command="generate",
            payload=payload,
            json_output=json_output,
            output_sink=output_sink,
            human_lines=(
                f"wrote {spec.n}x{spec.d} problem (cond={spec.cond:g}, seed={spec.seed}) to {path}",
            ),
        )
        return 0

    buffer = io.StringIO()
    write_problem(problem, buffer)
    text = buffer.getvalue()
    if json_output:
        payload["csv"] = text
        emit_output(command="generate", payload=payload, json_output=True, output_sink=output_sink)
    else:
        output_sink(text.rstrip("\n"))
    return 0
