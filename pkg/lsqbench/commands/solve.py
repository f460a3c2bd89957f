"""Solve command - fit one problem with one method and report the fit."""

from __future__ import annotations

from argparse import Namespace
from pathlib import Path

from lsqbench.commands.output import emit_output
from lsqbench.core.datagen import ProblemSpec, make_problem
from lsqbench.core.metrics import coef_error, mse
from lsqbench.core.solvers import SOLVERS, FitResult, Method, solve_hybrid
from lsqbench.errors import UsageError
from lsqbench.infrastructure.datasets import load_csv_dataset
from lsqbench.services.plots import Axes, Series, render_plot
from lsqbench.settings import Settings, prefer

_ITERATIVE = {Method.GD, Method.HYBRID}


def run_solve(args: Namespace, *, settings: Settings | None = None, output_sink=print) -> int:
    settings = settings or Settings()
    method = Method(args.method)
    if args.trace and method not in _ITERATIVE:
        raise UsageError("--trace needs --method gd or hybrid")
    if args.warm_rows is not None and method is not Method.HYBRID:
        raise UsageError("--warm-rows only applies to --method hybrid")

    beta_star = None
    if args.csv:
        dataset = load_csv_dataset(Path(args.csv), args.target, standardize=args.standardize)
        x, y = dataset.x, dataset.y
        source = str(args.csv)
        feature_names = list(dataset.feature_names)
    else:
        spec = ProblemSpec(
            n=args.n,
            d=args.d,
            cond=args.cond,
            noise_sigma=prefer(args.noise, settings.noise_sigma),
            seed=prefer(args.seed, settings.seed),
        )
        problem = make_problem(spec)
        x, y, beta_star = problem.x, problem.y, problem.beta_star
        source = f"synthetic n={spec.n} d={spec.d} cond={spec.cond:g} seed={spec.seed}"
        feature_names = [f"x_{j}" for j in range(1, problem.d + 1)]

    config = settings.gd_config(
        alpha=args.alpha,
        tol=args.tol,
        max_iter=args.max_iter,
        normalized=False if args.unnormalized else None,
        record_history=bool(args.trace),
    )
    fit: FitResult
    if method is Method.HYBRID:
        fit = solve_hybrid(x, y, config, warm_rows=args.warm_rows)
    else:
        fit = SOLVERS[method](x, y, config)

    err = mse(x, fit.beta_hat, y)
    payload = {
        "source": source,
        "method": method.value,
        "mse": err,
        "wall_seconds": fit.wall_seconds,
        "iterations": fit.iterations,
        "converged": fit.converged,
        "features": feature_names,
        "beta_hat": fit.beta_hat,
    }
    human = [
        f"source: {source}",
        f"method: {method.value}",
        f"mse: {err:.6g}",
        f"wall_seconds: {fit.wall_seconds:.6f}",
    ]
    if method in _ITERATIVE:
        human.append(f"iterations: {fit.iterations} (converged={fit.converged})")
    if beta_star is not None:
        payload["coef_error"] = coef_error(fit.beta_hat, beta_star)
        human.append(f"coef_error: {payload['coef_error']:.6g}")
    human.append("beta_hat:")
    human.extend(f"  {name} = {value:.10g}" for name, value in zip(feature_names, fit.beta_hat))

    if args.trace:
        trace_path = Path(args.trace)
        history = fit.loss_history
        render_plot(
            [Series(label="loss", xs=tuple(float(t) for t in range(len(history))), ys=history)],
            Axes(x_label="iteration", y_label="loss (mse)", title=f"{method.value} loss trajectory"),
            log_y=True,
            path=trace_path,
        )
        payload["trace"] = str(trace_path)
        human.append(f"trace: {trace_path}")

    emit_output(
        command="solve",
        payload=payload,
        json_output=getattr(args, "json", False),
        output_sink=output_sink,
        human_lines=human,
    )
    return 0
