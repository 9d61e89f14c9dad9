"""Command-line interface.

Subcommands: paths, flow, condexp, orderstats, spt, walecki, bounds.
Exit codes: 0 success, 2 usage error, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .errors import DomainError, InvalidEdgeError, InvalidParameterError
from .weights import EdgeWeightModel

_MODELS = {
    "uniform": EdgeWeightModel.UNIFORM01,
    "exponential": EdgeWeightModel.EXPONENTIAL1,
}


def _add_common(p: argparse.ArgumentParser, *, needs_k: bool = True) -> None:
    p.add_argument("--n", type=int, required=True, help="vertex count")
    p.add_argument(
        "--model", choices=sorted(_MODELS), default="uniform",
        help="edge weight distribution",
    )
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="master seed (64-bit)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="output file path")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument(
        "--gnuplot", action="store_true",
        help="also emit a two-column ratio-vs-k data file",
    )
    if needs_k:
        p.add_argument("--k-max", type=int, help="largest rank (default n-1)")
        p.add_argument(
            "--k-grid",
            help='comma-separated ranks, or "all" (default: geometric grid)',
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="succpaths",
        description=(
            "Successive edge-disjoint shortest paths and min-cost k-flows "
            "on randomly weighted complete graphs"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("paths", help="successive-path Monte Carlo sweep"))
    _add_common(sub.add_parser("flow", help="min-cost k-flow Monte Carlo sweep"))
    _add_common(sub.add_parser("condexp", help="conditional expectation of X_k"))

    p = sub.add_parser("orderstats", help="order-statistics sampler and bands")
    _add_common(p, needs_k=False)
    p.add_argument("--epsilon", type=float, default=0.5, help="band half-width")
    p.add_argument("--a", type=int, help="lower rank cutoff (default ceil sqrt ln n)")

    p = sub.add_parser("spt", help="shortest-path-tree radius samples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True, help="tree order")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["law", "growth", "both"], default="both")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("walecki", help="print a saturating s-t path family")
    p.add_argument("--n", type=int, required=True, help="even vertex count")
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("bounds", help="evaluate an analytic tail bound")
    p.add_argument(
        "--name", required=True,
        choices=["irwin_hall", "exp_sum", "binomial_lower", "min_binomial"],
    )
    p.add_argument("--l", type=int, help="term count (irwin_hall)")
    p.add_argument("--a", type=float, help="threshold (irwin_hall)")
    p.add_argument("--rates", help="comma-separated rates (exp_sum)")
    p.add_argument("--lam", type=float, help="mean ratio lambda (exp_sum)")
    p.add_argument("--n-trials", type=int, help="binomial trial count")
    p.add_argument("--p", type=float, help="binomial success probability")
    p.add_argument("--epsilon", type=float, help="deviation (binomial_lower)")
    p.add_argument(
        "--validate", action="store_true",
        help="also run the Monte Carlo / exact comparison",
    )
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)

    return parser


def _k_setup(args) -> tuple[int, tuple[int, ...]]:
    from .harness import geometric_k_grid

    k_max = args.k_max if args.k_max is not None else args.n - 1
    if args.k_grid is None:
        grid = geometric_k_grid(args.n, k_max)
    elif args.k_grid == "all":
        grid = tuple(range(1, k_max + 1))
    else:
        grid = tuple(sorted({int(x) for x in args.k_grid.split(",")}))
    return k_max, grid


def _experiment_config(args):
    from .harness import ExperimentConfig

    k_max, grid = _k_setup(args)
    return ExperimentConfig(
        n=args.n,
        model=_MODELS[args.model],
        trials=args.trials,
        seed=args.seed,
        k_max=k_max,
        k_grid=grid,
        workers=args.workers,
    )


def _emit_or_print(batch, args) -> None:
    from .harness import emit

    if args.out:
        paths = emit(batch, args.format, args.out, gnuplot=args.gnuplot)
        print(f"wrote {', '.join(str(p) for p in paths)}")
    for agg in batch.aggregates:
        print("  ".join(f"{k}={v}" for k, v in dataclasses.asdict(agg).items()))


def _cmd_paths(args) -> None:
    from .harness import run_paths_experiment

    _emit_or_print(run_paths_experiment(_experiment_config(args)), args)


def _cmd_flow(args) -> None:
    from .harness import run_flow_experiment

    _emit_or_print(run_flow_experiment(_experiment_config(args)), args)


def _cmd_condexp(args) -> None:
    from .harness import run_conditional_expectation

    _emit_or_print(run_conditional_expectation(_experiment_config(args)), args)


def _cmd_orderstats(args) -> None:
    from .orderstats import (
        OrderStatContext,
        all_mean_order_stats,
        concentration_report,
        sample_many,
    )

    ctx = OrderStatContext(args.n, _MODELS[args.model])
    samples = sample_many(ctx, args.trials, args.seed)
    report = concentration_report(ctx, samples, args.epsilon, args.a)
    mu = all_mean_order_stats(ctx)
    print(
        f"n={args.n} model={args.model} trials={args.trials} "
        f"epsilon={report.epsilon} a={report.a} "
        f"simultaneous_violation={report.simultaneous_violation}"
    )
    if args.out:
        rows = [
            {
                "k": int(k),
                "exact_mean": float(mu[k - 1]),
                "sample_mean": float(samples[:, k - 1].mean()),
                "violation_freq": float(v),
            }
            for k, v in zip(report.ks, report.per_k_violation)
        ]
        _write_simple(args.out, args.format, rows)
        print(f"wrote {args.out}")


def _cmd_spt(args) -> None:
    from .spt import expected_radius, sample_growth_radii, sample_law_radii

    rows = [{"trial": i} for i in range(args.trials)]
    if args.mode in ("law", "both"):
        for row, r in zip(rows, sample_law_radii(args.n, args.d, args.trials, args.seed)):
            row["radius_law"] = float(r)
    if args.mode in ("growth", "both"):
        for row, r in zip(
            rows, sample_growth_radii(args.n, args.d, args.trials, args.seed)
        ):
            row["radius_growth"] = float(r)
    print(
        f"n={args.n} d={args.d} trials={args.trials} "
        f"exact_mean={expected_radius(args.n, args.d):.6g}"
    )
    if args.out:
        _write_simple(args.out, args.format, rows)
        print(f"wrote {args.out}")


def _cmd_walecki(args) -> None:
    from .walecki import saturating_family

    fam = saturating_family(args.n, args.s, args.t)
    doc = {
        "n": fam.n,
        "s": fam.s,
        "t": fam.t,
        "paths": [list(p) for p in fam.st_paths],
    }
    text = json.dumps(doc, indent=1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)


def _cmd_bounds(args) -> None:
    from . import bounds as B

    def need(*fields):
        missing = [f.replace("_", "-") for f in fields if getattr(args, f) is None]
        if missing:
            raise InvalidParameterError(
                f"bound {args.name} needs --" + ", --".join(missing)
            )

    if args.name == "irwin_hall":
        need("l", "a")
        doc = {"bound": B.irwin_hall_tail(args.l, args.a),
               "log_bound": B.irwin_hall_tail_log(args.l, args.a)}
        if args.validate:
            rep = B.validate_irwin_hall(args.l, args.a, args.trials, args.seed)
            doc["empirical"] = rep.empirical_frequency
            doc["samples"] = rep.samples
    elif args.name == "exp_sum":
        need("rates", "lam")
        rates = [float(x) for x in args.rates.split(",")]
        up, lo = B.exp_sum_tails(rates, args.lam)
        doc = {"upper_tail_bound": up, "lower_tail_bound": lo}
        if args.validate:
            rup, rlo = B.validate_exp_sum(rates, args.lam, args.trials, args.seed)
            doc["upper_empirical"] = rup.empirical_frequency
            doc["lower_empirical"] = rlo.empirical_frequency
            doc["samples"] = args.trials
    elif args.name == "binomial_lower":
        need("n_trials", "p", "epsilon")
        doc = {"bound": B.binomial_lower_tail(args.n_trials, args.p, args.epsilon)}
        if args.validate:
            rep = B.validate_binomial_lower(args.n_trials, args.p, args.epsilon)
            doc["exact"] = rep.empirical_frequency
    else:
        need("n_trials", "p")
        b = B.min_binomial_lower_bounds(args.n_trials, args.p)
        doc = {"case": b.case, "threshold": b.threshold, "bound": b.bound}
        if args.validate:
            rep = B.validate_min_binomial(args.n_trials, args.p)
            doc["exact"] = rep.empirical_frequency
    print(json.dumps(doc, indent=1))


def _write_simple(path: str, fmt: str, rows: list[dict]) -> None:
    import csv

    if fmt == "json":
        with open(path, "w") as fh:
            json.dump(rows, fh, indent=1)
            fh.write("\n")
        return
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]) if rows else ["trial"])
        writer.writeheader()
        for row in rows:
            writer.writerow({k: format(v, ".17g") if isinstance(v, float) else v
                             for k, v in row.items()})


_COMMANDS = {
    "paths": _cmd_paths,
    "flow": _cmd_flow,
    "condexp": _cmd_condexp,
    "orderstats": _cmd_orderstats,
    "spt": _cmd_spt,
    "walecki": _cmd_walecki,
    "bounds": _cmd_bounds,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except (InvalidParameterError, InvalidEdgeError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
