"""Command-line front end: simulate, query the oracle, evaluate bounds,
sweep parameters, compare results to exact values, and reproduce the
experiment figures.

Exit codes: 0 success, 1 usage/validation error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import bounds as bounds_mod
from .benchmarks import ContractViolation, cliff, onemax
from .harness import ExperimentPlan, run_experiment, to_csv, to_json_dict
from .heuristics import DEFAULT_BUDGET, HeuristicConfig
from .oracle import (
    UnreachableOptimumError,
    build_level_chain,
    expected_upgrade_times,
)

LOG10_E = math.log10(math.e)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 by default; the contract is 1
        raise UsageError(message)


def _parse_alpha(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"--alpha: invalid value {text!r}")


def _instance_from(args):
    if args.problem == "onemax":
        if getattr(args, "m", None) is not None or getattr(args, "d", None) is not None:
            raise UsageError("--m/--d only apply to --problem cliff")
        return onemax(args.n)
    if args.m is None or args.d is None:
        raise UsageError("--problem cliff requires --m and --d")
    return cliff(args.n, args.d, args.m)


def _config_from(args) -> HeuristicConfig:
    algo = args.algo
    kwargs = {"budget": args.budget}
    if algo in ("ma", "ma-gstd", "ma-gheavy"):
        if args.alpha is None:
            raise UsageError(f"--algo {algo} requires --alpha")
        kwargs["alpha"] = args.alpha
    if algo in ("oea", "ma-gstd"):
        if args.p is None:
            raise UsageError(f"--algo {algo} requires --p")
        kwargs["p"] = args.p
    if algo in ("fast", "ma-gheavy"):
        kwargs["beta"] = args.beta if args.beta is not None else 1.5
    return HeuristicConfig(algo, **kwargs)


def _add_run_flags(sub, with_vary=False):
    sub.add_argument("--problem", required=True, choices=["onemax", "cliff"])
    sub.add_argument("--n", required=True, type=int)
    sub.add_argument("--m", type=int)
    sub.add_argument("--d", type=float)
    sub.add_argument(
        "--algo",
        required=True,
        choices=["ma", "oea", "rls", "fast", "sd", "ma-gstd", "ma-gheavy"],
    )
    sub.add_argument("--alpha", type=_parse_alpha)
    sub.add_argument("--p", type=float)
    sub.add_argument("--beta", type=float)
    sub.add_argument("--trials", required=True, type=int)
    sub.add_argument("--seed", required=True, type=int)
    sub.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sub.add_argument("--out", required=True)
    sub.add_argument("--format", choices=["csv", "json"], default="csv")
    sub.add_argument("--threads", type=int)
    if with_vary:
        sub.add_argument(
            "--vary",
            required=True,
            metavar="NAME=START:STOP:STEP",
            help="sweep one parameter (n, m, d, alpha, p or beta)",
        )


def _write_out(payload: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(payload)
    else:
        Path(out).write_text(payload, encoding="utf-8")


def _cmd_run(args) -> int:
    _instance_from(args)  # validates the instance flags before any work
    cfg = _config_from(args)
    plan = ExperimentPlan(
        kind=args.problem,
        n=args.n,
        m=args.m,
        d=args.d,
        sweep_name="n",
        sweep_values=(args.n,),
        algorithms=(cfg,),
        trials=args.trials,
        master_seed=args.seed,
    )
    result = run_experiment(plan, threads=args.threads)
    if args.format == "csv":
        _write_out(to_csv(result), args.out)
    else:
        _write_out(json.dumps(to_json_dict(result), indent=2) + "\n", args.out)
    return 0


def _parse_vary(text: str):
    try:
        name, rng = text.split("=", 1)
        start, stop, step = (float(tok) for tok in rng.split(":"))
    except ValueError:
        raise UsageError("--vary expects NAME=START:STOP:STEP")
    if step <= 0 or stop < start:
        raise UsageError("--vary requires STEP > 0 and STOP >= START")
    values = []
    v = start
    while v <= stop + 1e-9:
        values.append(v)
        v += step
    if name in ("n", "m"):
        values = [int(round(v)) for v in values]
    return name, tuple(values)


def _cmd_sweep(args) -> int:
    name, values = _parse_vary(args.vary)
    cfg = _config_from(args)
    plan = ExperimentPlan(
        kind=args.problem,
        n=args.n,
        m=args.m,
        d=args.d,
        sweep_name=name,
        sweep_values=values,
        algorithms=(cfg,),
        trials=args.trials,
        master_seed=args.seed,
    )
    result = run_experiment(plan, threads=args.threads)
    if args.format == "csv":
        _write_out(to_csv(result), args.out)
    else:
        _write_out(json.dumps(to_json_dict(result), indent=2) + "\n", args.out)
    return 0


def _cmd_oracle(args) -> int:
    instance = _instance_from(args)
    chain = build_level_chain(instance, args.alpha)
    ht = expected_upgrade_times(chain)
    n = instance.n
    if args.json:
        payload = {
            "problem": instance.kind,
            "n": n,
            "m": instance.m,
            "d": instance.d,
            "alpha": "inf" if math.isinf(args.alpha) else args.alpha,
            "E": ht.E[1:].tolist(),
            "log10_E": (ht.log_E[1:] * LOG10_E).tolist(),
            "E_total_from": ht.E_total_from.tolist(),
            "log10_E_total_from": (ht.log_E_total_from * LOG10_E).tolist(),
            "E_expected_start": ht.E_expected_start,
            "log10_E_expected_start": ht.log_E_expected_start * LOG10_E,
        }
        if args.start_distance is not None:
            k = args.start_distance
            payload["start_distance"] = k
            payload["E_from_start_distance"] = ht.E_total_from[k]
        print(json.dumps(payload, indent=2))
        return 0
    print(f"# {chain.label}")
    print(f"{'i':>4} {'E_i':>24} {'log10(E_i)':>14} {'E_i^0':>24} {'log10(E_i^0)':>14}")
    for i in range(1, n + 1):
        print(
            f"{i:>4} {ht.E[i]:>24.10g} {ht.log_E[i] * LOG10_E:>14.6f} "
            f"{ht.E_total_from[i]:>24.10g} {ht.log_E_total_from[i] * LOG10_E:>14.6f}"
        )
    if args.start_distance is not None:
        k = args.start_distance
        print(f"E from start distance {k}: {ht.E_total_from[k]:.10g}")
    print(
        f"E from random start: {ht.E_expected_start:.10g} "
        f"(log10 {ht.log_E_expected_start * LOG10_E:.6f})"
    )
    return 0


def _cmd_bounds(args) -> int:
    which = args.which

    def need(*names):
        for name in names:
            if getattr(args, name, None) is None:
                raise UsageError(f"--which {which} requires --{name}")

    if which == "onemax-ma":
        need("alpha")
        report = bounds_mod.onemax_ma_bound(args.n, args.alpha)
    elif which == "posdrift":
        need("alpha")
        report = bounds_mod.posdrift_bounds(args.n, args.alpha)
    elif which == "e1":
        need("alpha")
        report = bounds_mod.e1_bounds(args.n, args.alpha)
    elif which == "cliff-ma":
        need("m", "d", "alpha")
        report = bounds_mod.cliff_ma_bounds(args.n, args.m, args.d, args.alpha)
    elif which == "cliff-ea":
        need("m", "d", "p")
        report = bounds_mod.cliff_ea_bound(args.n, args.m, args.d, args.p)
    else:  # optimal
        need("m", "d")
        record = bounds_mod.optimal_parameters(args.n, args.m, args.d)
        if args.json:
            print(json.dumps(record, indent=2))
        else:
            for key, value in record.items():
                print(f"{key}: {value}")
        return 0
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(f"{report.name}:")
        for key in ("lower", "upper", "main_term", "log10_lower", "log10_upper"):
            value = getattr(report, key)
            if value is not None:
                print(f"  {key}: {value}")
        for hyp, status in report.validity.items():
            print(f"  [{hyp}] {status}")
        if report.notes:
            print(f"  note: {report.notes}")
    return 0


def _cmd_compare(args) -> int:
    rows = list(csv.DictReader(open(args.results, encoding="utf-8")))
    if not rows:
        raise UsageError(f"no data rows in {args.results}")
    flagged = 0
    for row in rows:
        kind = row["algorithm"].split("(")[0]
        if kind not in ("ma", "rls"):
            print(f"{row['algorithm']} @ {row['sweep_value']}: no oracle")
            continue
        n = int(row["n"])
        if row["problem"] == "cliff":
            instance = cliff(n, float(row["d"]), int(row["m"]))
        else:
            instance = onemax(n)
        alpha = args.alpha if args.alpha is not None else float(row["param_value"])
        try:
            exact = expected_upgrade_times(
                build_level_chain(instance, alpha)
            ).E_expected_start
        except UnreachableOptimumError:
            print(f"{row['algorithm']} @ {row['sweep_value']}: no oracle (unreachable)")
            continue
        if not row["mean_iterations"] or not row["stderr"] or float(row["stderr"]) == 0:
            print(f"{row['algorithm']} @ {row['sweep_value']}: no usable mean/stderr")
            continue
        z = (float(row["mean_iterations"]) - exact) / float(row["stderr"])
        mark = " FLAGGED" if abs(z) > 4 else ""
        if mark:
            flagged += 1
        print(
            f"{row['algorithm']} @ {row['sweep_value']}: "
            f"mean={row['mean_iterations']} exact={exact:.6g} z={z:+.3f}{mark}"
        )
    print(f"{flagged} of {len(rows)} rows flagged (|z| > 4)")
    return 0


_FIG_M_VALUES = (8, 12, 16, 20, 24, 28, 32)
ALPHA_SWEEP_SETTINGS = ((1.0, 8), (3.0, 8), (3.0, 16), (5.0, 16))
ALPHA_SWEEP_VALUES = (5.0, 10.0, 20.0, 30.0, 40.0, 60.0, 80.0, 100.0)


def figure_plan(name: str, n: int | None, trials: int | None, seed: int = 2023):
    """Experiment plan(s) behind the `figure` subcommand, overridable for
    desk-scale smoke runs."""
    if name == "fig2":
        n = n or 150
        trials = trials or 100
        algos = (
            HeuristicConfig("ma", alpha=20.0),
            HeuristicConfig("ma", alpha=30.0),
            HeuristicConfig("ma", alpha=40.0),
            HeuristicConfig("oea", p=1.0 / n),
            HeuristicConfig("oea", p=5.0 / n),
            HeuristicConfig("fast", beta=1.5),
            HeuristicConfig("sd"),
        )
        return [
            ExperimentPlan(
                kind="cliff",
                n=n,
                m=_FIG_M_VALUES[0],
                d=3.0,
                sweep_name="m",
                sweep_values=_FIG_M_VALUES,
                algorithms=algos,
                trials=trials,
                master_seed=seed,
            )
        ]
    if name == "fig3":
        n = n or 100
        trials = trials or 50
        algos = (
            HeuristicConfig("ma", alpha=20.0),
            HeuristicConfig("ma-gstd", alpha=20.0, p=1.0 / n),
            HeuristicConfig("ma-gheavy", alpha=20.0, beta=1.5),
            HeuristicConfig("oea", p=1.0 / n),
        )
        return [
            ExperimentPlan(
                kind="cliff",
                n=n,
                m=_FIG_M_VALUES[0],
                d=3.0,
                sweep_name="m",
                sweep_values=_FIG_M_VALUES,
                algorithms=algos,
                trials=trials,
                master_seed=seed,
            )
        ]
    if name == "alpha-sweep":
        n = n or 100
        trials = trials or 100
        return [
            ExperimentPlan(
                kind="cliff",
                n=n,
                m=m,
                d=d,
                sweep_name="alpha",
                sweep_values=ALPHA_SWEEP_VALUES,
                algorithms=(HeuristicConfig("ma", alpha=20.0),),
                trials=trials,
                master_seed=seed + idx,
            )
            for idx, (d, m) in enumerate(ALPHA_SWEEP_SETTINGS)
        ]
    raise UsageError(f"unknown figure {name!r}")


def _cmd_figure(args) -> int:
    plans = figure_plan(args.which, args.n, args.trials, seed=args.seed)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    chunks = []
    for i, plan in enumerate(plans):
        result = run_experiment(plan, threads=args.threads)
        text = to_csv(result)
        if i > 0:  # drop the repeated header when concatenating plans
            text = text.split("\n", 1)[1]
        chunks.append(text)
    path = out_dir / f"{args.which}.csv"
    path.write_text("".join(chunks), encoding="utf-8")
    print(path)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="slslab", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    run_p = subs.add_parser("run", help="run one algorithm configuration")
    _add_run_flags(run_p)
    run_p.set_defaults(func=_cmd_run)

    sweep_p = subs.add_parser("sweep", help="run while sweeping one parameter")
    _add_run_flags(sweep_p, with_vary=True)
    sweep_p.set_defaults(func=_cmd_sweep)

    oracle_p = subs.add_parser("oracle", help="exact expected runtimes")
    oracle_p.add_argument("--problem", required=True, choices=["onemax", "cliff"])
    oracle_p.add_argument("--n", required=True, type=int)
    oracle_p.add_argument("--m", type=int)
    oracle_p.add_argument("--d", type=float)
    oracle_p.add_argument("--alpha", required=True, type=_parse_alpha)
    oracle_p.add_argument("--start-distance", type=int)
    oracle_p.add_argument("--json", action="store_true")
    oracle_p.set_defaults(func=_cmd_oracle)

    bounds_p = subs.add_parser("bounds", help="closed-form runtime bounds")
    bounds_p.add_argument(
        "--which",
        required=True,
        choices=["onemax-ma", "posdrift", "e1", "cliff-ma", "cliff-ea", "optimal"],
    )
    bounds_p.add_argument("--n", required=True, type=int)
    bounds_p.add_argument("--m", type=int)
    bounds_p.add_argument("--d", type=float)
    bounds_p.add_argument("--alpha", type=_parse_alpha)
    bounds_p.add_argument("--p", type=float)
    bounds_p.add_argument("--json", action="store_true")
    bounds_p.set_defaults(func=_cmd_bounds)

    compare_p = subs.add_parser("compare", help="z-scores of results vs oracle")
    compare_p.add_argument("--results", required=True)
    compare_p.add_argument("--problem", choices=["onemax", "cliff"])
    compare_p.add_argument("--alpha", type=_parse_alpha)
    compare_p.set_defaults(func=_cmd_compare)

    figure_p = subs.add_parser("figure", help="reproduce an experiment figure CSV")
    figure_p.add_argument("which", choices=["fig2", "fig3", "alpha-sweep"])
    figure_p.add_argument("--out", required=True)
    figure_p.add_argument("--n", type=int)
    figure_p.add_argument("--trials", type=int)
    figure_p.add_argument("--seed", type=int, default=2023)
    figure_p.add_argument("--threads", type=int)
    figure_p.set_defaults(func=_cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (UsageError, ContractViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0
    except Exception as exc:  # runtime failure (I/O, unreachable optimum, ...)
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
