"""Experiment orchestration: sweeps, aggregation, oracle comparison, export.

An :class:`ExperimentPlan` fixes an instance template, a swept parameter, a
list of algorithm configurations, a trial count and a master seed; running it
is fully deterministic.  Per-trial seeds are derived with numpy's
``SeedSequence([master_seed, sweep_index, algo_index, trial_index])`` — a
documented, platform-stable mixing of the four indices — so any subset of
trials can be reproduced in isolation.

Censored trials (budget exhausted) are excluded from means; the censored
count is reported alongside, never imputed.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__ as _version
from .benchmarks import CLIFF, ContractViolation, ProblemInstance, cliff, onemax
from .heuristics import HeuristicConfig, RunRecord, run
from .oracle import (
    UnreachableOptimumError,
    build_level_chain,
    expected_upgrade_times,
)

CSV_COLUMNS = [
    "problem",
    "n",
    "m",
    "d",
    "algorithm",
    "param_name",
    "param_value",
    "sweep_name",
    "sweep_value",
    "trials",
    "censored",
    "mean_iterations",
    "stderr",
    "master_seed",
]

_INSTANCE_SWEEPS = {"n", "m", "d"}
_ALGO_SWEEPS = {"alpha", "p", "beta"}

# the parameter reported in the param_name/param_value CSV columns
_PRIMARY_PARAM = {
    "ma": "alpha",
    "oea": "p",
    "rls": None,
    "fast": "beta",
    "sd": "sd_R",
    "ma-gstd": "alpha",
    "ma-gheavy": "alpha",
}


@dataclass(frozen=True)
class ExperimentPlan:
    """Instance template + swept parameter + algorithms + trials + seed."""

    kind: str  # "onemax" or "cliff"
    n: int
    m: int | None = None
    d: float | None = None
    sweep_name: str = "m"
    sweep_values: tuple = ()
    algorithms: tuple[HeuristicConfig, ...] = ()
    trials: int = 1
    master_seed: int = 0
    budget: int | None = None  # overrides every config's budget when set

    def __post_init__(self):
        if self.trials < 1:
            raise ContractViolation("trials must be at least 1")
        values = tuple(self.sweep_values)
        if not values:
            raise ContractViolation("sweep_values must be non-empty")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ContractViolation("sweep_values must be strictly increasing")
        if self.sweep_name not in _INSTANCE_SWEEPS | _ALGO_SWEEPS:
            raise ContractViolation(f"unknown sweep parameter {self.sweep_name!r}")
        if not self.algorithms:
            raise ContractViolation("at least one algorithm is required")
        object.__setattr__(self, "sweep_values", values)
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        self.instance_at(values[0])  # fail fast on a bad instance template

    def instance_at(self, sweep_value) -> ProblemInstance:
        kind, n, m, d = self.kind, self.n, self.m, self.d
        if self.sweep_name == "n":
            n = int(sweep_value)
        elif self.sweep_name == "m":
            m = int(sweep_value)
        elif self.sweep_name == "d":
            d = float(sweep_value)
        if kind == "onemax":
            return onemax(n)
        return cliff(n, d, m)

    def config_at(self, config: HeuristicConfig, sweep_value) -> HeuristicConfig:
        cfg = config
        if self.sweep_name in _ALGO_SWEEPS and getattr(cfg, self.sweep_name) is not None:
            cfg = replace(cfg, **{self.sweep_name: float(sweep_value)})
        if self.budget is not None:
            cfg = cfg.with_budget(self.budget)
        return cfg


def derive_seed(master_seed: int, sweep_idx: int, algo_idx: int, trial_idx: int) -> int:
    """64-bit per-trial seed from the master seed and the cell indices."""
    ss = np.random.SeedSequence([master_seed, sweep_idx, algo_idx, trial_idx])
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class ResultRow:
    sweep_value: float
    algorithm: str  # label, e.g. "ma(alpha=20)"
    kind: str
    param_name: str | None
    param_value: float | None
    problem: str
    n: int
    m: int | None
    d: float | None
    trials: int
    censored: int
    mean_iterations: float | None
    stderr: float | None
    all_censored: bool
    records: tuple[RunRecord, ...] = field(repr=False, default=())


@dataclass(frozen=True)
class ExperimentResult:
    rows: tuple[ResultRow, ...]
    plan: ExperimentPlan
    code_version: str
    timestamp: float


def _aggregate(records, cfg, inst, plan, sweep_value) -> ResultRow:
    finished = [r.iterations for r in records if r.hit_optimum]
    censored = len(records) - len(finished)
    if finished:
        mean = float(np.mean(finished))
        stderr = (
            float(np.std(finished, ddof=1) / math.sqrt(len(finished)))
            if len(finished) > 1
            else 0.0
        )
    else:
        mean = stderr = None
    pname = _PRIMARY_PARAM[cfg.kind]
    pvalue = getattr(cfg, pname) if pname else None
    return ResultRow(
        sweep_value=sweep_value,
        algorithm=cfg.label(),
        kind=cfg.kind,
        param_name=pname,
        param_value=pvalue,
        problem=inst.kind,
        n=inst.n,
        m=inst.m,
        d=inst.d,
        trials=len(records),
        censored=censored,
        mean_iterations=mean,
        stderr=stderr,
        all_censored=not finished,
        records=tuple(records),
    )


def run_experiment(plan: ExperimentPlan, threads: int | None = None) -> ExperimentResult:
    """Execute every (sweep value, algorithm, trial) cell of the plan.

    Trials run on a thread pool (the trajectory kernel releases the GIL) but
    results are collected in deterministic (sweep, algo, trial) order, so the
    output is independent of scheduling.
    """
    jobs = []
    for si, sv in enumerate(plan.sweep_values):
        inst = plan.instance_at(sv)
        for ai, base_cfg in enumerate(plan.algorithms):
            cfg = plan.config_at(base_cfg, sv)
            for ti in range(plan.trials):
                seed = derive_seed(plan.master_seed, si, ai, ti)
                jobs.append((si, sv, inst, ai, cfg, seed))
    if threads is None or threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(lambda j: run(j[4], j[2], j[5]), jobs))
    else:
        outcomes = [run(j[4], j[2], j[5]) for j in jobs]
    rows = []
    pos = 0
    for si, sv in enumerate(plan.sweep_values):
        inst = plan.instance_at(sv)
        for ai, base_cfg in enumerate(plan.algorithms):
            cfg = plan.config_at(base_cfg, sv)
            records = outcomes[pos : pos + plan.trials]
            pos += plan.trials
            rows.append(_aggregate(records, cfg, inst, plan, sv))
    return ExperimentResult(
        rows=tuple(rows),
        plan=plan,
        code_version=_version,
        timestamp=time.time(),
    )


def compare_with_oracle(result: ExperimentResult) -> list[dict]:
    """Per-row z-scores against the exact expected runtime.

    Only the one-bit-flip algorithms (ma, rls) collapse to the level chain;
    other rows get an explicit ``"no oracle"`` marker.  Rows with |z| > 4 are
    flagged.
    """
    report = []
    for row in result.rows:
        entry: dict = {"algorithm": row.algorithm, "sweep_value": row.sweep_value}
        if row.kind not in ("ma", "rls"):
            entry["status"] = "no oracle"
            report.append(entry)
            continue
        if row.problem == CLIFF:
            inst = cliff(row.n, row.d, row.m)
        else:
            inst = onemax(row.n)
        alpha = row.param_value if row.kind == "ma" else math.inf
        try:
            exact = expected_upgrade_times(build_level_chain(inst, alpha)).E_expected_start
        except UnreachableOptimumError:
            entry["status"] = "no oracle"
            entry["note"] = "optimum unreachable for this chain"
            report.append(entry)
            continue
        entry["exact"] = exact
        if row.mean_iterations is None or not row.stderr:
            entry["status"] = "no finished trials" if row.all_censored else "zero stderr"
            report.append(entry)
            continue
        z = (row.mean_iterations - exact) / row.stderr
        entry["z"] = z
        entry["status"] = "flagged" if abs(z) > 4 else "ok"
        report.append(entry)
    return report


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def export(result: ExperimentResult, fmt: str, path) -> None:
    """Write the result as CSV (fixed column set) or JSON (full mirror).

    ``path`` may be a filesystem path or an open text stream.  The CSV is
    byte-deterministic for a fixed plan; the run timestamp only appears in the
    JSON provenance.
    """
    if fmt == "csv":
        payload = to_csv(result)
    elif fmt == "json":
        payload = json.dumps(to_json_dict(result), indent=2) + "\n"
    else:
        raise ContractViolation(f"unknown export format {fmt!r}")
    if hasattr(path, "write"):
        path.write(payload)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)


def to_csv(result: ExperimentResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in result.rows:
        writer.writerow(
            [
                row.problem,
                row.n,
                _fmt(row.m),
                _fmt(row.d),
                row.algorithm,
                _fmt(row.param_name),
                _fmt(row.param_value),
                result.plan.sweep_name,
                _fmt(row.sweep_value),
                row.trials,
                row.censored,
                _fmt(row.mean_iterations),
                _fmt(row.stderr),
                result.plan.master_seed,
            ]
        )
    return buf.getvalue()


def to_json_dict(result: ExperimentResult) -> dict:
    plan = result.plan
    return {
        "provenance": {
            "plan": {
                "kind": plan.kind,
                "n": plan.n,
                "m": plan.m,
                "d": plan.d,
                "sweep_name": plan.sweep_name,
                "sweep_values": list(plan.sweep_values),
                "algorithms": [cfg.label() for cfg in plan.algorithms],
                "trials": plan.trials,
                "master_seed": plan.master_seed,
                "budget": plan.budget,
            },
            "code_version": result.code_version,
            "timestamp": result.timestamp,
        },
        "rows": [
            {
                "problem": row.problem,
                "n": row.n,
                "m": row.m,
                "d": row.d,
                "algorithm": row.algorithm,
                "param_name": row.param_name,
                "param_value": row.param_value,
                "sweep_name": plan.sweep_name,
                "sweep_value": row.sweep_value,
                "trials": row.trials,
                "censored": row.censored,
                "all_censored": row.all_censored,
                "mean_iterations": row.mean_iterations,
                "stderr": row.stderr,
                "master_seed": plan.master_seed,
                "iterations": [r.iterations for r in row.records],
                "hit_optimum": [r.hit_optimum for r in row.records],
            }
            for row in result.rows
        ],
    }
