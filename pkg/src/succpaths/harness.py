"""Monte Carlo experiment driver, aggregation, and result persistence.

Trials are independent: each derives its own seed from the master seed and
its index, generates fresh graphs, and reports rows.  Aggregation is a
deterministic fold in trial order, so output is identical for any worker
count.  Persisted rows carry enough digits to recompute every aggregate
bit-exactly.
"""

from __future__ import annotations

import csv
import functools
import json
import math
import multiprocessing
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from ._core import derive_trial_seed
from .errors import InvalidParameterError
from .flow import flow_limit_formula, min_cost_k_flow
from .paths import limit_formula, successive_paths
from .weights import EdgeWeightModel, StorageMode, generate

# float slack for audits that compare independently accumulated sums
_REL_TOL = 1e-9


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    model: EdgeWeightModel
    trials: int
    seed: int
    k_max: int
    k_grid: tuple[int, ...]
    workers: int = 1
    mode: StorageMode = StorageMode.DENSE_MATERIALIZED

    def validate(self) -> None:
        if self.n < 2:
            raise InvalidParameterError(f"need n >= 2, got {self.n}")
        if self.trials < 1:
            raise InvalidParameterError(f"need trials >= 1, got {self.trials}")
        if not 1 <= self.k_max <= self.n - 1:
            raise InvalidParameterError(
                f"k_max={self.k_max} outside 1..{self.n - 1}"
            )
        if not self.k_grid:
            raise InvalidParameterError("k-grid must be nonempty")
        if any(not 1 <= k <= self.k_max for k in self.k_grid):
            raise InvalidParameterError(
                f"k-grid {self.k_grid} not within 1..{self.k_max}"
            )
        if self.workers < 1:
            raise InvalidParameterError(f"need workers >= 1, got {self.workers}")


def geometric_k_grid(n: int, k_max: int) -> tuple[int, ...]:
    """Default grid: powers of two up to k_max, plus n//2 and n-1 if in range."""
    ks = set()
    k = 1
    while k <= k_max:
        ks.add(k)
        k *= 2
    for extra in (n // 2, n - 1):
        if 1 <= extra <= k_max:
            ks.add(extra)
    return tuple(sorted(ks))


@dataclass(frozen=True)
class PathRow:
    trial: int
    seed: int
    k: int
    exists: bool
    x_k: float | None
    s_k: float | None
    limit: float | None
    ratio: float | None


@dataclass(frozen=True)
class AggRow:
    k: int
    n_exist: int
    ratio_mean: float | None
    ratio_median: float | None
    ratio_q05: float | None
    ratio_q95: float | None
    cond_mean_xk: float | None


@dataclass(frozen=True)
class FlowRow:
    trial: int
    seed: int
    k: int
    feasible: bool
    f_k: float | None
    s_k: float | None
    limit: float | None
    f_ratio: float | None
    s_ratio: float | None


@dataclass(frozen=True)
class FlowAggRow:
    k: int
    n_feasible: int
    f_ratio_mean: float | None
    f_ratio_median: float | None
    f_ratio_q05: float | None
    f_ratio_q95: float | None
    s_ratio_mean: float | None


@dataclass(frozen=True)
class CondRow:
    k: int
    n_trials: int
    n_exist: int
    cond_mean_xk: float | None
    stderr: float | None
    limit: float
    ratio: float | None


@dataclass
class AuditCounters:
    """Structural invariant violations observed while running trials.

    All counters are required to stay at zero; they are tracked rather than
    asserted so a sweep records the evidence instead of dying mid-run.
    """

    trials: int = 0
    paths_checked: int = 0
    monotonicity_violations: int = 0
    disjointness_violations: int = 0
    length_bound_violations: int = 0
    incident_lower_bound_violations: int = 0
    flow_dominance_violations: int = 0

    def merge(self, other: "AuditCounters") -> None:
        for f in self.__dataclass_fields__:
            setattr(self, f, getattr(self, f) + getattr(other, f))


@dataclass
class TrialBatch:
    kind: str  # "paths", "flow", or "condexp"
    config: dict
    rows: list
    aggregates: list
    audit: AuditCounters = field(default_factory=AuditCounters)


# -- per-trial work (top level for multiprocessing) --------------------------


def _audit_successive(g, result, audit: AuditCounters) -> None:
    audit.trials += 1
    seen_edges: set[tuple[int, int]] = set()
    ws = g.incident_weights(g.s)
    wt = g.incident_weights(g.t)
    prev_cost = -math.inf
    for rec, s_k in zip(result.records, result.prefix_sums):
        audit.paths_checked += 1
        if rec.cost < prev_cost * (1.0 - _REL_TOL) - 1e-15:
            audit.monotonicity_violations += 1
        prev_cost = rec.cost
        edges = rec.edges()
        if seen_edges.intersection(edges) or len(set(edges)) != len(edges):
            audit.disjointness_violations += 1
        seen_edges.update(edges)
        if rec.length > 19.0 * g.n * rec.cost:
            audit.length_bound_violations += 1
        k = rec.index
        bound = float(np.sum(ws[: k - 1]) + np.sum(wt[: k - 1]))
        if s_k < bound * (1.0 - _REL_TOL) - 1e-15:
            audit.incident_lower_bound_violations += 1


def _paths_trial(config: ExperimentConfig, trial: int):
    seed = derive_trial_seed(config.seed, trial)
    g = generate(config.n, config.model, seed, config.mode)
    result = successive_paths(g, config.k_max)
    audit = AuditCounters()
    _audit_successive(g, result, audit)
    rows = []
    for k in config.k_grid:
        lim = limit_formula(config.model, config.n, k)
        if k <= len(result.records):
            x = result.records[k - 1].cost
            rows.append(
                PathRow(trial, seed, k, True, x, result.prefix_sums[k - 1], lim, x / lim)
            )
        else:
            rows.append(PathRow(trial, seed, k, False, None, None, lim, None))
    return rows, audit


def _flow_trial(config: ExperimentConfig, trial: int):
    seed = derive_trial_seed(config.seed, trial)
    g_flow = generate(config.n, config.model, seed, config.mode)
    g_succ = generate(config.n, config.model, seed, config.mode)
    result = successive_paths(g_succ, max(config.k_grid))
    audit = AuditCounters()
    _audit_successive(g_succ, result, audit)
    rows = []
    for k in config.k_grid:
        fr = min_cost_k_flow(g_flow, k)
        lim = flow_limit_formula(config.model, config.n, k)
        s_k = result.prefix_sums[k - 1] if k <= len(result.records) else None
        if fr.feasible:
            f = fr.total_cost
            if s_k is not None and f > s_k * (1.0 + _REL_TOL) + 1e-15:
                audit.flow_dominance_violations += 1
            rows.append(
                FlowRow(
                    trial, seed, k, True, f, s_k, lim, f / lim,
                    s_k / lim if s_k is not None else None,
                )
            )
        else:
            rows.append(FlowRow(trial, seed, k, False, None, s_k, lim, None, None))
    return rows, audit


def _run_trials(config: ExperimentConfig, worker):
    fn = functools.partial(worker, config)
    if config.workers == 1:
        results = [fn(i) for i in range(config.trials)]
    else:
        with multiprocessing.get_context("fork").Pool(config.workers) as pool:
            results = pool.map(fn, range(config.trials))
    rows = []
    audit = AuditCounters()
    for trial_rows, trial_audit in results:
        rows.extend(trial_rows)
        audit.merge(trial_audit)
    return rows, audit


# -- aggregation --------------------------------------------------------------


def _quantiles(values: list[float]):
    arr = np.asarray(values, dtype=np.float64)
    q05, med, q95 = np.quantile(arr, [0.05, 0.5, 0.95])
    return float(np.mean(arr)), float(med), float(q05), float(q95)


def aggregate_path_rows(rows: list[PathRow]) -> list[AggRow]:
    """Per-k aggregates, an exact deterministic function of the row set."""
    out = []
    for k in sorted({r.k for r in rows}):
        ratios = [r.ratio for r in rows if r.k == k and r.exists]
        xs = [r.x_k for r in rows if r.k == k and r.exists]
        if ratios:
            mean, med, q05, q95 = _quantiles(ratios)
            out.append(
                AggRow(k, len(ratios), mean, med, q05, q95, float(np.mean(xs)))
            )
        else:
            out.append(AggRow(k, 0, None, None, None, None, None))
    return out


def aggregate_flow_rows(rows: list[FlowRow]) -> list[FlowAggRow]:
    out = []
    for k in sorted({r.k for r in rows}):
        fr = [r.f_ratio for r in rows if r.k == k and r.feasible]
        sr = [r.s_ratio for r in rows if r.k == k and r.s_ratio is not None]
        if fr:
            mean, med, q05, q95 = _quantiles(fr)
            out.append(
                FlowAggRow(
                    k, len(fr), mean, med, q05, q95,
                    float(np.mean(sr)) if sr else None,
                )
            )
        else:
            out.append(FlowAggRow(k, 0, None, None, None, None, None))
    return out


def conditional_expectation_rows(
    rows: list[PathRow], n: int, model: EdgeWeightModel, trials: int
) -> list[CondRow]:
    """E[X_k | P_k exists] estimates; ranks with no existing trial are flagged
    with no estimate (None fields)."""
    out = []
    for k in sorted({r.k for r in rows}):
        xs = np.array([r.x_k for r in rows if r.k == k and r.exists])
        lim = limit_formula(model, n, k)
        if xs.size == 0:
            out.append(CondRow(k, trials, 0, None, None, lim, None))
            continue
        mean = float(np.mean(xs))
        stderr = (
            float(np.std(xs, ddof=1) / math.sqrt(xs.size)) if xs.size > 1 else None
        )
        out.append(CondRow(k, trials, int(xs.size), mean, stderr, lim, mean / lim))
    return out


# -- experiment entry points ---------------------------------------------------


def _config_dict(config: ExperimentConfig) -> dict:
    d = asdict(config)
    d["model"] = config.model.value
    d["mode"] = config.mode.value
    d["k_grid"] = list(config.k_grid)
    return d


def run_paths_experiment(config: ExperimentConfig) -> TrialBatch:
    """Successive-path costs against the limit formula, per trial and rank."""
    config.validate()
    rows, audit = _run_trials(config, _paths_trial)
    return TrialBatch(
        kind="paths",
        config=_config_dict(config),
        rows=rows,
        aggregates=aggregate_path_rows(rows),
        audit=audit,
    )


def run_flow_experiment(config: ExperimentConfig) -> TrialBatch:
    """Min-cost k-flow values against the summed limit formula (plus S_k)."""
    config.validate()
    rows, audit = _run_trials(config, _flow_trial)
    return TrialBatch(
        kind="flow",
        config=_config_dict(config),
        rows=rows,
        aggregates=aggregate_flow_rows(rows),
        audit=audit,
    )


def run_conditional_expectation(config: ExperimentConfig) -> TrialBatch:
    """Conditional mean of X_k given existence, with standard errors."""
    config.validate()
    rows, audit = _run_trials(config, _paths_trial)
    return TrialBatch(
        kind="condexp",
        config=_config_dict(config),
        rows=rows,
        aggregates=conditional_expectation_rows(
            rows, config.n, config.model, config.trials
        ),
        audit=audit,
    )


# -- persistence ----------------------------------------------------------------

_ROW_HEADERS = {
    "paths": ["trial", "seed", "k", "exists", "x_k", "s_k", "limit", "ratio"],
    "condexp": ["trial", "seed", "k", "exists", "x_k", "s_k", "limit", "ratio"],
    "flow": [
        "trial", "seed", "k", "feasible", "f_k", "s_k", "limit", "f_ratio", "s_ratio",
    ],
}

_AGG_HEADERS = {
    "paths": [
        "k", "n_exist", "ratio_mean", "ratio_median", "ratio_q05", "ratio_q95",
        "cond_mean_xk",
    ],
    "condexp": ["k", "n_trials", "n_exist", "cond_mean_xk", "stderr", "limit", "ratio"],
    "flow": [
        "k", "n_feasible", "f_ratio_mean", "f_ratio_median", "f_ratio_q05",
        "f_ratio_q95", "s_ratio_mean",
    ],
}


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def agg_path_for(path: str | Path) -> Path:
    p = Path(path)
    return p.with_name(p.stem + ".agg" + p.suffix)


def gnuplot_path_for(path: str | Path) -> Path:
    return Path(path).with_suffix(".gnuplot.dat")


def emit(
    batch: TrialBatch, fmt: str, path: str | Path, *, gnuplot: bool = False
) -> list[Path]:
    """Persist a batch.  CSV writes a row file and an .agg aggregate file;
    JSON writes one document with both.  Numbers carry 17 significant digits
    so aggregates recompute bit-exactly from the persisted rows.  On write
    failure any partial file is removed before the error propagates.
    """
    path = Path(path)
    written: list[Path] = []
    try:
        if fmt == "csv":
            with open(path, "w", newline="") as fh:
                written.append(path)
                w = csv.writer(fh)
                w.writerow(_ROW_HEADERS[batch.kind])
                for row in batch.rows:
                    w.writerow([_fmt(v) for v in asdict(row).values()])
            apath = agg_path_for(path)
            with open(apath, "w", newline="") as fh:
                written.append(apath)
                w = csv.writer(fh)
                w.writerow(_AGG_HEADERS[batch.kind])
                for row in batch.aggregates:
                    w.writerow([_fmt(v) for v in asdict(row).values()])
        elif fmt == "json":
            doc = {
                "kind": batch.kind,
                "config": batch.config,
                "rows": [asdict(r) for r in batch.rows],
                "aggregates": [asdict(a) for a in batch.aggregates],
                "audit": asdict(batch.audit),
            }
            with open(path, "w") as fh:
                written.append(path)
                json.dump(doc, fh, indent=1)
                fh.write("\n")
        else:
            raise InvalidParameterError(f"unknown format {fmt!r}")
        if gnuplot:
            gpath = gnuplot_path_for(path)
            with open(gpath, "w") as fh:
                written.append(gpath)
                fh.write("# k ratio_mean\n")
                for a in batch.aggregates:
                    val = a.f_ratio_mean if batch.kind == "flow" else (
                        a.ratio if batch.kind == "condexp" else a.ratio_mean
                    )
                    if val is not None:
                        fh.write(f"{a.k} {val:.17g}\n")
    except OSError:
        for p in written:
            if p.exists():
                os.unlink(p)
        raise
    return written


def _parse_cell(text: str):
    if text == "":
        return None
    return float(text)


def load_path_rows_csv(path: str | Path) -> list[PathRow]:
    """Read back a persisted paths/condexp row file."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for rec in reader:
            rows.append(
                PathRow(
                    trial=int(rec["trial"]),
                    seed=int(rec["seed"]),
                    k=int(rec["k"]),
                    exists=rec["exists"] == "1",
                    x_k=_parse_cell(rec["x_k"]),
                    s_k=_parse_cell(rec["s_k"]),
                    limit=_parse_cell(rec["limit"]),
                    ratio=_parse_cell(rec["ratio"]),
                )
            )
    return rows
