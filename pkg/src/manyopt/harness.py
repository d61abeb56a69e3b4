"""Experiment orchestration: configs, seeded run batches, statistics and sweeps.

An experiment directory holds:

``config.json``
    the resolved configuration in canonical form
``front_seed<k>.csv``
    the non-dominated subset of each run's final objectives
``stats.json``
    best/median/worst of every selected metric over the batch
``counters.json``
    per-run operation counters, duplicate-slot counts and wall-clock time
"""

from __future__ import annotations

import dataclasses
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from manyopt import engine, metrics
from manyopt.engine import AlgorithmConfig, RunRecord, UpdateStrategy
from manyopt.errors import ConfigError, DomainError
from manyopt.io import dump_json, write_matrix_csv
from manyopt.problems import DTLZ_NAMES, WFG_NAMES, make_problem
from manyopt.variation import VariationConfig
from manyopt.weights import WeightSet, build_neighborhoods, weights_for

ENV_PREFIX = "MANYOPT_"

# Weight divisions (D1, D2) per objective count; D2 is None for single-layer sets.
DEFAULT_DIVISIONS = {3: (12, None), 5: (6, None), 8: (3, 2), 10: (3, 2), 15: (2, 1)}

# Default generations per DTLZ problem and objective count.
DTLZ_GENERATIONS = {
    "DTLZ1": {3: 400, 5: 600, 8: 750, 10: 1000, 15: 1500},
    "DTLZ2": {3: 250, 5: 350, 8: 500, 10: 750, 15: 1000},
    "DTLZ3": {3: 1000, 5: 1000, 8: 1000, 10: 1500, 15: 2000},
    "DTLZ4": {3: 600, 5: 1000, 8: 1250, 10: 2000, 15: 3000},
}
WFG_GENERATIONS = 3000

METRICS = ("igd", "hv")
MINIMIZED = {"igd": True, "hv": False}


@dataclass
class ExperimentConfig:
    """Flat experiment description; ``None`` fields are filled by :meth:`resolve`."""

    problem: str = "dtlz2"
    M: int = 3
    update: str = "liu"
    divisions: int | None = None
    divisions_inner: int | None = None
    tau: float = 0.5
    T: int = 30
    p_s: float = 0.9
    p_c: float = 1.0
    eta_c: float = 20.0
    p_m: float | None = None
    eta_m: float = 20.0
    sbx_var_prob: float = 0.5
    sbx_exchange_prob: float = 0.5
    pbi_theta: float = 5.0
    normalization: str = "auto"
    generations: int | None = None
    runs: int = 20
    base_seed: int = 0
    metrics: list | None = None
    hv_ref: list | None = None
    hv_samples: int = 10_000_000
    hv_exact_max_M: int = 10
    trace_every: int = 0
    workers: int = 1
    output_dir: str | None = None

    @classmethod
    def keys(cls) -> list[str]:
        return [f.name for f in dataclasses.fields(cls)]

    @classmethod
    def from_mapping(cls, data: dict) -> ExperimentConfig:
        unknown = sorted(set(data) - set(cls.keys()))
        if unknown:
            raise ConfigError(f"unknown configuration key {unknown[0]!r}", unknown[0])
        cfg = cls(**data)
        if "-m" in str(cfg.problem):
            stem, _, m = str(cfg.problem).lower().partition("-m")
            if "M" in data and int(data["M"]) != int(m):
                raise ConfigError(f"problem id {cfg.problem!r} disagrees with M={data['M']}", "M")
            cfg.problem, cfg.M = stem, int(m)
        return cfg

    @property
    def name(self) -> str:
        return str(self.problem).upper()

    @property
    def family(self) -> str:
        return "dtlz" if self.name.startswith("DTLZ") else "wfg"

    @property
    def problem_id(self) -> str:
        return f"{str(self.problem).lower()}-m{self.M}"

    def resolve(self) -> ExperimentConfig:
        """Validate every field and fill defaults; returns a new config."""
        c = dataclasses.replace(self)
        if c.name not in DTLZ_NAMES + WFG_NAMES + ("WFG3C",):
            raise ConfigError(f"unknown problem {c.problem!r}", "problem")
        c.problem = str(c.problem).lower()
        _check_int(c.M, "M", 2)
        c.M = int(c.M)
        try:
            UpdateStrategy(c.update)
        except ValueError:
            raise ConfigError(f"update must be one of liu, replace_all, replace_2; got {c.update!r}",
                              "update") from None
        if c.divisions is None:
            if c.M not in DEFAULT_DIVISIONS:
                raise ConfigError(f"no default divisions for M={c.M}; set 'divisions'", "divisions")
            c.divisions, c.divisions_inner = DEFAULT_DIVISIONS[c.M]
        _check_int(c.divisions, "divisions", 1)
        if c.divisions_inner is not None:
            _check_int(c.divisions_inner, "divisions_inner", 1)
        if not 0.0 <= c.tau <= 1.0:
            raise ConfigError("tau must lie in [0, 1]", "tau")
        if c.generations is None:
            c.generations = (DTLZ_GENERATIONS[c.name].get(c.M) if c.family == "dtlz" else WFG_GENERATIONS)
            if c.generations is None:
                raise ConfigError(f"no default generation count for {c.problem_id}", "generations")
        _check_int(c.generations, "generations", 0)
        _check_int(c.runs, "runs", 1)
        _check_int(c.base_seed, "base_seed", 0)
        _check_int(c.T, "T", 1)
        _check_int(c.workers, "workers", 1)
        _check_int(c.trace_every, "trace_every", 0)
        _check_int(c.hv_samples, "hv_samples", 1)
        if c.normalization not in ("auto", "on", "off"):
            raise ConfigError("normalization must be auto, on or off", "normalization")
        if c.metrics is None:
            c.metrics = ["igd"] if c.family == "dtlz" else ["hv"]
        c.metrics = list(c.metrics)
        for m in c.metrics:
            if m not in METRICS:
                raise ConfigError(f"unknown metric {m!r}", "metrics")
        if "igd" in c.metrics and c.family != "dtlz":
            raise ConfigError("IGD needs an analytic reference set; only DTLZ problems have one", "metrics")
        if c.hv_ref is None and "hv" in c.metrics:
            c.hv_ref = metrics.hv_reference_point(c.name.rstrip("C"), c.M).tolist()
        if c.hv_ref is not None:
            c.hv_ref = [float(v) for v in c.hv_ref]
            if len(c.hv_ref) != c.M or min(c.hv_ref) <= 0:
                raise ConfigError("hv_ref must list M strictly positive values", "hv_ref")
        if not c.pbi_theta > 0:
            raise ConfigError("pbi_theta must be > 0", "pbi_theta")
        c.variation()  # validates probabilities and indices
        n_weights = len(c.weights_unchecked().vectors)
        if c.T > n_weights:
            raise ConfigError(f"T={c.T} exceeds the population size {n_weights}", "T")
        return c

    def variation(self) -> VariationConfig:
        return VariationConfig(p_c=self.p_c, eta_c=self.eta_c, p_m=self.p_m, eta_m=self.eta_m,
                               p_s=self.p_s, sbx_var_prob=self.sbx_var_prob,
                               sbx_exchange_prob=self.sbx_exchange_prob)

    def use_nadir(self) -> bool:
        if self.normalization == "auto":
            return self.family == "wfg"
        return self.normalization == "on"

    def algorithm(self) -> AlgorithmConfig:
        return AlgorithmConfig(generations=self.generations, update=self.update, theta=self.pbi_theta,
                               variation=self.variation(), T=self.T, normalize=self.use_nadir())

    def weights_unchecked(self) -> WeightSet:
        try:
            return weights_for(self.M, self.divisions, self.divisions_inner, self.tau)
        except DomainError as exc:
            raise ConfigError(str(exc), "divisions") from None

    def weights(self) -> WeightSet:
        return build_neighborhoods(self.weights_unchecked(), self.T)

    def problem_instance(self):
        if self.name == "WFG3C":
            return make_problem("WFG3", self.M, canonical_wfg3=True)
        return make_problem(self.name, self.M)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def _check_int(value, key: str, minimum: int) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < minimum:
        raise ConfigError(f"{key} must be an integer >= {minimum}, got {value!r}", key)


def load_config(path=None, overrides: dict | None = None, env=None) -> ExperimentConfig:
    """Read a flat YAML/JSON mapping, then apply ``MANYOPT_<KEY>`` env vars and explicit overrides."""
    data: dict = {}
    if path is not None:
        text = Path(path).read_text()
        loaded = yaml.safe_load(text) if text.strip() else {}
        if not isinstance(loaded, dict):
            raise ConfigError(f"{path}: configuration must be a flat key-value mapping")
        data.update(loaded)
    env = os.environ if env is None else env
    by_upper = {k.upper(): k for k in ExperimentConfig.keys()}
    for var, raw in env.items():
        if var.startswith(ENV_PREFIX):
            key = by_upper.get(var[len(ENV_PREFIX):].upper())
            if key is None:
                raise ConfigError(f"environment variable {var} names no configuration key",
                                  var[len(ENV_PREFIX):].lower())
            data[key] = yaml.safe_load(raw)
    if overrides:
        data.update(overrides)
    return ExperimentConfig.from_mapping(data)


def parse_override(text: str) -> tuple[str, object]:
    key, sep, raw = text.partition("=")
    if not sep:
        raise ConfigError(f"override {text!r} must look like key=value")
    return key.strip(), yaml.safe_load(raw)


# --- statistics -----------------------------------------------------------------------


@dataclass(frozen=True)
class StatsRow:
    """Best, median and worst of one metric over a batch of runs.

    The median is the run ranked ``(runs - 1) // 2`` from the best, so it is
    always an actual run's value.
    """

    metric: str
    best: float
    median: float
    worst: float
    best_seed: int
    median_seed: int
    worst_seed: int

    @classmethod
    def from_values(cls, metric: str, values, seeds) -> StatsRow:
        values = [float(v) for v in values]
        sign = 1.0 if MINIMIZED[metric] else -1.0
        order = sorted(range(len(values)), key=lambda i: (sign * values[i], seeds[i]))
        b, m, w = order[0], order[(len(order) - 1) // 2], order[-1]
        return cls(metric, values[b], values[m], values[w], int(seeds[b]), int(seeds[m]), int(seeds[w]))

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: list[RunRecord]
    values: dict[str, list[float]]
    stats: dict[str, StatsRow] = field(default_factory=dict)

    @property
    def seeds(self) -> list[int]:
        return [r.seed for r in self.records]

    def stats_dict(self) -> dict:
        return {
            "problem": self.config.problem_id,
            "update": self.config.update,
            "runs": self.config.runs,
            "seeds": self.seeds,
            "front_filter": "nondominated",
            "metrics": {
                name: {**self.stats[name].to_dict(), "values": self.values[name]}
                for name in sorted(self.stats)
            },
        }

    def counters_dict(self) -> dict:
        return {
            "runs": [
                {"seed": r.seed, **r.counters, "duplicate_slots": r.duplicate_slots(),
                 "wall_seconds": r.wall_seconds}
                for r in self.records
            ]
        }


def score(record: RunRecord, config: ExperimentConfig, reference: np.ndarray | None = None) -> dict:
    """Metric values for one run's final population (no dominance filtering)."""
    out = {}
    F = record.objectives
    if "igd" in config.metrics:
        if reference is None:
            reference = metrics.reference_set(config.name, config.weights_unchecked())
        out["igd"] = metrics.igd(F, reference)
    if "hv" in config.metrics:
        out["hv"] = metrics.hypervolume(F, config.hv_ref, exact_max_M=config.hv_exact_max_M,
                                        samples=config.hv_samples,
                                        rng=np.random.default_rng(record.seed))
    return out


def _single_run(args) -> tuple[RunRecord, dict]:
    config, seed = args
    problem = config.problem_instance()
    weights = config.weights()
    reference = None
    tracer = None
    if "igd" in config.metrics:
        reference = metrics.reference_set(config.name, weights)
    if config.trace_every:
        primary = config.metrics[0]
        if primary == "igd":
            def tracer(g, pop):
                return metrics.igd(pop.objectives, reference)
        else:
            def tracer(g, pop):
                return metrics.hypervolume(pop.objectives, config.hv_ref, config.hv_exact_max_M,
                                           config.hv_samples, np.random.default_rng(seed))
    record = engine.run(problem, weights, config.algorithm(), seed, trace=tracer,
                        trace_every=max(1, config.trace_every))
    record.config = {**config.to_dict(), **record.config}
    return record, score(record, config, reference)


def run_experiment(config: ExperimentConfig, output_dir=None) -> ExperimentResult:
    """Run seeds ``base_seed .. base_seed + runs - 1`` and aggregate their metrics."""
    config = config.resolve()
    out = output_dir if output_dir is not None else config.output_dir
    seeds = [config.base_seed + i for i in range(config.runs)]
    jobs = [(config, s) for s in seeds]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_single_run, jobs))
    else:
        results = [_single_run(j) for j in jobs]
    records = [r for r, _ in results]
    values = {m: [scores[m] for _, scores in results] for m in config.metrics}
    result = ExperimentResult(config, records, values)
    result.stats = {m: StatsRow.from_values(m, values[m], seeds) for m in config.metrics}
    if out is not None:
        write_experiment(result, out)
    return result


def write_experiment(result: ExperimentResult, directory) -> Path:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    dump_json(result.config.to_dict(), d / "config.json")
    M = result.config.M
    header = [f"f{i + 1}" for i in range(M)]
    for r in result.records:
        write_matrix_csv(d / f"front_seed{r.seed}.csv", metrics.nondominated(r.objectives), header)
        if r.trace:
            write_matrix_csv(d / f"trace_seed{r.seed}.csv", r.trace, ["generation", result.config.metrics[0]])
    dump_json(result.stats_dict(), d / "stats.json")
    dump_json(result.counters_dict(), d / "counters.json")
    return d


# --- sensitivity sweep -------------------------------------------------------------------


@dataclass
class SweepResult:
    T_values: list[int]
    ps_values: list[float]
    metric: str
    cells: dict[tuple[int, float], StatsRow]

    def median_grid(self) -> np.ndarray:
        return np.array([[self.cells[(T, p)].median for p in self.ps_values] for T in self.T_values])

    def to_dict(self) -> dict:
        return {
            "metric": self.metric,
            "T_values": self.T_values,
            "ps_values": self.ps_values,
            "cells": [{"T": T, "p_s": p, **self.cells[(T, p)].to_dict()}
                      for T in self.T_values for p in self.ps_values],
        }


DEFAULT_T_VALUES = list(range(10, 61, 5))
DEFAULT_PS_VALUES = [round(0.1 * i, 1) for i in range(11)]


def sensitivity_sweep(base: ExperimentConfig, T_values=None, ps_values=None,
                      output_dir=None) -> SweepResult:
    """Run ``run_experiment`` on every (T, p_s) cell of the Cartesian grid."""
    T_values = list(DEFAULT_T_VALUES if T_values is None else T_values)
    ps_values = list(DEFAULT_PS_VALUES if ps_values is None else ps_values)
    if not T_values:
        raise ConfigError("T values must be nonempty", "T")
    if not ps_values:
        raise ConfigError("p_s values must be nonempty", "p_s")
    base = base.resolve()
    out = output_dir if output_dir is not None else base.output_dir
    cells = {}
    metric = base.metrics[0]
    for T in T_values:
        for p in ps_values:
            cfg = dataclasses.replace(base, T=int(T), p_s=float(p), output_dir=None)
            cell_dir = None if out is None else Path(out) / f"T{T}_ps{p:g}"
            cells[(int(T), float(p))] = run_experiment(cfg, cell_dir).stats[metric]
    result = SweepResult([int(t) for t in T_values], [float(p) for p in ps_values], metric, cells)
    if out is not None:
        dump_json(result.to_dict(), Path(out) / "sweep.json")
        write_matrix_csv(Path(out) / "sweep_median.csv",
                         np.column_stack([result.T_values, result.median_grid()]),
                         ["T"] + [f"ps_{p:g}" for p in result.ps_values])
    return result


# --- plot data ------------------------------------------------------------------------------

PLOT_KINDS = ("scatter", "parallel-coordinates")


def export_plot_data(record: RunRecord, kind: str, path) -> Path:
    """One row per individual with M objective columns.

    ``parallel-coordinates`` files carry a leading comment telling plotting code
    to draw one axis per objective; the numbers are identical to ``scatter``.
    """
    if kind not in PLOT_KINDS:
        raise ConfigError(f"plot kind must be one of {PLOT_KINDS}, got {kind!r}", "kind")
    F = record.objectives
    comments = [f"plot: {kind}", f"problem: {record.problem_id}", f"seed: {record.seed}"]
    if kind == "parallel-coordinates":
        comments.append("axes: one per objective, columns in objective order")
    return write_matrix_csv(path, F, [f"f{i + 1}" for i in range(F.shape[1])], comments)


def canonical_config_text(config: ExperimentConfig) -> str:
    return json.dumps(config.resolve().to_dict(), sort_keys=True)
