"""Generational loop with pluggable population-update strategies.

Each generation visits subproblems ``0..N-1`` in order.  A visit selects
mates, produces one offspring with SBX and polynomial mutation, evaluates it,
moves the ideal/nadir frame, and hands the offspring to the update strategy:

``liu``
    Local iterative update.  The offspring walks the neighborhood in angle
    order and swaps into every slot it beats on that slot's own weight vector,
    carrying the displaced individual onward.  Whatever is carried at the end
    of the walk is discarded, so exactly one individual leaves per visit.
``replace_all``
    Every neighborhood slot the offspring beats receives a copy of it.
``replace_2``
    As ``replace_all`` but stops after two replacements.

Random numbers come from one ``numpy.random.Generator`` seeded per run:
first an ``(N, n)`` block for the initial population, then one
``(N, 4 + 5n)`` block per generation (layout documented in
:mod:`manyopt.variation`).
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Callable

import numpy as np
from numba import njit

from manyopt.errors import ConfigError
from manyopt.problems import ProblemInstance, evaluate_into
from manyopt.scalarize import ScalarizerState, init_from_population, pbi_value
from manyopt.variation import (
    VariationConfig,
    pick_mate,
    pm_inplace,
    sbx_into,
    visit_uniform_count,
)
from manyopt.weights import WeightSet, build_neighborhoods


class UpdateStrategy(str, Enum):
    LIU = "liu"
    REPLACE_ALL = "replace_all"
    REPLACE_2 = "replace_2"

    @property
    def max_replacements(self) -> int:
        """Replacement cap for the classic strategies; -1 means unbounded."""
        return {"liu": 0, "replace_all": -1, "replace_2": 2}[self.value]


_STRATEGY_CODES = {UpdateStrategy.LIU: 0, UpdateStrategy.REPLACE_ALL: 1, UpdateStrategy.REPLACE_2: 2}


@dataclass
class Individual:
    decision: np.ndarray
    objectives: np.ndarray
    ident: int = -1


@dataclass
class Population:
    """``N`` slots; slot ``i`` belongs to weight vector ``i``.

    ``ids`` tags every individual with the visit that created it so that moves
    and copies can be audited.  Copies made by the classic strategies share the
    id of their source.
    """

    decisions: np.ndarray
    objectives: np.ndarray
    ids: np.ndarray

    def __len__(self) -> int:
        return self.decisions.shape[0]

    def __getitem__(self, i: int) -> Individual:
        return Individual(self.decisions[i].copy(), self.objectives[i].copy(), int(self.ids[i]))

    def copy(self) -> Population:
        return Population(self.decisions.copy(), self.objectives.copy(), self.ids.copy())

    def duplicate_slots(self) -> int:
        """Slots whose decision vector also occupies an earlier slot."""
        return len(self) - np.unique(self.decisions, axis=0).shape[0]


@dataclass
class PassResult:
    population: Population
    discarded: Individual | None
    comparisons: int
    swaps: int


@dataclass(frozen=True)
class AlgorithmConfig:
    generations: int
    update: UpdateStrategy = UpdateStrategy.LIU
    theta: float = 5.0
    variation: VariationConfig = field(default_factory=VariationConfig)
    T: int | None = None
    normalize: bool = True

    def __post_init__(self):
        object.__setattr__(self, "update", UpdateStrategy(self.update))
        if int(self.generations) != self.generations or self.generations < 0:
            raise ConfigError("generations must be a non-negative integer", "generations")
        if not self.theta > 0:
            raise ConfigError("pbi_theta must be > 0", "pbi_theta")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["update"] = self.update.value
        return d


@dataclass
class RunRecord:
    seed: int
    config: dict
    problem_id: str
    population: Population
    counters: dict
    trace: list = field(default_factory=list)
    wall_seconds: float = 0.0

    @property
    def objectives(self) -> np.ndarray:
        return self.population.objectives

    def duplicate_slots(self) -> int:
        return self.population.duplicate_slots()

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "problem": self.problem_id,
            "config": self.config,
            "counters": self.counters,
            "duplicate_slots": self.duplicate_slots(),
            "trace": self.trace,
            "objectives": self.objectives.tolist(),
        }


# --- compiled kernels -----------------------------------------------------------


@njit(cache=True)
def _swap_rows(a, i, buf):
    for c in range(buf.shape[0]):
        tmp = a[i, c]
        a[i, c] = buf[c]
        buf[c] = tmp


@njit(cache=True)
def liu_pass(cx, cf, cid, neighborhood, X, F, ids, W, ideal, nadir, theta, use_nadir, scratch):
    """Walk ``neighborhood`` with the carried offspring (cx, cf, cid).

    On return the buffers hold the discarded individual; returns (discarded id, swaps).
    """
    swaps = 0
    for j in neighborhood:
        carried = pbi_value(cf, W[j], ideal, nadir, theta, use_nadir, scratch)
        resident = pbi_value(F[j], W[j], ideal, nadir, theta, use_nadir, scratch)
        if carried < resident:
            _swap_rows(X, j, cx)
            _swap_rows(F, j, cf)
            tmp = ids[j]
            ids[j] = cid
            cid = tmp
            swaps += 1
    return cid, swaps


@njit(cache=True)
def classic_pass(cx, cf, cid, neighborhood, X, F, ids, W, ideal, nadir, theta, use_nadir,
                 max_replacements, scratch):
    """Copy the offspring into every slot it beats; returns (comparisons, replacements)."""
    replaced = 0
    comparisons = 0
    for j in neighborhood:
        if max_replacements >= 0 and replaced >= max_replacements:
            break
        comparisons += 1
        carried = pbi_value(cf, W[j], ideal, nadir, theta, use_nadir, scratch)
        if carried < pbi_value(F[j], W[j], ideal, nadir, theta, use_nadir, scratch):
            X[j, :] = cx
            F[j, :] = cf
            ids[j] = cid
            replaced += 1
    return comparisons, replaced


@njit(cache=True)
def evaluate_population(code, X, M, k):
    F = np.empty((X.shape[0], M))
    for i in range(X.shape[0]):
        evaluate_into(code, X[i], M, k, F[i])
    return F


@njit(cache=True)
def run_generation(code, M, k, X, F, ids, next_id, W, nbrs, ideal, nadir, theta, use_nadir,
                   p_s, eta_c, p_c, var_prob, exchange_prob, eta_m, p_m, lower, upper, U,
                   strategy, max_repl, counters):
    """One pass over all subproblems.  counters = [evaluations, comparisons, swaps]."""
    N, n = X.shape
    child = np.empty(n)
    cf = np.empty(M)
    scratch = np.empty(M)
    for i in range(N):
        u = U[i]
        j = pick_mate(i, nbrs[i], N, p_s, u[0], u[1])
        sbx_into(X[i], X[j], eta_c, p_c, var_prob, exchange_prob, u[2], u[3], u[4:4 + n],
                 u[4 + n:4 + 2 * n], u[4 + 2 * n:4 + 3 * n], lower, upper, child)
        pm_inplace(child, eta_m, p_m, u[4 + 3 * n:4 + 4 * n], u[4 + 4 * n:4 + 5 * n], lower, upper)
        evaluate_into(code, child, M, k, cf)
        counters[0] += 1
        for m in range(M):
            if cf[m] < ideal[m]:
                ideal[m] = cf[m]
            if cf[m] > nadir[m]:
                nadir[m] = cf[m]
        cid = next_id
        next_id += 1
        if strategy == 0:
            _, swaps = liu_pass(child, cf, cid, nbrs[i], X, F, ids, W, ideal, nadir, theta, use_nadir,
                                scratch)
            counters[1] += nbrs.shape[1]
            counters[2] += swaps
        else:
            comps, repl = classic_pass(child, cf, cid, nbrs[i], X, F, ids, W, ideal, nadir, theta,
                                       use_nadir, max_repl, scratch)
            counters[1] += comps
            counters[2] += repl
    return next_id


# --- Python-level strategy API ------------------------------------------------------


def liu_update(c: Individual, neighborhood, population: Population, frame: ScalarizerState,
               weights: np.ndarray) -> PassResult:
    """Apply one local-iterative-update pass in place.

    ``frame`` stays fixed for the whole pass.  Exactly ``len(neighborhood)``
    PBI comparisons are made and exactly one individual (possibly ``c``
    itself) is discarded.
    """
    nbr = np.asarray(neighborhood, dtype=np.int64)
    cx = np.array(c.decision, dtype=float)
    cf = np.array(c.objectives, dtype=float)
    scratch = np.empty(cf.shape[0])
    cid, swaps = liu_pass(cx, cf, int(c.ident), nbr, population.decisions, population.objectives,
                          population.ids, np.asarray(weights, dtype=float), frame.ideal, frame.nadir,
                          float(frame.theta), bool(frame.use_nadir), scratch)
    return PassResult(population, Individual(cx, cf, int(cid)), int(nbr.shape[0]), int(swaps))


def classic_update(c: Individual, neighborhood, population: Population, frame: ScalarizerState,
                   weights: np.ndarray, max_replacements: int | None = None) -> PassResult:
    """MOEA/D-style replacement; ``max_replacements=None`` replaces every slot ``c`` beats."""
    nbr = np.asarray(neighborhood, dtype=np.int64)
    cap = -1 if max_replacements is None else int(max_replacements)
    comps, repl = classic_pass(np.asarray(c.decision, dtype=float), np.asarray(c.objectives, dtype=float),
                               int(c.ident), nbr, population.decisions, population.objectives,
                               population.ids, np.asarray(weights, dtype=float), frame.ideal,
                               frame.nadir, float(frame.theta), bool(frame.use_nadir), cap,
                               np.empty(len(c.objectives)))
    return PassResult(population, None, int(comps), int(repl))


# --- driver -----------------------------------------------------------------------------


def _prepare_weights(weights: WeightSet, problem: ProblemInstance, config: AlgorithmConfig) -> WeightSet:
    if weights.M != problem.M:
        raise ConfigError(f"weights have {weights.M} objectives but {problem.id} has {problem.M}", "M")
    if weights.neighborhoods is None:
        if config.T is None:
            raise ConfigError("neighborhood size T is required when weights carry no neighborhoods", "T")
        if not 1 <= config.T <= weights.N:
            raise ConfigError(f"T must lie in [1, {weights.N}], got {config.T}", "T")
        return build_neighborhoods(weights, config.T)
    if config.T is not None and config.T != weights.T:
        raise ConfigError(f"config T={config.T} disagrees with weight neighborhoods T={weights.T}", "T")
    return weights


def initial_population(problem: ProblemInstance, N: int, rng: np.random.Generator) -> Population:
    lower, upper = problem.bounds
    X = lower + (upper - lower) * rng.random((N, problem.n))
    F = evaluate_population(problem.code, X, problem.M, problem.k)
    return Population(X, F, np.arange(N, dtype=np.int64))


def run(problem: ProblemInstance, weights: WeightSet, config: AlgorithmConfig, seed: int,
        trace: Callable[[int, Population], float] | None = None, trace_every: int = 1) -> RunRecord:
    """Run the algorithm for ``config.generations`` generations.

    ``trace(generation, population)`` is called after initialization and then
    every ``trace_every`` generations; its return values are kept in the record.
    """
    weights = _prepare_weights(weights, problem, config)
    start = time.perf_counter()
    N, n, M = weights.N, problem.n, problem.M
    var = config.variation
    p_m = var.mutation_rate(n)
    rng = np.random.default_rng(seed)

    pop = initial_population(problem, N, rng)
    frame = init_from_population(pop.objectives, config.theta, config.normalize)
    counters = np.zeros(3, dtype=np.int64)
    counters[0] = N
    next_id = N
    W = np.ascontiguousarray(weights.vectors, dtype=float)
    nbrs = np.ascontiguousarray(weights.neighborhoods, dtype=np.int64)
    lower, upper = (np.ascontiguousarray(b, dtype=float) for b in problem.bounds)
    strategy = _STRATEGY_CODES[config.update]
    K = visit_uniform_count(n)

    trace_values = []
    if trace is not None:
        trace_values.append([0, float(trace(0, pop))])
    for g in range(1, config.generations + 1):
        U = rng.random((N, K))
        next_id = run_generation(problem.code, M, problem.k, pop.decisions, pop.objectives, pop.ids,
                                 next_id, W, nbrs, frame.ideal, frame.nadir, float(config.theta),
                                 bool(config.normalize),
                                 float(var.p_s), float(var.eta_c), float(var.p_c),
                                 float(var.sbx_var_prob), float(var.sbx_exchange_prob), float(var.eta_m),
                                 float(p_m), lower, upper, U, strategy,
                                 config.update.max_replacements, counters)
        if trace is not None and (g % trace_every == 0 or g == config.generations):
            trace_values.append([g, float(trace(g, pop))])

    cfg = config.to_dict()
    cfg["T"] = weights.T
    cfg["N"] = N
    return RunRecord(
        seed=int(seed),
        config=cfg,
        problem_id=problem.id,
        population=pop,
        counters={
            "evaluations": int(counters[0]),
            "pbi_comparisons": int(counters[1]),
            "swaps": int(counters[2]),
            "generations": int(config.generations),
            "ideal": frame.ideal.tolist(),
            "nadir": frame.nadir.tolist(),
        },
        trace=trace_values,
        wall_seconds=time.perf_counter() - start,
    )
