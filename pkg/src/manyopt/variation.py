"""Mating selection, simulated binary crossover and polynomial mutation.

The compiled kernels take their random numbers as explicit uniforms so the
engine can draw one block per generation from a single seeded generator.  The
per-visit uniform layout (``visit_uniform_count(n)`` values) is:

    0          branch draw for neighborhood vs. global mating
    1          mate index draw
    2          crossover event draw
    3          which of the two SBX children is kept
    4:4+n      SBX spread draws
    4+n:4+2n   per-variable crossover draws
    4+2n:4+3n  per-variable child exchange draws
    4+3n:4+4n  per-variable mutation event draws
    4+4n:4+5n  polynomial mutation draws

SBX crosses each variable with probability ``sbx_var_prob`` (otherwise the
parents' values pass through) and exchanges the two children's values with
probability ``sbx_exchange_prob``.  Setting them to 1 and 0 gives the
all-variable form in which every coordinate is crossed and child 1 always
leans toward parent 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from manyopt.errors import ConfigError


@dataclass(frozen=True)
class VariationConfig:
    """Reproduction parameters.

    ``p_m=None`` means the default per-variable rate ``0.5 / n``.
    """

    p_c: float = 1.0
    eta_c: float = 20.0
    p_m: float | None = None
    eta_m: float = 20.0
    p_s: float = 0.9
    sbx_var_prob: float = 0.5
    sbx_exchange_prob: float = 0.5

    def __post_init__(self):
        for key in ("p_c", "p_s", "sbx_var_prob", "sbx_exchange_prob"):
            v = getattr(self, key)
            if not 0.0 <= v <= 1.0:
                raise ConfigError(f"{key} must lie in [0, 1], got {v!r}", key)
        if self.p_m is not None and not 0.0 <= self.p_m <= 1.0:
            raise ConfigError(f"p_m must lie in [0, 1], got {self.p_m!r}", "p_m")
        for key in ("eta_c", "eta_m"):
            if not getattr(self, key) > 0:
                raise ConfigError(f"{key} must be > 0", key)

    def mutation_rate(self, n: int) -> float:
        return 0.5 / n if self.p_m is None else self.p_m


def visit_uniform_count(n: int) -> int:
    return 4 + 5 * n


@njit(cache=True)
def pick_mate(i, neighborhood, N, p_s, u_branch, u_pick):
    """Index of the second parent; never ``i`` unless the population has one member."""
    if u_branch < p_s:
        count = 0
        for j in neighborhood:
            if j != i:
                count += 1
        if count > 0:
            target = min(int(u_pick * count), count - 1)
            for j in neighborhood:
                if j != i:
                    if target == 0:
                        return j
                    target -= 1
    if N < 2:
        return i
    j = min(int(u_pick * (N - 1)), N - 2)
    if j >= i:
        j += 1
    return j


@njit(cache=True)
def sbx_spread(u, eta_c):
    if u <= 0.5:
        return (2.0 * u) ** (1.0 / (eta_c + 1.0))
    return (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta_c + 1.0))


@njit(cache=True)
def sbx_into(p1, p2, eta_c, p_c, var_prob, exchange_prob, u_event, u_keep, u, u_var, u_exchange,
             lower, upper, out):
    keep_first = u_keep < 0.5
    if u_event < p_c:
        for i in range(p1.shape[0]):
            if u_var[i] < var_prob:
                b = sbx_spread(u[i], eta_c)
                c1 = 0.5 * ((1.0 + b) * p1[i] + (1.0 - b) * p2[i])
                c2 = 0.5 * ((1.0 - b) * p1[i] + (1.0 + b) * p2[i])
            else:
                c1 = p1[i]
                c2 = p2[i]
            if u_exchange[i] < exchange_prob:
                c1, c2 = c2, c1
            out[i] = c1 if keep_first else c2
    else:
        for i in range(p1.shape[0]):
            out[i] = p1[i] if keep_first else p2[i]
    for i in range(out.shape[0]):
        out[i] = min(max(out[i], lower[i]), upper[i])


@njit(cache=True)
def pm_delta(u, eta_m):
    if u <= 0.5:
        return (2.0 * u) ** (1.0 / (eta_m + 1.0)) - 1.0
    return 1.0 - (2.0 * (1.0 - u)) ** (1.0 / (eta_m + 1.0))


@njit(cache=True)
def pm_inplace(x, eta_m, p_m, u_fire, u, lower, upper):
    for i in range(x.shape[0]):
        if u_fire[i] < p_m:
            v = x[i] + (upper[i] - lower[i]) * pm_delta(u[i], eta_m)
            x[i] = min(max(v, lower[i]), upper[i])


def select_mates(i: int, neighborhoods: np.ndarray, N: int, p_s: float,
                 rng: np.random.Generator) -> tuple[int, int]:
    """Parent indices for subproblem ``i``.

    The first parent is ``i``.  With probability ``p_s`` the second is drawn
    uniformly from the neighborhood of ``i`` (excluding ``i``), otherwise
    uniformly from the rest of the population.
    """
    u_branch, u_pick = rng.random(2)
    nbr = np.asarray(neighborhoods[i], dtype=np.int64)
    return i, int(pick_mate(i, nbr, N, p_s, u_branch, u_pick))


def sbx_pair(p1, p2, eta_c: float, u) -> tuple[np.ndarray, np.ndarray]:
    """Both SBX children for spread draws ``u``, before any bounds repair."""
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    b = np.array([sbx_spread(float(v), eta_c) for v in np.atleast_1d(u)])
    c1 = 0.5 * ((1 + b) * p1 + (1 - b) * p2)
    c2 = 0.5 * ((1 - b) * p1 + (1 + b) * p2)
    return c1, c2


def sbx(p1, p2, eta_c: float, p_c: float, rng: np.random.Generator,
        lower=None, upper=None, var_prob: float = 0.5, exchange_prob: float = 0.5) -> np.ndarray:
    """One SBX child of ``p1`` and ``p2``; the other child is dropped at random."""
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    n = p1.shape[0]
    lower = np.full(n, -np.inf) if lower is None else np.asarray(lower, dtype=float)
    upper = np.full(n, np.inf) if upper is None else np.asarray(upper, dtype=float)
    u_event, u_keep = rng.random(2)
    u, u_var, u_exchange = rng.random((3, n))
    out = np.empty(n)
    sbx_into(p1, p2, float(eta_c), float(p_c), float(var_prob), float(exchange_prob),
             u_event, u_keep, u, u_var, u_exchange, lower, upper, out)
    return out


def polynomial_mutation(child, eta_m: float, p_m: float, bounds,
                        rng: np.random.Generator) -> np.ndarray:
    """Polynomial mutation of each variable with probability ``p_m``, clamped to ``bounds``.

    ``bounds`` is a pair ``(lower, upper)`` of arrays.
    """
    x = np.array(child, dtype=float)
    lower, upper = (np.asarray(b, dtype=float) for b in bounds)
    n = x.shape[0]
    u_fire = rng.random(n)
    u = rng.random(n)
    pm_inplace(x, float(eta_m), float(p_m), u_fire, u, lower, upper)
    return x
