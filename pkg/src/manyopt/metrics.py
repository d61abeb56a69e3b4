"""Quality indicators: IGD against analytic reference sets and normalized hypervolume."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from manyopt.errors import DomainError
from manyopt.problems import pareto_point_from_weight
from manyopt.weights import WeightSet


class HvEstimate(NamedTuple):
    value: float
    stderr: float
    samples: int


def _as_front(points, name: str = "front") -> np.ndarray:
    F = np.asarray(points, dtype=float)
    if F.ndim == 1 and F.size:
        F = F[None, :]
    if F.ndim != 2 or F.shape[0] == 0:
        raise DomainError(f"{name} must be a nonempty (n, M) array")
    if not np.all(np.isfinite(F)):
        raise DomainError(f"{name} contains non-finite values")
    return F


def igd(S, R) -> float:
    """Mean distance from each reference point in ``R`` to its nearest point of ``S``."""
    S = _as_front(S, "solution set")
    R = _as_front(R, "reference set")
    if S.shape[1] != R.shape[1]:
        raise DomainError(f"dimension mismatch: S has M={S.shape[1]}, R has M={R.shape[1]}")
    nearest = np.empty(R.shape[0])
    step = max(1, 2_000_000 // max(1, S.shape[0] * S.shape[1]))
    for lo in range(0, R.shape[0], step):
        diff = R[lo:lo + step, None, :] - S[None, :, :]
        nearest[lo:lo + step] = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff)).min(axis=1)
    return float(nearest.mean())


def reference_set(problem: str, weights: WeightSet | np.ndarray) -> np.ndarray:
    """One Pareto-front point per weight vector, where the vector's ray meets the DTLZ front."""
    key = problem.upper().split("-")[0]
    if not key.startswith("DTLZ"):
        raise DomainError(f"no analytic reference set for {problem!r}; WFG instances are scored by HV")
    W = weights.vectors if isinstance(weights, WeightSet) else np.asarray(weights, dtype=float)
    return np.array([pareto_point_from_weight(key, w) for w in W])


def hv_reference_point(problem: str, M: int) -> np.ndarray:
    """Reference point used for normalized HV: 1s for DTLZ1, 2s for DTLZ2-4, (3, 5, ..., 2M+1) for WFG."""
    key = problem.upper().split("-")[0]
    if key == "DTLZ1":
        return np.ones(M)
    if key.startswith("DTLZ"):
        return np.full(M, 2.0)
    if key.startswith("WFG"):
        return 2.0 * np.arange(1, M + 1) + 1.0
    raise DomainError(f"unknown problem {problem!r}")


def nondominated(F) -> np.ndarray:
    """Rows of ``F`` not dominated by any other row (minimization); duplicates kept once."""
    F = np.asarray(F, dtype=float)
    if F.shape[0] <= 1:
        return F.copy()
    F = np.unique(F, axis=0)
    keep = np.ones(F.shape[0], dtype=bool)
    for i in range(F.shape[0]):
        if not keep[i]:
            continue
        dominated = np.all(F[i] <= F, axis=1) & np.any(F[i] < F, axis=1)
        keep &= ~dominated
    return F[keep]


def _hv2d(P: np.ndarray, ref: np.ndarray) -> float:
    P = P[np.lexsort((P[:, 1], P[:, 0]))]
    area = 0.0
    best_y = ref[1]
    for x, y in P:
        if y < best_y:
            area += (ref[0] - x) * (best_y - y)
            best_y = y
    return area


def _hv(P: np.ndarray, ref: np.ndarray) -> float:
    """Unnormalized hypervolume of points strictly inside the reference box."""
    k, d = P.shape
    if k == 0:
        return 0.0
    if k == 1:
        return float(np.prod(ref - P[0]))
    if d == 1:
        return float(ref[0] - P[:, 0].min())
    if d == 2:
        return _hv2d(P, ref)
    # Descending last objective: every later point is at least as good in it,
    # so each limit set shares the current point's last coordinate and the
    # exclusive volume factors into height * (d-1)-dimensional volume.
    P = P[np.argsort(-P[:, -1], kind="stable")]
    sub_ref = ref[:-1]
    total = 0.0
    for i in range(k):
        height = ref[-1] - P[i, -1]
        proj = P[i, :-1]
        exclusive = float(np.prod(sub_ref - proj))
        if i + 1 < k:
            limited = nondominated(np.maximum(P[i + 1:, :-1], proj))
            exclusive -= _hv(limited, sub_ref)
        total += height * exclusive
    return total


def _hv_inputs(S, ref) -> tuple[np.ndarray, np.ndarray]:
    z = np.asarray(ref, dtype=float)
    if z.ndim != 1 or np.any(z <= 0):
        raise DomainError("HV reference point must have strictly positive components")
    S = np.asarray(S, dtype=float)
    if S.size == 0:
        return np.empty((0, z.shape[0])), z
    S = np.atleast_2d(S)
    if S.shape[1] != z.shape[0]:
        raise DomainError(f"dimension mismatch: front has M={S.shape[1]}, reference has {z.shape[0]}")
    return S[np.all(S < z, axis=1)], z


def hv_exact(S, ref) -> float:
    """Hypervolume dominated by ``S`` inside the box bounded by ``ref``, divided by prod(ref).

    Points with any coordinate at or beyond the reference point contribute nothing.
    """
    P, z = _hv_inputs(S, ref)
    if P.shape[0] == 0:
        return 0.0
    return _hv(nondominated(P), z) / float(np.prod(z))


def hv_monte_carlo(S, ref, samples: int, rng: np.random.Generator, chunk: int = 200_000) -> HvEstimate:
    """Fraction of uniform samples in ``[0, ref]`` weakly dominated by some point of ``S``.

    The fraction is already normalized by the box volume.  The standard error is
    ``sqrt(p (1 - p) / samples)``.
    """
    if int(samples) != samples or samples < 1:
        raise DomainError(f"samples must be a positive integer, got {samples!r}")
    P, z = _hv_inputs(S, ref)
    if P.shape[0] == 0:
        return HvEstimate(0.0, 0.0, int(samples))
    P = nondominated(P)
    hits = 0
    remaining = int(samples)
    while remaining:
        m = min(chunk, remaining)
        X = rng.random((m, z.shape[0])) * z
        dominated = np.zeros(m, dtype=bool)
        for p in P:
            dominated |= np.all(X >= p, axis=1)
        hits += int(dominated.sum())
        remaining -= m
    p_hat = hits / samples
    return HvEstimate(p_hat, float(np.sqrt(p_hat * (1.0 - p_hat) / samples)), int(samples))


def hypervolume(S, ref, exact_max_M: int = 10, samples: int = 10_000_000,
                rng: np.random.Generator | None = None) -> float:
    """Exact normalized HV up to ``exact_max_M`` objectives, Monte-Carlo estimate above."""
    M = np.asarray(ref).shape[0]
    if M <= exact_max_M:
        return hv_exact(S, ref)
    rng = np.random.default_rng(0) if rng is None else rng
    return hv_monte_carlo(S, ref, samples, rng).value
