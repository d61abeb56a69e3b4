"""Simplex-lattice weight vectors and angle-based neighborhoods.

Weight vectors are generated with the Das-Dennis systematic sampling
approach, optionally in two layers (a boundary lattice plus an inside
lattice shrunk toward the simplex centroid).  Each subproblem's
neighborhood is the set of ``T`` weight vectors forming the smallest
included angles with it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from manyopt.errors import DomainError

# Angles are rounded before sorting so that ties which are exact in real
# arithmetic stay ties after floating-point noise.
_ANGLE_DECIMALS = 12


@dataclass(frozen=True)
class WeightSet:
    """``N`` weight vectors on the unit simplex plus optional neighborhoods.

    Attributes:
        vectors: (N, M) array, one weight vector per row.
        neighborhoods: (N, T) int array of indices into ``vectors``, or None
            when neighborhoods have not been built yet.
    """

    vectors: np.ndarray
    neighborhoods: np.ndarray | None = field(default=None)

    @property
    def M(self) -> int:
        return int(self.vectors.shape[1])

    @property
    def N(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def T(self) -> int | None:
        return None if self.neighborhoods is None else int(self.neighborhoods.shape[1])

    def __len__(self) -> int:
        return self.N


def lattice_size(M: int, D: int) -> int:
    """Number of simplex-lattice points with ``D`` divisions in ``M`` dimensions."""
    return comb(D + M - 1, M - 1)


def _check_lattice_args(M: int, D: int, name: str = "D") -> None:
    if int(M) != M or M < 2:
        raise DomainError(f"objective count M must be an integer >= 2, got {M!r}")
    if int(D) != D or D < 1:
        raise DomainError(f"division count {name} must be an integer >= 1, got {D!r}")


def _compositions(M: int, D: int) -> np.ndarray:
    """All M-tuples of non-negative integers summing to D, lexicographically ascending."""
    rows: list[list[int]] = []
    prefix = [0] * M

    def fill(pos: int, remaining: int) -> None:
        if pos == M - 1:
            prefix[pos] = remaining
            rows.append(prefix.copy())
            return
        for v in range(remaining + 1):
            prefix[pos] = v
            fill(pos + 1, remaining - v)

    fill(0, D)
    return np.array(rows, dtype=np.int64)


def generate_simplex_lattice(M: int, D: int) -> WeightSet:
    """Das-Dennis lattice: every vector with components in {0, 1/D, ..., 1} summing to 1.

    Vectors are emitted in ascending lexicographic order of their components.

    >>> generate_simplex_lattice(3, 12).N
    91
    """
    _check_lattice_args(M, D)
    counts = _compositions(int(M), int(D))
    return WeightSet(vectors=counts / float(D))


def shrink_inside(vectors: np.ndarray, tau: float) -> np.ndarray:
    """Pull vectors toward the centroid: ``v = (1 - tau)/M + tau * w``."""
    M = vectors.shape[1]
    return (1.0 - tau) / M + tau * vectors


def generate_two_layer(M: int, D1: int, D2: int, tau: float = 0.5) -> WeightSet:
    """Boundary lattice with ``D1`` divisions followed by a shrunk inside lattice with ``D2``."""
    _check_lattice_args(M, D1, "D1")
    _check_lattice_args(M, D2, "D2")
    if not 0.0 <= tau <= 1.0:
        raise DomainError(f"shrinkage factor tau must lie in [0, 1], got {tau!r}")
    boundary = generate_simplex_lattice(M, D1).vectors
    inside = shrink_inside(generate_simplex_lattice(M, D2).vectors, tau)
    return WeightSet(vectors=np.vstack([boundary, inside]))


def included_angle(w: np.ndarray, w_other: np.ndarray) -> float:
    """Included angle (radians) between weight vector ``w`` and candidate ``w_other``.

    Computed as ``atan2(d2, d1)`` where ``d1`` is the length of the projection of
    ``w`` onto ``w_other`` and ``d2`` the length of the residual.
    """
    w = np.asarray(w, dtype=float)
    w_other = np.asarray(w_other, dtype=float)
    norm_w = np.linalg.norm(w)
    norm_o = np.linalg.norm(w_other)
    if norm_w == 0.0 or norm_o == 0.0:
        raise DomainError("included angle is undefined for a zero vector")
    d1 = abs(float(w @ w_other)) / norm_o
    d2 = float(np.linalg.norm(w - d1 * w_other / norm_o))
    return float(np.arctan2(d2, d1))


def angle_matrix(vectors: np.ndarray) -> np.ndarray:
    """Pairwise included angles; row ``i`` holds the angles from owner ``i`` to every candidate."""
    vectors = np.asarray(vectors, dtype=float)
    norms = np.linalg.norm(vectors, axis=1)
    if np.any(norms == 0.0):
        raise DomainError("included angle is undefined for a zero vector")
    unit = vectors / norms[:, None]
    # d1[i, j] = |w_i . w_j| / |w_j|
    d1 = np.abs(vectors @ unit.T)
    # residual w_i - d1[i, j] * unit_j
    resid = vectors[:, None, :] - d1[:, :, None] * unit[None, :, :]
    d2 = np.linalg.norm(resid, axis=2)
    return np.arctan2(d2, d1)


def build_neighborhoods(weights: WeightSet, T: int) -> WeightSet:
    """Attach to each vector the ``T`` indices with the smallest included angle.

    Ties are broken by ascending index, so every neighborhood starts with the
    owner itself.
    """
    N = weights.N
    if int(T) != T or not 1 <= T <= N:
        raise DomainError(f"neighborhood size T must lie in [1, {N}], got {T!r}")
    angles = np.round(angle_matrix(weights.vectors), _ANGLE_DECIMALS)
    np.fill_diagonal(angles, 0.0)
    order = np.argsort(angles, axis=1, kind="stable")[:, : int(T)]
    return WeightSet(vectors=weights.vectors, neighborhoods=order.astype(np.int64))


def weights_for(M: int, D1: int, D2: int | None = None, tau: float = 0.5) -> WeightSet:
    """Single-layer lattice when ``D2`` is None, two-layer otherwise."""
    if D2 is None:
        return generate_simplex_lattice(M, D1)
    return generate_two_layer(M, D1, D2, tau)
