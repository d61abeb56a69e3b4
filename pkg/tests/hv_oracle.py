"""Inclusion-exclusion hypervolume for tiny fronts, independent of the slicing recursion."""

from itertools import combinations

import numpy as np


def hv_inclusion_exclusion(S, ref) -> float:
    """Normalized volume of the union of boxes [s, ref] over all s in S."""
    ref = np.asarray(ref, dtype=float)
    boxes = [np.asarray(s, dtype=float) for s in S if np.all(np.asarray(s) < ref)]
    total = 0.0
    for r in range(1, len(boxes) + 1):
        for sub in combinations(boxes, r):
            corner = np.max(sub, axis=0)
            total += (-1) ** (r + 1) * float(np.prod(ref - corner))
    return total / float(np.prod(ref))


def random_front(rng: np.random.Generator, M: int, k: int, ref) -> np.ndarray:
    """Random points in a box slightly larger than the reference box, so some fall outside."""
    return rng.random((k, M)) * np.asarray(ref) * 1.1
