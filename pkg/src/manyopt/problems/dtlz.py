"""DTLZ1-DTLZ4 (Deb, Thiele, Laumanns, Zitzler), minimization form.

The last ``n - M + 1`` variables are distance variables; the first ``M - 1``
are position variables.
"""

import numpy as np
from numba import njit

DTLZ4_ALPHA = 100.0


@njit(cache=True)
def _g_rastrigin(x, M):
    n = x.shape[0]
    s = 0.0
    for i in range(M - 1, n):
        d = x[i] - 0.5
        s += d * d - np.cos(20.0 * np.pi * d)
    return 100.0 * ((n - M + 1) + s)


@njit(cache=True)
def _g_sphere(x, M):
    s = 0.0
    for i in range(M - 1, x.shape[0]):
        d = x[i] - 0.5
        s += d * d
    return s


@njit(cache=True)
def _linear_front(x, M, g, out):
    for m in range(M):
        v = 0.5 * (1.0 + g)
        for j in range(M - 1 - m):
            v *= x[j]
        if m > 0:
            v *= 1.0 - x[M - 1 - m]
        out[m] = v


@njit(cache=True)
def _spherical_front(theta, M, g, out):
    half_pi = 0.5 * np.pi
    for m in range(M):
        v = 1.0 + g
        for j in range(M - 1 - m):
            v *= np.cos(theta[j] * half_pi)
        if m > 0:
            v *= np.sin(theta[M - 1 - m] * half_pi)
        out[m] = v


@njit(cache=True)
def dtlz1(x, M, out):
    _linear_front(x, M, _g_rastrigin(x, M), out)


@njit(cache=True)
def dtlz2(x, M, out):
    _spherical_front(x, M, _g_sphere(x, M), out)


@njit(cache=True)
def dtlz3(x, M, out):
    _spherical_front(x, M, _g_rastrigin(x, M), out)


@njit(cache=True)
def dtlz4(x, M, out):
    theta = np.empty(M - 1)
    for j in range(M - 1):
        theta[j] = x[j] ** DTLZ4_ALPHA
    _spherical_front(theta, M, _g_sphere(x, M), out)


def pareto_point(index: int, w: np.ndarray) -> np.ndarray:
    """Intersection of the ray along ``w`` with the Pareto front of DTLZ``index``.

    DTLZ1's front is the plane sum(f) = 0.5; DTLZ2-4 share the unit sphere.
    """
    w = np.asarray(w, dtype=float)
    if index == 1:
        return 0.5 * w / w.sum()
    return w / np.linalg.norm(w)
