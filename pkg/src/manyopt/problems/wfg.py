"""WFG1-WFG9 (Huband, Hingston, Barone, While).

Every problem maps working parameters ``z_i in [0, 2i]`` to ``y = z_i / 2i``,
pushes ``y`` through a problem-specific chain of bias, shift and reduction
transformations down to ``M`` values ``t``, then evaluates
``f_m = x_M + 2m * h_m(x_1..x_{M-1})`` for a shape function ``h``.

``k`` is the number of position-related parameters and must be divisible by
``M - 1``; WFG2 and WFG3 additionally need an even number of distance
parameters.
"""

import math

import numpy as np
from numba import njit

B_PARAM_A = 0.98 / 49.98


# --- transformations ----------------------------------------------------


@njit(cache=True)
def _clip01(v):
    return min(max(v, 0.0), 1.0)


@njit(cache=True)
def b_poly(y, alpha):
    return _clip01(y ** alpha)


@njit(cache=True)
def b_flat(y, A, B, C):
    t1 = min(0.0, math.floor(y - B)) * A * (B - y) / B
    t2 = min(0.0, math.floor(C - y)) * (1.0 - A) * (y - C) / (1.0 - C)
    return _clip01(A + t1 - t2)


@njit(cache=True)
def b_param(y, u, A, B, C):
    v = A - (1.0 - 2.0 * u) * abs(math.floor(0.5 - u) + A)
    return _clip01(y ** (B + (C - B) * v))


@njit(cache=True)
def s_linear(y, A):
    return _clip01(abs(y - A) / abs(math.floor(A - y) + A))


@njit(cache=True)
def s_decept(y, A, B, C):
    t1 = math.floor(y - A + B) * (1.0 - C + (A - B) / B) / (A - B)
    t2 = math.floor(A + B - y) * (1.0 - C + (1.0 - A - B) / B) / (1.0 - A - B)
    return _clip01(1.0 + (abs(y - A) - B) * (t1 + t2 + 1.0 / B))


@njit(cache=True)
def s_multi(y, A, B, C):
    t1 = abs(y - C) / (2.0 * (math.floor(C - y) + C))
    t2 = (4.0 * A + 2.0) * np.pi * (0.5 - t1)
    return _clip01((1.0 + np.cos(t2) + 4.0 * B * t1 * t1) / (B + 2.0))


@njit(cache=True)
def r_sum(y, w):
    num = 0.0
    den = 0.0
    for i in range(y.shape[0]):
        num += w[i] * y[i]
        den += w[i]
    return _clip01(num / den)


@njit(cache=True)
def r_sum_uniform(y):
    return _clip01(y.sum() / y.shape[0])


@njit(cache=True)
def r_nonsep(y, A):
    n = y.shape[0]
    num = 0.0
    for j in range(n):
        num += y[j]
        for k in range(A - 1):
            num += abs(y[j] - y[(1 + j + k) % n])
    half = math.ceil(A / 2.0)
    den = (n / A) * half * (1.0 + 2.0 * A - 2.0 * half)
    return _clip01(num / den)


# --- shapes ---------------------------------------------------------------


@njit(cache=True)
def _shape(x, M, kind, h):
    """Fill ``h`` with a linear (0), convex (1) or concave (2) shape."""
    hp = 0.5 * np.pi
    for m in range(M):
        v = 1.0
        for i in range(M - 1 - m):
            if kind == 0:
                v *= x[i]
            elif kind == 1:
                v *= 1.0 - np.cos(x[i] * hp)
            else:
                v *= np.sin(x[i] * hp)
        if m > 0:
            xi = x[M - 1 - m]
            if kind == 0:
                v *= 1.0 - xi
            elif kind == 1:
                v *= 1.0 - np.sin(xi * hp)
            else:
                v *= np.cos(xi * hp)
        h[m] = v


@njit(cache=True)
def mixed(x0, alpha, A):
    return (1.0 - x0 - np.cos(2.0 * A * np.pi * x0 + 0.5 * np.pi) / (2.0 * A * np.pi)) ** alpha


@njit(cache=True)
def disc(x0, alpha, beta, A):
    c = np.cos(A * x0 ** beta * np.pi)
    return 1.0 - x0 ** alpha * c * c


# --- shared pieces ----------------------------------------------------------


@njit(cache=True)
def _normalize_z(z):
    y = np.empty(z.shape[0])
    for i in range(z.shape[0]):
        y[i] = _clip01(z[i] / (2.0 * (i + 1)))
    return y


@njit(cache=True)
def _shift_linear_distance(y, k):
    for i in range(k, y.shape[0]):
        y[i] = s_linear(y[i], 0.35)


@njit(cache=True)
def _reduce_sum_uniform(y, M, k):
    gap = k // (M - 1)
    t = np.empty(M)
    for m in range(M - 1):
        t[m] = r_sum_uniform(y[m * gap:(m + 1) * gap])
    t[M - 1] = r_sum_uniform(y[k:])
    return t


@njit(cache=True)
def _reduce_nonsep(y, M, k):
    gap = k // (M - 1)
    t = np.empty(M)
    for m in range(M - 1):
        t[m] = r_nonsep(y[m * gap:(m + 1) * gap], gap)
    t[M - 1] = r_nonsep(y[k:], y.shape[0] - k)
    return t


@njit(cache=True)
def _pair_nonsep(y, k):
    """WFG2/WFG3: reduce distance parameters pairwise."""
    l = y.shape[0] - k
    out = np.empty(k + l // 2)
    out[:k] = y[:k]
    for j in range(l // 2):
        out[k + j] = r_nonsep(y[k + 2 * j:k + 2 * j + 2], 2)
    return out


@njit(cache=True)
def _degenerate_post(t, M, A):
    x = np.empty(M)
    for i in range(M - 1):
        x[i] = max(t[M - 1], A[i]) * (t[i] - 0.5) + 0.5
    x[M - 1] = t[M - 1]
    return x


@njit(cache=True)
def _post(t, M):
    x = np.empty(M)
    for i in range(M - 1):
        x[i] = max(t[M - 1], 1.0) * (t[i] - 0.5) + 0.5
    x[M - 1] = t[M - 1]
    return x


@njit(cache=True)
def _objectives(x, h, M, out):
    for m in range(M):
        out[m] = x[M - 1] + 2.0 * (m + 1) * h[m]


@njit(cache=True)
def _concave_objectives(t, M, out):
    x = _post(t, M)
    h = np.empty(M)
    _shape(x, M, 2, h)
    _objectives(x, h, M, out)


# --- problems -----------------------------------------------------------------


@njit(cache=True)
def wfg1(z, M, k, out):
    y = _normalize_z(z)
    n = y.shape[0]
    _shift_linear_distance(y, k)
    for i in range(k, n):
        y[i] = b_flat(y[i], 0.8, 0.75, 0.85)
    for i in range(n):
        y[i] = b_poly(y[i], 0.02)
    w = np.empty(n)
    for i in range(n):
        w[i] = 2.0 * (i + 1)
    gap = k // (M - 1)
    t = np.empty(M)
    for m in range(M - 1):
        t[m] = r_sum(y[m * gap:(m + 1) * gap], w[m * gap:(m + 1) * gap])
    t[M - 1] = r_sum(y[k:], w[k:])
    x = _post(t, M)
    h = np.empty(M)
    _shape(x, M, 1, h)
    h[M - 1] = mixed(x[0], 1.0, 5.0)
    _objectives(x, h, M, out)


@njit(cache=True)
def wfg2(z, M, k, out):
    y = _normalize_z(z)
    _shift_linear_distance(y, k)
    t = _reduce_sum_uniform(_pair_nonsep(y, k), M, k)
    x = _post(t, M)
    h = np.empty(M)
    _shape(x, M, 1, h)
    h[M - 1] = disc(x[0], 1.0, 1.0, 5.0)
    _objectives(x, h, M, out)


@njit(cache=True)
def wfg3(z, M, k, out, printed_mapping):
    """WFG3 with a linear, degenerate front.

    ``printed_mapping`` selects ``x_i = t_i (t_i - 0.5) + 0.5`` for the position
    coordinates instead of the toolkit's ``x_i = max(t_M, A_i)(t_i - 0.5) + 0.5``
    with ``A = (1, 0, ..., 0)``.
    """
    y = _normalize_z(z)
    _shift_linear_distance(y, k)
    t = _reduce_sum_uniform(_pair_nonsep(y, k), M, k)
    if printed_mapping:
        x = np.empty(M)
        for i in range(M - 1):
            x[i] = t[i] * (t[i] - 0.5) + 0.5
        x[M - 1] = t[M - 1]
    else:
        A = np.zeros(M - 1)
        A[0] = 1.0
        x = _degenerate_post(t, M, A)
    h = np.empty(M)
    _shape(x, M, 0, h)
    _objectives(x, h, M, out)


@njit(cache=True)
def wfg4(z, M, k, out):
    y = _normalize_z(z)
    for i in range(y.shape[0]):
        y[i] = s_multi(y[i], 30.0, 10.0, 0.35)
    _concave_objectives(_reduce_sum_uniform(y, M, k), M, out)


@njit(cache=True)
def wfg5(z, M, k, out):
    y = _normalize_z(z)
    for i in range(y.shape[0]):
        y[i] = s_decept(y[i], 0.35, 0.001, 0.05)
    _concave_objectives(_reduce_sum_uniform(y, M, k), M, out)


@njit(cache=True)
def wfg6(z, M, k, out):
    y = _normalize_z(z)
    _shift_linear_distance(y, k)
    _concave_objectives(_reduce_nonsep(y, M, k), M, out)


@njit(cache=True)
def wfg7(z, M, k, out):
    y0 = _normalize_z(z)
    y = y0.copy()
    for i in range(k):
        y[i] = b_param(y0[i], r_sum_uniform(y0[i + 1:]), B_PARAM_A, 0.02, 50.0)
    _shift_linear_distance(y, k)
    _concave_objectives(_reduce_sum_uniform(y, M, k), M, out)


@njit(cache=True)
def wfg8(z, M, k, out):
    y0 = _normalize_z(z)
    y = y0.copy()
    for i in range(k, y.shape[0]):
        y[i] = b_param(y0[i], r_sum_uniform(y0[:i]), B_PARAM_A, 0.02, 50.0)
    _shift_linear_distance(y, k)
    _concave_objectives(_reduce_sum_uniform(y, M, k), M, out)


@njit(cache=True)
def wfg9(z, M, k, out):
    y0 = _normalize_z(z)
    n = y0.shape[0]
    y = y0.copy()
    for i in range(n - 1):
        y[i] = b_param(y0[i], r_sum_uniform(y0[i + 1:]), B_PARAM_A, 0.02, 50.0)
    for i in range(n):
        if i < k:
            y[i] = s_decept(y[i], 0.35, 0.001, 0.05)
        else:
            y[i] = s_multi(y[i], 30.0, 95.0, 0.35)
    _concave_objectives(_reduce_nonsep(y, M, k), M, out)


# --- Pareto-optimal decision vectors --------------------------------------------


def optimal_decision(index: int, position, k: int, l: int) -> np.ndarray:
    """A Pareto-optimal working vector ``z`` for WFG``index`` with the given position part.

    ``position`` holds the ``k`` position parameters in ``[0, 1]`` (before the
    ``2i`` scaling).
    """
    position = np.asarray(position, dtype=float)
    n = k + l
    y = np.empty(n)
    y[:k] = position
    if index == 8:
        for i in range(k, n):
            u = y[:i].mean()
            v = B_PARAM_A - (1.0 - 2.0 * u) * abs(math.floor(0.5 - u) + B_PARAM_A)
            y[i] = 0.35 ** (1.0 / (0.02 + 49.98 * v))
    elif index == 9:
        y[n - 1] = 0.35
        for i in range(n - 2, k - 1, -1):
            u = y[i + 1:].mean()
            v = B_PARAM_A - (1.0 - 2.0 * u) * abs(math.floor(0.5 - u) + B_PARAM_A)
            y[i] = 0.35 ** (1.0 / (0.02 + 49.98 * v))
    else:
        y[k:] = 0.35
    return y * 2.0 * np.arange(1, n + 1)
