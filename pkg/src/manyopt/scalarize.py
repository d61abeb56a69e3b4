"""PBI scalarization against a moving ideal/nadir frame."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from manyopt.errors import DomainError

# Floor applied to (nadir - ideal) when an objective is momentarily constant.
DENOMINATOR_FLOOR = 1e-10


@dataclass
class ScalarizerState:
    """Ideal point, nadir point and PBI penalty.

    ``ideal`` and ``nadir`` hold the componentwise minimum and maximum of every
    objective vector seen so far.  With ``use_nadir=False`` PBI works on
    objectives translated by the ideal point only; the nadir is still tracked.
    """

    ideal: np.ndarray
    nadir: np.ndarray
    theta: float = 5.0
    use_nadir: bool = True

    def __post_init__(self):
        self.ideal = np.array(self.ideal, dtype=float)
        self.nadir = np.array(self.nadir, dtype=float)
        if not self.theta > 0:
            raise DomainError(f"PBI penalty theta must be > 0, got {self.theta!r}")
        if self.ideal.shape != self.nadir.shape:
            raise DomainError("ideal and nadir points must have the same length")

    def copy(self) -> ScalarizerState:
        return ScalarizerState(self.ideal.copy(), self.nadir.copy(), self.theta, self.use_nadir)


@dataclass(frozen=True)
class PbiBreakdown:
    d1: float
    d2: float
    value: float


@njit(cache=True)
def normalize_into(f, ideal, nadir, out):
    for i in range(f.shape[0]):
        den = nadir[i] - ideal[i]
        if den < DENOMINATOR_FLOOR:
            den = DENOMINATOR_FLOOR
        out[i] = (f[i] - ideal[i]) / den


@njit(cache=True)
def translate_into(f, ideal, out):
    for i in range(f.shape[0]):
        out[i] = f[i] - ideal[i]


@njit(cache=True)
def pbi_distances(fn, w):
    """(d1, d2) of a normalized objective vector ``fn`` relative to direction ``w``."""
    M = fn.shape[0]
    wn = 0.0
    dot = 0.0
    for i in range(M):
        wn += w[i] * w[i]
        dot += fn[i] * w[i]
    wn = np.sqrt(wn)
    d1 = abs(dot) / wn
    d2 = 0.0
    for i in range(M):
        r = fn[i] - d1 * w[i] / wn
        d2 += r * r
    return d1, np.sqrt(d2)


@njit(cache=True)
def pbi_value(f, w, ideal, nadir, theta, use_nadir, scratch):
    """PBI value of raw objectives ``f``; ``scratch`` is a length-M work buffer."""
    if use_nadir:
        normalize_into(f, ideal, nadir, scratch)
    else:
        translate_into(f, ideal, scratch)
    d1, d2 = pbi_distances(scratch, w)
    return d1 + theta * d2


def normalize(objectives, state: ScalarizerState) -> np.ndarray:
    """Map objectives into the frame spanned by the ideal and nadir points."""
    f = np.asarray(objectives, dtype=float)
    out = np.empty_like(f)
    normalize_into(f, state.ideal, state.nadir, out)
    return out


def frame_coordinates(objectives, state: ScalarizerState) -> np.ndarray:
    """Objectives as PBI sees them: normalized, or only translated when ``use_nadir`` is off."""
    if state.use_nadir:
        return normalize(objectives, state)
    return np.asarray(objectives, dtype=float) - state.ideal


def pbi_normalized(fn, w, theta: float) -> PbiBreakdown:
    """PBI of an already-normalized objective vector."""
    fn = np.asarray(fn, dtype=float)
    w = np.asarray(w, dtype=float)
    if not np.any(w):
        raise DomainError("PBI is undefined for a zero weight vector")
    d1, d2 = pbi_distances(fn, w)
    return PbiBreakdown(float(d1), float(d2), float(d1 + theta * d2))


def pbi(objectives, w, state: ScalarizerState) -> PbiBreakdown:
    """Penalty-based boundary intersection of raw ``objectives`` on weight ``w``.

    Objectives are mapped into the frame of ``state`` first; ``d1`` is the
    projection length onto ``w`` and ``d2`` the perpendicular distance to it.
    """
    return pbi_normalized(frame_coordinates(objectives, state), w, state.theta)


def update_ideal(state: ScalarizerState, objectives) -> ScalarizerState:
    np.minimum(state.ideal, np.asarray(objectives, dtype=float), out=state.ideal)
    return state


def update_nadir(state: ScalarizerState, objectives) -> ScalarizerState:
    np.maximum(state.nadir, np.asarray(objectives, dtype=float), out=state.nadir)
    return state


def init_from_population(objectives, theta: float = 5.0, use_nadir: bool = True) -> ScalarizerState:
    """Ideal and nadir as the componentwise min and max over a population."""
    F = np.atleast_2d(np.asarray(objectives, dtype=float))
    if F.shape[0] == 0 or F.size == 0:
        raise DomainError("cannot initialize the frame from an empty population")
    return ScalarizerState(F.min(axis=0), F.max(axis=0), theta, use_nadir)
