"""Scalable benchmark problems: DTLZ1-4 and WFG1-9.

Instances are addressed by stable string ids such as ``dtlz3-m10`` or
``wfg4-m3``.  ``wfg3c`` selects WFG3 with the toolkit's degenerate position
mapping rather than the default one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np
from numba import njit

from manyopt.errors import DomainError
from manyopt.problems import dtlz, wfg

FAMILIES = ("dtlz", "wfg")
DTLZ_NAMES = tuple(f"DTLZ{i}" for i in range(1, 5))
WFG_NAMES = tuple(f"WFG{i}" for i in range(1, 10))

# Integer codes understood by the compiled dispatcher.
_CODES = {**{f"DTLZ{i}": i for i in range(1, 5)}, **{f"WFG{i}": 10 + i for i in range(1, 10)}}
WFG3_CANONICAL_CODE = 20
WFG_DISTANCE_COUNT = 20

_ID_RE = re.compile(r"^(dtlz[1-4]|wfg[1-9]|wfg3c)-m(\d+)$")


@dataclass(frozen=True)
class ProblemInstance:
    """One benchmark problem at a fixed objective count.

    ``k`` and ``l`` are the WFG position and distance parameter counts; ``r``
    is the DTLZ distance variable count.  Unused counts are 0.
    """

    name: str
    M: int
    n: int
    lower: np.ndarray
    upper: np.ndarray
    k: int = 0
    l: int = 0
    r: int = 0
    canonical_wfg3: bool = False

    @property
    def id(self) -> str:
        stem = "wfg3c" if self.canonical_wfg3 else self.name.lower()
        return f"{stem}-m{self.M}"

    @property
    def family(self) -> str:
        return "dtlz" if self.name.startswith("DTLZ") else "wfg"

    @property
    def index(self) -> int:
        return int(self.name[len(self.family):])

    @property
    def code(self) -> int:
        return WFG3_CANONICAL_CODE if self.canonical_wfg3 else _CODES[self.name]

    @property
    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        return self.lower, self.upper

    def evaluate(self, decision) -> np.ndarray:
        return evaluate(self, decision)


def make_problem(name: str, M: int, canonical_wfg3: bool = False) -> ProblemInstance:
    """Instance of ``name`` (e.g. ``"DTLZ2"``) with the standard variable counts.

    DTLZ uses ``n = M + r - 1`` with ``r = 5`` for DTLZ1 and 10 otherwise; WFG
    uses ``k = 2(M - 1)`` position and ``l = 20`` distance parameters.
    """
    name = name.upper()
    if int(M) != M or M < 2:
        raise DomainError(f"objective count M must be an integer >= 2, got {M!r}")
    M = int(M)
    if name in DTLZ_NAMES:
        r = 5 if name == "DTLZ1" else 10
        n = M + r - 1
        return ProblemInstance(name, M, n, np.zeros(n), np.ones(n), r=r)
    if name in WFG_NAMES:
        k = 2 * (M - 1)
        l = WFG_DISTANCE_COUNT
        n = k + l
        return ProblemInstance(name, M, n, np.zeros(n), 2.0 * np.arange(1, n + 1), k=k, l=l,
                               canonical_wfg3=canonical_wfg3 and name == "WFG3")
    raise DomainError(f"unknown problem {name!r}")


def get_problem(problem_id: str) -> ProblemInstance:
    """Parse an id like ``dtlz3-m10`` into an instance."""
    m = _ID_RE.match(problem_id.strip().lower())
    if not m:
        raise DomainError(f"unrecognized problem id {problem_id!r}; expected e.g. 'dtlz2-m3'")
    stem, M = m.group(1), int(m.group(2))
    if stem == "wfg3c":
        return make_problem("WFG3", M, canonical_wfg3=True)
    return make_problem(stem.upper(), M)


def list_problems(M_values=(3, 5, 8, 10, 15)) -> list[ProblemInstance]:
    return [make_problem(name, M) for name in DTLZ_NAMES + WFG_NAMES for M in M_values]


@njit(cache=True)
def evaluate_into(code, x, M, k, out):
    """Compiled dispatch: objectives of decision ``x`` for problem ``code`` into ``out``."""
    if code == 1:
        dtlz.dtlz1(x, M, out)
    elif code == 2:
        dtlz.dtlz2(x, M, out)
    elif code == 3:
        dtlz.dtlz3(x, M, out)
    elif code == 4:
        dtlz.dtlz4(x, M, out)
    elif code == 11:
        wfg.wfg1(x, M, k, out)
    elif code == 12:
        wfg.wfg2(x, M, k, out)
    elif code == 13:
        wfg.wfg3(x, M, k, out, True)
    elif code == 14:
        wfg.wfg4(x, M, k, out)
    elif code == 15:
        wfg.wfg5(x, M, k, out)
    elif code == 16:
        wfg.wfg6(x, M, k, out)
    elif code == 17:
        wfg.wfg7(x, M, k, out)
    elif code == 18:
        wfg.wfg8(x, M, k, out)
    elif code == 19:
        wfg.wfg9(x, M, k, out)
    elif code == 20:
        wfg.wfg3(x, M, k, out, False)


def evaluate(problem: ProblemInstance, decision) -> np.ndarray:
    """Objective vector of ``decision``; raises DomainError outside the variable bounds."""
    x = np.asarray(decision, dtype=float)
    if x.shape != (problem.n,):
        raise DomainError(f"{problem.id} expects {problem.n} variables, got shape {x.shape}")
    if np.any(x < problem.lower) or np.any(x > problem.upper):
        raise DomainError(f"decision vector lies outside the bounds of {problem.id}")
    out = np.empty(problem.M)
    evaluate_into(problem.code, x, problem.M, problem.k, out)
    return out


def pareto_point_from_weight(name: str, w) -> np.ndarray:
    """Point where the ray along ``w`` meets the DTLZ1-4 Pareto front."""
    w = np.asarray(w, dtype=float)
    key = name.upper().split("-")[0]
    if key not in DTLZ_NAMES:
        raise DomainError(f"analytic front intersections are only defined for DTLZ1-4, got {name!r}")
    if not np.any(w):
        raise DomainError("weight vector must be nonzero")
    return dtlz.pareto_point(int(key[4:]), w)


__all__ = [
    "ProblemInstance",
    "evaluate",
    "evaluate_into",
    "get_problem",
    "list_problems",
    "make_problem",
    "pareto_point_from_weight",
]
