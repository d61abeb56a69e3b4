"""Reference implementation of one LIU pass in plain Python, plus an invariant checker."""

from __future__ import annotations

from collections import Counter

import numpy as np

from manyopt.engine import Individual, Population, liu_update
from manyopt.scalarize import ScalarizerState


def pbi_plain(f, w, ideal, nadir, theta, use_nadir):
    fn = []
    for fi, lo, hi in zip(f, ideal, nadir):
        den = max(hi - lo, 1e-10) if use_nadir else 1.0
        fn.append((fi - lo) / den)
    wn = sum(x * x for x in w) ** 0.5
    d1 = abs(sum(a * b for a, b in zip(fn, w))) / wn
    d2 = sum((a - d1 * b / wn) ** 2 for a, b in zip(fn, w)) ** 0.5
    return d1 + theta * d2


def liu_reference(c_obj, c_id, neighborhood, objectives, ids, W, frame):
    """Independent LIU pass: returns (new ids per slot, discarded id, swaps)."""
    slots = {j: (list(objectives[j]), ids[j]) for j in range(len(ids))}
    carried = (list(c_obj), c_id)
    swaps = 0
    for j in neighborhood:
        args = (W[j], frame.ideal, frame.nadir, frame.theta, frame.use_nadir)
        if pbi_plain(carried[0], *args) < pbi_plain(slots[j][0], *args):
            slots[j], carried = carried, slots[j]
            swaps += 1
    return [slots[j][1] for j in range(len(ids))], carried[1], swaps


def random_trial(rng: np.random.Generator):
    """Small random population, neighborhood, frame and offspring."""
    M = int(rng.integers(2, 4))
    N = int(rng.integers(2, 21))
    T = int(rng.integers(1, N + 1))
    n = 3
    W = rng.dirichlet(np.ones(M), size=N)
    nbr = rng.permutation(N)[:T].astype(np.int64)
    X = rng.random((N, n))
    F = rng.random((N, M)) * rng.uniform(0.5, 5.0, M)
    ids = np.arange(N, dtype=np.int64)
    c = Individual(rng.random(n), rng.random(M) * rng.uniform(0.5, 5.0, M), N)
    allF = np.vstack([F, c.objectives])
    frame = ScalarizerState(allF.min(axis=0), allF.max(axis=0), float(rng.uniform(0.5, 10)),
                            bool(rng.integers(0, 2)))
    return Population(X, F, ids), c, nbr, W, frame


def check_liu_pass(rng: np.random.Generator) -> list[str]:
    """Run one randomized pass and return the list of violated invariants (empty if all hold)."""
    pop, c, nbr, W, frame = random_trial(rng)
    before = pop.copy()
    frame_before = frame.copy()
    before_pbi = {int(j): pbi_plain(before.objectives[j], W[j], frame.ideal, frame.nadir, frame.theta,
                                    frame.use_nadir) for j in nbr}
    ref_ids, ref_discard, ref_swaps = liu_reference(c.objectives, c.ident, nbr, before.objectives,
                                                    list(before.ids), W, frame)
    res = liu_update(c, nbr, pop, frame, W)
    failures = []
    old = Counter(before.ids.tolist()) + Counter([c.ident])
    new = Counter(pop.ids.tolist()) + Counter([res.discarded.ident])
    if old != new or len(pop) != len(before):
        failures.append("single-discard multiset identity")
    if max(Counter(pop.ids.tolist()).values()) > 1:
        failures.append("multiplicity increased")
    for j in nbr:
        after = pbi_plain(pop.objectives[j], W[j], frame.ideal, frame.nadir, frame.theta, frame.use_nadir)
        if after > before_pbi[int(j)]:
            failures.append("per-subproblem monotonicity")
            break
    if res.comparisons != len(nbr):
        failures.append("T comparisons per pass")
    if pop.ids.tolist() != ref_ids or res.discarded.ident != ref_discard or res.swaps != ref_swaps:
        failures.append("agreement with reference pass")
    lookup = {int(i): k for k, i in enumerate(before.ids)}
    for slot, ident in enumerate(pop.ids):
        src = before.objectives[lookup[int(ident)]] if ident != c.ident else c.objectives
        if not np.array_equal(pop.objectives[slot], src):
            failures.append("individual payload integrity")
            break
    if not (np.array_equal(frame.ideal, frame_before.ideal) and np.array_equal(frame.nadir, frame_before.nadir)):
        failures.append("frame frozen during pass")
    return failures
