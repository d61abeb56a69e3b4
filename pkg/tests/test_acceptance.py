"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

The full suite takes several minutes on one core (criterion 5 alone runs
20 x 3000 generations of WFG4).  Lines are repeated in the terminal summary.
"""

import time

import numpy as np
import pytest

from hv_oracle import hv_inclusion_exclusion, random_front
from liu_oracle import check_liu_pass
from manyopt.engine import AlgorithmConfig, run
from manyopt.harness import ExperimentConfig, run_experiment, sensitivity_sweep
from manyopt.metrics import hv_exact, hv_monte_carlo
from manyopt.problems import make_problem
from manyopt.weights import build_neighborhoods, generate_simplex_lattice, weights_for

pytestmark = pytest.mark.slow


def experiment(**kw):
    return ExperimentConfig.from_mapping({"runs": 20, "base_seed": 0, **kw})


@pytest.fixture(scope="module")
def dtlz4_liu():
    return run_experiment(experiment(problem="dtlz4", M=3, generations=600))


@pytest.fixture(scope="module")
def dtlz4_replace_all():
    return run_experiment(experiment(problem="dtlz4", M=3, generations=600, update="replace_all"))


def test_criterion_01_weight_counts(acceptance_report):
    expected = {(3, 12, None): 91, (5, 6, None): 210, (8, 3, 2): 156, (10, 3, 2): 275, (15, 2, 1): 135}
    start = time.perf_counter()
    got = {key: weights_for(key[0], key[1], key[2], 0.5).N for key in expected}
    elapsed = time.perf_counter() - start
    ok = got == expected and elapsed < 1.0
    acceptance_report(1, ok, f"sizes {list(got.values())} in {elapsed:.3f}s (need {list(expected.values())}, <1s)")
    assert ok


def test_criterion_02_dtlz2_igd(acceptance_report):
    res = run_experiment(experiment(problem="dtlz2", M=3, generations=250))
    med = res.stats["igd"].median
    ok = med <= 1.0e-3
    acceptance_report(2, ok, f"DTLZ2 M=3 G=250 median IGD {med:.4e} (need <= 1.0e-3)")
    assert ok


def test_criterion_03_dtlz1_igd(acceptance_report):
    res = run_experiment(experiment(problem="dtlz1", M=3, generations=400))
    med = res.stats["igd"].median
    ok = med <= 5.0e-3
    acceptance_report(3, ok, f"DTLZ1 M=3 G=400 median IGD {med:.4e} (need <= 5.0e-3)")
    assert ok


def test_criterion_04_dtlz4_degeneration(acceptance_report, dtlz4_liu):
    values = np.array(dtlz4_liu.values["igd"])
    degenerate = int((values > 0.1).sum())
    ok = degenerate <= 2
    acceptance_report(4, ok, f"DTLZ4 M=3 G=600 runs with IGD > 0.1: {degenerate}/20 (need <= 2); "
                             f"median {np.median(values):.3e}, worst {values.max():.3e}")
    assert ok


def test_criterion_05_wfg4_hv(acceptance_report):
    res = run_experiment(experiment(problem="wfg4", M=3, generations=3000))
    med = res.stats["hv"].median
    ok = med >= 0.72 and res.config.hv_ref == [3.0, 5.0, 7.0]
    acceptance_report(5, ok, f"WFG4 M=3 G=3000 ref (3,5,7) median normalized HV {med:.6f} (need >= 0.72)")
    assert ok


def test_criterion_06_strategy_contrast(acceptance_report, dtlz4_liu, dtlz4_replace_all):
    liu = [r.duplicate_slots() for r in dtlz4_liu.records]
    rep = [r.duplicate_slots() for r in dtlz4_replace_all.records]
    ok = np.median(rep) > np.median(liu)
    acceptance_report(6, ok, f"DTLZ4 M=3 G=600 median duplicate slots replace_all {np.median(rep):g} "
                             f"vs liu {np.median(liu):g} (need strictly more)")
    assert ok


def test_criterion_07_liu_invariants(acceptance_report):
    rng = np.random.default_rng(20_000)
    failures = {}
    trials = 10_000
    for _ in range(trials):
        for name in check_liu_pass(rng):
            failures[name] = failures.get(name, 0) + 1
    # Whole-run budget checks on random small instances.
    budget_failures = 0
    runs = 50
    for s in range(runs):
        M = int(rng.integers(2, 4))
        ws = generate_simplex_lattice(M, int(rng.integers(2, 6 if M == 3 else 19)))
        ws = ws if ws.N <= 20 else generate_simplex_lattice(M, 4)
        T = int(rng.integers(1, ws.N + 1))
        G = int(rng.integers(1, 6))
        rec = run(make_problem("DTLZ2", M), build_neighborhoods(ws, T), AlgorithmConfig(generations=G), s)
        c = rec.counters
        if c["evaluations"] != ws.N * (G + 1) or c["pbi_comparisons"] != ws.N * T * G:
            budget_failures += 1
    ok = not failures and budget_failures == 0
    acceptance_report(7, ok, f"{trials} randomized LIU passes, failures {failures or 'none'}; "
                             f"{runs} runs with N evals/gen and N*T comparisons/gen, failures {budget_failures}")
    assert ok


def test_criterion_08_hv_oracle(acceptance_report):
    rng = np.random.default_rng(8)
    worst_exact = 0.0
    for case in range(1000):
        M = 2 + case % 2
        ref = rng.uniform(0.5, 3.0, M)
        S = random_front(rng, M, int(rng.integers(1, 5)), ref)
        worst_exact = max(worst_exact, abs(hv_exact(S, ref) - hv_inclusion_exclusion(S, ref)))
    worst_z = 0.0
    mc_fail = 0
    for case in range(100):
        M = 2 + case % 5
        ref = rng.uniform(0.5, 3.0, M)
        S = rng.random((5, M)) * ref
        exact = hv_exact(S, ref)
        est = hv_monte_carlo(S, ref, 10 ** 6, rng)
        gap = abs(est.value - exact)
        if gap > 3 * est.stderr:
            mc_fail += 1
        worst_z = max(worst_z, gap / est.stderr if est.stderr else 0.0)
    ok = worst_exact <= 1e-9 and mc_fail == 0
    acceptance_report(8, ok, f"exact vs inclusion-exclusion max error {worst_exact:.2e} over 1000 cases (<= 1e-9); "
                             f"MC within 3 SE on {100 - mc_fail}/100 cases (max {worst_z:.2f} SE)")
    assert ok


def test_criterion_09_sensitivity_sweep(acceptance_report):
    base = experiment(problem="dtlz2", M=5)
    ps_values = [0.0, 0.7, 0.8, 0.9, 1.0]
    sweep = sensitivity_sweep(base, [10, 30], ps_values)
    med = {key: row.median for key, row in sweep.cells.items()}
    degenerate, default = med[(10, 1.0)], med[(30, 0.9)]
    best_mid = min(v for (T, p), v in med.items() if 0.7 <= p <= 0.9)
    zero_column = [med[(T, 0.0)] for T in (10, 30)]
    ok = degenerate > default and all(v >= best_mid for v in zero_column)
    acceptance_report(9, ok, f"DTLZ2 M=5: (T=10,p_s=1) {degenerate:.3e} > (T=30,p_s=0.9) {default:.3e}; "
                             f"p_s=0 column {[f'{v:.3e}' for v in zero_column]} vs best p_s in [0.7,0.9] {best_mid:.3e}")
    assert ok


def test_criterion_10_determinism(acceptance_report, tmp_path):
    identical = []
    for cfg in (dict(problem="dtlz2", M=3, generations=100, runs=3),
                dict(problem="wfg4", M=3, generations=100, runs=2)):
        run_experiment(experiment(**cfg), tmp_path / "a")
        run_experiment(experiment(**cfg), tmp_path / "b")
        identical.append((tmp_path / "a/stats.json").read_bytes() == (tmp_path / "b/stats.json").read_bytes())
    ok = all(identical)
    acceptance_report(10, ok, f"stats.json byte-identical on re-run: {identical}")
    assert ok
