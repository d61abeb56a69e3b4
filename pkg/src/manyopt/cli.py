"""Command-line entry point: ``manyopt {run,sweep,metrics,weights,problems}``."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from manyopt import harness, metrics
from manyopt.errors import ConfigError, DomainError
from manyopt.io import dump_json, matrix_to_csv_text, read_front_csv
from manyopt.problems import get_problem, list_problems
from manyopt.weights import build_neighborhoods, weights_for


def _overrides(items) -> dict:
    return dict(harness.parse_override(s) for s in items or [])


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _ints(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def cmd_run(args) -> int:
    cfg = harness.load_config(args.config, _overrides(args.set))
    result = harness.run_experiment(cfg, args.out)
    sys.stdout.write(dump_json({k: v.to_dict() for k, v in result.stats.items()}))
    return 0


def cmd_sweep(args) -> int:
    cfg = harness.load_config(args.config, _overrides(args.set))
    T_values = _ints(args.t_values) if args.t_values else None
    ps_values = _floats(args.ps_values) if args.ps_values else None
    result = harness.sensitivity_sweep(cfg, T_values, ps_values, args.out)
    sys.stdout.write(dump_json(result.to_dict()))
    return 0


def cmd_metrics(args) -> int:
    S = read_front_csv(args.front)
    if not (args.igd or args.hv):
        raise ConfigError("choose at least one of --igd, --hv", "metrics")
    out: dict = {"points": int(S.shape[0]), "M": int(S.shape[1])}
    problem = get_problem(args.problem) if args.problem else None
    if args.igd:
        if args.reference:
            R = read_front_csv(args.reference)
        elif problem is not None:
            D1, D2 = harness.DEFAULT_DIVISIONS.get(problem.M, (None, None))
            if D1 is None:
                raise ConfigError(f"no default weight divisions for M={problem.M}; pass --reference", "reference")
            R = metrics.reference_set(problem.name, weights_for(problem.M, D1, D2))
        else:
            raise ConfigError("--igd needs --reference or --problem", "reference")
        out["igd"] = metrics.igd(S, R)
    if args.hv:
        if args.hv_ref:
            ref = np.array(_floats(args.hv_ref))
        elif problem is not None:
            ref = metrics.hv_reference_point(problem.name, problem.M)
        else:
            raise ConfigError("--hv needs --hv-ref or --problem", "hv_ref")
        out["hv_ref"] = ref.tolist()
        if S.shape[1] <= args.exact_max_m:
            out["hv"] = metrics.hv_exact(S, ref)
            out["hv_method"] = "exact"
        else:
            est = metrics.hv_monte_carlo(S, ref, args.hv_samples, np.random.default_rng(args.seed))
            out.update(hv=est.value, hv_stderr=est.stderr, hv_samples=est.samples, hv_method="monte-carlo")
    sys.stdout.write(dump_json(out))
    return 0


def cmd_weights(args) -> int:
    ws = weights_for(args.M, args.D1, args.D2, args.tau)
    if args.T is not None:
        ws = build_neighborhoods(ws, args.T)
        sys.stdout.write(matrix_to_csv_text(ws.vectors) if not args.neighborhoods
                         else "".join(",".join(map(str, row)) + "\n" for row in ws.neighborhoods))
    else:
        sys.stdout.write(matrix_to_csv_text(ws.vectors))
    return 0


def cmd_problems(args) -> int:
    rows = []
    for p in list_problems(args.M):
        bounds = "[0, 1]" if p.family == "dtlz" else "[0, 2i]"
        rows.append({"id": p.id, "M": p.M, "n": p.n, "k": p.k, "l": p.l, "bounds": bounds})
    if args.json:
        sys.stdout.write(dump_json(rows))
    else:
        for r in rows:
            print(f"{r['id']:<12} M={r['M']:<3} n={r['n']:<3} bounds={r['bounds']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="manyopt", description="Decomposition-based many-objective optimizer.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a seeded batch and write fronts, stats and counters")
    r.add_argument("config", nargs="?", help="YAML or JSON config file")
    r.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config key")
    r.add_argument("--out", help="output directory (overrides output_dir)")
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("sweep", help="grid over neighborhood size T and local-mating probability p_s")
    s.add_argument("config", nargs="?")
    s.add_argument("--set", action="append", metavar="KEY=VALUE")
    s.add_argument("--t-values", help="comma-separated T values (default 10,15,...,60)")
    s.add_argument("--ps-values", help="comma-separated p_s values (default 0,0.1,...,1)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("metrics", help="score a front CSV")
    m.add_argument("front")
    m.add_argument("--igd", action="store_true")
    m.add_argument("--reference", help="reference front CSV for IGD")
    m.add_argument("--problem", help="problem id such as dtlz2-m3, used for default references")
    m.add_argument("--hv", action="store_true")
    m.add_argument("--hv-ref", help="comma-separated HV reference point")
    m.add_argument("--hv-samples", type=int, default=10_000_000)
    m.add_argument("--exact-max-m", type=int, default=10, help="largest M scored with exact HV")
    m.add_argument("--seed", type=int, default=0, help="seed for Monte-Carlo HV")
    m.set_defaults(func=cmd_metrics)

    w = sub.add_parser("weights", help="print a weight set as CSV")
    w.add_argument("--M", type=int, required=True)
    w.add_argument("--D1", type=int, required=True)
    w.add_argument("--D2", type=int)
    w.add_argument("--tau", type=float, default=0.5)
    w.add_argument("--T", type=int, help="also compute angle neighborhoods")
    w.add_argument("--neighborhoods", action="store_true", help="print neighborhood indices instead")
    w.set_defaults(func=cmd_weights)

    pr = sub.add_parser("problems", help="list benchmark instances")
    pr.add_argument("action", choices=["list"])
    pr.add_argument("--M", type=_ints, default=[3, 5, 8, 10, 15], help="comma-separated objective counts")
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(func=cmd_problems)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(json.dumps(exc.to_dict(), sort_keys=True) + "\n")
        return 2
    except (DomainError, OSError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "field": None, "message": str(exc)},
                                    sort_keys=True) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
