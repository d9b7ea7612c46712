"""Command-line harness: detect, count, exact, sweep and audit.

Every subcommand reads a graph from an edge-list file or a generator spec
(``overlap:a=8,k=8``) and writes a JSON document with ``"schema": 1``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .baseline import edge_sampling_run
from .config import ExactModel, lemma_counters, multiplicity_report
from .count import CountParams, MedianAbort, median_estimate
from .detect import DetectParams, amplified_detection, default_runs, run_detection
from .generators import build, is_generator_spec
from .graph import Graph, GraphInputError, exact_four_cycle_count
from .oracles import shift_margin_audit
from .sampling import Params, draw_shifts, mix, resolve_c1, resolve_delta
from .stream import EdgeStream

SCHEMA = 1
SEED_ENV = "FOURCYCLES_SEED"


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def load_stream(source: str, order_seed: int = 0, reshuffle: bool = False) -> tuple[EdgeStream, Graph | None]:
    """Stream plus the generated graph (None for files, which keep file order)."""
    if is_generator_spec(source):
        g = build(source)
        return EdgeStream.from_graph(g, order_seed, reshuffle, shuffle_initial=order_seed != 0), g
    return EdgeStream.from_file(source, order_seed, reshuffle), None


def lower_bound(args, stream: EdgeStream, g: Graph | None) -> tuple[float, str]:
    if args.t_lower is not None:
        return float(args.t_lower), "flag"
    if g is not None and g.meta.get("T"):
        return float(g.meta["T"]), "generator"
    T = exact_four_cycle_count(stream.to_graph())
    return float(max(T, 1)), "exact"


# ---------------------------------------------------------------------------
# parameter plumbing


def detect_params(T: float, profile: str, seed: int, delta=None, c1=None, runs=None, n: int = 2) -> DetectParams:
    d = resolve_delta(T, "detect", profile, override=delta)
    c = resolve_c1(T, d, "detect", profile, c1)
    return DetectParams(T, d, c, seed, runs or default_runs(n))


def count_params(T: float, profile: str, seed: int, epsilon: float = 0.5, delta=None, c=None,
                 oracle: str = "reference", median_runs: int = 1, sample_eps: float = 0.25) -> CountParams:
    d = resolve_delta(T, "count", profile, epsilon, delta)
    cc = resolve_c1(T, d, "count", profile, c)
    return CountParams(T, epsilon, d, cc, seed, oracle, median_runs, profile, sample_eps)


def _params_dict(p: Params) -> dict:
    return {"T": p.T, "delta": p.delta, "c1": p.c1, "mode": p.mode, "kappa": list(p.grid.values),
            "pair_probability": p.pair_probability, "saturated": p.saturated,
            "probabilities": [[p.p1_raw(k), p.p2_raw(k)] for k in p.kappa_indices]}


# ---------------------------------------------------------------------------
# subcommands


def cmd_exact(args, stream, g) -> dict:
    graph = stream.to_graph()
    return {"n": graph.n, "m": graph.m, "T": exact_four_cycle_count(graph), "duplicates": stream.duplicates}


def cmd_detect(args, stream, g) -> dict:
    T, source = lower_bound(args, stream, g)
    n = stream.to_graph().n
    dp = detect_params(T, args.profile, args.seed, args.delta_override, args.c1, args.runs, n)
    out = {"t_lower": T, "t_lower_source": source, "params": _params_dict(dp.params())}
    if args.single:
        out["result"] = run_detection(stream, dp).to_dict()
    else:
        out["result"] = amplified_detection(stream, dp).to_dict()
    return out


def cmd_count(args, stream, g) -> dict:
    T, source = lower_bound(args, stream, g)
    out = {"t_lower": T, "t_lower_source": source, "algo": args.algo}
    if args.algo == "baseline":
        c = 1.0 if args.c1 is None else args.c1
        runs = [edge_sampling_run(stream, T, mix(args.seed, i), c) for i in range(args.median_runs)]
        ests = [r.estimate for r in runs]
        out["params"] = {"T": T, "c": c, "p": runs[0].p}
        out["result"] = {"estimate": float(np.median(ests)), "estimates": ests, "aborted": 0,
                         "runs": [r.to_dict() for r in runs]}
        return out
    cp = count_params(T, args.profile, args.seed, args.epsilon, args.delta_override, args.c1,
                      args.oracle, args.median_runs, args.sample_eps)
    out["params"] = _params_dict(cp.params())
    out["params"]["epsilon"] = cp.epsilon
    out["params"]["oracle"] = cp.oracle_mode
    try:
        out["result"] = median_estimate(stream, cp).to_dict()
    except MedianAbort as exc:
        out["result"] = {"estimate": None, "error": str(exc)}
    return out


def cmd_audit(args, stream, g) -> dict:
    T, source = lower_bound(args, stream, g)
    graph = stream.to_graph()
    cp = count_params(T, args.profile, args.seed, args.epsilon, args.delta_override, args.c1)
    params = cp.params()
    config = cp.oracle_config(graph.n)
    shifts = draw_shifts(np.random.default_rng([args.seed, 7]), config.L, config.L1, config.L2)
    model = ExactModel(graph, params, shifts)
    return {
        "t_lower": T,
        "t_lower_source": source,
        "params": _params_dict(params),
        "shifts": {"s1": shifts.s1, "s2": shifts.s2, "s3": shifts.s3, "L": config.L, "L1": config.L1, "L2": config.L2},
        "shift_audit": shift_margin_audit(graph, shifts, params, model=model),
        "lemma_counters": lemma_counters(graph, params, model),
        "multiplicity": multiplicity_report(model),
    }


# ---------------------------------------------------------------------------
# sweep


def _trial(task: dict) -> dict:
    """One sweep trial; module level so worker processes can pickle it."""
    g = build(task["spec"])
    if task["pad_to"]:
        from .generators import pad_to_edges
        g = pad_to_edges(g, task["pad_to"])
    stream = EdgeStream.from_graph(g)
    T = float(g.meta.get("T") or max(exact_four_cycle_count(g), 1))
    seed = task["seed"]
    start = time.perf_counter()
    row = {"T": T, "m": g.m, "n": g.n}
    if task["task"] == "detect":
        dp = detect_params(T, task["profile"], seed, task["delta"], task["c1"], 1, g.n)
        res = run_detection(stream, dp)
        row.update(peak=res.meter["peak_edges"], found=res.found)
    elif task["task"] == "count":
        cp = count_params(T, task["profile"], seed, task["epsilon"], task["delta"], task["c1"],
                          median_runs=task["median_runs"])
        res = median_estimate(stream, cp)
        row.update(peak=max(r.meter["peak_edges"] for r in res.runs), estimate=res.estimate)
    else:
        res = edge_sampling_run(stream, T, seed, 1.0 if task["c1"] is None else task["c1"])
        row.update(peak=res.meter["peak_edges"], estimate=res.estimate)
    row["runtime"] = time.perf_counter() - start
    return row


def loglog_slope(xs, ys) -> dict | None:
    """Least-squares slope of log y on log x with a 95% confidence interval."""
    pts = [(math.log(x), math.log(y)) for x, y in zip(xs, ys) if x > 0 and y > 0]
    if len(pts) < 2:
        return None
    from scipy import stats

    lx, ly = map(np.asarray, zip(*pts))
    fit = stats.linregress(lx, ly)
    out = {"slope": float(fit.slope), "intercept": float(fit.intercept), "points": len(pts)}
    if len(pts) > 2:
        half = float(stats.t.ppf(0.975, len(pts) - 2) * fit.stderr)
        out["ci95"] = [out["slope"] - half, out["slope"] + half]
    return out


def sweep(spec: str, sizes, trials: int, task: str = "detect", profile: str = "desk", seed: int = 0,
          pad_to: int | None = None, jobs: int = 1, epsilon: float = 0.5, delta=None, c1=None,
          median_runs: int = 1) -> dict:
    """Run ``trials`` trials for each size substituted into ``spec`` at '{size}'."""
    if trials < 0:
        raise ValueError("trials must be >= 0")
    tasks = []
    for ci, size in enumerate(sizes):
        for t in range(trials):
            tasks.append({"cell": ci, "size": size, "spec": spec.replace("{size}", str(size)),
                          "seed": mix(seed, ci, t), "task": task, "profile": profile, "pad_to": pad_to,
                          "epsilon": epsilon, "delta": delta, "c1": c1, "median_runs": median_runs})
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_trial, tasks))
    else:
        rows = [_trial(t) for t in tasks]
    cells = []
    for ci, size in enumerate(sizes):
        mine = [r for r, t in zip(rows, tasks) if t["cell"] == ci]
        if not mine:
            continue
        peaks = np.array([r["peak"] for r in mine], dtype=float)
        cell = {"size": size, "spec": spec.replace("{size}", str(size)), "T": mine[0]["T"], "m": mine[0]["m"],
                "trials": len(mine), "peak_mean": float(peaks.mean()), "peak_std": float(peaks.std(ddof=0)),
                "runtime_mean": float(np.mean([r["runtime"] for r in mine]))}
        if task == "detect":
            cell["detection_rate"] = float(np.mean([r["found"] for r in mine]))
        else:
            err = np.array([abs(r["estimate"] - r["T"]) / r["T"] for r in mine])
            cell["rel_error_quantiles"] = dict(zip(("q10", "q50", "q90"), map(float, np.quantile(err, [.1, .5, .9]))))
        cells.append(cell)
    return {"task": task, "spec": spec, "trials": trials, "cells": cells,
            "slope": loglog_slope([c["T"] for c in cells], [c["peak_mean"] for c in cells])}


def _sweep_csv(report: dict, deterministic: bool) -> str:
    buf = io.StringIO()
    cols = ["size", "spec", "T", "m", "trials", "peak_mean", "peak_std", "detection_rate", "q10", "q50", "q90"]
    if not deterministic:
        cols.append("runtime_mean")
    w = csv.DictWriter(buf, cols, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for cell in report["cells"]:
        w.writerow({**cell, **cell.get("rel_error_quantiles", {})})
    return buf.getvalue()


def cmd_sweep(args, stream, g) -> dict:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    return sweep(args.spec, sizes, args.trials, args.task, args.profile, args.seed, args.pad_to, args.jobs,
                 args.epsilon, args.delta_override, args.c1, args.median_runs)


# ---------------------------------------------------------------------------
# argument parsing


def _strip_runtime(obj):
    if isinstance(obj, dict):
        return {k: _strip_runtime(v) for k, v in obj.items() if k not in ("runtime", "runtime_mean", "elapsed")}
    if isinstance(obj, list):
        return [_strip_runtime(v) for v in obj]
    return obj


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fourcycles", description="Streaming four-cycle detection and counting.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"master seed (default ${SEED_ENV} or 0)")
    common.add_argument("--profile", choices=("desk", "paper"), default="desk")
    common.add_argument("--epsilon", type=float, default=0.5)
    common.add_argument("--delta-override", type=float, default=None)
    common.add_argument("--c1", type=float, default=None, help="sampling constant (c for counting)")
    common.add_argument("--json", action="store_true", help="print the full JSON document")
    common.add_argument("--deterministic", action="store_true", help="omit timings so output is byte-stable")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("--input", required=True, help="edge-list file or generator spec")
    graph_in.add_argument("--t-lower", type=float, default=None)
    graph_in.add_argument("--order-seed", type=int, default=0)
    graph_in.add_argument("--reshuffle", action="store_true", help="permute every pass independently")

    sub.add_parser("exact", parents=[common, graph_in], help="exact four-cycle count")

    p = sub.add_parser("detect", parents=[common, graph_in], help="two-pass detection")
    p.add_argument("--runs", type=int, default=None, help="independent runs (default ceil(3 log2 n))")
    p.add_argument("--single", action="store_true", help="one uncapped run")

    p = sub.add_parser("count", parents=[common, graph_in], help="three-pass counting")
    p.add_argument("--algo", choices=("main", "baseline"), default="main")
    p.add_argument("--oracle", choices=("reference", "streaming"), default="reference")
    p.add_argument("--median-runs", type=int, default=1)
    p.add_argument("--sample-eps", type=float, default=0.25)

    sub.add_parser("audit", parents=[common, graph_in], help="shift-margin audit and exclusion counters")

    p = sub.add_parser("sweep", parents=[common], help="space and accuracy sweeps")
    p.add_argument("--spec", required=True, help="generator spec with a {size} placeholder")
    p.add_argument("--sizes", required=True, help="comma-separated sizes")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--task", choices=("detect", "count", "baseline"), default="detect")
    p.add_argument("--pad-to", type=int, default=None, help="pad every graph to this many edges")
    p.add_argument("--median-runs", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", action="store_true", help="emit the cell table as CSV")
    return parser


COMMANDS = {"exact": cmd_exact, "detect": cmd_detect, "count": cmd_count, "audit": cmd_audit, "sweep": cmd_sweep}


def _summary(command: str, doc: dict) -> str:
    if command == "exact":
        return f"n={doc['n']} m={doc['m']} T={doc['T']}"
    if command == "detect":
        r = doc["result"]
        return f"found={r['found']} witness={r['witness']}"
    if command == "count":
        return f"estimate={doc['result']['estimate']}"
    if command == "audit":
        a = doc["shift_audit"]
        return f"audited={a['audited']} bad={len(a['bad'])} disjoint={a['disjoint']}"
    slope = doc["slope"]
    return f"cells={len(doc['cells'])} slope={None if slope is None else round(slope['slope'], 4)}"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is None:
        args.seed = default_seed()
    start = time.perf_counter()
    try:
        stream, g = (None, None)
        if args.command != "sweep":
            stream, g = load_stream(args.input, args.order_seed, args.reshuffle)
        doc = COMMANDS[args.command](args, stream, g)
    except (GraphInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = {"schema": SCHEMA, "command": args.command, "seed": args.seed, **doc}
    if args.deterministic:
        doc = _strip_runtime(doc)
    else:
        doc["elapsed"] = time.perf_counter() - start
    if args.command == "sweep" and args.csv:
        sys.stdout.write(_sweep_csv(doc, args.deterministic))
    elif args.json:
        print(json.dumps(doc, sort_keys=True))
    else:
        print(_summary(args.command, doc))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
