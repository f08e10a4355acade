"""Benchmark ladders for the exact solver, the approximation and the lollipop walk."""
from __future__ import annotations

import math
import statistics
import time
import tracemalloc
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .approx import find_long_cycle
from .generators import random_cubic, random_regular
from .graph import is_cycle_in, is_hamiltonian_cycle
from .lollipop import StepLimit, run_lollipop
from .solver import SolverTimeout, solve_second_cycle


@dataclass
class BenchRow:
    algorithm: str
    n: int
    seed: int
    status: str = "ok"
    time_ms: float = 0.0
    leaves: int = 0
    peak_bytes: int = 0
    length: int = 0
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)


def _exact_cell(n: int, seed: int, timeout_ms: float | None, use_x_certificate: bool,
                measure_memory: bool) -> BenchRow:
    inst = random_cubic(n, seed)
    row = BenchRow("exact", n, seed)
    if measure_memory:
        # one untraced run first, so lazily created module state is not billed to the solver
        solve_second_cycle(inst, use_x_certificate=use_x_certificate)
        tracemalloc.start()
    try:
        res = solve_second_cycle(inst, use_x_certificate=use_x_certificate, timeout_ms=timeout_ms)
    except SolverTimeout:
        row.status = "timeout"
        return row
    finally:
        if measure_memory:
            row.peak_bytes = tracemalloc.get_traced_memory()[1]
            tracemalloc.stop()
    row.time_ms = res.metrics.time_ms
    row.leaves = res.metrics.leaves
    row.length = len(res.cycle)
    row.extra = {"method": res.metrics.method, "max_depth": res.metrics.max_depth,
                 "quads": res.metrics.quads_created, "anchors": res.metrics.anchors_tried}
    if not is_hamiltonian_cycle(inst, res.cycle):
        row.status = "invalid"
    return row


def _approx_cell(n: int, seed: int, delta: int, repeats: int) -> BenchRow:
    inst = random_regular(n, delta, seed)
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        res = find_long_cycle(inst)
        times.append((time.perf_counter() - t0) * 1000.0)
    row = BenchRow("approx", n, seed, time_ms=statistics.median(times), length=res.length,
                   extra={"delta": delta, "bound": res.bound, "certificate": res.certificate})
    if not is_cycle_in(inst, res.cycle) or res.length < res.bound:
        row.status = "invalid"
    return row


def _lollipop_cell(n: int, seed: int, start: str, max_steps: int) -> BenchRow:
    inst = random_cubic(n, seed)
    row = BenchRow("lollipop", n, seed, extra={"start": start})
    t0 = time.perf_counter()
    try:
        res = run_lollipop(inst, start, max_steps=max_steps)
    except StepLimit as exc:
        row.status = "step_limit"
        row.extra["steps"] = exc.steps
    else:
        row.extra["steps"] = res.steps
        row.length = len(res.c1)
    row.time_ms = (time.perf_counter() - t0) * 1000.0
    return row


def _run_cells(fn, cells, jobs: int) -> list[BenchRow]:
    if jobs <= 1:
        return [fn(*c) for c in cells]
    with ProcessPoolExecutor(jobs) as pool:
        return list(pool.map(fn, *zip(*cells)))


def exact_ladder(sizes, seeds: int, timeout_ms: float | None = None, use_x_certificate: bool = False,
                 measure_memory: bool = False, jobs: int = 1, seed0: int = 0) -> list[BenchRow]:
    cells = [(n, seed0 + s, timeout_ms, use_x_certificate, measure_memory) for n in sizes for s in range(seeds)]
    return _run_cells(_exact_cell, cells, jobs)


def approx_ladder(sizes, seeds: int, deltas=(3,), repeats: int = 3, jobs: int = 1,
                  seed0: int = 0) -> list[BenchRow]:
    cells = [(n, seed0 + s, d, repeats) for d in deltas for n in sizes for s in range(seeds)]
    return _run_cells(_approx_cell, cells, jobs)


def lollipop_ladder(sizes, seeds: int, max_steps: int = 100_000, starts=("v1vn", "v1v2"),
                    jobs: int = 1, seed0: int = 0) -> list[BenchRow]:
    cells = [(n, seed0 + s, st, max_steps) for n in sizes for s in range(seeds) for st in starts]
    return _run_cells(_lollipop_cell, cells, jobs)


def exponent_per_row(rows) -> list[float]:
    return [math.log2(max(r.leaves, 1)) / r.n for r in rows if r.status == "ok"]


def exponent_fit(rows) -> dict:
    """Worst per-instance log2(leaves)/n, plus the slope of log2(mean leaves) against n."""
    ok = [r for r in rows if r.status == "ok"]
    if not ok:
        return {"max": float("nan"), "slope": float("nan")}
    by_n: dict[int, list[int]] = {}
    for r in ok:
        by_n.setdefault(r.n, []).append(max(r.leaves, 1))
    xs = sorted(by_n)
    ys = [math.log2(statistics.fmean(by_n[x])) for x in xs]
    slope = statistics.linear_regression(xs, ys).slope if len(xs) > 1 else float("nan")
    return {"max": max(exponent_per_row(ok)), "slope": slope}


def summarize(rows) -> list[dict]:
    """One aggregate line per (algorithm, n)."""
    groups: dict[tuple[str, int], list[BenchRow]] = {}
    for r in rows:
        groups.setdefault((r.algorithm, r.n), []).append(r)
    out = []
    for (alg, n), rs in sorted(groups.items()):
        ok = [r for r in rs if r.status == "ok"]
        line = {"algorithm": alg, "n": n, "cells": len(rs), "ok": len(ok),
                "median_ms": statistics.median([r.time_ms for r in ok]) if ok else float("nan")}
        if alg == "exact" and ok:
            line["max_leaves"] = max(r.leaves for r in ok)
            line["max_exponent"] = max(exponent_per_row(ok))
            line["max_peak_bytes"] = max(r.peak_bytes for r in ok)
        if alg == "lollipop":
            steps = [r.extra.get("steps", 0) for r in rs]
            line["median_steps"] = statistics.median(steps)
            line["max_steps"] = max(steps)
        out.append(line)
    return out
