"""Command line entry point: ``secondham <subcommand> ...``.

Exit codes: 0 on success, 2 for invalid input, 1 for internal errors
(including a result that fails re-verification; such results are never printed).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .graph import (InstanceError, canonical_cycle, SmithInstance, format_cycle, is_cycle_in, is_hamiltonian_cycle,
                    parse_cycle, parse_labelled_instance, serialize_instance,
                    symmetric_difference_components)

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT = 0, 1, 2


class VerificationError(RuntimeError):
    pass


@dataclass
class RunReport:
    algorithm: str
    instance_digest: str
    cycle: list[int] | None = None
    length: int = 0
    metrics: dict = field(default_factory=dict)
    verified: bool = False


def _digest(inst) -> str:
    return hashlib.sha256(serialize_instance(inst).encode()).hexdigest()[:16]


def _load(path: str):
    """Instance plus the file's vertex labels (internal vertex i is labels[i-1])."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_labelled_instance(text)


def _relabel(cyc, labels) -> list[int]:
    return [labels[v - 1] for v in cyc]


def _require_cubic(inst) -> SmithInstance:
    if not isinstance(inst, SmithInstance):
        raise InstanceError("this command needs a cubic instance ('p smith n')")
    return inst


def _verify_second(inst, cyc) -> list:
    """Independent check that cyc is a second Hamiltonian cycle; returns C0 xor C1 components."""
    if not is_hamiltonian_cycle(inst, cyc):
        raise VerificationError("result is not a Hamiltonian cycle of the instance")
    if canonical_cycle(cyc) == inst.c0:
        raise VerificationError("result equals C0")
    return symmetric_difference_components(inst.c0, cyc)


def _emit(args, report: RunReport, human_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(asdict(report)))
    else:
        for line in human_lines:
            print(line)


# ---------------------------------------------------------------- subcommands

def cmd_solve(args) -> int:
    from .solver import solve_second_cycle

    inst, labels = _load(args.input)
    _require_cubic(inst)
    res = solve_second_cycle(inst, use_x_certificate=not args.no_x_certificate,
                             reduce_triangles=not args.no_reduce, parallel=args.parallel,
                             timeout_ms=args.timeout_ms, order=args.order,
                             finalize_mode=args.finalize)
    comps = _verify_second(inst, res.cycle)
    if len(comps) != 1:
        raise VerificationError(f"C0 xor C1 has {len(comps)} components")
    out = _relabel(res.cycle, labels)
    report = RunReport("exact", _digest(inst), out, len(out), res.metrics.to_dict(), True)
    lines = [format_cycle(out)]
    if args.metrics:
        lines += [f"# {k} {v}" for k, v in res.metrics.to_dict().items()]
    _emit(args, report, lines)
    return EXIT_OK


def cmd_lollipop(args) -> int:
    from .lollipop import run_lollipop

    inst, labels = _load(args.input)
    _require_cubic(inst)
    res = run_lollipop(inst, args.start, max_steps=args.max_steps, check=args.check,
                       record_trace=args.trace is not None)
    comps = _verify_second(inst, res.c1)
    if args.trace is not None:
        with open(args.trace, "w") as fh:
            for rec in res.trace:
                fh.write(json.dumps(rec.as_dict()) + "\n")
    metrics = {"steps": res.steps, "start": res.start, "d_components": len(comps)}
    out = _relabel(res.c1, labels)
    report = RunReport("lollipop", _digest(inst), out, len(out), metrics, True)
    lines = [format_cycle(out), f"# steps {res.steps}", f"# d_components {len(comps)}"]
    _emit(args, report, lines)
    return EXIT_OK


def cmd_approx(args) -> int:
    from .approx import find_long_cycle

    inst, labels = _load(args.input)
    res = find_long_cycle(inst)
    if not is_cycle_in(inst, res.cycle) or len(res.cycle) == inst.n and canonical_cycle(res.cycle.tolist()) == inst.c0:
        raise VerificationError("approximate cycle failed verification")
    if res.length < res.lemma_bound:
        raise VerificationError("approximate cycle is shorter than its certificate promises")
    out = _relabel(res.cycle.tolist(), labels)
    if args.json:
        payload = res.to_dict(with_cycle=False)
        payload["cycle"] = out
        payload["chords"] = [[labels[a - 1], labels[b - 1]] for a, b in res.chords]
        print(json.dumps(payload))
    else:
        print(format_cycle(out))
        print(f"# length {res.length} bound {res.bound:.3f} certificate {res.certificate}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    from .reductions import Reduced, make_triangle_free

    inst, labels = _load(args.input)
    _require_cubic(inst)
    res = make_triangle_free(inst)
    if not isinstance(res, Reduced):
        _verify_second(inst, res.cycle)
        out = _relabel(res.cycle, labels)
        payload = {"second_cycle": out, "reductions": res.trace_length}
        print(json.dumps(payload) if args.json else format_cycle(out))
        return EXIT_OK
    if args.trace is not None:
        with open(args.trace, "w") as fh:
            for rec in res.trace.records:
                fh.write(rec.to_json() + "\n")
    text = serialize_instance(res.instance)
    if args.output:
        Path(args.output).write_text(text)
    if args.json:
        print(json.dumps({"n": res.instance.n, "reductions": len(res.trace.records),
                          "name_map": list(res.trace.name_map[1:]), "instance": text}))
    elif not args.output:
        print(text, end="")
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .oracle import edge_parity_check, enumerate_hamiltonian_cycles, longest_second_cycle

    inst, labels = _load(args.input)
    hcs = enumerate_hamiltonian_cycles(inst, cap=args.cap)
    out = {"hamiltonian_cycles": len(hcs.cycles)}
    if isinstance(inst, SmithInstance):
        parity = edge_parity_check(inst)
        out["parity"] = "pass" if parity.passed else "fail"
        out["failing_edges"] = [[labels[a - 1], labels[b - 1]] for a, b in parity.failing]
    if args.per_edge:
        out["per_edge"] = {f"{labels[a - 1]}-{labels[b - 1]}": c
                           for (a, b), c in sorted(hcs.edge_counts.items())}
    if args.longest:
        out["longest_second_cycle"] = longest_second_cycle(inst)
    if args.json:
        print(json.dumps(out))
    else:
        print(f"cycles {out['hamiltonian_cycles']}")
        if "parity" in out:
            print(f"parity {out['parity']}")
        for key, c in out.get("per_edge", {}).items():
            print(f"edge {key.replace('-', ' ')} {c}")
        if args.longest:
            print(f"longest_second_cycle {out['longest_second_cycle']}")
    return EXIT_OK


def cmd_gen(args) -> int:
    from .generators import GenSpec, Kind, generate

    spec = GenSpec(Kind(args.kind), n=args.n or 0, seed=args.seed, delta=args.delta,
                   max_degree=args.max_degree, name=args.name or "")
    try:
        spec.validate()
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    text = serialize_instance(generate(spec))
    if args.output:
        Path(args.output).write_text(text)
    else:
        print(text, end="")
    return EXIT_OK


def cmd_bench(args) -> int:
    from . import bench

    sizes = args.sizes
    if args.algorithm == "exact":
        rows = bench.exact_ladder(sizes or range(20, 41, 4), args.seeds, args.timeout_ms,
                                  use_x_certificate=args.x_certificate, measure_memory=args.memory,
                                  jobs=args.jobs, seed0=args.seed)
    elif args.algorithm == "approx":
        rows = bench.approx_ladder(sizes or (1000, 10_000, 100_000), args.seeds, tuple(args.deltas),
                                   jobs=args.jobs, seed0=args.seed)
    else:
        rows = bench.lollipop_ladder(sizes or range(10, 31, 4), args.seeds, args.max_steps,
                                     jobs=args.jobs, seed0=args.seed)
    summary = bench.summarize(rows)
    if args.json:
        payload = {"summary": summary, "rows": [r.as_dict() for r in rows]}
        if args.algorithm == "exact":
            payload["exponent"] = bench.exponent_fit(rows)
        print(json.dumps(payload))
        return EXIT_OK
    for line in summary:
        print("  ".join(f"{k}={v:.4g}" if isinstance(v, float) else f"{k}={v}" for k, v in line.items()))
    if args.algorithm == "exact":
        fit = bench.exponent_fit(rows)
        print(f"# exponent max {fit['max']:.4f} slope {fit['slope']:.4f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst, labels = _load(args.input)
    try:
        given = parse_cycle(Path(args.c1).read_text())
    except OSError as exc:
        raise InstanceError(f"cannot read {args.c1}: {exc.strerror}") from exc
    internal = {lab: i for i, lab in enumerate(labels, start=1)}
    cyc = tuple(internal.get(v, 0) for v in given)
    hamiltonian = is_hamiltonian_cycle(inst, cyc)
    second = hamiltonian and canonical_cycle(cyc) != inst.c0
    comps = symmetric_difference_components(inst.c0, cyc) if second else []
    verdict = {"hamiltonian": hamiltonian, "differs_from_c0": second,
               "difference_components": len(comps)}
    if args.json:
        print(json.dumps(verdict))
    else:
        for k, v in verdict.items():
            print(f"{k} {str(v).lower()}")
    return EXIT_OK if second else EXIT_INTERNAL


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timeout-ms", type=float, default=None)
    # the same options after the subcommand; SUPPRESS keeps a value given before it
    local = argparse.ArgumentParser(add_help=False)
    local.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    local.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    local.add_argument("--timeout-ms", type=float, default=argparse.SUPPRESS)

    ap = argparse.ArgumentParser(prog="secondham", parents=[common],
                                 description="Second Hamiltonian cycles in cubic graphs.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[local], help="exact second Hamiltonian cycle")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--no-x-certificate", action="store_true")
    p.add_argument("--no-reduce", action="store_true", help="skip triangle elimination")
    p.add_argument("--parallel", action="store_true", help="explore both seeds in two processes")
    p.add_argument("--order", choices=("fifo", "lifo"), default="fifo")
    p.add_argument("--finalize", choices=("tree", "greedy", "both"), default="tree")
    p.add_argument("--metrics", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("lollipop", parents=[local], help="lollipop walk from vertex 1")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--start", choices=("v1vn", "v1v2"), default="v1vn")
    p.add_argument("--max-steps", type=int, default=1_000_000)
    p.add_argument("--check", action="store_true", help="audit the colour invariants at every step")
    p.add_argument("--trace", default=None, help="write per-step JSON lines here")
    p.set_defaults(func=cmd_lollipop)

    p = sub.add_parser("approx", parents=[local], help="long second cycle in linear time")
    p.add_argument("--input", "-i", required=True)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("reduce", parents=[local], help="eliminate triangles")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--trace", default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("oracle", parents=[local], help="enumerate Hamiltonian cycles")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--per-edge", action="store_true")
    p.add_argument("--longest", action="store_true", help="also report the longest cycle other than C0")
    p.add_argument("--cap", type=int, default=10**6)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", parents=[local], help="generate an instance")
    p.add_argument("--kind", choices=("cubic", "regular", "min_degree", "named"), default="cubic")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--delta", type=int, default=3)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--name", default=None)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", parents=[local], help="benchmark ladders")
    p.add_argument("--algorithm", choices=("exact", "approx", "lollipop"), default="exact")
    p.add_argument("--sizes", type=int, nargs="+", default=None)
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--deltas", type=int, nargs="+", default=[3])
    p.add_argument("--max-steps", type=int, default=100_000)
    p.add_argument("--x-certificate", action="store_true", help="let the exact solver use the shortcut")
    p.add_argument("--memory", action="store_true", help="record peak traced memory per cell")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", parents=[local], help="check a candidate second cycle")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--c1", required=True)
    p.set_defaults(func=cmd_verify)
    return ap


def run_cli(argv=None) -> int:
    from .lollipop import StepLimit
    from .solver import SolverTimeout

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (VerificationError, SolverTimeout, StepLimit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - any other failure is an internal error
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
