"""Thomason's lollipop walk with the four-colour edge bookkeeping.

C0 edges start black and chords yellow.  An added edge turns black (C0) or
blue (chord); a removed edge turns red (C0) or yellow (chord).  The red and
blue edges are meant to trace an alternating path from vertex 1.  That does
not always hold: on some instances the final C0 xor C1 splits into several
cycles, which ``check=True`` reports as an InvariantViolation.

The path is kept as an array plus a position index and the suffix is reversed
explicitly at each pivot, so one step costs O(n).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels
from .graph import Color, Cycle, Edge, SmithInstance, canonical_cycle, edge_key, is_c0_edge, \
    symmetric_difference_components


class Start(str, Enum):
    V1VN = "v1vn"
    V1V2 = "v1v2"


class StepLimit(RuntimeError):
    def __init__(self, steps: int):
        super().__init__(f"lollipop walk exceeded its step budget after {steps} steps")
        self.steps = steps


class InvariantViolation(AssertionError):
    pass


@dataclass
class StepRecord:
    step: int
    added_edge: Edge | None
    removed_edge: Edge | None
    colors_changed: list[tuple[int, int, str]]

    def as_dict(self) -> dict:
        return {"step": self.step,
                "added_edge": list(self.added_edge) if self.added_edge else None,
                "removed_edge": list(self.removed_edge) if self.removed_edge else None,
                "colors_changed": [list(c) for c in self.colors_changed]}


@dataclass
class LollipopState:
    inst: SmithInstance
    path: list[int]
    pos: list[int]
    colors: dict[Edge, Color]
    step: int
    # the end vertex may not re-add the edge it just lost
    removed_other: int
    pending: tuple[int, int] | None = None  # (x, y) after a build, before the break

    @classmethod
    def initial(cls, inst: SmithInstance, start: Start | str = Start.V1VN) -> "LollipopState":
        """State after step 1: C0 minus the start edge, which is coloured red."""
        n = inst.n
        start = Start(start)
        path = list(range(1, n + 1)) if start is Start.V1VN else [1] + list(range(n, 1, -1))
        pos = [0] * (n + 1)
        for k, v in enumerate(path):
            pos[v] = k
        colors = {e: Color.BLACK for e in (edge_key(i, i % n + 1) for i in range(1, n + 1))}
        colors.update({e: Color.YELLOW for e in inst.chords})
        colors[edge_key(1, path[-1])] = Color.RED
        return cls(inst, path, pos, colors, 1, 1)

    @property
    def end(self) -> int:
        return self.path[-1]


@dataclass
class Finished:
    c1: Cycle


@dataclass
class LollipopResult:
    c1: Cycle
    d: list[Edge]
    steps: int
    start: str
    trace: list[StepRecord] = field(default_factory=list)


def _recolor(state: LollipopState, u: int, v: int, added: bool, changes: list) -> None:
    e = edge_key(u, v)
    on_c0 = is_c0_edge(u, v, state.inst.n)
    if added:
        new = Color.BLACK if on_c0 else Color.BLUE
    else:
        new = Color.RED if on_c0 else Color.YELLOW
    state.colors[e] = new
    changes.append((e[0], e[1], new.name.lower()))


def build_lollipop(state: LollipopState, changes: list | None = None) -> tuple[int, int]:
    """Add the third edge at the path end; returns the added edge (x, y)."""
    if state.pending is not None:
        raise InvariantViolation("lollipop already built")
    changes = [] if changes is None else changes
    x = state.end
    prev_x = state.path[-2]
    for y in state.inst.neighbors(x):
        if y != prev_x and y != state.removed_other:
            break
    else:
        raise InvariantViolation(f"no third edge at {x}")
    state.step += 1
    _recolor(state, x, y, True, changes)
    state.pending = (x, y)
    return x, y


def break_lollipop(state: LollipopState, changes: list | None = None) -> tuple[int, int]:
    """Remove the path edge y-z after y and reverse the suffix; returns (y, z)."""
    if state.pending is None:
        raise InvariantViolation("no lollipop to break")
    changes = [] if changes is None else changes
    _, y = state.pending
    k = state.pos[y]
    z = state.path[k + 1]
    _recolor(state, y, z, False, changes)
    tail = state.path[k + 1:]
    tail.reverse()
    state.path[k + 1:] = tail
    for t in range(k + 1, len(state.path)):
        state.pos[state.path[t]] = t
    state.removed_other = y
    state.pending = None
    return y, z


def lollipop_step(state: LollipopState, record: list | None = None):
    """One add-and-break pivot; returns the state, or Finished when the added edge reaches vertex 1."""
    changes: list = []
    x, y = build_lollipop(state, changes)
    if y == state.path[0]:
        if record is not None:
            record.append(StepRecord(state.step, edge_key(x, y), None, changes))
        return Finished(canonical_cycle(state.path))
    removed = break_lollipop(state, changes)
    if record is not None:
        record.append(StepRecord(state.step, edge_key(x, y), edge_key(*removed), changes))
    return state


def _alternating_walk(state: LollipopState) -> tuple[list[int], list[Edge], list[str]]:
    """Follow red/blue edges from vertex 1; returns (vertices, edges, problems)."""
    adj: dict[int, list[Edge]] = {}
    total = 0
    for e, c in state.colors.items():
        if c in (Color.RED, Color.BLUE):
            total += 1
            for v in e:
                adj.setdefault(v, []).append(e)
    problems = []
    for v, es in adj.items():
        if len(es) > 2:
            problems.append(f"vertex {v} has {len(es)} red/blue edges")
    verts, edges = [1], []
    seen: set[Edge] = set()
    cur = 1
    while True:
        nxt = [e for e in adj.get(cur, []) if e not in seen]
        if not nxt:
            break
        e = nxt[0]
        seen.add(e)
        edges.append(e)
        cur = e[0] if e[1] == cur else e[1]
        verts.append(cur)
        if cur == 1:
            break
    if len(edges) != total:
        problems.append(f"red/blue edges not connected to vertex 1 ({len(edges)} of {total} reached)")
    for t, e in enumerate(edges):
        want = Color.RED if t % 2 == 0 else Color.BLUE
        if state.colors[e] != want:
            problems.append(f"edge {e} at position {t} is {state.colors[e].name.lower()}, expected {want.name.lower()}")
            break
    return verts, edges, problems


def check_invariants(state: LollipopState, phase: str = "path") -> list[str]:
    """Violations of invariants 1-4.

    ``phase`` is "path" (between steps), "lollipop" (after a build, before the
    break) or "final" (after the closing edge was added).
    """
    n = state.inst.n
    out = []
    for e, c in state.colors.items():
        if is_c0_edge(e[0], e[1], n):
            if c not in (Color.BLACK, Color.RED):
                out.append(f"invariant 1: C0 edge {e} is {c.name.lower()}")
        elif c not in (Color.BLUE, Color.YELLOW):
            out.append(f"invariant 2: chord {e} is {c.name.lower()}")
    in_path = {e for e, c in state.colors.items() if c in (Color.BLACK, Color.BLUE)}
    if phase == "path":
        p = state.path
        path_edges = {edge_key(p[t], p[t + 1]) for t in range(len(p) - 1)}
        if sorted(p) != list(range(1, n + 1)):
            out.append("invariant 3: path is not a permutation of the vertices")
        if in_path != path_edges:
            bad = sorted(in_path ^ path_edges)[:3]
            out.append(f"invariant 3: black/blue edges differ from the path at {bad}")
    if phase in ("lollipop", "final") and state.step >= 2:
        verts, edges, problems = _alternating_walk(state)
        out.extend(f"invariant 4: {msg}" for msg in problems)
        if phase == "lollipop":
            if len(edges) % 2:
                out.append(f"invariant 4: red/blue path has odd length {len(edges)}")
            if verts and verts[-1] == 1 and len(edges) > 0:
                out.append("invariant 4: red/blue edges close into a cycle before the final step")
        else:
            if not edges or verts[-1] != 1:
                out.append("invariant 4: red/blue edges do not form a cycle at the final step")
    return out


def run_lollipop(inst: SmithInstance, start: Start | str = Start.V1VN, max_steps: int = 1_000_000,
                 check: bool = False, record_trace: bool = False) -> LollipopResult:
    """Run the walk to a second Hamiltonian cycle.

    With ``check`` every intermediate state is audited and the first violation
    raises InvariantViolation.  Without ``check``/``record_trace`` the compiled
    walk kernel is used.
    """
    start = Start(start)
    n = inst.n
    if not check and not record_trace:
        partner = np.asarray(inst.partner, dtype=np.int64)
        status, path, steps = kernels.lollipop_walk(partner, n, start is Start.V1V2, max_steps)
        if status != 1:
            raise StepLimit(int(steps))
        c1 = canonical_cycle(path.tolist())
        return LollipopResult(c1, _d_edges(inst, c1), int(steps), start.value)

    state = LollipopState.initial(inst, start)
    trace: list[StepRecord] = []
    if record_trace:
        trace.append(StepRecord(1, None, edge_key(1, state.path[-1]),
                                [(1, state.path[-1], "red")] if n > 1 else []))
    if state.step > max_steps:
        raise StepLimit(state.step)
    _audit(state, "path", check)
    while True:
        if state.step + 1 > max_steps:
            raise StepLimit(state.step + 1)
        changes: list = []
        x, y = build_lollipop(state, changes)
        if y == state.path[0]:
            _audit(state, "final", check)
            if record_trace:
                trace.append(StepRecord(state.step, edge_key(x, y), None, changes))
            c1 = canonical_cycle(state.path)
            return LollipopResult(c1, _d_edges(inst, c1), state.step, start.value, trace)
        _audit(state, "lollipop", check)
        removed = break_lollipop(state, changes)
        _audit(state, "path", check)
        if record_trace:
            trace.append(StepRecord(state.step, edge_key(x, y), edge_key(*removed), changes))


def _audit(state, phase, enabled):
    if enabled:
        problems = check_invariants(state, phase)
        if problems:
            raise InvariantViolation(f"step {state.step} ({phase}): " + "; ".join(problems))


def _d_edges(inst: SmithInstance, c1: Cycle) -> list[Edge]:
    comps = symmetric_difference_components(inst.c0, c1)
    return [e for comp in comps for e in comp]
