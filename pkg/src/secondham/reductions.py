"""Preprocessing for cubic instances: X-certificates and triangle elimination.

Triangle elimination works on a doubly linked list over the original vertex
ids, so a whole chain of reductions costs O(n); renaming to 1..n' happens once
at the end.  Records in a ``ReductionTrace`` always use original ids.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .graph import Cycle, SmithInstance, canonical_cycle, is_hamiltonian_cycle


class NoTriangleError(ValueError):
    pass


@dataclass(frozen=True)
class XCertificate:
    i: int
    k: int


@dataclass(frozen=True)
class TriangleRecord:
    """One reduction: triangle (a, p, b) with outer neighbours left-a, b-right, p-s."""

    a: int
    p: int
    b: int
    left: int
    right: int
    s: int

    def to_json(self) -> str:
        return json.dumps({"pivot": self.p, "removed": [self.a, self.b], "partner": self.s,
                           "new_edges": [[self.left, self.p], [self.p, self.right]]})

    @classmethod
    def from_json(cls, line: str) -> "TriangleRecord":
        d = json.loads(line)
        (left, _), (_, right) = d["new_edges"]
        return cls(d["removed"][0], d["pivot"], d["removed"][1], left, right, d["partner"])


@dataclass(frozen=True)
class ReductionTrace:
    n_original: int
    records: tuple[TriangleRecord, ...] = ()
    # name_map[j] is the original id of reduced vertex j (index 0 unused)
    name_map: tuple[int, ...] = ()
    reduced: SmithInstance | None = field(default=None, compare=False)

    def __len__(self):
        return len(self.records)

    @classmethod
    def identity(cls, inst: SmithInstance) -> "ReductionTrace":
        return cls(inst.n, (), tuple(range(inst.n + 1)), inst)


@dataclass(frozen=True)
class SecondCycle:
    cycle: Cycle
    trace_length: int = 0


@dataclass(frozen=True)
class Reduced:
    instance: SmithInstance
    trace: ReductionTrace


# ---------------------------------------------------------------- X-certificates

def find_x_certificate(inst: SmithInstance) -> XCertificate | None:
    """Lexicographically smallest (i, k) with chords v_i v_k and v_{i+1} v_{k+1}."""
    n, partner = inst.n, inst.partner
    for i in range(1, n + 1):
        k = partner[i]
        if k == (i - 2) % n + 1:
            continue
        if partner[i % n + 1] == k % n + 1:
            return XCertificate(i, k)
    return None


def second_cycle_from_x_certificate(inst: SmithInstance, cert: XCertificate) -> Cycle:
    i, k = sorted((cert.i, cert.k))
    n = inst.n
    seq = list(range(1, i + 1)) + list(range(k, i, -1)) + list(range(k + 1, n + 1))
    return canonical_cycle(seq)


# ---------------------------------------------------------------- triangles

def find_triangles(inst: SmithInstance) -> list[int]:
    """Pivots p such that (p-1, p, p+1) is a triangle closed by the chord (p-1)(p+1)."""
    n, partner = inst.n, inst.partner
    return [p for p in range(1, n + 1) if partner[(p - 2) % n + 1] == p % n + 1]


class _Reducer:
    """Linked-list state for repeated triangle reductions on original ids."""

    def __init__(self, inst: SmithInstance):
        n = inst.n
        self.n0 = n
        self.size = n
        self.partner = inst.partner
        self.nxt = [0] + [v % n + 1 for v in range(1, n + 1)]
        self.prv = [0] + [(v - 2) % n + 1 for v in range(1, n + 1)]
        self.alive = [False] + [True] * n
        self.records: list[TriangleRecord] = []

    def is_pivot(self, p: int) -> bool:
        return self.alive[p] and self.partner[self.prv[p]] == self.nxt[p]

    def walk(self, start: int) -> list[int]:
        out = [start]
        v = self.nxt[start]
        while v != start:
            out.append(v)
            v = self.nxt[v]
        return out

    def step(self, p: int):
        """Reduce at pivot p; returns a cycle (original ids) on an early exit, else None."""
        a, b = self.prv[p], self.nxt[p]
        left, right = self.prv[a], self.nxt[b]
        s = self.partner[p]
        if s == right:
            seq = self.walk(a)  # a, p, b, right, ...
            seq[1], seq[2] = b, p
            return seq
        if s == left:
            seq = self.walk(left)  # left, a, p, b, ...
            seq[1], seq[2] = p, a
            return seq
        self.alive[a] = self.alive[b] = False
        self.nxt[left], self.prv[p] = p, left
        self.nxt[p], self.prv[right] = right, p
        self.size -= 2
        self.records.append(TriangleRecord(a, p, b, left, right, s))
        return None

    def finish(self) -> Reduced:
        survivors = [v for v in range(1, self.n0 + 1) if self.alive[v]]
        rename = {v: j for j, v in enumerate(survivors, start=1)}
        chords = {(rename[v], rename[self.partner[v]]) for v in survivors if v < self.partner[v]}
        reduced = SmithInstance.from_chords(len(survivors), chords)
        trace = ReductionTrace(self.n0, tuple(self.records), (0, *survivors), reduced)
        return Reduced(reduced, trace)

    def lift(self, seq: list[int]) -> Cycle:
        trace = ReductionTrace(self.n0, tuple(self.records), tuple(range(self.n0 + 1)))
        return _lift_original(seq, trace)


def reduce_one_triangle(inst: SmithInstance, pivot: int | None = None) -> SecondCycle | Reduced:
    """Eliminate one triangle (smallest pivot unless ``pivot`` is given)."""
    pivots = find_triangles(inst)
    if not pivots:
        raise NoTriangleError("instance is triangle-free")
    if pivot is None:
        pivot = pivots[0]
    elif pivot not in pivots:
        raise NoTriangleError(f"vertex {pivot} is not the middle of a triangle")
    red = _Reducer(inst)
    seq = red.step(pivot)
    if seq is not None:
        return SecondCycle(canonical_cycle(seq), 0)
    return red.finish()


def make_triangle_free(inst: SmithInstance) -> SecondCycle | Reduced:
    """Reduce until triangle-free, or return a second cycle of ``inst`` found on the way."""
    red = _Reducer(inst)
    work = deque(range(1, inst.n + 1))
    while work:
        p = work.popleft()
        if not red.is_pivot(p):
            continue
        seq = red.step(p)
        if seq is not None:
            return SecondCycle(red.lift(seq), len(red.records))
        # only the pivot and its new C0 neighbours can have become triangle middles
        work.extend((red.prv[p], p, red.nxt[p]))
    return red.finish()


def _neighbour_arrays(seq, size):
    nb1 = [0] * (size + 1)
    nb2 = [0] * (size + 1)
    m = len(seq)
    for t, v in enumerate(seq):
        nb1[v] = seq[t - 1]
        nb2[v] = seq[(t + 1) % m]
    return nb1, nb2


def _replace(nb1, nb2, x, old, new):
    if nb1[x] == old:
        nb1[x] = new
    elif nb2[x] == old:
        nb2[x] = new
    else:
        raise ValueError(f"cycle does not use edge {x}-{old}")


def _traverse(nb1, nb2, start, count):
    out = [start]
    prev, cur = start, nb2[start]
    while cur != start:
        out.append(cur)
        if len(out) > count:
            raise ValueError("neighbour structure is not a single cycle")
        prev, cur = cur, (nb1[cur] if nb2[cur] == prev else nb2[cur])
    if len(out) != count:
        raise ValueError("neighbour structure is not a Hamiltonian cycle")
    return out


def _lift_original(seq, trace: ReductionTrace) -> Cycle:
    """Lift a cycle given in original ids on the surviving vertices."""
    nb1, nb2 = _neighbour_arrays(seq, trace.n_original)
    for rec in reversed(trace.records):
        a, p, b, left, right, s = rec.a, rec.p, rec.b, rec.left, rec.right, rec.s
        used = {nb1[p], nb2[p]}
        if used == {left, right}:
            _replace(nb1, nb2, left, p, a)
            _replace(nb1, nb2, right, p, b)
            nb1[a], nb2[a] = left, p
            nb1[p], nb2[p] = a, b
            nb1[b], nb2[b] = p, right
        elif used == {left, s}:
            _replace(nb1, nb2, left, p, a)
            nb1[a], nb2[a] = left, b
            nb1[b], nb2[b] = a, p
            nb1[p], nb2[p] = b, s
        elif used == {right, s}:
            _replace(nb1, nb2, right, p, b)
            nb1[b], nb2[b] = right, a
            nb1[a], nb2[a] = b, p
            nb1[p], nb2[p] = a, s
        else:
            raise ValueError(f"cycle does not pass pivot {p} through two of {left}, {right}, {s}")
    return canonical_cycle(_traverse(nb1, nb2, seq[0], trace.n_original))


def lift_cycle(cyc, trace: ReductionTrace) -> Cycle:
    """Map a Hamiltonian cycle of the reduced instance back to the original instance."""
    if not trace.records:
        return canonical_cycle(cyc)
    if trace.reduced is not None and not is_hamiltonian_cycle(trace.reduced, cyc):
        raise ValueError("cycle is not Hamiltonian in the reduced instance")
    seq = [trace.name_map[v] for v in cyc]
    return _lift_original(seq, trace)


def project_cycle(cyc, trace: ReductionTrace) -> Cycle:
    """Inverse of lift_cycle: map a Hamiltonian cycle of the original to the reduced instance."""
    if not trace.records:
        return canonical_cycle(cyc)
    nb1, nb2 = _neighbour_arrays(list(cyc), trace.n_original)
    for rec in trace.records:
        a, p, b, left, right, s = rec.a, rec.p, rec.b, rec.left, rec.right, rec.s
        ends = []
        if left in (nb1[a], nb2[a]):
            ends.append(left)
        if right in (nb1[b], nb2[b]):
            ends.append(right)
        if s in (nb1[p], nb2[p]):
            ends.append(s)
        if len(ends) != 2:
            raise ValueError("cycle does not traverse the triangle as a Hamiltonian cycle would")
        if left in ends:
            _replace(nb1, nb2, left, a, p)
        if right in ends:
            _replace(nb1, nb2, right, b, p)
        nb1[p], nb2[p] = ends
    rename = {v: j for j, v in enumerate(trace.name_map) if j}
    start = trace.name_map[1]
    seq = _traverse(nb1, nb2, start, len(trace.name_map) - 1)
    return canonical_cycle([rename[v] for v in seq])
