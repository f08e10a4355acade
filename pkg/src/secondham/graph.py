"""Instance model: cubic (Smith) and general Hamiltonian graphs with a designated cycle C0.

Vertices are 1-based and renamed at parse time so that C0 = (1, 2, ..., n).
Every non-C0 edge is a chord.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]
Cycle = tuple[int, ...]


class InstanceError(ValueError):
    """Malformed or invalid instance text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def succ(v: int, n: int) -> int:
    return v % n + 1


def pred(v: int, n: int) -> int:
    return (v - 2) % n + 1


def c0_edges(n: int) -> set[Edge]:
    return {edge_key(i, succ(i, n)) for i in range(1, n + 1)}


def is_c0_edge(u: int, v: int, n: int) -> bool:
    d = abs(u - v)
    return d == 1 or d == n - 1


@dataclass(frozen=True)
class SmithInstance:
    """Cubic graph given as the cycle (1..n) plus a perfect matching of chords.

    ``partner[v]`` is the chord partner of ``v`` (index 0 unused).
    """

    n: int
    partner: tuple[int, ...]

    @classmethod
    def from_chords(cls, n: int, chords: Iterable[Edge]) -> "SmithInstance":
        if n < 4 or n % 2:
            raise InstanceError(f"smith instance needs even n >= 4, got {n}")
        partner = [0] * (n + 1)
        for a, b in chords:
            if not (1 <= a <= n and 1 <= b <= n):
                raise InstanceError(f"chord {a}-{b} out of range 1..{n}")
            if a == b:
                raise InstanceError(f"self-loop at {a}")
            if is_c0_edge(a, b, n):
                raise InstanceError(f"chord {a}-{b} duplicates a C0 edge")
            for v in (a, b):
                if partner[v]:
                    raise InstanceError(f"chord matching violation: vertex {v} in two chords")
            partner[a], partner[b] = b, a
        missing = [v for v in range(1, n + 1) if not partner[v]]
        if missing:
            raise InstanceError(f"chord matching violation: vertices {missing[:5]} not covered")
        return cls(n, tuple(partner))

    def chord_partner(self, v: int) -> int:
        return self.partner[v]

    @property
    def chords(self) -> list[Edge]:
        return [(v, self.partner[v]) for v in range(1, self.n + 1) if v < self.partner[v]]

    def edges(self) -> list[Edge]:
        return sorted(c0_edges(self.n) | set(self.chords))

    def neighbors(self, v: int) -> tuple[int, int, int]:
        n = self.n
        return (pred(v, n), succ(v, n), self.partner[v])

    def has_edge(self, u: int, v: int) -> bool:
        return is_c0_edge(u, v, self.n) or (1 <= u <= self.n and self.partner[u] == v)

    @property
    def c0(self) -> Cycle:
        return tuple(range(1, self.n + 1))

    def has_triangle(self) -> bool:
        n = self.n
        return any(self.partner[pred(v, n)] == succ(v, n) for v in range(1, n + 1))


@dataclass(frozen=True, eq=False)
class GeneralInstance:
    """Hamiltonian graph of minimum degree >= 3 with C0 = (1..n).

    Chords are stored as an (m, 2) array and as CSR adjacency
    (``indptr``/``indices``, 1-based rows) for linear scans.
    """

    n: int
    chord_array: np.ndarray
    indptr: np.ndarray = field(repr=False)
    indices: np.ndarray = field(repr=False)
    min_degree: int
    max_degree: int

    @classmethod
    def from_chords(cls, n: int, chords, validate: bool = True) -> "GeneralInstance":
        arr = np.asarray(chords, dtype=np.int64).reshape(-1, 2)
        if n < 4:
            raise InstanceError(f"general instance needs n >= 4, got {n}")
        if validate and len(arr):
            if arr.min() < 1 or arr.max() > n:
                raise InstanceError("chord endpoint out of range")
            if np.any(arr[:, 0] == arr[:, 1]):
                raise InstanceError("self-loop among chords")
            d = np.abs(arr[:, 0] - arr[:, 1])
            if np.any((d == 1) | (d == n - 1)):
                raise InstanceError("chord duplicates a C0 edge")
            lo = np.minimum(arr[:, 0], arr[:, 1])
            hi = np.maximum(arr[:, 0], arr[:, 1])
            keys = np.unique(lo * (n + 1) + hi)
            if len(keys) != len(arr):
                raise InstanceError("duplicate chord (multigraph)")
        ends = np.concatenate([arr[:, 0], arr[:, 1]]) if len(arr) else np.zeros(0, np.int64)
        others = np.concatenate([arr[:, 1], arr[:, 0]]) if len(arr) else np.zeros(0, np.int64)
        order = np.argsort(ends, kind="stable")
        counts = np.bincount(ends, minlength=n + 1)
        indptr = np.zeros(n + 2, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        indices = others[order].astype(np.int32)
        degrees = counts[1:] + 2
        inst = cls(n, arr, indptr, indices, int(degrees.min()), int(degrees.max()))
        if validate and inst.min_degree < 3:
            raise InstanceError(f"minimum degree {inst.min_degree} < 3")
        return inst

    @property
    def chords(self) -> list[Edge]:
        return [edge_key(int(a), int(b)) for a, b in self.chord_array]

    def chords_of(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        return is_c0_edge(u, v, self.n) or bool(np.any(self.chords_of(u) == v))

    @property
    def c0(self) -> Cycle:
        return tuple(range(1, self.n + 1))

    def __eq__(self, other):
        if not isinstance(other, GeneralInstance):
            return NotImplemented
        return self.n == other.n and sorted(self.chords) == sorted(other.chords)


Instance = SmithInstance | GeneralInstance


# ---------------------------------------------------------------- parsing

def parse_instance(text: str) -> Instance:
    """Parse the line-oriented instance format and rename vertices so C0 = (1..n)."""
    return parse_labelled_instance(text)[0]


def parse_labelled_instance(text: str) -> tuple[Instance, tuple[int, ...]]:
    """Like parse_instance, also returning ``labels`` with labels[i-1] = file id of vertex i."""
    kind = None
    n = None
    c0: list[int] | None = None
    raw_edges: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]

        def ints(start: int) -> list[int]:
            out = []
            col = raw.find(tokens[start - 1]) + len(tokens[start - 1])
            for tok in tokens[start:]:
                col = raw.find(tok, col)
                try:
                    val = int(tok)
                except ValueError:
                    raise InstanceError(f"expected integer, got {tok!r}", lineno, col + 1) from None
                if val < 1:
                    raise InstanceError(f"vertex ids must be positive, got {val}", lineno, col + 1)
                out.append(val)
                col += len(tok)
            return out

        if head == "p":
            if kind is not None:
                raise InstanceError("duplicate problem line", lineno, 1)
            if len(tokens) != 3 or tokens[1] not in ("smith", "ham"):
                raise InstanceError("expected 'p smith <n>' or 'p ham <n>'", lineno, 1)
            kind = tokens[1]
            n = ints(2)[0]
        elif head == "c0":
            if kind is None:
                raise InstanceError("'c0' before problem line", lineno, 1)
            if c0 is not None:
                raise InstanceError("duplicate c0 line", lineno, 1)
            c0 = ints(1)
            if len(c0) != n:
                raise InstanceError(f"c0 lists {len(c0)} vertices, expected {n}", lineno, 1)
            if len(set(c0)) != n:
                raise InstanceError("c0 repeats a vertex", lineno, 1)
        elif head == "e":
            if c0 is None:
                raise InstanceError("'e' before c0 line", lineno, 1)
            vals = ints(1)
            if len(vals) != 2:
                raise InstanceError("edge line needs exactly two vertices", lineno, 1)
            raw_edges.append((vals[0], vals[1], lineno))
        else:
            raise InstanceError(f"unknown line type {head!r}", lineno, 1)
    if kind is None or c0 is None:
        raise InstanceError("missing problem line or c0 line")
    rename = {v: i for i, v in enumerate(c0, start=1)}
    chords = []
    for a, b, lineno in raw_edges:
        if a not in rename or b not in rename:
            raise InstanceError(f"edge {a}-{b} uses a vertex not on c0", lineno, 1)
        chords.append((rename[a], rename[b]))
    if kind == "smith":
        if len(chords) != n // 2 or n % 2:
            raise InstanceError(f"smith instance needs exactly n/2 = {n // 2} chords, got {len(chords)}")
        return SmithInstance.from_chords(n, chords), tuple(c0)
    return GeneralInstance.from_chords(n, chords), tuple(c0)


def serialize_instance(inst: Instance) -> str:
    kind = "smith" if isinstance(inst, SmithInstance) else "ham"
    lines = [f"p {kind} {inst.n}", "c0 " + " ".join(map(str, range(1, inst.n + 1)))]
    lines += [f"e {a} {b}" for a, b in sorted(inst.chords)]
    return "\n".join(lines) + "\n"


def format_cycle(cyc: Sequence[int]) -> str:
    return "cycle " + " ".join(map(str, cyc))


def parse_cycle(text: str) -> Cycle:
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line.startswith("cycle"):
            try:
                return tuple(int(t) for t in line.split()[1:])
            except ValueError:
                raise InstanceError(f"non-integer vertex in cycle line {line!r}") from None
    raise InstanceError("no 'cycle' line found")


# ---------------------------------------------------------------- cycles

def canonical_cycle(seq: Sequence[int]) -> Cycle:
    """Rotate to start at the smallest vertex; orient so the smaller neighbour comes second."""
    seq = list(seq)
    if len(seq) < 3:
        return tuple(seq)
    k = seq.index(min(seq))
    rot = seq[k:] + seq[:k]
    if rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


def cycle_edges(seq: Sequence[int]) -> set[Edge]:
    return {edge_key(seq[i - 1], seq[i]) for i in range(len(seq))}


def is_hamiltonian_cycle(inst: Instance, cand: Sequence[int]) -> bool:
    n = inst.n
    if len(cand) != n or len(set(cand)) != n:
        return False
    if any(not (1 <= v <= n) for v in cand):
        return False
    return all(inst.has_edge(cand[i - 1], cand[i]) for i in range(n))


def is_cycle_in(inst: Instance, cand) -> bool:
    """True iff ``cand`` is a simple cycle (length >= 3) using only edges of ``inst``.

    Vectorised so it stays cheap for n ~ 10^5.
    """
    n = inst.n
    seq = np.asarray(cand, dtype=np.int64)
    if seq.ndim != 1 or len(seq) < 3:
        return False
    if seq.min() < 1 or seq.max() > n or len(np.unique(seq)) != len(seq):
        return False
    a = seq
    b = np.roll(seq, -1)
    d = np.abs(a - b)
    on_c0 = (d == 1) | (d == n - 1)
    rest_a, rest_b = a[~on_c0], b[~on_c0]
    if not len(rest_a):
        return True
    lo = np.minimum(rest_a, rest_b)
    hi = np.maximum(rest_a, rest_b)
    keys = lo * (n + 1) + hi
    chords = np.asarray(inst.chords, dtype=np.int64).reshape(-1, 2)
    ckeys = np.sort(chords.min(axis=1) * (n + 1) + chords.max(axis=1))
    pos = np.searchsorted(ckeys, keys)
    pos = np.minimum(pos, len(ckeys) - 1)
    return bool(len(ckeys) and np.all(ckeys[pos] == keys))


def symmetric_difference_components(c0: Sequence[int], c1: Sequence[int]) -> list[list[Edge]]:
    """Connected components of E(c0) xor E(c1), each as an edge list in traversal order.

    For two Hamiltonian cycles of a cubic graph every vertex of the difference
    has degree 2, so each component is a cycle.
    """
    diff = cycle_edges(c0) ^ cycle_edges(c1)
    adj: dict[int, list[int]] = {}
    for u, v in diff:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen_edges: set[Edge] = set()
    comps = []
    for start in sorted(adj):
        for nxt in sorted(adj[start]):
            if edge_key(start, nxt) in seen_edges:
                continue
            comp = []
            prev, cur = start, nxt
            seen_edges.add(edge_key(prev, cur))
            comp.append(edge_key(prev, cur))
            while cur != start:
                options = [w for w in adj[cur] if edge_key(cur, w) not in seen_edges]
                if not options:
                    break
                prev, cur = cur, options[0]
                seen_edges.add(edge_key(prev, cur))
                comp.append(edge_key(prev, cur))
            comps.append(comp)
    return comps


def is_second_cycle(inst: Instance, cand: Sequence[int]) -> bool:
    return is_hamiltonian_cycle(inst, cand) and canonical_cycle(cand) != inst.c0


def adjacency_csr(inst: Instance) -> tuple[np.ndarray, np.ndarray]:
    """Full adjacency (C0 edges and chords) as CSR with rows 1..n, neighbours sorted."""
    n = inst.n
    rows: list[list[int]] = [[] for _ in range(n + 1)]
    for v in range(1, n + 1):
        rows[v].extend((pred(v, n), succ(v, n)))
    for a, b in inst.chords:
        rows[a].append(b)
        rows[b].append(a)
    indptr = np.zeros(n + 2, dtype=np.int64)
    for v in range(1, n + 1):
        rows[v] = sorted(set(rows[v]))
        indptr[v + 1] = indptr[v] + len(rows[v])
    indices = np.fromiter((w for v in range(1, n + 1) for w in rows[v]), dtype=np.int32,
                          count=int(indptr[n + 1]))
    return indptr, indices


def to_general(inst: Instance) -> GeneralInstance:
    if isinstance(inst, GeneralInstance):
        return inst
    partner = np.asarray(inst.partner, dtype=np.int64)
    v = np.arange(len(partner), dtype=np.int64)
    keep = (v >= 1) & (v < partner)
    return GeneralInstance.from_chords(inst.n, np.stack([v[keep], partner[keep]], axis=1), validate=False)


class Color(IntEnum):
    """Edge colours: black/red for C0 edges in/out of C1, blue/yellow for chords in/out of C1."""

    UNCOLORED = 0
    RED = 1
    BLACK = 2
    BLUE = 3
    YELLOW = 4
