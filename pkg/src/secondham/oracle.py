"""Brute-force ground truth for small instances."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .graph import Cycle, Edge, Instance, adjacency_csr, canonical_cycle, cycle_edges, edge_key


class CapExceeded(RuntimeError):
    """More Hamiltonian cycles exist than the caller allowed."""


@dataclass
class HCSet:
    cycles: list[Cycle]
    edge_counts: dict[Edge, int] = field(default_factory=dict)

    def __len__(self):
        return len(self.cycles)

    def __contains__(self, cyc) -> bool:
        return canonical_cycle(cyc) in self._index

    def __post_init__(self):
        self._index = set(self.cycles)


@dataclass
class ParityReport:
    passed: bool
    failing: list[Edge]
    edge_counts: dict[Edge, int]


def enumerate_hamiltonian_cycles(inst: Instance, cap: int = 1_000_000) -> HCSet:
    """All Hamiltonian cycles of ``inst``, canonicalized, with per-edge counts."""
    indptr, indices = adjacency_csr(inst)
    rows, exceeded = kernels.hc_enumerate(indptr, indices, inst.n, cap)
    if exceeded:
        raise CapExceeded(f"more than {cap} Hamiltonian cycles")
    cycles = sorted(canonical_cycle(row.tolist()) for row in rows)
    counts: dict[Edge, int] = {}
    for a in range(1, inst.n + 1):
        for p in range(indptr[a], indptr[a + 1]):
            b = int(indices[p])
            if a < b:
                counts[(a, b)] = 0
    for cyc in cycles:
        for e in cycle_edges(cyc):
            counts[e] += 1
    return HCSet(cycles, counts)


def edge_parity_check(inst: Instance, cap: int = 1_000_000) -> ParityReport:
    hcs = enumerate_hamiltonian_cycles(inst, cap)
    failing = sorted(e for e, c in hcs.edge_counts.items() if c % 2)
    return ParityReport(not failing, failing, hcs.edge_counts)


def longest_second_cycle(inst: Instance) -> int:
    """Length of the longest simple cycle different from C0 (0 if none)."""
    n = inst.n
    indptr, indices = adjacency_csr(inst)
    adj = [[]] + [indices[indptr[v]:indptr[v + 1]].tolist() for v in range(1, n + 1)]
    c0 = cycle_edges(inst.c0)
    best = 0
    # Every cycle is found once per orientation from its smallest vertex.
    for s in range(1, n + 1):
        if best == n:
            break
        if n - s + 1 <= best:
            break
        path = [s]
        on_path = [False] * (n + 1)
        on_path[s] = True
        stack = [iter([w for w in adj[s] if w > s])]
        while stack:
            for w in stack[-1]:
                if w == s:
                    continue
                if on_path[w] or w < s:
                    continue
                path.append(w)
                on_path[w] = True
                k = len(path)
                if k >= 3 and k > best and s in adj[w]:
                    if k < n or cycle_edges(path) != c0:
                        best = k
                stack.append(iter(adj[w]))
                break
            else:
                stack.pop()
                on_path[path.pop()] = False
            if best == n:
                break
    return best


def second_cycles(inst: Instance, cap: int = 1_000_000) -> list[Cycle]:
    """Hamiltonian cycles other than C0 whose symmetric difference with C0 is connected."""
    from .graph import symmetric_difference_components

    out = []
    for cyc in enumerate_hamiltonian_cycles(inst, cap).cycles:
        if cyc != inst.c0 and len(symmetric_difference_components(inst.c0, cyc)) == 1:
            out.append(cyc)
    return out


__all__ = ["CapExceeded", "HCSet", "ParityReport", "enumerate_hamiltonian_cycles",
           "edge_parity_check", "longest_second_cycle", "second_cycles", "edge_key"]
