"""Reference checks written against networkx and brute force, sharing no code with the package."""
import itertools

import networkx as nx


def nx_graph(inst):
    g = nx.cycle_graph(range(1, inst.n + 1))
    g.add_edges_from(inst.chords)
    return g


def c0_edge_set(n):
    return {frozenset((v, v % n + 1)) for v in range(1, n + 1)}


def cycle_edge_set(seq):
    return {frozenset((seq[i - 1], seq[i])) for i in range(len(seq))}


def is_hamiltonian(inst, seq):
    g = nx_graph(inst)
    seq = list(seq)
    if sorted(seq) != list(range(1, inst.n + 1)):
        return False
    return all(g.has_edge(seq[i - 1], seq[i]) for i in range(len(seq)))


def is_simple_cycle(inst, seq):
    """Simple cycle of the instance; ``inst`` may be any object with n and chords."""
    seq = [int(v) for v in seq]
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return False
    chords = {frozenset(c) for c in inst.chords}
    n = inst.n
    for i in range(len(seq)):
        a, b = seq[i - 1], seq[i]
        if abs(a - b) in (1, n - 1):
            continue
        if frozenset((a, b)) not in chords:
            return False
    return True


def difference_components(n, seq):
    diff = c0_edge_set(n) ^ cycle_edge_set(seq)
    g = nx.Graph()
    g.add_edges_from(tuple(e) for e in diff)
    return nx.number_connected_components(g)


def brute_force_hcs(inst):
    """All Hamiltonian cycles as tuples starting at 1 with second vertex < last (n <= 10)."""
    g = nx_graph(inst)
    n = inst.n
    out = set()
    for perm in itertools.permutations(range(2, n + 1)):
        if perm[0] > perm[-1]:
            continue
        seq = (1,) + perm
        if all(g.has_edge(seq[i - 1], seq[i]) for i in range(n)):
            out.add(seq)
    return out


def x_certificate_pairs(inst):
    """All chord pairs (i, k), (i+1, k+1) by the quadratic scan over chord pairs."""
    n = inst.n
    chords = {frozenset(c) for c in inst.chords}
    found = []
    for a, b in inst.chords:
        for i, k in ((a, b), (b, a)):
            if frozenset((i % n + 1, k % n + 1)) in chords and k % n + 1 != i:
                found.append((i, k))
    return found
