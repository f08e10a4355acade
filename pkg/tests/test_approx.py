import math
import random
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from secondham.approx import (ConfigurationError, InfeasiblePartition, Relation, SharedEndpointError,
                              chord_distance, chord_length, cycle_from_crossing_pair,
                              cycle_from_double_parallel, cycle_from_short_chord, find_long_cycle,
                              partition_blocks, short_chord_limit, theorem_bound)
from secondham.generators import quarter_reflection, random_cubic, random_min_degree, random_regular
from secondham.graph import GeneralInstance, is_cycle_in, to_general
from secondham.oracle import longest_second_cycle

from configs import crossing_config, double_parallel_config, short_chord_config, stub
from independent import is_simple_cycle


class TestGeometry:
    @pytest.mark.parametrize("n,chord,length", [(8, (1, 4), 3), (8, (1, 5), 4), (6, (2, 6), 2)])
    def test_length(self, n, chord, length):
        assert chord_length(n, chord) == length

    @pytest.mark.parametrize("n,e1,e2,d,rel", [
        (8, (1, 5), (3, 7), 4, Relation.CROSSING),
        (8, (1, 4), (5, 8), 2, Relation.PARALLEL),
        (10, (1, 4), (2, 5), 2, Relation.CROSSING),
        (12, (1, 6), (2, 5), 2, Relation.PARALLEL),
    ])
    def test_distance(self, n, e1, e2, d, rel):
        assert chord_distance(n, e1, e2) == (d, rel)
        assert chord_distance(n, e2[::-1], e1) == (d, rel)

    def test_shared_endpoint(self):
        with pytest.raises(SharedEndpointError):
            chord_distance(8, (1, 4), (4, 7))

    def test_crossing_distance_at_most_half(self):
        n = 10
        worst = max(chord_distance(n, (a, c), (b, d))[0]
                    for a in range(1, n + 1) for b in range(a + 1, n + 1)
                    for c in range(b + 1, n + 1) for d in range(c + 1, n + 1))
        assert worst == n // 2


class TestConstructions:
    def test_short_examples(self):
        assert cycle_from_short_chord(8, (1, 4)).tolist() == [4, 5, 6, 7, 8, 1]
        assert cycle_from_short_chord(6, (2, 6)).tolist() == [2, 3, 4, 5, 6]
        assert len(cycle_from_short_chord(100, (10, 60))) == 51

    def test_crossing_examples(self):
        c = cycle_from_crossing_pair(8, (1, 5), (2, 6))
        assert len(c) == 8 and is_simple_cycle(stub(8, [(1, 5), (2, 6)]), c)
        assert len(cycle_from_crossing_pair(8, (1, 5), (3, 7))) == 6

    def test_crossing_worst_placement_n10(self):
        c = cycle_from_crossing_pair(10, (1, 6), (3, 8))
        assert chord_distance(10, (1, 6), (3, 8))[0] == 4
        assert len(c) == 10 - 4 + 2

    def test_crossing_rejects_parallel(self):
        with pytest.raises(ConfigurationError):
            cycle_from_crossing_pair(8, (1, 4), (5, 8))

    def test_double_parallel_minimal(self):
        c = cycle_from_double_parallel(12, (1, 6), (2, 5), (3, 10), (4, 9))
        assert sorted(c.tolist()) == list(range(1, 13))
        assert is_simple_cycle(stub(12, [(1, 6), (2, 5), (3, 10), (4, 9)]), c)

    def test_double_parallel_rejects(self):
        with pytest.raises(ConfigurationError):
            cycle_from_double_parallel(12, (1, 7), (2, 8), (4, 10), (5, 11))

    def test_checks_instance_edges(self):
        g = to_general(random_cubic(20, 0))
        missing = next((a, b) for a in range(1, 21) for b in range(a + 2, 21)
                       if not g.has_edge(a, b) and b - a != 19)
        with pytest.raises(ConfigurationError):
            cycle_from_short_chord(g, missing)

    def test_double_parallel_n100(self):
        e1, e2, f1, f2 = (1, 50), (6, 45), (20, 70), (25, 65)
        assert chord_distance(100, e1, e2) == (10, Relation.PARALLEL)
        assert chord_distance(100, f1, f2) == (10, Relation.PARALLEL)
        assert len(cycle_from_double_parallel(100, e1, e2, f1, f2)) == 84

    @pytest.mark.parametrize("seed", range(12))
    def test_double_parallel_vs_brute_force(self, seed):
        rng = random.Random(seed)
        while True:
            n, e1, e2, f1, f2 = double_parallel_config(rng)
            if n <= 16:
                break
        chords = [e1, e2, f1, f2]
        g = nx.cycle_graph(range(1, n + 1))
        g.add_edges_from(chords)
        need = {frozenset(c) for c in chords}
        best = max(len(c) for c in nx.simple_cycles(g)
                   if need <= {frozenset((c[i - 1], c[i])) for i in range(len(c))})
        ours = len(cycle_from_double_parallel(n, e1, e2, f1, f2))
        d1, d2 = chord_distance(n, e1, e2)[0], chord_distance(n, f1, f2)[0]
        assert n - d1 - d2 + 4 <= ours <= best


class TestPartition:
    def test_exact_division(self):
        p = partition_blocks(100, 1)
        assert p.r == 10 and set(p.sizes.tolist()) == {10}

    def test_remainder_to_first_block(self):
        p = partition_blocks(101, 1)
        assert p.r == 10 and p.sizes.tolist() == [11] + [10] * 9

    def test_alpha_two(self):
        p = partition_blocks(100, 2)
        assert p.r == 5 and set(p.sizes.tolist()) == {20}

    def test_alpha_too_large(self):
        with pytest.raises(InfeasiblePartition):
            partition_blocks(16, 2)

    @pytest.mark.parametrize("n", [50, 99, 1000, 12345, 10**5])
    @pytest.mark.parametrize("alpha", [Fraction(1), Fraction(3, 2), Fraction(2)])
    def test_invariants(self, n, alpha):
        try:
            p = partition_blocks(n, alpha)
        except InfeasiblePartition:
            return
        r0 = math.isqrt(int(n * alpha.denominator ** 2)) // alpha.numerator
        assert p.r in (r0, r0 + 1)
        assert p.sizes.sum() == n and p.starts[0] == 1
        assert p.sizes.min() >= p.q_floor and p.sizes.max() <= p.q_floor + 2 * alpha * alpha
        assert (p.block_of[1:] == np.repeat(np.arange(p.r), p.sizes)).all()

    def test_short_limit_exact(self):
        for n in (100, 1000, 9999, 10**5):
            lim = short_chord_limit(n, 1)
            assert lim <= 4 * math.sqrt(n) + 8 - 7 < lim + 1


class TestFindLongCycle:
    def test_random_cubic_10000(self):
        g = random_cubic(10_000, 1)
        res = find_long_cycle(g)
        assert res.length >= 10_000 - 4 * (100 + 2) + 8
        assert is_cycle_in(g, res.cycle)

    @pytest.mark.parametrize("seed", range(50))
    def test_cubic_100_regular_bound(self, seed):
        g = random_cubic(100, seed)
        res = find_long_cycle(g)
        assert is_cycle_in(g, res.cycle) and res.length >= 100 - 4 * 10

    @pytest.mark.parametrize("n", [1000, 4096, 20_000])
    def test_block_path_on_long_chords(self, n):
        g = quarter_reflection(n)
        res = find_long_cycle(g)
        assert res.certificate == "double_parallel"
        assert is_cycle_in(g, res.cycle) and res.length >= res.bound and res.length >= res.lemma_bound

    def test_crossing_certificate(self):
        # antipodal chords all cross each other
        n = 2000
        g = GeneralInstance.from_chords(n, [(v, v + n // 2) for v in range(1, n // 2 + 1)])
        res = find_long_cycle(g)
        assert res.certificate == "crossing_pair"
        assert is_cycle_in(g, res.cycle) and res.length >= res.bound

    def test_large_alpha_early_exit(self):
        g = random_min_degree(40, 3, 12, 1)
        res = find_long_cycle(g)
        assert 4 * res.alpha ** 2 >= 40
        assert res.certificate == "short_chord"
        assert is_cycle_in(g, res.cycle) and res.length == res.lemma_bound

    @pytest.mark.parametrize("seed", range(30))
    def test_never_beats_oracle(self, seed):
        g = random_cubic(8 + 2 * (seed % 4), seed)
        res = find_long_cycle(g)
        assert res.length <= longest_second_cycle(g)
        assert tuple(res.cycle.tolist()) != g.c0

    @pytest.mark.parametrize("delta", [3, 4, 5])
    def test_regular_instances(self, delta):
        for seed in range(3):
            g = random_regular(3000, delta, seed)
            res = find_long_cycle(g)
            assert is_cycle_in(g, res.cycle)
            assert res.length >= theorem_bound(3000, 1)

    def test_json_payload(self):
        d = find_long_cycle(random_cubic(200, 2)).to_dict()
        assert {"length", "bound", "certificate", "cycle"} <= set(d)


@pytest.mark.parametrize("inst", [quarter_reflection(4096), random_regular(5000, 4, 0)])
def test_block_matching_lemma(inst):
    """In each sampled block the chord graph has a matching of size >= |E_i| / (max chord degree)."""
    g = to_general(inst)
    p = partition_blocks(g.n, Fraction(g.max_degree - 2, g.min_degree - 2))
    for i in range(0, p.r, 7):
        h = nx.Graph()
        block = range(int(p.starts[i]), int(p.starts[i + 1]))
        for v in block:
            for w in g.chords_of(v).tolist():
                h.add_edge(("b", v), ("w", w))
        top = {x for x in h if x[0] == "b"}
        m = len(nx.bipartite.hopcroft_karp_matching(h, top)) // 2
        assert m * (g.max_degree - 2) >= h.number_of_edges()


@pytest.mark.parametrize("seed", range(30))
def test_constructions_on_random_configs(seed):
    rng = random.Random(seed)
    n, c = short_chord_config(rng)
    assert len(cycle_from_short_chord(n, c)) == n - chord_length(n, c) + 1
    n, e1, e2 = crossing_config(rng)
    cyc = cycle_from_crossing_pair(n, e1, e2)
    assert is_simple_cycle(stub(n, [e1, e2]), cyc)
    assert len(cyc) == n - chord_distance(n, e1, e2)[0] + 2
