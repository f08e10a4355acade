import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secondham.generators import named, random_cubic
from secondham.graph import Color, SmithInstance
from secondham.oracle import enumerate_hamiltonian_cycles
from secondham.reductions import Reduced, find_x_certificate, make_triangle_free
from secondham.solver import (ExactSolver, InternalExhaustion, SearchState, SolverTimeout, search,
                              solve_second_cycle)

from independent import difference_components, is_hamiltonian
from sampling import propagation_outcome, random_pending_nodes

# triangle-free, no X-certificate, and every second cycle with a connected
# difference keeps both C0 edges at vertex 1
NEEDS_OTHER_ANCHOR = SmithInstance.from_chords(10, [(1, 6), (2, 5), (3, 9), (4, 8), (7, 10)])


def check(inst, cyc):
    assert is_hamiltonian(inst, cyc)
    assert cyc != inst.c0
    assert difference_components(inst.n, cyc) == 1


class TestPipeline:
    @pytest.mark.parametrize("name,method", [("k4", "x_certificate"), ("k33", "x_certificate"),
                                             ("prism", "triangle_reduction"), ("cube", "search")])
    def test_named(self, name, method):
        res = solve_second_cycle(named(name))
        check(named(name), res.cycle)
        assert res.metrics.method == method
        assert len(res.d) == len(set(res.d))

    def test_small_instances_use_oracle(self):
        res = solve_second_cycle(named("k33"), use_x_certificate=False)
        assert res.metrics.method == "oracle"
        check(named("k33"), res.cycle)

    def test_metrics_dict(self):
        d = solve_second_cycle(named("cube"), use_x_certificate=False).metrics.to_dict()
        assert {"leaves", "max_depth", "forced_edges_total", "quads_created", "time_ms",
                "exponent_estimate"} <= set(d)

    def test_timeout(self):
        with pytest.raises(SolverTimeout):
            solve_second_cycle(random_cubic(40, 3), use_x_certificate=False, timeout_ms=0)

    @pytest.mark.parametrize("seed", range(4))
    def test_parallel(self, seed):
        g = random_cubic(24, seed)
        check(g, solve_second_cycle(g, use_x_certificate=False, parallel=True).cycle)

    def test_search_rejects_triangles(self):
        with pytest.raises(ValueError):
            ExactSolver(SmithInstance.from_chords(8, [(1, 3), (2, 6), (4, 7), (5, 8)]))


class TestAnchors:
    def test_instance_properties(self):
        g = NEEDS_OTHER_ANCHOR
        assert not g.has_triangle() and find_x_certificate(g) is None
        c12, c1n = (1, 2), (1, 10)
        for c in enumerate_hamiltonian_cycles(g).cycles:
            if c != g.c0 and difference_components(10, c) == 1:
                edges = {tuple(sorted((c[i - 1], c[i]))) for i in range(10)}
                assert c12 in edges and c1n in edges

    def test_vertex_one_alone_fails(self):
        with pytest.raises(InternalExhaustion):
            search(NEEDS_OTHER_ANCHOR, all_anchors=False)

    def test_second_anchor_succeeds(self):
        res = solve_second_cycle(NEEDS_OTHER_ANCHOR)
        check(NEEDS_OTHER_ANCHOR, res.cycle)
        assert res.metrics.anchors_tried == 2


class TestState:
    def test_seed_a_on_cube(self):
        s = SearchState(named("cube"))
        s.seed("A")
        assert s.color[s.c0_edge(1, 2)] == Color.RED
        assert s.color[s.chord_of(2)] == Color.BLUE
        assert s.end == 7 and not s.closed
        s.propagate()
        # the end of D is a branch point: both of its C0 edges are still free
        assert not s.color[s.c0_edge(7, 8)] and not s.color[s.c0_edge(6, 7)]
        actions, paths = s.actions()
        assert len(actions) == 2 and paths is not None

    def test_undo_restores(self):
        s = SearchState(random_cubic(20, 1))
        before = s.snapshot()
        mark = s.mark()
        s.seed("B")
        s.propagate()
        s.undo(mark)
        assert s.snapshot() == before
        assert s.n_col == [0] * 21

    def test_wrong_colour_kind(self):
        s = SearchState(named("cube"))
        with pytest.raises(ValueError):
            s.assign(s.c0_edge(1, 2), Color.BLUE)

    def test_debug_mode_checks_d(self):
        for seed in range(10):
            g = random_cubic(20, seed)
            red = make_triangle_free(g)
            if isinstance(red, Reduced) and red.instance.n >= 8:
                cyc, _ = search(red.instance, debug=True)
                check(red.instance, cyc)


@pytest.mark.parametrize("mode", ["tree", "greedy", "both"])
@pytest.mark.parametrize("order", ["fifo", "lifo"])
def test_modes_agree_with_oracle(mode, order):
    for seed in range(40):
        g = random_cubic(12 + 2 * (seed % 3), seed)
        res = solve_second_cycle(g, use_x_certificate=False, order=order, finalize_mode=mode)
        assert res.cycle in enumerate_hamiltonian_cycles(g)
        check(g, res.cycle)
        assert res.metrics.finalize_divergences == 0


def test_quadruples_get_used():
    quads = 0
    for seed in range(30):
        g = random_cubic(30, seed)
        res = solve_second_cycle(g, use_x_certificate=False)
        check(g, res.cycle)
        quads += res.metrics.quads_created
    assert quads > 0


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 8).map(lambda k: 2 * k), st.integers(0, 10**6))
def test_sound_against_oracle(n, seed):
    g = random_cubic(n, seed)
    res = solve_second_cycle(g, use_x_certificate=False)
    assert res.cycle in enumerate_hamiltonian_cycles(g)
    check(g, res.cycle)


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 10).map(lambda k: 2 * k), st.integers(0, 10**6), st.integers(0, 10**6))
def test_propagation_order_confluent(n, seed, walk):
    red = make_triangle_free(random_cubic(n, seed))
    if not isinstance(red, Reduced) or red.instance.n < 6:
        return
    for node in random_pending_nodes(red.instance, random.Random(walk), 6):
        assert propagation_outcome(node.copy(), "fifo") == propagation_outcome(node.copy(), "lifo")
