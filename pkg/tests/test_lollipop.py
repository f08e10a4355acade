import pytest

from secondham.generators import named, random_cubic
from secondham.graph import Color, SmithInstance, edge_key, is_hamiltonian_cycle
from secondham.lollipop import (Finished, InvariantViolation, LollipopState, Start, StepLimit, build_lollipop,
                                check_invariants, lollipop_step, run_lollipop)
from secondham.oracle import enumerate_hamiltonian_cycles

from independent import difference_components

# walk from C0 - v1vn ends in a Hamiltonian cycle whose difference with C0 is two 4-cycles
TWO_CYCLE_DIFFERENCE = SmithInstance.from_chords(12, [(1, 11), (2, 6), (3, 7), (4, 10), (5, 9), (8, 12)])


class TestSteps:
    def test_initial_state(self):
        st = LollipopState.initial(named("k33"))
        assert st.path == [1, 2, 3, 4, 5, 6]
        assert st.colors[(1, 6)] is Color.RED
        assert check_invariants(st) == []

    def test_initial_v1v2(self):
        st = LollipopState.initial(named("k33"), Start.V1V2)
        assert st.path == [1, 6, 5, 4, 3, 2]
        assert st.colors[(1, 2)] is Color.RED

    def test_k33_second_step(self):
        st = LollipopState.initial(named("k33"))
        record = []
        out = lollipop_step(st, record)
        assert out is st
        assert st.path == [1, 2, 3, 6, 5, 4]
        assert record[0].added_edge == (3, 6) and record[0].removed_edge == (3, 4)
        assert st.colors[(3, 6)] is Color.BLUE and st.colors[(3, 4)] is Color.RED

    def test_finishes_on_vertex_one(self):
        # K4 from C0 - v1v4: the end 4 has partner 2, then the end 3 reaches 1 by its chord
        st = LollipopState.initial(named("k4"))
        assert lollipop_step(st) is st
        out = lollipop_step(st)
        assert isinstance(out, Finished)
        assert out.c1 == (1, 2, 4, 3)

    def test_double_build_rejected(self):
        st = LollipopState.initial(named("cube"))
        build_lollipop(st)
        with pytest.raises(InvariantViolation):
            build_lollipop(st)


class TestInvariantChecker:
    def test_red_chord_detected(self):
        st = LollipopState.initial(named("cube"))
        st.colors[(1, 4)] = Color.RED
        assert any(v.startswith("invariant 2") for v in check_invariants(st))

    def test_odd_alternating_path_detected(self):
        st = LollipopState.initial(named("cube"))
        st.step = 2
        st.colors[(4, 5)] = Color.RED
        assert any(v.startswith("invariant 4") for v in check_invariants(st, "lollipop"))

    def test_path_mismatch_detected(self):
        st = LollipopState.initial(named("cube"))
        st.colors[(2, 3)] = Color.RED
        assert any(v.startswith("invariant 3") for v in check_invariants(st))


class TestRun:
    @pytest.mark.parametrize("name", ["k4", "k33", "prism", "cube"])
    @pytest.mark.parametrize("start", ["v1vn", "v1v2"])
    def test_named(self, name, start):
        g = named(name)
        res = run_lollipop(g, start)
        assert res.c1 in enumerate_hamiltonian_cycles(g) and res.c1 != g.c0
        assert difference_components(g.n, res.c1) == 1

    def test_step_limit(self):
        with pytest.raises(StepLimit):
            run_lollipop(named("k33"), max_steps=0)
        with pytest.raises(StepLimit):
            run_lollipop(named("k33"), max_steps=0, check=True)

    def test_trace(self):
        res = run_lollipop(named("cube"), record_trace=True)
        assert res.trace[0].removed_edge == (1, 8) and res.trace[0].added_edge is None
        assert res.trace[-1].removed_edge is None
        assert len(res.trace) == res.steps
        assert res.trace[1].as_dict()["step"] == 2

    @pytest.mark.parametrize("seed", range(60))
    def test_kernel_matches_reference(self, seed):
        g = random_cubic(8 + 2 * (seed % 8), seed)
        for start in ("v1vn", "v1v2"):
            fast = run_lollipop(g, start)
            slow = run_lollipop(g, start, record_trace=True)
            assert (fast.c1, fast.steps) == (slow.c1, slow.steps)
            assert is_hamiltonian_cycle(g, fast.c1)


def test_walk_can_end_with_two_difference_cycles():
    g = TWO_CYCLE_DIFFERENCE
    res = run_lollipop(g, "v1vn", record_trace=True)
    assert res.c1 == (1, 2, 6, 5, 9, 8, 7, 3, 4, 10, 11, 12)
    assert is_hamiltonian_cycle(g, res.c1)
    assert difference_components(12, res.c1) == 2
    # the checker flags the first state where red and blue edges stop forming one path
    with pytest.raises(InvariantViolation, match="invariant 4"):
        run_lollipop(g, "v1vn", check=True)
    assert [r.added_edge for r in res.trace[-2:]] == [edge_key(7, 8), edge_key(1, 12)]
