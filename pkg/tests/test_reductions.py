import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secondham.generators import named, random_cubic
from secondham.graph import SmithInstance, is_hamiltonian_cycle
from secondham.oracle import enumerate_hamiltonian_cycles
from secondham.reductions import (NoTriangleError, Reduced, ReductionTrace, SecondCycle, TriangleRecord,
                                  XCertificate, find_triangles, find_x_certificate, lift_cycle,
                                  make_triangle_free, project_cycle, reduce_one_triangle,
                                  second_cycle_from_x_certificate)

from independent import brute_force_hcs, is_hamiltonian, x_certificate_pairs


class TestXCertificate:
    @pytest.mark.parametrize("name,cert", [("k4", XCertificate(1, 3)), ("k33", XCertificate(1, 4)),
                                           ("cube", None)])
    def test_named(self, name, cert):
        assert find_x_certificate(named(name)) == cert

    @pytest.mark.parametrize("inst,cert,cycle", [
        (named("k4"), XCertificate(1, 3), (1, 3, 2, 4)),
        (named("k33"), XCertificate(1, 4), (1, 4, 3, 2, 5, 6)),
        (SmithInstance.from_chords(8, [(1, 5), (2, 6), (3, 7), (4, 8)]), XCertificate(1, 5),
         (1, 5, 4, 3, 2, 6, 7, 8)),
    ])
    def test_formula(self, inst, cert, cycle):
        assert second_cycle_from_x_certificate(inst, cert) == cycle
        assert is_hamiltonian(inst, cycle)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(3, 20).map(lambda k: 2 * k), st.integers(0, 10**6))
    def test_agrees_with_pair_scan(self, n, seed):
        g = random_cubic(n, seed)
        pairs = x_certificate_pairs(g)
        cert = find_x_certificate(g)
        assert (cert is None) == (not pairs)
        if cert is not None:
            cyc = second_cycle_from_x_certificate(g, cert)
            assert is_hamiltonian(g, cyc) and cyc != g.c0


class TestTriangles:
    def test_find(self):
        assert find_triangles(named("prism")) == [1, 4]
        assert find_triangles(named("cube")) == []

    def test_prism_reduces_to_k4(self):
        res = reduce_one_triangle(named("prism"))
        assert isinstance(res, Reduced)
        assert res.instance == named("k4")
        assert res.trace.name_map == (0, 1, 3, 4, 5)
        assert res.trace.records == (TriangleRecord(a=6, p=1, b=2, left=5, right=3, s=4),)

    def test_k4_early_exit(self):
        res = reduce_one_triangle(named("k4"), pivot=2)
        assert res == SecondCycle((1, 3, 2, 4), 0)

    def test_not_a_pivot(self):
        with pytest.raises(NoTriangleError):
            reduce_one_triangle(named("prism"), pivot=2)
        with pytest.raises(NoTriangleError):
            reduce_one_triangle(named("cube"))

    def test_n6_three_case_instance(self):
        g = SmithInstance.from_chords(6, [(1, 3), (2, 5), (4, 6)])
        res = reduce_one_triangle(g)
        assert isinstance(res, Reduced)
        assert len(brute_force_hcs(g)) == len(brute_force_hcs(res.instance))

    @pytest.mark.parametrize("name", ["k33", "cube"])
    def test_triangle_free_unchanged(self, name):
        res = make_triangle_free(named(name))
        assert isinstance(res, Reduced)
        assert res.instance == named(name) and len(res.trace) == 0

    def test_prism_chain(self):
        res = make_triangle_free(named("prism"))
        assert isinstance(res, SecondCycle)
        assert res.cycle in enumerate_hamiltonian_cycles(named("prism"))
        assert res.cycle != named("prism").c0

    def test_record_json_roundtrip(self):
        rec = TriangleRecord(6, 1, 2, 5, 3, 4)
        assert TriangleRecord.from_json(rec.to_json()) == rec


class TestLift:
    def test_empty_trace(self):
        trace = ReductionTrace.identity(named("k33"))
        assert lift_cycle((1, 4, 3, 2, 5, 6), trace) == (1, 4, 3, 2, 5, 6)

    def test_prism_lifts(self):
        res = reduce_one_triangle(named("prism"))
        # reduced ids 1..4 stand for prism vertices 1, 3, 4, 5
        assert lift_cycle((1, 2, 3, 4), res.trace) == (1, 2, 3, 4, 5, 6)
        lifted = lift_cycle((1, 3, 2, 4), res.trace)
        assert (1, 4) in {tuple(sorted((lifted[i - 1], lifted[i]))) for i in range(6)}
        assert lifted in enumerate_hamiltonian_cycles(named("prism"))

    def test_rejects_non_hamiltonian(self):
        res = reduce_one_triangle(named("prism"))
        with pytest.raises(ValueError):
            lift_cycle((1, 2, 2, 3), res.trace)


def triangle_instances(count, sizes=(8, 10, 12, 14)):
    out = []
    seed = 0
    while len(out) < count:
        g = random_cubic(sizes[seed % len(sizes)], seed)
        seed += 1
        if find_triangles(g):
            out.append(g)
    return out


@pytest.mark.parametrize("inst", triangle_instances(40))
def test_bijection(inst):
    res = make_triangle_free(inst)
    if isinstance(res, SecondCycle):
        assert is_hamiltonian_cycle(inst, res.cycle) and res.cycle != inst.c0
        return
    big = enumerate_hamiltonian_cycles(inst)
    small = enumerate_hamiltonian_cycles(res.instance)
    assert len(big) == len(small)
    for c in big.cycles:
        assert lift_cycle(project_cycle(c, res.trace), res.trace) == c
    for c in small.cycles:
        assert project_cycle(lift_cycle(c, res.trace), res.trace) == c
