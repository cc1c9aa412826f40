import random

import pytest
from hypothesis import given, settings, strategies as st

from crossres import (GroupRingElt, Lattice, ModuleElt, OrbitLattice,
                      apply_map, enumerate_presentation, expand,
                      fox_matrix_map, kernel_lattice, lattice_equal,
                      member_solve, span_of_orbit, unexpand, unit, word,
                      Presentation)
from crossres.zg_lattice import IntSpan


def test_expand_unexpand_round_trip(s3_graph):
    m = unit("r", 1) - unit("s", 0, 2)
    vec = expand(s3_graph, ["r", "s"], m)
    assert vec == [0, 1, 0, 0, 0, 0, -2, 0, 0, 0, 0, 0]
    assert unexpand(s3_graph, ["r", "s"], vec) == m
    assert unexpand(s3_graph, ["r", "s"], [0] * 12) == ModuleElt({})


def test_lattice_hnf_frozen():
    lat = Lattice(4, [[2, 0, 1, 0], [0, 1, 0, 0], [2, 1, 1, 0]])
    assert lat.rows == ((2, 0, 1, 0), (0, 1, 0, 0))
    assert lat.rank == 2
    assert lat.pivots == (0, 1)
    assert lat.contains([4, 0, 2, 0])
    assert lat.solve([4, 0, 2, 0]) == [2, 0]
    assert not lat.contains([1, 0, 0, 0])
    assert lat.solve([1, 0, 0, 0]) is None
    assert lat.contains([0, 0, 0, 0])


def test_lattice_equality_api():
    a = Lattice(3, [[1, 0, 0], [0, 2, 0]])
    b = Lattice(3, [[1, 2, 0], [2, 2, 0]])
    assert a == b and lattice_equal(a, b)
    c = Lattice(3, [[1, 0, 0], [0, 1, 0]])
    assert a != c


rows3 = st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3),
                 min_size=1, max_size=5)


@given(rows3, st.randoms(use_true_random=False))
def test_hnf_canonical_under_row_order(rows, rnd):
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    assert Lattice(3, rows) == Lattice(3, shuffled)


@given(rows3, st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_membership_of_combinations(rows, coeffs):
    lat = Lattice(3, rows)
    vec = [0, 0, 0]
    for c, row in zip(coeffs, rows):
        for i in range(3):
            vec[i] += c * row[i]
    assert lat.contains(vec)
    sol = lat.solve(vec)
    assert sol is not None
    rebuilt = [0, 0, 0]
    for c, row in zip(sol, lat.rows):
        for i in range(3):
            rebuilt[i] += c * row[i]
    assert rebuilt == vec


def test_int_span():
    span = IntSpan(3)
    assert span.contains([0, 0, 0])
    assert not span.contains([2, 0, 0])
    span.add([2, 0, 0])
    span.add([0, 3, 0])
    assert span.contains([4, 3, 0])
    assert not span.contains([1, 0, 0])
    assert not span.contains([0, 0, 1])


class TestOrbitLattice:
    def test_span_of_orbit_closure(self, s3_graph):
        m = unit("r", 1) - unit("r", 0)
        lat = span_of_orbit(s3_graph, ["r"], [m])
        for g in range(6):
            assert lat.contains(expand(s3_graph, ["r"],
                                       m.translated(s3_graph, g)))
        assert not lat.contains(expand(s3_graph, ["r"], unit("r", 0)))

    def test_member_solve_round_trip(self, s3_graph):
        basis = [unit("r", 1) - unit("r", 0), unit("s", 0)]
        lat = OrbitLattice(s3_graph, ["r", "s"], basis)
        target = (basis[0].translated(s3_graph, 3)
                  - basis[1].translated(s3_graph, 2))
        solved = member_solve(lat, target)
        assert solved is not None
        mapping = {"g1": basis[0], "g2": basis[1]}
        cert = ModuleElt({name: ring for name, ring
                          in zip(("g1", "g2"), solved) if ring})
        assert apply_map(s3_graph, {"g1": basis[0], "g2": basis[1]},
                         cert) == target

    def test_member_solve_rejects_outsiders(self, s3_graph):
        lat = OrbitLattice(s3_graph, ["r"], [unit("r", 0, 2)])
        assert member_solve(lat, unit("r", 0)) is None

    def test_member_solve_of_zero(self, s3_graph):
        lat = OrbitLattice(s3_graph, ["r"], [unit("r", 0) - unit("r", 1)])
        solved = member_solve(lat, ModuleElt({}))
        assert solved is not None
        assert all(not ring for ring in solved)


def test_kernel_lattice_fox(s3_graph, s3_presentation):
    fox = fox_matrix_map(s3_presentation, s3_graph)
    kern = kernel_lattice(s3_graph, ["r", "s", "t"], ["x", "y"], fox)
    assert kern.rank == 11
    # every kernel row maps to zero
    for row in kern.rows:
        m = unexpand(s3_graph, ["r", "s", "t"], list(row))
        assert apply_map(s3_graph, fox, m) == ModuleElt({})


def test_kernel_lattice_cyclic():
    pres = Presentation(["x"], [("r", word("x") ** 4)])
    graph = enumerate_presentation(pres)
    fox = fox_matrix_map(pres, graph)
    kern = kernel_lattice(graph, ["r"], ["x"], fox)
    # N(4) has one relation: (t - 1) . N(4) = 0
    want = span_of_orbit(graph, ["r"], [unit("r", 1) - unit("r", 0)])
    assert kern == want
