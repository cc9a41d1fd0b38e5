import random

import pytest
from hypothesis import given, settings

from gapfree_toric.graph import Graph, standard_graph
from gapfree_toric.oracles import circuit_oracle, graver_oracle
from gapfree_toric.suites import GOLDEN_BASIS, load_golden_graph
from gapfree_toric.toric import (
    BoundExceeded,
    Binomial,
    EvenCycle,
    NotPrimitiveError,
    OddCyclesWithPaths,
    TwoOddCyclesOneVertex,
    Walk,
    WalkError,
    classify_primitive_walk,
    enumerate_circuits,
    enumerate_graver,
    in_toric_ideal,
    is_primitive,
    parity_coloring,
    parse_binomial,
    primitive_walks,
    walk_binomial,
)

from strategies import graphs

TWO_TRIANGLES_AT_ONE = Graph(5, ((1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (1, 5)))
BOWTIE = Graph(6, ((1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (1, 4)))
# two triangles joined by two internally disjoint paths: primitive, not a circuit
TWO_PATHS = Graph(8, ((1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (1, 7), (4, 7), (4, 8), (1, 8)))


def vec(g, plus_edges, minus_edges):
    plus, minus = [0] * g.m, [0] * g.m
    for e in plus_edges:
        plus[g.edge_index(*e)] += 1
    for e in minus_edges:
        minus[g.edge_index(*e)] += 1
    return Binomial(tuple(plus), tuple(minus))


class TestBinomial:
    def test_cancels_common_factor(self):
        b = Binomial((1, 1, 0), (0, 1, 1))
        assert b.plus == (1, 0, 0) and b.minus == (0, 0, 1)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            Binomial((1, 0), (1, 0))

    def test_pretty_and_parse_round_trip(self):
        b = parse_binomial("y3*y4*y7*y9 - y5^2*y6*y8", 10)
        assert b.minus[4] == 2
        assert b.pretty() == "y3*y4*y7*y9 - y5^2*y6*y8"

    def test_json(self):
        b = parse_binomial("y1*y3 - y2*y4", 4)
        assert b.to_json() == {"plus": [1, 0, 1, 0], "minus": [0, 1, 0, 1], "pretty": "y1*y3 - y2*y4"}

    def test_normalized_is_sign_independent(self):
        b = parse_binomial("y1*y3 - y2*y4", 4)
        assert b.normalized() == b.negated().normalized()


class TestWalkBinomial:
    def test_square(self):
        g = standard_graph("cycle", 4)
        b = walk_binomial(Walk(g, (1, 2, 3, 4, 1)))
        assert b.pretty() == "y1*y3 - y2*y4"

    def test_two_triangles_sharing_a_vertex(self):
        g = TWO_TRIANGLES_AT_ONE
        b = walk_binomial(Walk(g, (1, 2, 3, 1, 4, 5, 1)))
        assert b == vec(g, [(1, 2), (3, 1), (4, 5)], [(2, 3), (1, 4), (5, 1)])
        assert max(b.plus) == max(b.minus) == 1

    def test_bowtie_repeats_the_bridge(self):
        g = BOWTIE
        b = walk_binomial(Walk(g, (1, 2, 3, 1, 4, 5, 6, 4, 1)))
        assert b == vec(g, [(1, 2), (3, 1), (4, 5), (6, 4)], [(2, 3), (1, 4), (1, 4), (5, 6)])
        assert b.minus[g.edge_index(1, 4)] == 2

    def test_open_and_odd_walks_rejected(self):
        g = standard_graph("cycle", 4)
        with pytest.raises(WalkError):
            walk_binomial(Walk(g, (1, 2, 3)))
        with pytest.raises(WalkError):
            walk_binomial(Walk(standard_graph("cycle", 3), (1, 2, 3, 1)))

    def test_non_edge_rejected(self):
        with pytest.raises(WalkError):
            Walk(standard_graph("cycle", 4), (1, 3))


class TestParityColoring:
    def test_square_alternates(self):
        g = standard_graph("cycle", 4)
        colors = parity_coloring(Walk(g, (1, 2, 3, 4, 1)))
        assert [colors[i] for i in range(4)] == ["red", "black", "red", "black"]

    def test_path_and_back_fails(self):
        g = standard_graph("path", 3)
        assert parity_coloring(Walk(g, (1, 2, 3, 2, 1))) is None

    def test_bowtie_bridge_keeps_one_colour(self):
        g = BOWTIE
        colors = parity_coloring(Walk(g, (1, 2, 3, 1, 4, 5, 6, 4, 1)))
        assert colors is not None
        assert colors[g.edge_index(1, 4)] == "black"


class TestCircuitsAndGraver:
    def test_square(self):
        g = standard_graph("cycle", 4)
        expected = {parse_binomial("y1*y3 - y2*y4", 4).normalized()}
        assert enumerate_circuits(g) == expected
        assert enumerate_graver(g) == expected

    def test_triangle(self):
        assert enumerate_circuits(standard_graph("complete", 3)) == set()
        assert enumerate_graver(standard_graph("complete", 3)) == set()

    def test_k4(self):
        g = standard_graph("complete", 4)
        assert len(enumerate_circuits(g)) == 3
        assert enumerate_graver(g) == enumerate_circuits(g) == graver_oracle(g)

    def test_golden_graver_contains_basis(self):
        g = load_golden_graph()
        graver = enumerate_graver(g)
        for text in GOLDEN_BASIS:
            assert parse_binomial(text, g.m).normalized() in graver

    def test_non_circuit_primitive_walk(self):
        extra = enumerate_graver(TWO_PATHS) - enumerate_circuits(TWO_PATHS)
        assert extra
        assert extra <= graver_oracle(TWO_PATHS)

    def test_bound(self, monkeypatch):
        monkeypatch.setenv("TORIC_MAX_EDGES", "5")
        with pytest.raises(BoundExceeded):
            enumerate_graver(load_golden_graph())
        assert enumerate_graver(load_golden_graph(), max_edges=10)

    @settings(max_examples=40, deadline=None)
    @given(graphs(7))
    def test_against_brute_force_oracles(self, g):
        if g.m > 9:
            return
        graver = enumerate_graver(g)
        circuits = enumerate_circuits(g)
        assert graver == graver_oracle(g)
        assert circuits == circuit_oracle(g)
        assert circuits <= graver
        assert all(in_toric_ideal(b, g) for b in graver)

    def test_walks_reproduce_their_binomials(self):
        g = TWO_PATHS
        for b, w in primitive_walks(g).items():
            assert walk_binomial(w).normalized() == b


class TestPrimitive:
    def test_square_is_primitive(self):
        assert is_primitive(parse_binomial("y1*y3 - y2*y4", 4), standard_graph("cycle", 4))

    def test_square_walked_twice_is_not(self):
        assert not is_primitive(parse_binomial("y1^2*y3^2 - y2^2*y4^2", 4), standard_graph("cycle", 4))

    def test_golden_basis_elements(self):
        g = load_golden_graph()
        assert all(is_primitive(parse_binomial(t, g.m), g) for t in GOLDEN_BASIS)


class TestClassify:
    def test_hexagon(self):
        g = standard_graph("cycle", 6)
        shape = classify_primitive_walk(Walk(g, (1, 2, 3, 4, 5, 6, 1)))
        assert isinstance(shape, EvenCycle) and shape.type_number == 1

    def test_two_triangles_sharing_a_vertex(self):
        shape = classify_primitive_walk(Walk(TWO_TRIANGLES_AT_ONE, (1, 2, 3, 1, 4, 5, 1)))
        assert isinstance(shape, TwoOddCyclesOneVertex)
        assert shape.shared == 1

    def test_bowtie(self):
        shape = classify_primitive_walk(Walk(BOWTIE, (1, 2, 3, 1, 4, 5, 6, 4, 1)))
        assert isinstance(shape, OddCyclesWithPaths)
        assert shape.representation.startswith("bow-tie")
        assert shape.paths == ((1, 4), (4, 1))

    def test_two_paths(self):
        g = TWO_PATHS
        kinds = {classify_primitive_walk(w, g).type_number for w in primitive_walks(g).values()}
        assert 3 in kinds

    def test_three_triangles_in_a_ring(self):
        g = Graph(9, ((1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (7, 8), (8, 9), (7, 9), (1, 4), (4, 7), (7, 1)))
        hs = {classify_primitive_walk(w, g).h for w in primitive_walks(g).values()
              if isinstance(classify_primitive_walk(w, g), OddCyclesWithPaths)}
        assert 3 in hs

    def test_non_primitive_rejected(self):
        g = standard_graph("cycle", 4)
        with pytest.raises(NotPrimitiveError):
            classify_primitive_walk(Walk(g, (1, 2, 3, 4, 1, 2, 3, 4, 1)))
        with pytest.raises(NotPrimitiveError):
            classify_primitive_walk(Walk(standard_graph("path", 3), (1, 2, 3, 2, 1)))

    def test_round_trip_on_random_graphs(self):
        rng = random.Random(11)
        for _ in range(40):
            n = rng.randint(4, 8)
            edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if rng.random() < 0.45]
            if len(edges) > 11:
                edges = edges[:11]
            g = Graph(n, tuple(edges))
            for b, w in primitive_walks(g).items():
                shape = classify_primitive_walk(w, g)
                rebuilt = walk_binomial(Walk(g, shape.walk_vertices()))
                assert rebuilt.normalized() == b
