import itertools
import math

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from relaxcolor.graph import (
    ColorScheme,
    CostParams,
    Graph,
    InfeasibleColoring,
    Multigraph,
    conflict_profile,
    conflicted_node_count,
    covered_edges,
    defective_cost,
    generalized_cost,
    is_feasible,
)

from conftest import brute_opt


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, keep in zip(pairs, chosen) if keep])


@st.composite
def multigraphs(draw, max_n=6):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mult = draw(st.lists(st.integers(0, 4), min_size=len(pairs), max_size=len(pairs)))
    return Multigraph(n, {p: t for p, t in zip(pairs, mult) if t})


@st.composite
def dense_graphs(draw, min_n=3, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.integers(0, 3), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, x in zip(pairs, chosen) if x])


@st.composite
def colored(draw, graph_strategy=graphs(), max_k=4):
    g = draw(graph_strategy)
    k = draw(st.integers(1, max_k))
    c = draw(st.lists(st.integers(0, k - 1), min_size=g.n, max_size=g.n))
    return g, tuple(c), k


class TestTypes:
    def test_graph_normalizes_edges(self):
        g = Graph(3, [(2, 0), (1, 0)])
        assert g.edges == ((0, 1), (0, 2))
        assert g.degrees == (2, 1, 1)

    @pytest.mark.parametrize("edges", [[(0, 0)], [(0, 1), (1, 0)], [(0, 3)]])
    def test_graph_rejects_bad_edges(self, edges):
        with pytest.raises(ValueError):
            Graph(3, edges)

    def test_multigraph_multiplicity(self):
        mg = Multigraph(3, {(1, 0): 5, (1, 2): 2})
        assert mg.edges == {(0, 1): 5, (1, 2): 2}
        assert mg.edge_count == 7
        assert mg.degrees == (5, 7, 2)
        with pytest.raises(ValueError):
            Multigraph(2, {(0, 1): 0})

    @pytest.mark.parametrize("k,r", [(0, 0), (2, 3), (2, -1)])
    def test_scheme_validation(self, k, r):
        with pytest.raises(ValueError):
            ColorScheme(k=k, r=r)

    def test_scheme_convention(self):
        s = ColorScheme(k=4, r=1)
        assert list(s.relaxed_colors) == [0]
        assert list(s.proper_colors) == [1, 2, 3]

    @pytest.mark.parametrize("p", [0, -1.0, math.inf])
    def test_cost_params_reject(self, p):
        with pytest.raises(ValueError):
            CostParams(p)

    @given(graphs())
    def test_handshake(self, g):
        assert sum(g.degrees) == 2 * g.m


class TestConflictProfile:
    def test_monochromatic_triangle(self, K3):
        rep = conflict_profile(K3, (0, 0, 0))
        assert (rep.conflicts, rep.covered, rep.kappa) == (3, 0, (2, 2, 2))

    def test_proper_path(self, P3):
        rep = conflict_profile(P3, (0, 1, 0))
        assert (rep.conflicts, rep.covered) == (0, 2)

    def test_multiplicity_weighted(self):
        rep = conflict_profile(Multigraph(2, {(0, 1): 5}), (0, 0))
        assert rep.conflicts == 5
        assert rep.kappa == (5, 5)

    def test_length_mismatch(self, K3):
        with pytest.raises(ValueError):
            conflict_profile(K3, (0, 0))

    @given(colored())
    def test_invariants(self, case):
        g, c, _ = case
        rep = conflict_profile(g, c)
        assert rep.covered + rep.conflicts == g.m
        assert sum(rep.kappa) == 2 * rep.conflicts

    @given(colored(multigraphs()))
    def test_invariants_multigraph(self, case):
        g, c, _ = case
        rep = conflict_profile(g, c)
        assert rep.covered + rep.conflicts == g.edge_count
        assert sum(rep.kappa) == 2 * rep.conflicts
        assert sum(rep.conflict_edges.values()) == rep.conflicts


class TestFeasibility:
    def test_all_relaxed(self, K3):
        s = ColorScheme(k=2, r=2)
        assert all(is_feasible(K3, c, s) for c in itertools.product(range(2), repeat=3))

    def test_proper_class_with_edge(self, K3):
        assert not is_feasible(K3, (0, 0, 1), ColorScheme(k=2, r=0))

    def test_proper_endpoints(self, P3):
        assert is_feasible(P3, (1, 0, 1), ColorScheme(k=2, r=1))

    def test_color_out_of_range(self, P3):
        with pytest.raises(ValueError):
            is_feasible(P3, (0, 1, 2), ColorScheme(k=2, r=1))

    @given(colored())
    def test_monotone_in_r(self, case):
        g, c, k = case
        for r in range(k + 1):
            if is_feasible(g, c, ColorScheme(k, r)):
                assert all(is_feasible(g, c, ColorScheme(k, r2)) for r2 in range(r, k + 1))
                break


class TestCoveredEdges:
    def test_proper_path(self, P3):
        assert covered_edges(P3, (0, 1, 0), ColorScheme(2, 0)) == 2

    def test_triangle_two_relaxed(self, K3):
        s = ColorScheme(k=2, r=2)
        assert covered_edges(K3, (0, 0, 1), s) == 2
        assert brute_opt(K3, s) == 2

    def test_empty_graph(self):
        assert covered_edges(Graph(4), (0, 1, 0, 1), ColorScheme(2, 0)) == 0

    def test_infeasible_rejected(self, K3):
        with pytest.raises(InfeasibleColoring):
            covered_edges(K3, (0, 0, 1), ColorScheme(2, 0))


class TestCosts:
    def test_triangle_p1(self, K3):
        assert generalized_cost(K3, (0, 0, 0), 1.0) == 6

    def test_triangle_p2(self, K3):
        assert generalized_cost(K3, (0, 0, 0), CostParams(2.0)) == 12

    @pytest.mark.parametrize("p", [0.01, 0.5, 1.0, 7.5])
    def test_proper_coloring_costs_nothing(self, C5, p):
        assert generalized_cost(C5, (0, 1, 0, 1, 2), p) == 0

    def test_defective(self, K3):
        assert defective_cost(K3, (0, 0, 0)) == 2
        assert defective_cost(Graph.star(4), (0,) * 5) == 4
        assert defective_cost(K3, (0, 1, 2)) == 0

    def test_conflicted_nodes(self, K3, P3):
        assert conflicted_node_count(K3, (0, 0, 0)) == 3
        assert conflicted_node_count(P3, (0, 0, 1)) == 2
        assert conflicted_node_count(P3, (0, 1, 0)) == 0

    def test_rejects_nonpositive_p(self, K3):
        with pytest.raises(ValueError):
            generalized_cost(K3, (0, 0, 0), 0.0)

    @given(colored())
    def test_p1_is_twice_conflicts(self, case):
        g, c, _ = case
        assert abs(generalized_cost(g, c, 1.0) - 2 * conflict_profile(g, c).conflicts) <= 1e-9

    @settings(max_examples=200, suppress_health_check=[HealthCheck.filter_too_much])
    @given(colored(dense_graphs(), max_k=2), st.data())
    def test_large_p_ordering(self, case, data):
        g, c1, k = case
        c2 = tuple(data.draw(st.lists(st.integers(0, k - 1), min_size=g.n, max_size=g.n)))
        m1, m2 = sorted((defective_cost(g, c1), defective_cost(g, c2)))
        assume(1 <= m1 < m2)
        if defective_cost(g, c1) > defective_cost(g, c2):
            c1, c2 = c2, c1
        p = math.log(g.n) / math.log(m2 / m1) + 1
        assert generalized_cost(g, c1, p) < generalized_cost(g, c2, p)

    @settings(max_examples=200, suppress_health_check=[HealthCheck.filter_too_much])
    @given(colored(dense_graphs(), max_k=2), st.data())
    def test_small_p_ordering(self, case, data):
        g, c1, k = case
        c2 = tuple(data.draw(st.lists(st.integers(0, k - 1), min_size=g.n, max_size=g.n)))
        n1, n2 = conflicted_node_count(g, c1), conflicted_node_count(g, c2)
        assume(n1 != n2)
        if n1 > n2:
            c1, c2, n1, n2 = c2, c1, n2, n1
        top = max(defective_cost(g, c1), defective_cost(g, c2))
        assume(n1 >= 1 and top >= 2)
        p = math.log(n2 / n1) / math.log(top) / 2
        assert generalized_cost(g, c1, p) < generalized_cost(g, c2, p)
