import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relaxcolor.graph import ColorScheme, Graph, InstanceTooLarge, Multigraph, covered_edges, is_feasible
from relaxcolor.solvers import (
    SearchBudget,
    solve,
    solve_exact,
    solve_greedy,
    solve_half_approx,
    solve_local_search,
    solve_r12_structural,
)
from relaxcolor.verify import RandomGraphSpec, random_graph

from conftest import brute_opt
from test_graph import graphs

SCHEMES = [(0, 2), (1, 2), (2, 2), (0, 3), (1, 3), (2, 3), (3, 3)]


def lex_first_optimum(g, s):
    best, arg = None, None
    for c in itertools.product(range(s.k), repeat=g.n):
        if not is_feasible(g, c, s):
            continue
        val = covered_edges(g, c, s)
        if best is None or val > best:
            best, arg = val, c
    return arg


def assert_valid(g, s, sol):
    assert sol.feasible and is_feasible(g, sol.coloring, s)
    assert sol.value == covered_edges(g, sol.coloring, s)


class TestExact:
    def test_triangle_relaxed(self, K3):
        sol = solve_exact(K3, ColorScheme(k=2, r=2))
        assert sol.value == 2 == brute_opt(K3, ColorScheme(2, 2))
        assert sol.coloring == (0, 0, 1)

    def test_triangle_infeasible(self, K3):
        assert solve_exact(K3, ColorScheme(k=2, r=0)) is None

    def test_path(self, P3):
        assert solve_exact(P3, ColorScheme(k=2, r=0)).value == 2

    def test_multigraph(self):
        mg = Multigraph(3, {(0, 1): 3, (1, 2): 1, (0, 2): 2})
        s = ColorScheme(k=2, r=2)
        assert solve_exact(mg, s).value == brute_opt(mg, s) == 5

    def test_empty(self):
        assert solve_exact(Graph(0), ColorScheme(2, 0)).value == 0

    def test_size_guard(self):
        with pytest.raises(InstanceTooLarge):
            solve_exact(Graph(30), ColorScheme(k=3, r=3))

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=6), st.sampled_from(SCHEMES))
    def test_matches_brute_force_and_lex_tiebreak(self, g, rk):
        s = ColorScheme(k=rk[1], r=rk[0])
        sol = solve_exact(g, s)
        want = lex_first_optimum(g, s)
        if want is None:
            assert sol is None
        else:
            assert_valid(g, s, sol)
            assert sol.coloring == want


class TestStructural:
    @pytest.mark.parametrize("g,value", [
        (Graph.complete(3), 2), (Graph.path(3), 2), (Graph.star(4), 4),
    ])
    def test_examples(self, g, value):
        sol = solve_r12_structural(g)
        assert sol.value == value == brute_opt(g, ColorScheme(2, 1))
        assert_valid(g, ColorScheme(2, 1), sol)

    @settings(max_examples=80, deadline=None)
    @given(graphs(max_n=7))
    def test_equals_exact(self, g):
        assert solve_r12_structural(g).value == solve_exact(g, ColorScheme(2, 1)).value

    def test_guard(self):
        with pytest.raises(InstanceTooLarge):
            solve_r12_structural(Graph(31))


class TestHalf:
    def test_cycle_trace(self, C5):
        sol = solve_half_approx(C5, ColorScheme(2, 2))
        # v0 -> 0, v1 -> 1, v2 -> 0, v3 -> 1, v4 tie -> 0
        assert sol.coloring == (0, 1, 0, 1, 0)
        assert sol.value == 4

    def test_single_edge(self):
        assert solve_half_approx(Graph(2, [(0, 1)]), ColorScheme(3, 2)).value == 1

    def test_k4(self):
        K4 = Graph.complete(4)
        sol = solve_half_approx(K4, ColorScheme(2, 2))
        assert sol.value == 4 == brute_opt(K4, ColorScheme(2, 2))

    def test_needs_two_relaxed(self, K3):
        with pytest.raises(ValueError):
            solve_half_approx(K3, ColorScheme(3, 1))

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_n=12), st.integers(2, 4), st.data())
    def test_guarantee(self, g, k, data):
        s = ColorScheme(k=k, r=data.draw(st.integers(2, k)))
        sol = solve_half_approx(g, s)
        assert_valid(g, s, sol)
        assert 2 * sol.value >= g.m
        assert set(sol.coloring) <= {0, 1}


class TestGreedy:
    def test_path(self, P3):
        assert solve_greedy(P3, ColorScheme(2, 0)).value == 2

    def test_triangle_three_colors(self, K3):
        sol = solve_greedy(K3, ColorScheme(3, 1))
        assert sol.coloring == (0, 1, 2) and sol.value == 3

    def test_triangle_infeasible(self, K3):
        assert solve_greedy(K3, ColorScheme(2, 0)) is None


class TestLocalSearch:
    def test_improves_on_greedy(self, C5):
        s = ColorScheme(2, 2)
        sol = solve_local_search(C5, s)
        assert sol.value >= solve_greedy(C5, s).value

    def test_triangle(self, K3):
        assert solve_local_search(K3, ColorScheme(2, 2)).value == 2

    def test_zero_budget_returns_start(self):
        g = random_graph(RandomGraphSpec(9, 0.5, 4))
        s = ColorScheme(3, 2)
        sol = solve_local_search(g, s, budget=SearchBudget(max_iterations=0))
        assert sol.coloring == solve_greedy(g, s).coloring

    def test_infeasible_start(self, K3):
        assert solve_local_search(K3, ColorScheme(2, 0)) is None

    def test_unknown_objective(self, K3):
        with pytest.raises(ValueError):
            solve_local_search(K3, ColorScheme(2, 2), objective="bogus")

    @pytest.mark.parametrize("objective", ["covered", "generalized", "defective"])
    def test_deterministic(self, objective):
        g = random_graph(RandomGraphSpec(14, 0.4, 11))
        s = ColorScheme(3, 2)
        b = SearchBudget(500, 7, 3)
        a1 = solve_local_search(g, s, objective, 2.0, b)
        a2 = solve_local_search(g, s, objective, 2.0, b)
        assert a1 == a2
        assert_valid(g, s, a1)

    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=9), st.sampled_from([(1, 2), (2, 2), (1, 3), (2, 3)]),
           st.sampled_from(["covered", "generalized", "defective"]), st.integers(0, 2**32))
    def test_never_worse_than_start(self, g, rk, objective, seed):
        from relaxcolor.graph import conflict_profile, kappa_cost

        s = ColorScheme(k=rk[1], r=rk[0])
        start = solve_greedy(g, s)
        sol = solve_local_search(g, s, objective, 2.0, SearchBudget(300, seed, 1))
        assert_valid(g, s, sol)
        k0 = conflict_profile(g, start.coloring).kappa
        k1 = conflict_profile(g, sol.coloring).kappa
        if objective == "covered":
            assert sol.value >= start.value
        elif objective == "generalized":
            assert kappa_cost(k1, 2.0) <= kappa_cost(k0, 2.0) + 1e-9
        else:
            assert max(k1, default=0) <= max(k0, default=0)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8), st.sampled_from([(0, 2), (1, 2), (2, 2), (0, 3), (1, 3), (2, 3), (3, 3)]))
def test_exact_dominates_every_solver(g, rk):
    s = ColorScheme(k=rk[1], r=rk[0])
    exact = solve_exact(g, s)
    for method in ("greedy", "local", "half"):
        if method == "half" and s.r < 2:
            continue
        sol = solve(g, s, method)
        if sol is None:
            continue
        assert_valid(g, s, sol)
        assert exact is not None and exact.value >= sol.value


def test_dispatch_rejects_unknown(K3):
    with pytest.raises(ValueError):
        solve(K3, ColorScheme(2, 2), "annealing")
    with pytest.raises(ValueError):
        solve(K3, ColorScheme(3, 1), "structural12")
