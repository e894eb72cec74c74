"""Exact, heuristic and approximation solvers for relaxed colorings.

Every solver returns a :class:`Solution` holding a feasible coloring and its
covered-edge value, or ``None`` when it found no feasible coloring.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .graph import (
    AnyGraph,
    Coloring,
    ColorScheme,
    Graph,
    InstanceTooLarge,
    covered_edges,
    kappa_cost,
)

EXACT_LIMIT = 10**8
STRUCTURAL_MAX_N = 30

METHODS = ("exact", "structural12", "greedy", "local", "half")
OBJECTIVES = ("covered", "generalized", "defective")


@dataclass(frozen=True)
class Solution:
    coloring: Coloring
    value: int
    method: str
    feasible: bool = True


@dataclass(frozen=True)
class SearchBudget:
    max_iterations: int = 10_000
    random_seed: int = 0
    restarts: int = 0

    def __post_init__(self):
        if self.max_iterations < 0 or self.restarts < 0:
            raise ValueError("budget counts must be nonnegative")


def _solution(g: AnyGraph, coloring: Sequence[int], s: ColorScheme, method: str) -> Solution:
    c = tuple(coloring)
    return Solution(c, covered_edges(g, c, s), method)


def solve_exact(g: AnyGraph, s: ColorScheme) -> Solution | None:
    """Branch and bound over all colorings.

    Returns the lexicographically smallest optimal coloring. Colors inside
    each group are interchangeable, so only canonical assignments are
    explored: a vertex may take any color of a group already in use or the
    lowest unused color of that group. The lexicographically smallest optimum
    is always canonical, so the tie-break is unaffected.

    Raises:
        InstanceTooLarge: if ``k ** n`` exceeds ``EXACT_LIMIT``.
    """
    n, k, r = g.n, s.k, s.r
    if k**n > EXACT_LIMIT:
        raise InstanceTooLarge(f"k**n = {k}**{n} exceeds {EXACT_LIMIT}")
    if n == 0:
        return Solution((), 0, "exact")

    # back[v]: (neighbor, multiplicity) with neighbor < v
    back = [[(u, t) for u, t in g.adjacency[v] if u < v] for v in range(n)]
    # edges whose later endpoint is >= v are still undecided
    later = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        later[v] = later[v + 1] + sum(t for _, t in back[v])

    colors = [0] * n
    best_value = -1
    best: list[int] | None = None

    def dfs(v: int, value: int, used_relaxed: int, used_proper: int) -> None:
        nonlocal best_value, best
        if v == n:
            if value > best_value:
                best_value, best = value, colors[:]
            return
        if value + later[v] <= best_value:
            return
        candidates = list(range(min(used_relaxed + 1, r)))
        candidates += range(r, min(r + used_proper + 1, k))
        for col in candidates:
            gain = 0
            ok = True
            for u, t in back[v]:
                if colors[u] == col:
                    if col >= r:
                        ok = False
                        break
                else:
                    gain += t
            if not ok:
                continue
            colors[v] = col
            if col < r:
                dfs(v + 1, value + gain, max(used_relaxed, col + 1), used_proper)
            else:
                dfs(v + 1, value + gain, used_relaxed, max(used_proper, col - r + 1))

    dfs(0, 0, 0, 0)
    if best is None:
        return None
    return Solution(tuple(best), best_value, "exact")


def max_weight_independent_set(g: AnyGraph, weights: Sequence[int]) -> tuple[int, frozenset[int]]:
    """Maximum total weight over independent sets (nonnegative weights).

    Plain include/exclude search on bitmasks with a remaining-weight bound;
    the first optimum found (include-first, ascending vertex) is returned.
    """
    n = g.n
    if n > STRUCTURAL_MAX_N:
        raise InstanceTooLarge(f"independent-set search limited to n <= {STRUCTURAL_MAX_N}")
    nbr = [0] * n
    for u, v, _ in g.weighted_edges():
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    suffix = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        suffix[v] = suffix[v + 1] + weights[v]

    best_w = -1
    best_set = 0

    def search(v: int, chosen: int, blocked: int, w: int) -> None:
        nonlocal best_w, best_set
        if w + suffix[v] <= best_w:
            return
        if v == n:
            best_w, best_set = w, chosen
            return
        if not blocked >> v & 1:
            search(v + 1, chosen | 1 << v, blocked | nbr[v], w + weights[v])
        search(v + 1, chosen, blocked, w)

    search(0, 0, 0, 0)
    return best_w, frozenset(v for v in range(n) if best_set >> v & 1)


def solve_r12_structural(g: AnyGraph) -> Solution:
    """Optimal (1,2) coloring via the best independent set by degree sum.

    With one relaxed color (0) and one proper color (1), the proper class
    ``I`` is independent and exactly its incident edges are covered, so the
    optimum is ``max sum(d(v) for v in I)`` over independent sets.
    """
    w, chosen = max_weight_independent_set(g, g.degrees)
    coloring = tuple(1 if v in chosen else 0 for v in range(g.n))
    return Solution(coloring, w, "structural12")


def solve_half_approx(g: AnyGraph, s: ColorScheme) -> Solution:
    """Derandomized cut using the first two relaxed colors.

    Vertices are placed in ascending order on the side holding fewer of their
    already placed neighbors (ties go to color 0), which cuts at least half of
    the edges.
    """
    if s.r < 2:
        raise ValueError("the half-approximation needs at least two relaxed colors")
    side = [0] * g.n
    for v in range(g.n):
        weight = [0, 0]
        for u, t in g.adjacency[v]:
            if u < v:
                weight[side[u]] += t
        side[v] = 1 if weight[1] < weight[0] else 0
    return _solution(g, side, s, "half")


def solve_greedy(g: AnyGraph, s: ColorScheme) -> Solution | None:
    """Descending-degree greedy coloring.

    Each vertex takes the feasible color covering the most edges to already
    colored neighbors (lowest index on ties). Returns ``None`` if some vertex
    has no feasible color, which can happen only when ``r == 0``; this is a
    heuristic failure and does not prove the instance infeasible.
    """
    n, k, r = g.n, s.k, s.r
    order = sorted(range(n), key=lambda v: (-g.degrees[v], v))
    colors = [-1] * n
    for v in order:
        best_col, best_gain = -1, -1
        for col in range(k):
            gain = 0
            ok = True
            for u, t in g.adjacency[v]:
                if colors[u] < 0:
                    continue
                if colors[u] == col:
                    if col >= r:
                        ok = False
                        break
                else:
                    gain += t
            if ok and gain > best_gain:
                best_col, best_gain = col, gain
        if best_col < 0:
            return None
        colors[v] = best_col
    return _solution(g, colors, s, "greedy")


def _objective_key(objective: str, p: float) -> Callable[[list[int]], tuple]:
    # smaller is better
    if objective == "covered":
        return lambda kappa: (sum(kappa),)
    if objective == "generalized":
        return lambda kappa: (kappa_cost(kappa, p),)
    if objective == "defective":
        def key(kappa):
            top = max(kappa, default=0)
            return (top, kappa.count(top) if top else 0, sum(kappa))
        return key
    raise ValueError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")


class _LocalState:
    def __init__(self, g: AnyGraph, s: ColorScheme, colors: Sequence[int]):
        self.g, self.s = g, s
        self.colors = list(colors)
        self.kappa = [0] * g.n
        for u, v, t in g.weighted_edges():
            if self.colors[u] == self.colors[v]:
                self.kappa[u] += t
                self.kappa[v] += t

    def can_move(self, v: int, col: int) -> bool:
        if col < self.s.r:
            return True
        return all(self.colors[u] != col for u, _ in self.g.adjacency[v])

    def moved_kappa(self, v: int, col: int) -> list[int]:
        old = self.colors[v]
        kappa = self.kappa[:]
        kappa[v] = 0
        for u, t in self.g.adjacency[v]:
            if self.colors[u] == old:
                kappa[u] -= t
            elif self.colors[u] == col:
                kappa[u] += t
                kappa[v] += t
        return kappa

    def apply(self, v: int, col: int, kappa: list[int]) -> None:
        self.colors[v] = col
        self.kappa = kappa


def solve_local_search(
    g: AnyGraph,
    s: ColorScheme,
    objective: str = "covered",
    p: float = 1.0,
    budget: SearchBudget | None = None,
) -> Solution | None:
    """First-improvement single-vertex recoloring, started from the greedy solution.

    Each examined vertex consumes one iteration of ``budget.max_iterations``;
    vertices are visited in a seeded random order per sweep, and candidate
    colors in ascending order. Only feasibility-preserving moves are taken.
    ``objective`` is ``"covered"`` (fewest conflicts), ``"generalized"``
    (sum of ``kappa ** p``) or ``"defective"`` (max kappa, then the number of
    vertices attaining it). Each restart perturbs the incumbent and descends
    again with a fresh iteration budget; the best coloring is kept.
    """
    if objective == "generalized" and not p > 0:
        raise ValueError("cost exponent must be positive")
    key = _objective_key(objective, p)
    budget = budget or SearchBudget()
    start = solve_greedy(g, s)
    if start is None:
        return None
    rng = random.Random(budget.random_seed)

    def descend(colors: Sequence[int]) -> _LocalState:
        state = _LocalState(g, s, colors)
        current = key(state.kappa)
        iterations = 0
        while iterations < budget.max_iterations:
            improved = False
            order = list(range(g.n))
            rng.shuffle(order)
            for v in order:
                if iterations >= budget.max_iterations:
                    break
                iterations += 1
                for col in range(s.k):
                    if col == state.colors[v] or not state.can_move(v, col):
                        continue
                    kappa = state.moved_kappa(v, col)
                    candidate = key(kappa)
                    if candidate < current:
                        state.apply(v, col, kappa)
                        current = candidate
                        improved = True
                        break
            if not improved:
                break
        return state

    best = descend(start.coloring)
    best_key = key(best.kappa)
    for _ in range(budget.restarts):
        colors = best.colors[:]
        for v in rng.sample(range(g.n), math.ceil(g.n / 4)):
            state = _LocalState(g, s, colors)
            options = [c for c in range(s.k) if state.can_move(v, c) or c == colors[v]]
            colors[v] = rng.choice(options)
        trial = descend(colors)
        if key(trial.kappa) < best_key:
            best, best_key = trial, key(trial.kappa)
    return _solution(g, best.colors, s, "local")


def solve(g: AnyGraph, s: ColorScheme, method: str = "exact", **kwargs) -> Solution | None:
    """Dispatch to a solver by its method tag."""
    if method == "exact":
        return solve_exact(g, s)
    if method == "structural12":
        if (s.r, s.k) != (1, 2):
            raise ValueError("structural12 solves only the (1,2) scheme")
        return solve_r12_structural(g)
    if method == "greedy":
        return solve_greedy(g, s)
    if method == "local":
        return solve_local_search(g, s, **kwargs)
    if method == "half":
        return solve_half_approx(g, s)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
