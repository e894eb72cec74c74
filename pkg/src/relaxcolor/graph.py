"""Graphs, colorings and conflict accounting for relaxed colorings.

A relaxed coloring uses ``k`` colors of which the first ``r`` (indices
``0..r-1``) may contain monochromatic edges and the remaining ``k - r``
(indices ``r..k-1``) must be independent sets. Objectives are the number of
covered (bichromatic) edges and several per-vertex conflict costs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

Coloring = tuple[int, ...]
Pair = tuple[int, int]


class InfeasibleColoring(ValueError):
    """A coloring puts two adjacent vertices in the same proper color."""


class InstanceTooLarge(ValueError):
    """An exhaustive routine was asked to enumerate beyond its size guard."""


def _pair(u: int, v: int, n: int) -> Pair:
    u, v = int(u), int(v)
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
    return (u, v) if u < v else (v, u)


class _EdgeView:
    """Adjacency helpers shared by simple graphs and multigraphs."""

    n: int

    def weighted_edges(self) -> tuple[tuple[int, int, int], ...]:
        raise NotImplementedError

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``adjacency[v]`` lists ``(neighbor, multiplicity)`` sorted by neighbor."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, t in self.weighted_edges():
            adj[u].append((v, t))
            adj[v].append((u, t))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sum(t for _, t in nb) for nb in self.adjacency)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    @property
    def edge_count(self) -> int:
        """Number of edges, counted with multiplicity."""
        return sum(t for _, _, t in self.weighted_edges())


@dataclass(frozen=True)
class Graph(_EdgeView):
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are normalized to ``(u, v)`` with ``u < v``; self-loops, duplicates
    and out-of-range endpoints raise ``ValueError``.
    """

    n: int
    edges: tuple[Pair, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        pairs = [_pair(u, v, self.n) for u, v in self.edges]
        if len(set(pairs)) != len(pairs):
            raise ValueError("duplicate edge in simple graph")
        object.__setattr__(self, "edges", tuple(sorted(pairs)))

    def weighted_edges(self):
        return tuple((u, v, 1) for u, v in self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(u, v) for u in range(n) for v in range(u + 1, n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


@dataclass(frozen=True)
class Multigraph(_EdgeView):
    """Undirected multigraph: each vertex pair carries a positive multiplicity."""

    n: int
    edges: Mapping[Pair, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm: dict[Pair, int] = {}
        for (u, v), t in dict(self.edges).items():
            p = _pair(u, v, self.n)
            t = int(t)
            if t < 1:
                raise ValueError(f"multiplicity of {p} must be positive, got {t}")
            if p in norm:
                raise ValueError(f"pair {p} listed twice")
            norm[p] = t
        object.__setattr__(self, "edges", dict(sorted(norm.items())))

    def weighted_edges(self):
        return tuple((u, v, t) for (u, v), t in self.edges.items())

    @classmethod
    def from_graph(cls, g: Graph) -> "Multigraph":
        return cls(g.n, {e: 1 for e in g.edges})

    def __hash__(self):
        return hash((self.n, tuple(self.edges.items())))


AnyGraph = Union[Graph, Multigraph]


@dataclass(frozen=True)
class ColorScheme:
    """``k`` colors, the first ``r`` relaxed and the rest proper."""

    k: int
    r: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be positive, got {self.k}")
        if not 0 <= self.r <= self.k:
            raise ValueError(f"r must lie in 0..k, got r={self.r}, k={self.k}")

    def is_relaxed(self, color: int) -> bool:
        return color < self.r

    def is_proper(self, color: int) -> bool:
        return self.r <= color < self.k

    @property
    def relaxed_colors(self) -> range:
        return range(self.r)

    @property
    def proper_colors(self) -> range:
        return range(self.r, self.k)


@dataclass(frozen=True)
class ConflictReport:
    """Conflict accounting of one coloring.

    ``kappa[v]`` is the number of conflict edges at ``v`` and
    ``conflict_edges`` maps each monochromatic pair to its multiplicity.
    """

    kappa: tuple[int, ...]
    conflict_edges: Mapping[Pair, int]
    covered: int
    conflicts: int

    @property
    def total_edges(self) -> int:
        return self.covered + self.conflicts

    def histogram(self) -> dict[int, int]:
        """Number of vertices at each conflict count."""
        hist: dict[int, int] = {}
        for x in self.kappa:
            hist[x] = hist.get(x, 0) + 1
        return dict(sorted(hist.items()))


@dataclass(frozen=True)
class CostParams:
    p: float = 1.0

    def __post_init__(self):
        if not (self.p > 0 and math.isfinite(self.p)):
            raise ValueError(f"cost exponent must be a positive real, got {self.p}")


def check_coloring(g: AnyGraph, c: Sequence[int], k: int | None = None) -> Coloring:
    """Validate ``c`` as a total coloring of ``g`` and return it as a tuple."""
    c = tuple(int(x) for x in c)
    if len(c) != g.n:
        raise ValueError(f"coloring has {len(c)} entries but graph has {g.n} vertices")
    if any(x < 0 for x in c):
        raise ValueError("negative color index")
    if k is not None and any(x >= k for x in c):
        raise ValueError(f"color index out of range 0..{k - 1}")
    return c


def conflict_profile(g: AnyGraph, c: Sequence[int]) -> ConflictReport:
    c = check_coloring(g, c)
    kappa = [0] * g.n
    bad: dict[Pair, int] = {}
    covered = conflicts = 0
    for u, v, t in g.weighted_edges():
        if c[u] == c[v]:
            kappa[u] += t
            kappa[v] += t
            bad[(u, v)] = t
            conflicts += t
        else:
            covered += t
    return ConflictReport(tuple(kappa), bad, covered, conflicts)


def is_feasible(g: AnyGraph, c: Sequence[int], s: ColorScheme) -> bool:
    """True iff no proper color class of ``c`` contains an edge."""
    c = check_coloring(g, c, s.k)
    return all(c[u] != c[v] or c[u] < s.r for u, v, _ in g.weighted_edges())


def covered_edges(g: AnyGraph, c: Sequence[int], s: ColorScheme) -> int:
    """Objective value of a feasible coloring (edges counted with multiplicity)."""
    if not is_feasible(g, c, s):
        raise InfeasibleColoring("coloring puts adjacent vertices in a proper color")
    return conflict_profile(g, c).covered


def generalized_cost(g: AnyGraph, c: Sequence[int], params: CostParams | float) -> float:
    """Sum of ``kappa(v) ** p`` over all vertices, with ``0 ** p == 0``."""
    if not isinstance(params, CostParams):
        params = CostParams(float(params))
    return kappa_cost(conflict_profile(g, c).kappa, params.p)


def kappa_cost(kappa: Iterable[int], p: float) -> float:
    return math.fsum(float(x) ** p for x in kappa if x > 0)


def defective_cost(g: AnyGraph, c: Sequence[int]) -> int:
    return max(conflict_profile(g, c).kappa, default=0)


def conflicted_node_count(g: AnyGraph, c: Sequence[int]) -> int:
    return sum(1 for x in conflict_profile(g, c).kappa if x > 0)
