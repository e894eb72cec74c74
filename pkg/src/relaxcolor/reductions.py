"""Graph transformations and solution mappings between coloring problems.

* clique augmentation, relating maximum independent set to (1,2) colorings;
* collapsing a (1,k) coloring into a (1,2) coloring;
* the max-cut construction: a weighted clique multigraph, its expansion into
  a simple graph through edge gadgets, the repairs that bring any coloring
  into normal form, and extraction of the cut.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    AnyGraph,
    Coloring,
    ColorScheme,
    Graph,
    InfeasibleColoring,
    Multigraph,
    check_coloring,
    is_feasible,
)

R12 = ColorScheme(k=2, r=1)
RELAXED, PROPER = 0, 1


@dataclass(frozen=True)
class AugmentedGraph:
    """``G`` joined completely to a clique of ``clique_size`` new vertices."""

    graph: Graph
    original_n: int
    clique_size: int

    @property
    def clique_vertices(self) -> range:
        return range(self.original_n, self.original_n + self.clique_size)


@dataclass(frozen=True)
class LRedMultigraph:
    """``G`` plus ``k - 2`` heavy clique vertices, as a multigraph.

    Vertices ``0..original_n-1`` are the original graph; an edge is a
    *G edge* iff both endpoints are original vertices.
    """

    multigraph: Multigraph
    original_n: int
    clique_vertices: tuple[int, ...]
    k: int

    @property
    def original_m(self) -> int:
        return sum(t for (u, v), t in self.multigraph.edges.items() if v < self.original_n)

    def is_g_edge(self, u: int, v: int) -> bool:
        return u < self.original_n and v < self.original_n


@dataclass(frozen=True)
class GadgetCopy:
    """One gadget replacing a single parallel edge ``(u, v)``.

    ``internal`` holds the ``k`` new vertices standing for
    ``w1, w4, w5, ..., w_{k+2}``; ``u`` and ``v`` play ``w2`` and ``w3``.
    """

    u: int
    v: int
    internal: tuple[int, ...]

    def roles(self) -> tuple[int, ...]:
        """Vertex ids in gadget order ``w1, w2, ..., w_{k+2}``."""
        w1, w4, *rest = self.internal
        return (w1, self.u, self.v, w4, *rest)


@dataclass(frozen=True)
class GadgetMap:
    expanded_graph: Graph
    original_n: int
    base_n: int
    k: int
    copies: tuple[GadgetCopy, ...]

    @property
    def clique_vertices(self) -> tuple[int, ...]:
        return tuple(range(self.original_n, self.base_n))


def augment_with_clique(g: Graph, q: int | None = None) -> AugmentedGraph:
    """Add a clique of ``q`` vertices (default ``n**2``) joined to every vertex of ``g``."""
    n = g.n
    if q is None:
        q = n * n
    if q < 1:
        raise ValueError(f"clique size must be positive, got {q}")
    edges = list(g.edges)
    clique = range(n, n + q)
    edges += [(a, b) for a in clique for b in range(a + 1, n + q)]
    edges += [(v, a) for v in range(n) for a in clique]
    return AugmentedGraph(Graph(n + q, edges), n, q)


def mis_from_coloring(ag: AugmentedGraph, c) -> frozenset[int]:
    """Independent set of ``G`` read off a feasible (1,2) coloring of the augmented graph.

    The proper class restricted to ``G`` is returned. When it is empty (the
    proper class is a clique vertex, or nothing is proper) the fallback is
    the single vertex ``{0}``; an empty graph yields the empty set.
    """
    c = check_coloring(ag.graph, c, 2)
    if not is_feasible(ag.graph, c, R12):
        raise InfeasibleColoring("not a feasible (1,2) coloring")
    chosen = frozenset(v for v in range(ag.original_n) if c[v] == PROPER)
    if not chosen and ag.original_n > 0:
        return frozenset({0})
    return chosen


def out_degree(g: AnyGraph, members: set[int] | frozenset[int]) -> int:
    """Number of edges (with multiplicity) with exactly one endpoint in ``members``."""
    return sum(t for u, v, t in g.weighted_edges() if (u in members) != (v in members))


def collapse_1k_to_12(g: AnyGraph, c, k: int) -> Coloring:
    """Keep the proper class with the most outgoing edges; everything else becomes relaxed.

    Input colors follow the (1,k) convention (0 relaxed, ``1..k-1`` proper);
    the result uses 0 for relaxed and 1 for proper. Ties go to the lowest
    class index.
    """
    s = ColorScheme(k=k, r=1)
    c = check_coloring(g, c, k)
    if not is_feasible(g, c, s):
        raise InfeasibleColoring("not a feasible (1,k) coloring")
    best_cls, best_out = 1, -1
    for cls in range(1, k):
        members = {v for v in range(g.n) if c[v] == cls}
        out = out_degree(g, members)
        if out > best_out:
            best_cls, best_out = cls, out
    return tuple(PROPER if x == best_cls else RELAXED for x in c)


def build_lred_multigraph(g: Graph, k: int) -> LRedMultigraph:
    """Attach ``k - 2`` clique vertices to ``g`` with heavy parallel edges.

    Clique pairs get multiplicity ``2m``; each original vertex ``v`` is joined
    to every clique vertex with multiplicity ``2 d(v)``. Pairs whose
    multiplicity would be zero are omitted.
    """
    if k < 3:
        raise ValueError("k must be at least 3 (for k = 2 the construction is the identity)")
    n, m = g.n, g.m
    clique = tuple(range(n, n + k - 2))
    edges: dict[tuple[int, int], int] = {e: 1 for e in g.edges}
    if m:
        for i, a in enumerate(clique):
            for b in clique[i + 1:]:
                edges[(a, b)] = 2 * m
    for v in range(n):
        if g.degrees[v]:
            for a in clique:
                edges[(v, a)] = 2 * g.degrees[v]
    return LRedMultigraph(Multigraph(n + k - 2, edges), n, clique, k)


def gadget_k(k: int) -> Graph:
    """Clique on ``k + 2`` vertices minus the path ``w1 w2 w3 w4`` (vertex ``i`` is ``w_{i+1}``)."""
    if k < 2:
        raise ValueError("gadget needs k >= 2")
    removed = {(0, 1), (1, 2), (2, 3)}
    size = k + 2
    return Graph(size, [(a, b) for a in range(size) for b in range(a + 1, size)
                        if (a, b) not in removed])


def expand_multigraph(lm: LRedMultigraph) -> GadgetMap:
    """Replace every parallel non-G edge by its own gadget copy.

    Vertices of the multigraph keep their ids. Copies are created pair by
    pair in sorted order, and copy ``j`` owns ids
    ``base_n + j*k .. base_n + j*k + k - 1``.
    """
    k = lm.k
    mg = lm.multigraph
    base_n = mg.n
    gadget = gadget_k(k)
    edges: list[tuple[int, int]] = []
    copies: list[GadgetCopy] = []
    next_id = base_n
    for (u, v), t in mg.edges.items():
        if lm.is_g_edge(u, v):
            if t != 1:
                raise ValueError(f"original edge {(u, v)} has multiplicity {t}, expected 1")
            edges.append((u, v))
            continue
        for _ in range(t):
            copy = GadgetCopy(u, v, tuple(range(next_id, next_id + k)))
            next_id += k
            roles = copy.roles()
            edges.extend((roles[a], roles[b]) for a, b in gadget.edges)
            copies.append(copy)
    return GadgetMap(Graph(next_id, edges), lm.original_n, base_n, k, tuple(copies))


def repair_multigraph_coloring(lm: LRedMultigraph, c, s: ColorScheme) -> Coloring:
    """Bring a feasible coloring of the multigraph into normal form.

    If two clique vertices share a color the coloring is returned unchanged.
    Otherwise every original vertex holding a clique color is moved to the
    better of the two colors absent from the clique (lower index on ties),
    and each of those two colors that is proper is then swapped with the
    lowest relaxed color used on the clique. Value never decreases and the
    result is feasible with only relaxed colors on the original vertices.
    """
    mg = lm.multigraph
    if s.k != lm.k:
        raise ValueError(f"scheme has k={s.k} but the construction uses k={lm.k}")
    if s.r < 2:
        raise ValueError("repair needs at least two relaxed colors")
    c = check_coloring(mg, c, s.k)
    if not is_feasible(mg, c, s):
        raise InfeasibleColoring("input coloring is not feasible")
    return normalize_multigraph_coloring(lm, c, s)


def normalize_multigraph_coloring(lm: LRedMultigraph, c, s: ColorScheme) -> Coloring:
    """Unchecked core of :func:`repair_multigraph_coloring`."""
    mg = lm.multigraph
    colors = list(c)
    clique_colors = [colors[a] for a in lm.clique_vertices]
    if len(set(clique_colors)) < len(clique_colors):
        return tuple(colors)
    free = [x for x in range(s.k) if x not in clique_colors]
    for v in range(lm.original_n):
        if colors[v] in free:
            continue
        gains = [0] * len(free)
        for u, t in mg.adjacency[v]:
            for i, f in enumerate(free):
                if colors[u] != f:
                    gains[i] += t
        colors[v] = free[gains.index(max(gains))]
    for f in free:
        if s.is_proper(f):
            g = min(x for x in clique_colors if s.is_relaxed(x))
            clique_colors[clique_colors.index(g)] = f
            colors = [g if x == f else f if x == g else x for x in colors]
    return tuple(colors)


def repair_gadget_coloring(gm: GadgetMap, c, s: ColorScheme) -> Coloring:
    """Recolor gadget interiors so each copy has ``[color(u) == color(v)]`` conflicts.

    With distinct endpoint colors ``a != b``: ``w1 = a``, ``w4 = b`` and the
    other ``k - 2`` colors go to ``w5..w_{k+2}``. With equal endpoint color
    ``a``: ``w1 = w4 = c2`` for the lowest relaxed ``c2 != a`` and the
    remaining colors go to the rest, leaving one conflict on ``(w1, w4)``.
    """
    if s.k != gm.k:
        raise ValueError(f"scheme has k={s.k} but the gadgets use k={gm.k}")
    if s.r < 2:
        raise ValueError("repair needs at least two relaxed colors")
    colors = list(check_coloring(gm.expanded_graph, c, s.k))
    if not is_feasible(gm.expanded_graph, colors, s):
        raise InfeasibleColoring("input coloring is not feasible")
    for copy in gm.copies:
        a, b = colors[copy.u], colors[copy.v]
        if a != b:
            first, second = a, b
        else:
            first = second = next(x for x in s.relaxed_colors if x != a)
        rest = [x for x in range(s.k) if x not in (a, b, first)]
        w1, w4, *others = copy.internal
        colors[w1], colors[w4] = first, second
        for w, x in zip(others, rest):
            colors[w] = x
    return tuple(colors)


def extract_maxcut(red: LRedMultigraph | GadgetMap | Graph, c) -> Coloring:
    """Restrict a repaired coloring to the original vertices as a 0/1 cut.

    Colors already in ``{0, 1}`` are kept verbatim; otherwise the smaller
    used color maps to 0 and the larger to 1.
    """
    n = red.n if isinstance(red, Graph) else red.original_n
    c = tuple(int(x) for x in c)
    if len(c) < n:
        raise ValueError("coloring shorter than the original vertex set")
    part = c[:n]
    used = sorted(set(part))
    if len(used) > 2:
        raise ValueError(f"original vertices use {len(used)} colors; repair the coloring first")
    if set(used) <= {0, 1}:
        return part
    return tuple(used.index(x) for x in part)


def restrict_graph(red: LRedMultigraph | GadgetMap) -> Graph:
    """Recover the original graph ``G`` from a construction."""
    if isinstance(red, LRedMultigraph):
        es = [e for e in red.multigraph.edges if red.is_g_edge(*e)]
    else:
        es = [e for e in red.expanded_graph.edges if e[1] < red.original_n]
    return Graph(red.original_n, es)
