"""Instance, coloring and sidecar file formats.

Instances are DIMACS-like text with 1-based vertex ids::

    c any comment
    p edge <n> <m>
    c scheme <k> <r>
    c multigraph
    e <u> <v> [<t>]

``m`` counts edge lines. ``c multigraph`` must precede the edge lines and
enables the optional multiplicity ``t``. Colorings are one ``<v> <color>``
line per vertex (1-based vertex, 0-based color).
"""

from __future__ import annotations

from typing import Sequence

from .graph import AnyGraph, Coloring, ColorScheme, Graph, Multigraph
from .reductions import AugmentedGraph, GadgetCopy, GadgetMap, LRedMultigraph


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _ints(parts: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(parts)!r}", lineno) from None


def parse_instance(text: str) -> tuple[AnyGraph, ColorScheme | None]:
    """Parse an instance; returns the graph (or multigraph) and its scheme, if declared."""
    n = m = None
    scheme = None
    multi = False
    edges: dict[tuple[int, int], int] = {}
    edge_lines = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts:
            continue
        tag = parts[0]
        if tag == "c":
            if len(parts) >= 2 and parts[1] == "scheme":
                if len(parts) != 4:
                    raise ParseError("expected 'c scheme <k> <r>'", lineno)
                if scheme is not None:
                    raise ParseError("scheme declared twice", lineno)
                k, r = _ints(parts[2:], lineno)
                try:
                    scheme = ColorScheme(k=k, r=r)
                except ValueError as exc:
                    raise ParseError(str(exc), lineno) from None
            elif parts[1:] == ["multigraph"]:
                if edge_lines:
                    raise ParseError("'c multigraph' must precede the edge lines", lineno)
                multi = True
            continue
        if tag == "p":
            if n is not None:
                raise ParseError("second problem line", lineno)
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError("expected 'p edge <n> <m>'", lineno)
            n, m = _ints(parts[2:], lineno)
            if n < 0 or m < 0:
                raise ParseError("negative size in problem line", lineno)
            continue
        if tag == "e":
            if n is None:
                raise ParseError("edge before problem line", lineno)
            if len(parts) not in (3, 4):
                raise ParseError("expected 'e <u> <v> [<t>]'", lineno)
            vals = _ints(parts[1:], lineno)
            u, v = vals[0], vals[1]
            if len(vals) == 3 and not multi:
                raise ParseError("multiplicity given on a simple-graph instance", lineno)
            t = vals[2] if len(vals) == 3 else 1
            for x in (u, v):
                if not 1 <= x <= n:
                    raise ParseError(f"vertex {x} outside 1..{n}", lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            if t < 1:
                raise ParseError(f"multiplicity must be positive, got {t}", lineno)
            key = (min(u, v) - 1, max(u, v) - 1)
            if key in edges:
                raise ParseError(f"duplicate edge {u} {v}", lineno)
            edges[key] = t
            edge_lines += 1
            continue
        raise ParseError(f"unrecognized line {raw.strip()!r}", lineno)
    if n is None:
        raise ParseError("missing problem line 'p edge <n> <m>'")
    if edge_lines != m:
        raise ParseError(f"problem line announces {m} edges but {edge_lines} were given")
    graph = Multigraph(n, edges) if multi else Graph(n, list(edges))
    return graph, scheme


def serialize_instance(g: AnyGraph, scheme: ColorScheme | None = None,
                       comments: Sequence[str] = ()) -> str:
    multi = isinstance(g, Multigraph)
    wedges = g.weighted_edges()
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {len(wedges)}")
    if scheme is not None:
        lines.append(f"c scheme {scheme.k} {scheme.r}")
    if multi:
        lines.append("c multigraph")
    for u, v, t in wedges:
        lines.append(f"e {u + 1} {v + 1} {t}" if multi else f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, n: int) -> Coloring:
    colors: list[int | None] = [None] * n
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if len(parts) != 2:
            raise ParseError("expected '<vertex> <color>'", lineno)
        v, col = _ints(parts, lineno)
        if not 1 <= v <= n:
            raise ParseError(f"vertex {v} outside 1..{n}", lineno)
        if col < 0:
            raise ParseError(f"negative color {col}", lineno)
        if colors[v - 1] is not None:
            raise ParseError(f"vertex {v} colored twice", lineno)
        colors[v - 1] = col
    missing = [i + 1 for i, x in enumerate(colors) if x is None]
    if missing:
        raise ParseError(f"{len(missing)} vertices uncolored, first is {missing[0]}")
    return tuple(colors)


def serialize_coloring(c: Sequence[int]) -> str:
    return "".join(f"{v + 1} {x}\n" for v, x in enumerate(c))


# Sidecars use 1-based vertex ids like the instance files.

def augmented_sidecar(ag: AugmentedGraph) -> dict:
    return {
        "reduction": "clique-augment",
        "vertex_base": 1,
        "original_n": ag.original_n,
        "clique_size": ag.clique_size,
        "clique_vertices": [v + 1 for v in ag.clique_vertices],
    }


def lred_sidecar(lm: LRedMultigraph) -> dict:
    return {
        "reduction": "lred-multigraph",
        "vertex_base": 1,
        "k": lm.k,
        "original_n": lm.original_n,
        "clique_vertices": [v + 1 for v in lm.clique_vertices],
    }


def gadget_sidecar(gm: GadgetMap) -> dict:
    return {
        "reduction": "lred-expand",
        "vertex_base": 1,
        "k": gm.k,
        "original_n": gm.original_n,
        "base_n": gm.base_n,
        "clique_vertices": [v + 1 for v in gm.clique_vertices],
        "copies": [{"u": c.u + 1, "v": c.v + 1, "internal": [w + 1 for w in c.internal]}
                   for c in gm.copies],
    }


def augmented_from_sidecar(d: dict, graph: Graph) -> AugmentedGraph:
    return AugmentedGraph(graph, d["original_n"], d["clique_size"])


def lred_from_sidecar(d: dict, graph: Multigraph) -> LRedMultigraph:
    return LRedMultigraph(graph, d["original_n"], tuple(v - 1 for v in d["clique_vertices"]), d["k"])


def gadget_from_sidecar(d: dict, graph: Graph) -> GadgetMap:
    copies = tuple(GadgetCopy(c["u"] - 1, c["v"] - 1, tuple(w - 1 for w in c["internal"]))
                   for c in d["copies"])
    return GadgetMap(graph, d["original_n"], d["base_n"], d["k"], copies)
