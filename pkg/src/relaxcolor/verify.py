"""Brute-force oracles and certified property checks.

The oracles enumerate every coloring (or vertex subset) with vectorized
numpy arithmetic and share no search code with :mod:`relaxcolor.solvers`,
so agreement between the two is evidence rather than a tautology.

Each ``check_*`` function returns a :class:`ReductionCertificate`. A failed
certificate carries a witness that :func:`replay` re-runs to reproduce the
violation.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .graph import (
    AnyGraph,
    ColorScheme,
    Graph,
    InstanceTooLarge,
    Multigraph,
    conflict_profile,
    is_feasible,
    kappa_cost,
)
from .reductions import (
    R12,
    LRedMultigraph,
    build_lred_multigraph,
    collapse_1k_to_12,
    extract_maxcut,
    gadget_k,
    normalize_multigraph_coloring,
)
from .solvers import max_weight_independent_set

COLORING_LIMIT = 10**8
SUBSET_LIMIT = 10**7
_BLOCK = 1 << 16


@dataclass
class ReductionCertificate:
    """Outcome of one property check; ``witness`` is present iff the property failed."""

    property: str
    instance: dict
    holds: bool
    witness: dict | None = None
    measured_alpha: float | None = None
    measured_beta: float | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("witness must be present exactly when the property fails")

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class RandomGraphSpec:
    n: int
    edge_probability: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise ValueError("edge probability must lie in [0, 1]")


def random_graph(spec: RandomGraphSpec) -> Graph:
    """G(n, p) sample; pairs are drawn in lexicographic order from ``random.Random(seed)``."""
    rng = random.Random(spec.seed)
    n = spec.n
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < spec.edge_probability]
    return Graph(n, edges)


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labeled simple graph on ``n`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def graph_to_dict(g: AnyGraph) -> dict:
    if isinstance(g, Multigraph):
        return {"n": g.n, "edges": [[u, v, t] for u, v, t in g.weighted_edges()]}
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges]}


def graph_from_dict(d: dict) -> AnyGraph:
    edges = d["edges"]
    if edges and len(edges[0]) == 3:
        return Multigraph(d["n"], {(u, v): t for u, v, t in edges})
    return Graph(d["n"], [tuple(e) for e in edges])


# -- enumeration ------------------------------------------------------------

def _all_colorings(n: int, k: int) -> Iterator[np.ndarray]:
    """Blocks of all ``k**n`` colorings in lexicographic order (vertex 0 most significant)."""
    total = k**n
    powers = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, _BLOCK):
        idx = np.arange(start, min(start + _BLOCK, total), dtype=np.int64)
        yield (idx[:, None] // powers[None, :]) % k


def _evaluate(block: np.ndarray, wedges, r: int) -> tuple[np.ndarray, np.ndarray]:
    covered = np.zeros(len(block), dtype=np.int64)
    feasible = np.ones(len(block), dtype=bool)
    for u, v, t in wedges:
        same = block[:, u] == block[:, v]
        covered += t * ~same
        feasible &= ~same | (block[:, u] < r)
    return covered, feasible


def _guard_colorings(n: int, k: int) -> None:
    if k**n > COLORING_LIMIT:
        raise InstanceTooLarge(f"k**n = {k}**{n} exceeds {COLORING_LIMIT}")


def feasible_colorings(g: AnyGraph, s: ColorScheme) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(colorings, covered)`` blocks restricted to feasible colorings."""
    _guard_colorings(g.n, s.k)
    wedges = g.weighted_edges()
    for block in _all_colorings(g.n, s.k):
        covered, feasible = _evaluate(block, wedges, s.r)
        if feasible.any():
            yield block[feasible], covered[feasible]


def oracle_opt(g: AnyGraph, s: ColorScheme) -> int | None:
    """Exact optimum by full enumeration; ``None`` when nothing is feasible."""
    best = None
    for _, covered in feasible_colorings(g, s):
        top = int(covered.max())
        best = top if best is None else max(best, top)
    return best


def _subset_blocks(n: int) -> Iterator[np.ndarray]:
    if 2**n > SUBSET_LIMIT:
        raise InstanceTooLarge(f"2**{n} subsets exceed {SUBSET_LIMIT}")
    total = 1 << n
    for start in range(0, total, _BLOCK):
        yield np.arange(start, min(start + _BLOCK, total), dtype=np.int64)


def oracle_mis(g: AnyGraph) -> int:
    """Maximum independent set size by subset enumeration."""
    best = 0
    for masks in _subset_blocks(g.n):
        ok = np.ones(len(masks), dtype=bool)
        for u, v, _ in g.weighted_edges():
            ok &= ((masks >> u) & (masks >> v) & 1) == 0
        if ok.any():
            best = max(best, int(np.bitwise_count(masks[ok]).max()))
    return best


def oracle_maxcut(g: AnyGraph) -> int:
    """Maximum cut (edges counted with multiplicity) by subset enumeration."""
    best = 0
    for masks in _subset_blocks(g.n):
        cut = np.zeros(len(masks), dtype=np.int64)
        for u, v, t in g.weighted_edges():
            cut += t * (((masks >> u) ^ (masks >> v)) & 1)
        best = max(best, int(cut.max()))
    return best


def random_feasible_coloring(g: AnyGraph, s: ColorScheme, rng: random.Random,
                             attempts: int = 100) -> tuple[int, ...] | None:
    """Random order, uniform choice among colors that keep the partial coloring feasible."""
    for _ in range(attempts):
        colors = [-1] * g.n
        order = list(range(g.n))
        rng.shuffle(order)
        for v in order:
            taken = {colors[u] for u, _ in g.adjacency[v]}
            options = [x for x in range(s.k) if x < s.r or x not in taken]
            if not options:
                break
            colors[v] = rng.choice(options)
        else:
            return tuple(colors)
    return None


def _cut_value(g: Graph, side: Sequence[int]) -> int:
    return sum(1 for u, v in g.edges if side[u] != side[v])


# -- clique augmentation ----------------------------------------------------

def augmented_r12_opt(g: Graph, q: int) -> int:
    """Optimum (1,2) value of ``g`` joined to a ``q``-clique, without building it.

    Independent sets of the augmented graph are independent sets of ``g`` or
    single clique vertices; augmented degrees are ``d(v) + q`` and ``q - 1 + n``.
    """
    weights = [d + q for d in g.degrees]
    best, _ = max_weight_independent_set(g, weights)
    return max(best, q - 1 + g.n)


def check_mis_equivalence(g: Graph, q: int | None = None) -> ReductionCertificate:
    """For each threshold ``s``: an independent set of size ``s`` exists iff the augmented optimum is at least ``s*q``."""
    n = g.n
    if q is None:
        q = n * n
    if n and not (q > g.m and q >= n):
        raise ValueError(f"clique size q={q} must exceed the edge count {g.m} and be at least n={n}")
    instance = {"graph": graph_to_dict(g), "q": q}
    mis = oracle_mis(g)
    opt = augmented_r12_opt(g, q)
    bad = [t for t in range(1, n + 1) if (mis >= t) != (opt >= t * q)]
    witness = None
    if bad:
        witness = {"graph": graph_to_dict(g), "q": q, "threshold": bad[0], "mis": mis, "opt": opt}
    return ReductionCertificate(
        "mis_equivalence", instance, not bad, witness,
        measured_alpha=(opt / (mis * q)) if mis else None,
        details={"mis": mis, "opt": opt, "thresholds": n},
    )


# -- collapse (1,k) -> (1,2) ----------------------------------------------

def _collapse_case(g: AnyGraph, k: int, c: Sequence[int]) -> tuple[int, int, bool]:
    val = conflict_profile(g, c).covered
    out = collapse_1k_to_12(g, c, k)
    val2 = conflict_profile(g, out).covered
    ok = is_feasible(g, out, R12) and val2 * (k - 1) >= val
    return val, val2, ok


def check_collapse_ratio(g: AnyGraph, k: int, trials: int | None = None,
                         seed: int = 0) -> ReductionCertificate:
    """Collapsing a feasible (1,k) coloring loses at most a factor ``k - 1``.

    ``trials=None`` checks every feasible coloring; otherwise ``trials``
    random feasible colorings are drawn.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    s = ColorScheme(k=k, r=1)
    instance = {"graph": graph_to_dict(g), "k": k, "trials": trials, "seed": seed}
    if trials is None:
        cases = (tuple(int(x) for x in row) for block, _ in feasible_colorings(g, s) for row in block)
    else:
        rng = random.Random(seed)
        cases = (random_feasible_coloring(g, s, rng) for _ in range(trials))
    worst = 1.0
    checked = 0
    for c in cases:
        checked += 1
        val, val2, ok = _collapse_case(g, k, c)
        if not ok:
            witness = {"graph": graph_to_dict(g), "k": k, "coloring": list(c),
                       "value": val, "collapsed_value": val2}
            return ReductionCertificate("collapse_ratio", instance, False, witness,
                                        details={"checked": checked})
        if val2:
            worst = max(worst, val / val2)
    return ReductionCertificate("collapse_ratio", instance, True, measured_alpha=worst,
                                details={"checked": checked, "bound": k - 1})


# -- gadget ---------------------------------------------------------------

def check_gadget(k: int) -> ReductionCertificate:
    """Exhaustively certify that the gadget is conflict-free colorable and separates ``w2``, ``w3``."""
    gadget = gadget_k(k)
    _guard_colorings(gadget.n, k)
    instance = {"k": k}
    proper_count = 0
    first_bad = None
    for block in _all_colorings(gadget.n, k):
        clean = np.ones(len(block), dtype=bool)
        for u, v in gadget.edges:
            clean &= block[:, u] != block[:, v]
        proper = block[clean]
        proper_count += len(proper)
        bad = proper[proper[:, 1] == proper[:, 2]]
        if len(bad) and first_bad is None:
            first_bad = [int(x) for x in bad[0]]
    witness = None
    if proper_count == 0:
        witness = {"k": k, "reason": "no conflict-free coloring"}
    elif first_bad is not None:
        witness = {"k": k, "reason": "w2 and w3 share a color", "coloring": first_bad}
    return ReductionCertificate("gadget", instance, witness is None, witness,
                                details={"proper_colorings": proper_count,
                                         "nodes": gadget.n, "edges": gadget.m})


# -- max-cut construction -------------------------------------------------

def _gap_case(lm: LRedMultigraph, g: Graph, s: ColorScheme, c: Sequence[int], value: int,
              opt: int, maxcut: int) -> dict:
    """Classify one feasible coloring of the multigraph and test the gap relation."""
    clique = [c[a] for a in lm.clique_vertices]
    if len(set(clique)) < len(clique):
        gap = opt - value
        return {"branch": "repeated", "ok": gap >= g.m, "gap": gap}
    fixed = normalize_multigraph_coloring(lm, c, s)
    prof = conflict_profile(lm.multigraph, fixed)
    side = extract_maxcut(lm, fixed)
    cut = _cut_value(g, side)
    lhs = opt - prof.covered
    rhs = maxcut - cut
    outside_clean = all(lm.is_g_edge(u, v) for u, v in prof.conflict_edges)
    ok = is_feasible(lm.multigraph, fixed, s) and prof.covered >= value
    ok = ok and (lhs == rhs if outside_clean else rhs <= lhs)
    return {"branch": "distinct", "ok": ok, "gap": lhs, "cut_gap": rhs,
            "flagged": not outside_clean, "raw_gap": opt - value}


def check_lreduction_gap(g: Graph, k: int, r: int, trials: int | None = None,
                         seed: int = 0) -> ReductionCertificate:
    """Gap preservation of the max-cut construction at multigraph level.

    For colorings with distinct clique colors the repaired coloring must
    satisfy ``opt - val == maxcut - cut`` exactly; for colorings repeating a
    clique color the gap ``opt - val`` must be at least ``m``.
    """
    s = ColorScheme(k=k, r=r)
    if r < 2:
        raise ValueError("the construction needs r >= 2")
    lm = build_lred_multigraph(g, k)
    mg = lm.multigraph
    instance = {"graph": graph_to_dict(g), "k": k, "r": r, "trials": trials, "seed": seed}
    opt = oracle_opt(mg, s)
    maxcut = oracle_maxcut(g)
    if trials is None:
        def cases():
            for block, covered in feasible_colorings(mg, s):
                for row, val in zip(block.tolist(), covered.tolist()):
                    yield tuple(row), val
    else:
        rng = random.Random(seed)

        def cases():
            for _ in range(trials):
                c = random_feasible_coloring(mg, s, rng)
                yield c, conflict_profile(mg, c).covered
    counts = {"distinct": 0, "repeated": 0, "flagged": 0}
    beta = 0.0
    for c, val in cases():
        res = _gap_case(lm, g, s, c, val, opt, maxcut)
        counts[res["branch"]] += 1
        counts["flagged"] += bool(res.get("flagged"))
        if not res["ok"]:
            witness = {"graph": graph_to_dict(g), "k": k, "r": r, "coloring": list(c), **res}
            return ReductionCertificate("lreduction_gap", instance, False, witness, details=counts)
        if res["branch"] == "distinct" and res["raw_gap"] > 0:
            beta = max(beta, res["cut_gap"] / res["raw_gap"])
    return ReductionCertificate(
        "lreduction_gap", instance, True,
        measured_alpha=opt / maxcut if maxcut else None,
        measured_beta=beta,
        details={**counts, "opt": opt, "maxcut": maxcut},
    )


# -- generalized cost limits ----------------------------------------------

def large_p_exponent(n: int, m1: int, m2: int) -> float:
    return math.log(n) / math.log(m2 / m1) + 1.0


def small_p_exponent(c1: int, c2: int, top: int) -> float:
    bound = math.inf if c1 == 0 or top < 2 else math.log(c2 / c1) / math.log(top)
    return min(1.0, bound) / 2.0


def _cost_case(g: AnyGraph, c1: Sequence[int], c2: Sequence[int]) -> list[dict]:
    """Test whichever ordering properties apply to a pair of colorings."""
    k1, k2 = conflict_profile(g, c1).kappa, conflict_profile(g, c2).kappa
    out = []
    m1, m2 = max(k1, default=0), max(k2, default=0)
    if m1 > m2:
        k1, k2, m1, m2 = k2, k1, m2, m1
    if 1 <= m1 < m2:
        p = large_p_exponent(g.n, m1, m2)
        out.append({"kind": "large_p", "p": p,
                    "ok": kappa_cost(k1, p) < kappa_cost(k2, p)})
    k1, k2 = conflict_profile(g, c1).kappa, conflict_profile(g, c2).kappa
    n1, n2 = sum(x > 0 for x in k1), sum(x > 0 for x in k2)
    if n1 > n2:
        k1, k2, n1, n2 = k2, k1, n2, n1
    if n1 < n2:
        p = small_p_exponent(n1, n2, max(max(k1), max(k2)))
        out.append({"kind": "small_p", "p": p,
                    "ok": kappa_cost(k1, p) < kappa_cost(k2, p)})
    return out


def check_cost_limits(g: AnyGraph, trials: int = 100, seed: int = 0,
                      max_colors: int = 3) -> ReductionCertificate:
    """Ordering of ``sum(kappa ** p)`` at large and small exponents.

    Random coloring pairs (each using 1..``max_colors`` colors) are tested
    at ``p = ln(n)/ln(m2/m1) + 1`` when their maximum conflict counts differ,
    and at half of ``min(1, ln(c2/c1)/ln(max kappa))`` when their numbers of
    conflicted vertices differ. A color-relabeled copy of each coloring must
    have identical cost at every tested exponent.
    """
    rng = random.Random(seed)
    instance = {"graph": graph_to_dict(g), "trials": trials, "seed": seed}
    counts = {"large_p": 0, "small_p": 0, "equal": 0}
    exps: list[float] = []
    for _ in range(trials):
        c1 = tuple(rng.randrange(rng.randint(1, max_colors)) for _ in range(g.n))
        c2 = tuple(rng.randrange(rng.randint(1, max_colors)) for _ in range(g.n))
        cases = _cost_case(g, c1, c2)
        perm = list(range(max_colors))
        rng.shuffle(perm)
        twin = tuple(perm[x] for x in c1)
        for p in (0.25, 1.0, 3.0, *[case["p"] for case in cases]):
            a = kappa_cost(conflict_profile(g, c1).kappa, p)
            b = kappa_cost(conflict_profile(g, twin).kappa, p)
            cases.append({"kind": "equal", "p": p, "ok": a == b})
        for case in cases:
            counts[case["kind"]] += 1
            if not case["ok"]:
                witness = {"graph": graph_to_dict(g), "colorings": [list(c1), list(c2)], **case}
                return ReductionCertificate("cost_limits", instance, False, witness, details=counts)
            if case["kind"] != "equal":
                exps.append(case["p"])
    details = dict(counts)
    if exps:
        details.update(min_exponent=min(exps), max_exponent=max(exps))
    return ReductionCertificate("cost_limits", instance, True, details=details)


# -- solver cross-checks --------------------------------------------------

def check_oracle_agreement(g: Graph, schemes: Sequence[tuple[int, int]]) -> ReductionCertificate:
    """``solve_exact`` against the enumeration oracle, plus the (1,2) and (2,2) identities."""
    from .solvers import solve_exact, solve_r12_structural

    instance = {"graph": graph_to_dict(g), "schemes": [list(x) for x in schemes]}
    mismatches = []
    for r, k in schemes:
        s = ColorScheme(k=k, r=r)
        want = oracle_opt(g, s)
        sol = solve_exact(g, s)
        got = None if sol is None else sol.value
        if got != want:
            mismatches.append({"solver": "exact", "r": r, "k": k, "oracle": want, "solver_value": got})
        if (r, k) == (1, 2):
            got = solve_r12_structural(g).value
            if got != want:
                mismatches.append({"solver": "structural12", "oracle": want, "solver_value": got})
        if (r, k) == (2, 2) and want != oracle_maxcut(g):
            mismatches.append({"solver": "maxcut_oracle", "oracle": want})
    witness = {"graph": graph_to_dict(g), "mismatches": mismatches} if mismatches else None
    return ReductionCertificate("oracle_agreement", instance, not mismatches, witness)


def check_half_approx(g: Graph, s: ColorScheme, with_oracle: bool = False) -> ReductionCertificate:
    from .solvers import solve_half_approx

    sol = solve_half_approx(g, s)
    floor = -(-g.m // 2)
    ok = sol.value >= floor
    details = {"value": sol.value, "lower_bound": floor}
    ratio = None
    if with_oracle:
        opt = oracle_opt(g, s)
        details["opt"] = opt
        ok = ok and 2 * sol.value >= opt
        ratio = opt / sol.value if sol.value else None
    instance = {"graph": graph_to_dict(g), "k": s.k, "r": s.r}
    witness = None if ok else {"graph": graph_to_dict(g), "k": s.k, "r": s.r,
                               "coloring": list(sol.coloring), **details}
    return ReductionCertificate("half_approx", instance, ok, witness,
                                measured_alpha=ratio, details=details)


def replay(cert: ReductionCertificate) -> ReductionCertificate:
    """Re-run the check behind a failed certificate on its witness alone."""
    w = cert.witness
    if w is None:
        raise ValueError("certificate holds; nothing to replay")
    g = graph_from_dict(w["graph"]) if "graph" in w else None
    prop = cert.property
    if prop == "mis_equivalence":
        return check_mis_equivalence(g, w["q"])
    if prop == "gadget":
        return check_gadget(w["k"])
    if prop == "collapse_ratio":
        val, val2, ok = _collapse_case(g, w["k"], w["coloring"])
        return ReductionCertificate(prop, {"graph": w["graph"], "k": w["k"]}, ok,
                                    None if ok else dict(w, value=val, collapsed_value=val2))
    if prop == "lreduction_gap":
        s = ColorScheme(k=w["k"], r=w["r"])
        lm = build_lred_multigraph(g, w["k"])
        c = tuple(w["coloring"])
        res = _gap_case(lm, g, s, c, conflict_profile(lm.multigraph, c).covered,
                        oracle_opt(lm.multigraph, s), oracle_maxcut(g))
        return ReductionCertificate(prop, {"graph": w["graph"], "k": w["k"], "r": w["r"]},
                                    res["ok"], None if res["ok"] else dict(w, **res))
    if prop == "cost_limits":
        c1, c2 = w["colorings"]
        bad = [case for case in _cost_case(g, c1, c2) if not case["ok"]]
        return ReductionCertificate(prop, {"graph": w["graph"]}, not bad,
                                    dict(w, **bad[0]) if bad else None)
    if prop == "oracle_agreement":
        return check_oracle_agreement(g, cert.instance["schemes"])
    if prop == "half_approx":
        return check_half_approx(g, ColorScheme(k=w["k"], r=w["r"]), "opt" in w)
    raise ValueError(f"unknown property {prop!r}")


# -- suites ---------------------------------------------------------------

SUITES = ("gadget", "mis", "collapse", "lreduction", "cost", "oracle", "half")


def run_suite(name: str, seed: int = 0, max_n: int = 5, k_min: int = 2, k_max: int = 5,
              samples: int = 20, trials: int = 50) -> Iterator[ReductionCertificate]:
    """Certificates for one named suite on seeded random (and small exhaustive) instances."""
    rng = random.Random(seed)

    def sampled(n_lo: int = 1) -> Iterator[Graph]:
        for _ in range(samples):
            spec = RandomGraphSpec(rng.randint(n_lo, max_n), rng.choice([0.2, 0.5, 0.8]),
                                   rng.getrandbits(32))
            yield random_graph(spec)

    if name == "gadget":
        for k in range(k_min, k_max + 1):
            yield check_gadget(k)
    elif name == "mis":
        for g in sampled():
            yield check_mis_equivalence(g)
    elif name == "collapse":
        for g in sampled():
            for k in range(max(k_min, 2), k_max + 1):
                yield check_collapse_ratio(g, k, trials=trials, seed=rng.getrandbits(32))
    elif name == "lreduction":
        for g in sampled():
            for k in range(max(k_min, 3), k_max + 1):
                for r in range(2, k + 1):
                    yield check_lreduction_gap(g, k, r, trials=trials, seed=rng.getrandbits(32))
    elif name == "cost":
        for g in sampled(2):
            yield check_cost_limits(g, trials=trials, seed=rng.getrandbits(32))
    elif name == "oracle":
        schemes = [(0, 2), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)]
        for g in sampled():
            yield check_oracle_agreement(g, schemes)
    elif name == "half":
        for g in sampled():
            k = rng.randint(2, 3)
            yield check_half_approx(g, ColorScheme(k=k, r=rng.randint(2, k)), with_oracle=True)
    else:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITES}")
