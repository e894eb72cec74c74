"""Command-line interface.

Subcommands: ``solve``, ``eval``, ``reduce``, ``verify`` and ``gen``.
Reports are JSON on stdout; errors go to stderr with a stable exit code:

====  ==========================================
0     success
1     a verification certificate failed
2     usage error
3     malformed instance or coloring file
4     no feasible coloring found
5     instance exceeds an exhaustive size guard
6     invalid parameters
====  ==========================================
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import formats, reductions, solvers, verify
from .graph import (
    AnyGraph,
    ColorScheme,
    InstanceTooLarge,
    Multigraph,
    conflict_profile,
    is_feasible,
    kappa_cost,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INFEASIBLE = 4
EXIT_TOO_LARGE = 5
EXIT_INVALID = 6


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunReport:
    instance: str
    method: str
    k: int
    r: int
    feasible: bool
    value: int
    conflicts: int
    edges: int
    kappa_histogram: dict[str, int]
    costs: dict[str, float]
    defective_cost: int
    conflicted_nodes: int
    seed: int | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        d = asdict(self)
        d.update(d.pop("extra"))
        return json.dumps(d, indent=2)


def _fmt_p(p: float) -> str:
    return repr(float(p))


def build_report(name: str, method: str, g: AnyGraph, c, s: ColorScheme, ps,
                 seed: int | None = None) -> RunReport:
    prof = conflict_profile(g, c)
    return RunReport(
        instance=name,
        method=method,
        k=s.k,
        r=s.r,
        feasible=is_feasible(g, c, s),
        value=prof.covered,
        conflicts=prof.conflicts,
        edges=g.edge_count,
        kappa_histogram={str(x): cnt for x, cnt in prof.histogram().items()},
        costs={_fmt_p(p): kappa_cost(prof.kappa, p) for p in ps},
        defective_cost=max(prof.kappa, default=0),
        conflicted_nodes=sum(x > 0 for x in prof.kappa),
        seed=seed,
    )


def _load_instance(path: str, k: int | None, r: int | None) -> tuple[AnyGraph, ColorScheme]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc}", EXIT_PARSE) from None
    try:
        g, scheme = formats.parse_instance(text)
    except ValueError as exc:
        raise CLIError(f"{path}: {exc}", EXIT_PARSE) from None
    if k is not None or r is not None:
        k = k if k is not None else (scheme.k if scheme else None)
        r = r if r is not None else (scheme.r if scheme else k)
        if k is None:
            raise CLIError("--r given without --k and the instance declares no scheme", EXIT_INVALID)
        try:
            scheme = ColorScheme(k=k, r=r)
        except ValueError as exc:
            raise CLIError(str(exc), EXIT_INVALID) from None
    if scheme is None:
        raise CLIError(f"{path} declares no scheme; pass --k/--r", EXIT_INVALID)
    return g, scheme


def _positive_ps(ps) -> list[float]:
    if any(not p > 0 for p in ps):
        raise CLIError("cost exponents must be positive", EXIT_INVALID)
    return list(ps)


def cmd_solve(args) -> int:
    g, s = _load_instance(args.instance, args.k, args.r)
    ps = _positive_ps(args.p)
    budget = solvers.SearchBudget(args.budget, args.seed, args.restarts)
    kwargs = {}
    if args.method == "local":
        kwargs = {"objective": args.objective, "p": ps[0], "budget": budget}
    start = time.perf_counter()
    try:
        sol = solvers.solve(g, s, args.method, **kwargs)
    except InstanceTooLarge as exc:
        raise CLIError(str(exc), EXIT_TOO_LARGE) from None
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_INVALID) from None
    elapsed = time.perf_counter() - start
    name = Path(args.instance).name
    if sol is None:
        print(json.dumps({"instance": name, "method": args.method, "k": s.k, "r": s.r,
                          "feasible": False, "status": "infeasible"}, indent=2))
        return EXIT_INFEASIBLE
    out = Path(args.output or f"{args.instance}.coloring")
    out.write_text(formats.serialize_coloring(sol.coloring))
    report = build_report(name, sol.method, g, sol.coloring, s, ps,
                          seed=args.seed if args.method == "local" else None)
    report.extra["coloring_file"] = str(out)
    if args.method == "local":
        report.extra["objective"] = args.objective
    if args.c is not None:
        report.extra["threshold"] = args.c
        report.extra["decision"] = "yes" if sol.value >= args.c else "no"
        report.extra["decision_exact"] = args.method in ("exact", "structural12")
    if args.timing:
        report.extra["wall_time"] = elapsed
    if args.figure:
        from .plotting import plot_conflict_profile

        plot_conflict_profile(conflict_profile(g, sol.coloring).kappa, args.figure,
                              title=f"{name} ({sol.method})", marks=ps)
        report.extra["figure"] = args.figure
    print(report.to_json())
    return EXIT_OK


def cmd_eval(args) -> int:
    g, s = _load_instance(args.instance, args.k, args.r)
    ps = _positive_ps(args.p)
    try:
        c = formats.parse_coloring(Path(args.coloring).read_text(), g.n)
    except OSError as exc:
        raise CLIError(f"cannot read {args.coloring}: {exc}", EXIT_PARSE) from None
    except ValueError as exc:
        raise CLIError(f"{args.coloring}: {exc}", EXIT_PARSE) from None
    if any(x >= s.k for x in c):
        raise CLIError(f"coloring uses a color outside 0..{s.k - 1}", EXIT_INVALID)
    report = build_report(Path(args.instance).name, "eval", g, c, s, ps)
    if args.figure:
        from .plotting import plot_conflict_profile

        plot_conflict_profile(conflict_profile(g, c).kappa, args.figure,
                              title=Path(args.instance).name, marks=ps)
        report.extra["figure"] = args.figure
    print(report.to_json())
    return EXIT_OK


def cmd_reduce(args) -> int:
    try:
        g, scheme = formats.parse_instance(Path(args.instance).read_text())
    except OSError as exc:
        raise CLIError(f"cannot read {args.instance}: {exc}", EXIT_PARSE) from None
    except ValueError as exc:
        raise CLIError(f"{args.instance}: {exc}", EXIT_PARSE) from None
    if isinstance(g, Multigraph):
        raise CLIError("reductions take a simple graph", EXIT_INVALID)
    stem = Path(args.instance)
    out = Path(args.output or f"{stem}.{args.reduction}.col")
    side = Path(args.sidecar or f"{out}.json")
    try:
        if args.reduction == "clique-augment":
            ag = reductions.augment_with_clique(g, args.q)
            new_graph, new_scheme = ag.graph, reductions.R12
            meta = formats.augmented_sidecar(ag)
        else:
            if args.k is None:
                raise CLIError(f"{args.reduction} needs --k", EXIT_INVALID)
            r = args.r if args.r is not None else args.k
            new_scheme = ColorScheme(k=args.k, r=r)
            if args.k == 2:
                new_graph = g
                meta = {"reduction": "identity", "vertex_base": 1, "k": 2, "original_n": g.n}
            else:
                lm = reductions.build_lred_multigraph(g, args.k)
                if args.reduction == "lred-multigraph":
                    new_graph, meta = lm.multigraph, formats.lred_sidecar(lm)
                else:
                    gm = reductions.expand_multigraph(lm)
                    new_graph, meta = gm.expanded_graph, formats.gadget_sidecar(gm)
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_INVALID) from None
    meta["source"] = Path(args.instance).name
    out.write_text(formats.serialize_instance(new_graph, new_scheme,
                                              comments=[f"{args.reduction} of {stem.name}"]))
    side.write_text(json.dumps(meta, indent=2) + "\n")
    print(json.dumps({"reduction": args.reduction, "instance": str(out), "sidecar": str(side),
                      "n": new_graph.n, "edges": new_graph.edge_count,
                      "k": new_scheme.k, "r": new_scheme.r}, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = verify.SUITES if args.suite == "all" else (args.suite,)
    failed = 0
    try:
        for name in suites:
            for cert in verify.run_suite(name, seed=args.seed, max_n=args.max_n,
                                         k_min=args.k_min, k_max=args.k_max,
                                         samples=args.samples, trials=args.trials):
                print(cert.to_json())
                failed += not cert.holds
    except InstanceTooLarge as exc:
        raise CLIError(str(exc), EXIT_TOO_LARGE) from None
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_INVALID) from None
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_gen(args) -> int:
    try:
        spec = verify.RandomGraphSpec(args.n, args.prob, args.seed)
        scheme = ColorScheme(k=args.k, r=args.r if args.r is not None else args.k)
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_INVALID) from None
    text = formats.serialize_instance(
        verify.random_graph(spec), scheme,
        comments=[f"gnp n={args.n} p={args.prob} seed={args.seed}"])
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relaxcolor",
                                     description="Relaxed graph coloring toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def scheme_flags(p):
        p.add_argument("--k", type=int, help="total colors (overrides the instance scheme)")
        p.add_argument("--r", type=int, help="relaxed colors (overrides the instance scheme)")

    p = sub.add_parser("solve", help="solve an instance and write a coloring file")
    p.add_argument("instance")
    scheme_flags(p)
    p.add_argument("--method", choices=solvers.METHODS, default="exact")
    p.add_argument("--objective", choices=solvers.OBJECTIVES, default="covered",
                   help="local search objective")
    p.add_argument("--p", type=float, nargs="+", default=[1.0],
                   help="cost exponents to report; the first drives the generalized objective")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10_000, help="local search iterations")
    p.add_argument("--restarts", type=int, default=0)
    p.add_argument("--c", type=int, help="decision threshold on covered edges")
    p.add_argument("-o", "--output", help="coloring file (default: <instance>.coloring)")
    p.add_argument("--figure", help="write a conflict-profile figure to this path")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("eval", help="evaluate a coloring file")
    p.add_argument("instance")
    p.add_argument("coloring")
    scheme_flags(p)
    p.add_argument("--p", type=float, nargs="+", default=[1.0])
    p.add_argument("--figure")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("reduce", help="apply a graph transformation")
    p.add_argument("instance")
    p.add_argument("--reduction", required=True,
                   choices=("clique-augment", "lred-multigraph", "lred-expand"))
    p.add_argument("--q", type=int, help="clique size for clique-augment (default n^2)")
    scheme_flags(p)
    p.add_argument("-o", "--output")
    p.add_argument("--sidecar")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="run certification suites, one JSON certificate per line")
    p.add_argument("--suite", choices=(*verify.SUITES, "all"), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--trials", type=int, default=50)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="sample a G(n, p) instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prob", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--r", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"relaxcolor: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
