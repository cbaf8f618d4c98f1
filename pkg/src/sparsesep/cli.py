"""Command-line front end: ``sparse-sep-lab <verb> ...``.

Exit codes: 0 success, 1 verification failure, 2 input error or size
refusal, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from sparsesep import __version__, io
from sparsesep.chain import BoundParams, build_chain_certificate, check_chain, eval_bound, min_c1
from sparsesep.errors import CertificationError, DomainError, InvariantError, RefusalError, SparseSepError
from sparsesep.expanders import expander_subgraph
from sparsesep.experiments import _csv, grid_experiment, parse_corpus, problem12_survey
from sparsesep.generators import from_token
from sparsesep.graph import Graph, average_degree
from sparsesep.minors import densest_shallow_minor, expansion_profile, validate_model
from sparsesep.orders import KINDS, best_order, coloring_number
from sparsesep.separators import min_balanced_separator, validate_separator
from sparsesep.treewidth import treewidth_exact, validate_decomposition

log = logging.getLogger("sparsesep")

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class VerificationFailed(Exception):
    """A check ran to completion and reported failure."""


def _add_globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS if suppress else 0, help="64-bit seed for randomised families")
    parser.add_argument("--exact-cap", type=int, default=default, help="override the exact-search size cap")
    parser.add_argument("--out", default=default, help="write output to this file instead of stdout")
    parser.add_argument(
        "--format", choices=("csv", "text"), default=argparse.SUPPRESS if suppress else "text", help="output format"
    )


def _graph(args) -> Graph:
    spec = args.graph
    if os.path.exists(spec):
        return io.load_graph(spec)
    return from_token(spec, seed=args.seed)


def _cap(args, **kw):
    return {"cap": args.exact_cap} if args.exact_cap is not None else kw


def _table(args, header: list[str], row: list[object]) -> str:
    if args.format == "csv":
        return _csv(header, [row], [])
    return "".join(f"{k}: {'' if v is None else v}\n" for k, v in zip(header, row))


def cmd_gen(args) -> str:
    g = _graph(args)
    if args.dimacs:
        return io.write_dimacs(g)
    return io.write_edge_list(g)


def cmd_sep(args) -> str:
    g = _graph(args)
    if args.check:
        sep = io.read_separator(Path(args.check).read_text())
        verdict = validate_separator(g, sep)
        text = _table(args, ["status", "order", "reason"], [verdict.status, verdict.order, verdict.reason])
        if not verdict.valid:
            raise VerificationFailed(text)
        return text
    sep = min_balanced_separator(g, args.mode, **_cap(args))
    if args.format == "csv":
        return _table(args, ["mode", "n", "order", "a", "b"], [args.mode, g.n, sep.order,
                      " ".join(map(str, sorted(sep.a))), " ".join(map(str, sorted(sep.b)))])
    return f"# mode={args.mode} order={sep.order}\n" + io.write_separator(sep)


def cmd_tw(args) -> str:
    g = _graph(args)
    if args.check:
        td, _ = io.read_td(Path(args.check).read_text())
        verdict = validate_decomposition(g, td)
        text = _table(args, ["valid", "width", "reason"], [verdict.valid, verdict.width, verdict.reason])
        if not verdict.valid:
            raise VerificationFailed(text)
        return text
    width, td = treewidth_exact(g, **_cap(args))
    if args.format == "csv":
        return _table(args, ["n", "m", "treewidth", "bags"], [g.n, g.m, width, len(td.bags)])
    return io.write_td(td, g.n)


def cmd_minor(args) -> str:
    g = _graph(args)
    if args.check:
        model = io.read_model(Path(args.check).read_text())
        verdict = validate_model(g, model)
        text = _table(args, ["valid", "reason"], [verdict.valid, verdict.reason])
        if not verdict.valid:
            raise VerificationFailed(text)
        return text
    if args.profile is not None:
        entries = expansion_profile(g, args.profile, args.mode, **_cap(args))
        rows = [[e.r, e.density, e.model.k, len(e.model.minor_edges)] for e in entries]
        if args.format == "csv":
            return _csv(["r", "density", "minor_vertices", "minor_edges"], rows, [])
        return "".join(f"r={r} density={d} k={k} edges={m}\n" for r, d, k, m in rows)
    model, density = densest_shallow_minor(g, args.r, args.mode, **_cap(args))
    if args.format == "csv":
        return _table(args, ["r", "mode", "density", "minor_vertices", "minor_edges"],
                      [args.r, args.mode, density, model.k, len(model.minor_edges)])
    return f"# mode={args.mode} density={density}\n" + io.write_model(model)


def cmd_colnum(args) -> str:
    g = _graph(args)
    if args.order:
        order = io.read_order(Path(args.order).read_text())
        value = coloring_number(g, order, args.r, args.kind)
        mode = "given"
    else:
        order, value = best_order(g, args.r, args.kind, args.mode, **_cap(args))
        mode = args.mode
    header = ["kind", "r", "mode", "value", "order"]
    return _table(args, header, [args.kind, args.r, mode, value, " ".join(map(str, order.sequence))])


def cmd_expander(args) -> str:
    g = _graph(args)
    cert = expander_subgraph(g, args.mode, seed=args.seed, **_cap(args))
    header = ["vertices", "density", "host_density", "tau", "worst_set", "worst_ratio", "certified",
              "density_ok", "expansion_ok"]
    row = [" ".join(map(str, cert.vertices)), cert.density, cert.host_density, repr(cert.tau),
           " ".join(map(str, cert.worst_set)), cert.worst_ratio, cert.certified, cert.density_ok,
           cert.expansion_ok]
    return _table(args, header, row)


def cmd_chain(args) -> str:
    g = _graph(args)
    params = BoundParams(args.delta, args.C, args.c1, args.c2, args.alpha, args.beta)
    cert = build_chain_certificate(g, args.r, args.mode, seed=args.seed)
    verdicts = check_chain(cert, params)
    rows = [[v.step, v.status, v.lhs, v.rhs, v.note] for v in verdicts]
    trailer = [
        f"d(F)={average_degree(cert.f)} |V(H)|={cert.h.n} |V(G')|={cert.g_prime.graph.n}",
        f"H'={'absent' if cert.h_prime is None else 'present'}",
        f"f(r)={eval_bound(params, args.r)!r}",
        f"empirical min_c1={min_c1(cert, params)!r}",
    ]
    if args.format == "csv":
        text = _csv(["step", "status", "lhs", "rhs", "note"], rows, trailer)
    else:
        text = "".join(f"({s}) {st}: lhs={l} rhs={r} {n}".rstrip() + "\n" for s, st, l, r, n in rows)
        text += "".join(f"# {t}\n" for t in trailer)
    if any(v.status == "fail" for v in verdicts):
        raise VerificationFailed(text)
    return text


def _int_list(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise DomainError(f"expected 'lo..hi' or a comma-separated list, got {text!r}") from None


def cmd_grid(args) -> str:
    kw = {"exact_cap": args.exact_cap} if args.exact_cap is not None else {}
    result = grid_experiment(args.d, _int_list(args.sides), args.seed, args.r_max, **kw)
    if args.format == "text":
        lines = [f"d={r.d} side={r.side} n={r.n} {r.mode} order={r.order} profile={list(map(str, r.densities))}"
                 for r in result.rows]
        fit = "none" if result.exponent is None else f"{result.exponent:.6f}"
        return "\n".join(lines) + f"\nfitted separator exponent: {fit}\n"
    return result.to_csv()


def cmd_survey(args) -> str:
    kw = {"exact_cap": args.exact_cap} if args.exact_cap is not None else {}
    return problem12_survey(parse_corpus(args.corpus, args.seed), args.r_max, **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparse-sep-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    _add_globals(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, suppress=True)
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, helptext, graph=True):
        p = sub.add_parser(name, parents=[common], help=helptext)
        if graph:
            p.add_argument("graph", help="edge-list/DIMACS file or family token such as grid:2:3")
        p.set_defaults(func=func)
        return p

    p = verb("gen", cmd_gen, "emit a generated graph as an edge list")
    p.add_argument("--dimacs", action="store_true", help="write DIMACS instead of the edge list")

    p = verb("sep", cmd_sep, "minimum balanced separator")
    p.add_argument("--mode", choices=("exact", "heuristic"), default="exact")
    p.add_argument("--check", metavar="FILE", help="validate a separator file instead")

    p = verb("tw", cmd_tw, "exact treewidth with a PACE tree decomposition")
    p.add_argument("--check", metavar="FILE", help="validate a PACE decomposition instead")

    p = verb("minor", cmd_minor, "densest depth-r minor or expansion profile")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--mode", choices=("exact", "greedy"), default="greedy")
    p.add_argument("--profile", type=int, metavar="R_MAX", help="report densities for r = 0..R_MAX")
    p.add_argument("--check", metavar="FILE", help="validate a minor model file instead")

    p = verb("colnum", cmd_colnum, "strong/weak r-coloring number")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--kind", choices=KINDS, default="strong")
    p.add_argument("--mode", choices=("exact", "heuristic"), default="heuristic")
    p.add_argument("--order", metavar="FILE", help="evaluate this order instead of searching")

    p = verb("expander", cmd_expander, "dense expander subgraph with expansion certificate")
    p.add_argument("--mode", choices=("exact", "heuristic"), default="exact")

    p = verb("chain-check", cmd_chain, "build and check a proof-chain certificate")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--mode", choices=("exact", "greedy"), default="greedy", help="densest-minor search mode")
    for name, default in (("delta", 0.5), ("C", 1.0), ("c1", 1.0), ("c2", 1.0), ("alpha", 1.0), ("beta", 1.0)):
        p.add_argument(f"--{name}", type=float, default=default)

    p = verb("grid-exp", cmd_grid, "separator and expansion scaling on grids", graph=False)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--sides", default="3..8", help="e.g. 3..8 or 3,4,5")
    p.add_argument("--r-max", type=int, default=2)

    p = verb("survey", cmd_survey, "coloring numbers and minor densities over a corpus", graph=False)
    p.add_argument("--corpus", default="path:8,cycle:6,clique:5,star:6,grid:2:3,petersen")
    p.add_argument("--r-max", type=int, default=3)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if not 0 <= args.seed < 2**64:
        print("error: --seed must lie in [0, 2^64)", file=sys.stderr)
        return EXIT_INPUT
    code = EXIT_OK
    try:
        text = args.func(args)
    except VerificationFailed as exc:
        text, code = str(exc), EXIT_VERIFY
    except CertificationError as exc:
        print(f"certification error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (DomainError, RefusalError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvariantError, AssertionError) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except SparseSepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        Path(args.out).write_text(text)
        log.debug("wrote %s", args.out)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
