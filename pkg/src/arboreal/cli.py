"""Command-line driver.

Exit status: 0 success or accepted, 1 mathematically rejected, 2 input error
(or an internal failure, which is reported as such).
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .formats import (
    ParseError,
    export_dot,
    parse_anet,
    parse_matrix,
    parse_newick,
    write_anet,
    write_matrix,
    write_newick,
)
from .generate import random_arboreal_network, random_equidistant_network, random_tree
from .network import (
    canonical_form,
    induced_partial_distance,
    is_ultrametric_network,
    normalize_leaves,
    suppress_outdegree1,
    underlying_weighted_tree,
    validate,
)
from .recognize import NotArborealUltrametric, ReconstructionError, reconstruct, recognize
from .uproot import NotAWcps, is_weight_preserving_uprooting, uprooting_steps

EXIT_OK, EXIT_REJECTED, EXIT_INPUT = 0, 1, 2


class _InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _parse(parser, path):
    try:
        return parser(_read(path))
    except ParseError as exc:
        raise _InputError(f"{path}:{exc.diagnostic}") from None


def _dot(args, obj):
    if getattr(args, "dot", None):
        _write(args.dot, export_dot(obj))


# -- commands ---------------------------------------------------------------


def cmd_uproot(args) -> int:
    t = _parse(parse_newick, args.tree)
    seq = None
    if args.wcps is not None:
        seq = [s.strip() for s in args.wcps.split(",") if s.strip()]
    try:
        steps = uprooting_steps(t, seq)
    except NotAWcps as exc:
        raise _InputError(str(exc)) from None
    except ValueError as exc:
        raise _InputError(f"not a weighted cherry-picking sequence: {exc}") from None
    n = steps[-1].network
    # Postconditions are checked before anything is written.
    rep = validate(n)
    if not rep.ok or not is_ultrametric_network(n).ok or not is_weight_preserving_uprooting(n, t):
        raise RuntimeError(f"uprooting failed its postconditions ({rep})")
    if args.trace:
        out = Path(args.trace)
        out.mkdir(parents=True, exist_ok=True)
        width = max(2, len(str(len(t.taxa))))
        for i, st in enumerate(steps, start=2):
            (out / f"step_{i:0{width}d}.anet").write_text(write_anet(st.network))
    if args.normalize:
        n = suppress_outdegree1(n)
    _write(args.output, write_anet(n))
    _dot(args, n)
    return EXIT_OK


def cmd_recognize(args) -> int:
    d = _parse(parse_matrix, args.matrix)
    report = recognize(d)
    print("\n".join(report.lines()))
    return EXIT_OK if report.verdict else EXIT_REJECTED


def cmd_reconstruct(args) -> int:
    d = _parse(parse_matrix, args.matrix)
    try:
        n = reconstruct(d)
    except NotArborealUltrametric as exc:
        print("\n".join(exc.report.lines()), file=sys.stderr)
        return EXIT_REJECTED
    _write(args.output, write_anet(n))
    _dot(args, n)
    return EXIT_OK


def cmd_distances(args) -> int:
    n = _parse(parse_anet, args.network)
    _write(args.output, write_matrix(induced_partial_distance(n)))
    return EXIT_OK


def cmd_check(args) -> int:
    n = _parse(parse_anet, args.network)
    print("valid: yes" + (" (relaxed)" if n.relaxed else ""))
    print(f"roots: {len(n.roots)}  leaves: {len(n.leaves)}  arcs: {n.number_of_arcs()}")
    u = is_ultrametric_network(n)
    if u.ok:
        print("ultrametric: yes")
        return EXIT_OK
    print(f"ultrametric: no  {u.message}")
    return EXIT_REJECTED


def cmd_underlying(args) -> int:
    n = _parse(parse_anet, args.network)
    if n.relaxed:
        n = normalize_leaves(n)
    _write(args.output, write_newick(underlying_weighted_tree(n)) + "\n")
    return EXIT_OK


def cmd_iso(args) -> int:
    a = _parse(parse_anet, args.a)
    b = _parse(parse_anet, args.b)
    same = canonical_form(a) == canonical_form(b)
    print("isomorphic" if same else "not isomorphic")
    return EXIT_OK if same else EXIT_REJECTED


def cmd_gen(args) -> int:
    if args.leaves < 2:
        raise _InputError("--leaves must be at least 2")
    rng = random.Random(args.seed)
    if args.kind == "tree":
        _write(args.output, write_newick(random_tree(rng, args.leaves)) + "\n")
    else:
        if args.roots == "single":
            n = random_equidistant_network(rng, args.leaves)
        else:
            n = random_arboreal_network(rng, args.leaves)
        _write(args.output, write_matrix(induced_partial_distance(n)))
    return EXIT_OK


# -- wiring -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arboreal", description="Ultrametric arboreal networks from trees and partial distances.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("uproot", help="ultrametric uprooting of a Newick tree")
    s.add_argument("tree", help="Newick file, or - for stdin")
    s.add_argument("-o", "--output", default="-", help="anet output (default stdout)")
    s.add_argument("--normalize", action="store_true", help="suppress outdegree-1 vertices")
    s.add_argument("--wcps", metavar="ORDER", help="comma-separated weighted cherry-picking sequence")
    s.add_argument("--trace", metavar="DIR", help="write every intermediate network to DIR")
    s.add_argument("--dot", metavar="PATH")
    s.set_defaults(func=cmd_uproot)

    s = sub.add_parser("recognize", help="test the arboreal ultrametric conditions")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("reconstruct", help="build the network representing a partial distance")
    s.add_argument("matrix")
    s.add_argument("-o", "--output", default="-")
    s.add_argument("--dot", metavar="PATH")
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("distances", help="partial distance induced by a network")
    s.add_argument("network")
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_distances)

    s = sub.add_parser("check", help="validate a network and test ultrametricity")
    s.add_argument("network")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("underlying", help="weighted underlying tree as Newick")
    s.add_argument("network")
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_underlying)

    s = sub.add_parser("iso", help="exit 0 iff two networks are isomorphic")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("gen", help="seeded random tree or arboreal ultrametric matrix")
    s.add_argument("kind", choices=["tree", "matrix"])
    s.add_argument("--leaves", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--roots", choices=["single", "multi"], default="multi")
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ReconstructionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # never leak another exit code
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
