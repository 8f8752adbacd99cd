"""Batch command-line surface over the toolkit.

Exit codes: 0 success / Equivalent / pass, 1 NotEquivalent / fail,
2 usage or parse error, 3 OutOfScope.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ainf, bgfile, invariants, kauer
from .algebra import basis_and_dimension, build_quiver
from .ribbon import RibbonGraphError, enumerate_graphs

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_OUT_OF_SCOPE = 3


def _load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return bgfile.load_brauer_graph(fh.read())


def _load_parsed(path):
    with open(path, "r", encoding="utf-8") as fh:
        return bgfile.parse(fh.read())


def cmd_validate(args, out):
    g = _load(args.file)
    rg = g.ribbon
    out.write("valid: V=%d E=%d H=%d\n" % (len(rg.vertices), len(rg.edges), rg.n))
    return EXIT_OK


def cmd_invariants(args, out):
    g = _load(args.file)
    bundle = invariants.invariant_bundle(g)
    data = bundle.as_dict()
    if args.format == "json":
        out.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    else:
        for key in sorted(data):
            out.write("%s: %s\n" % (key, data[key]))
    return EXIT_OK


def cmd_compare(args, out):
    g1, g2 = _load(args.file1), _load(args.file2)
    verdict = invariants.derived_equivalent(g1, g2)
    out.write(verdict.render() + "\n")
    if verdict.kind == "equivalent":
        return EXIT_OK
    if verdict.kind == "out_of_scope":
        return EXIT_OUT_OF_SCOPE
    return EXIT_FAIL


def cmd_present(args, out):
    g = _load(args.file)
    kind = {"ordinary": "ordinary", "stably": "stably",
            "reduced": "reduced"}[args.kind]
    pres = build_quiver(g, kind)
    out.write(pres.serialize())
    return EXIT_OK


def cmd_dim(args, out):
    g = _load(args.file)
    alg = basis_and_dimension(g)
    out.write("dimension %d\n" % alg.dimension)
    return EXIT_OK


def cmd_mutate(args, out):
    g = _load(args.file)
    moved, desc = kauer.kauer_move(g, args.edge)
    out.write("# case: %s\n" % desc.case)
    for degree, edge, label in desc.summands:
        out.write("# summand: degree %d projective P%d%s\n" %
                  (degree, edge, " via %s" % label if label else ""))
    out.write(bgfile.serialize_canonical(moved))
    return EXIT_OK


def cmd_search(args, out):
    g1, g2 = _load(args.file1), _load(args.file2)
    result = kauer.mutation_search(g1, g2, max_depth=args.max_depth)
    if result.status == "not_equivalent":
        out.write(result.verdict.render() + "\n")
        return (EXIT_OUT_OF_SCOPE if result.verdict.kind == "out_of_scope"
                else EXIT_FAIL)
    if result.status == "not_found":
        out.write("NotFound within depth %d\n" % args.max_depth)
        return EXIT_FAIL
    seq = result.sequence
    out.write("found sequence of length %d\n" % len(seq.steps))
    for step in seq.steps:
        out.write("mutate edge %d -> %s\n" %
                  (step.edge, step.canonical_form.decode()))
    return EXIT_OK


def cmd_enumerate(args, out):
    graphs = enumerate_graphs(args.edges, args.max_mult)
    if args.genus is not None:
        graphs = [g for g in graphs if g.ribbon.genus() == args.genus]
    out.write("# %d graphs\n" % len(graphs))
    for g in graphs:
        out.write(bgfile.serialize_canonical(g))
        out.write("\n")
    return EXIT_OK


def cmd_classes(args, out):
    graphs = [g for g in enumerate_graphs(args.edges, args.max_mult)
              if len(g.ribbon.edges) >= 2]
    classes = invariants.partition_into_classes(graphs)
    out.write("# %d classes over %d graphs\n" % (len(classes), len(graphs)))
    for i, cls in enumerate(classes):
        bundle = invariants.invariant_bundle(cls[0])
        out.write("class %d: %d graphs, perimeters=%s multiplicities=%s bipartite=%s\n"
                  % (i, len(cls), list(bundle.perimeters),
                     list(bundle.multiplicities), bundle.bipartite))
    return EXIT_OK


def cmd_ainf_check(args, out):
    parsed = _load_parsed(args.file)
    system = ainf.arc_system_from_parsed(parsed)
    if args.convention_search:
        winners = ainf.convention_search(
            [lambda conv: ainf.build_category(system, conv)],
            max_len=args.max_len)
        out.write("passing conventions: %d of %d\n" %
                  (len(winners), len(ainf.ALL_CONVENTIONS)))
        for conv in winners:
            out.write("  %r\n" % (conv,))
        return EXIT_OK if winners else EXIT_FAIL
    cat = ainf.build_category(system)
    report = ainf.verify_relations(cat, max_len=args.max_len)
    out.write(report.render() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def make_parser():
    parser = argparse.ArgumentParser(
        prog="bgat", description="Brauer graph algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a .bg file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", help="derived-invariant bundle")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("compare", help="decide derived equivalence")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("present", help="quiver presentation")
    p.add_argument("file")
    p.add_argument("--kind", choices=("ordinary", "stably", "reduced"),
                   default="ordinary")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("dim", help="algebra dimension by the exact oracle")
    p.add_argument("file")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("mutate", help="Kauer move at an edge")
    p.add_argument("file")
    p.add_argument("--edge", type=int, required=True)
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("search", help="mutation sequence between two graphs")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--max-depth", type=int, default=8)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("enumerate", help="all graphs up to isomorphism")
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--max-mult", type=int, default=1)
    p.add_argument("--genus", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classes", help="derived-equivalence classes")
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--max-mult", type=int, default=1)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("ainf-check", help="A-infinity relation check")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--convention-search", action="store_true")
    p.set_defaults(func=cmd_ainf_check)

    return parser


def dispatch(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (bgfile.BgParseError, RibbonGraphError, OSError, ValueError) as exc:
        err.write("error: %s\n" % exc)
        return EXIT_USAGE


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
