"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import graphs as gr
from .export import to_dot, to_json
from .groups import (
    DEFAULT_MAX_ORDER,
    CapExceeded,
    SpecError,
    exponent,
    is_abelian,
    is_cyclic_algebraic,
    is_elementary_abelian,
    order_profile,
    parse_spec,
)
from .odgraph import comparability_graph, extended_graph, is_cyclic_via_od, od_graph
from .theorems import THEOREM_IDS, Bounds, verify_all, with_bounds

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

FIGURES = (("fig1", "D:3"), ("fig2", "D:4"), ("fig3", "Z:8"), ("fig4", "Z:15"), ("fig5", "Z:30"))


def _emit(graph, fmt: str, spec: str | None, name: str, classify: bool = False) -> str:
    if fmt == "dot":
        return to_dot(graph, name)
    return to_json(graph, spec, classify=classify)


def cmd_group(args) -> int:
    g = parse_spec(args.spec, max_order=args.max_order)
    prof = order_profile(g)
    print(f"group: {g.spec}")
    print(f"order: {g.order}")
    print(f"exponent: {exponent(g)}")
    print("order classes: " + ", ".join(f"{d}:{k}" for d, k in prof.items()))
    print(f"abelian: {str(is_abelian(g)).lower()}")
    print(f"cyclic: {str(is_cyclic_algebraic(g)).lower()}")
    print(f"elementary abelian: {str(is_elementary_abelian(g)).lower()}")
    return EXIT_OK


def cmd_od(args) -> int:
    g = parse_spec(args.spec, max_order=args.max_order)
    sys.stdout.write(_emit(od_graph(g).graph, args.format, g.spec, f"OD({g.spec})", args.classify))
    return EXIT_OK


def cmd_lattice(args) -> int:
    if args.n < 1:
        raise SpecError("n must be >= 1")
    if args.n > args.max_order:
        raise CapExceeded(f"n={args.n} exceeds cap {args.max_order}")
    graph = extended_graph(args.n) if args.extended else comparability_graph(args.n)
    name = f"E(G_{args.n})" if args.extended else f"G_{args.n}"
    sys.stdout.write(_emit(graph, args.format, None, name, args.classify))
    return EXIT_OK


def cmd_classify(args) -> int:
    g = parse_spec(args.spec, max_order=args.max_order)
    graph = od_graph(g).graph
    centre = gr.is_star(graph)
    rep = gr.complete_multipartite_parts(graph)
    print(f"group: {g.spec} (order {g.order})")
    if centre is not None:
        print(f"star: yes, S_{graph.vertex_count} centred at {graph.annotations[centre].label}")
    else:
        print("star: no")
    if rep is not None:
        print(f"complete multipartite: yes, part sizes {rep.part_sizes}")
    else:
        print("complete multipartite: no")
    try:
        print(f"chromatic number: {gr.chromatic_number(graph)}")
    except CapExceeded as exc:
        print(f"chromatic number: refused ({exc})")
    d = gr.diameter(graph)
    print(f"diameter: {'inf' if d == math.inf else d}")
    b, c = is_cyclic_via_od(g)
    a = is_cyclic_algebraic(g)
    print(f"cyclic: {str(a).lower()}; E(G_n) ~ OD(G): {str(b).lower()}; G_n ~ R(OD(G)): {str(c).lower()}")
    print(f"cyclic-equivalents agree: {str(a == b == c).lower()}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.all:
        ids = THEOREM_IDS
    elif args.theorem:
        ids = tuple(args.theorem)
        unknown = [t for t in ids if t not in THEOREM_IDS]
        if unknown:
            print(f"unknown theorem id(s): {', '.join(unknown)}; choose from {', '.join(THEOREM_IDS)}",
                  file=sys.stderr)
            return EXIT_USAGE
    else:
        print("give --theorem ID or --all", file=sys.stderr)
        return EXIT_USAGE
    bounds = with_bounds(Bounds(max_order=args.max_order), max_n=args.max_n,
                         max_dihedral_sweep=args.max_dihedral, max_prime=args.max_prime,
                         max_pair_product=args.max_pair_product, max_cyclic=args.max_cyclic,
                         max_units=args.max_units, max_elementary=args.max_elementary)
    try:
        bounds.check()
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CAP
    reports = verify_all(bounds, ids, jobs=args.jobs)
    passed = sum(r.passed for r in reports)
    if args.json:
        doc = {"format_version": "1", "passed": passed, "total": len(reports),
               "reports": [r.to_dict(timing=args.timing) for r in reports]}
        print(json.dumps(doc, indent=2))
    else:
        for r in reports:
            print("\n".join(r.to_lines(timing=args.timing)))
        print(f"{passed}/{len(reports)} pass")
    return EXIT_OK if passed == len(reports) else EXIT_FAIL


def cmd_figures(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, spec in FIGURES:
        g = parse_spec(spec)
        graph = od_graph(g).graph
        (out / f"{name}.json").write_text(to_json(graph, spec), encoding="utf-8")
        (out / f"{name}.dot").write_text(to_dot(graph, f"OD({spec})"), encoding="utf-8")
        print(f"{name}: OD({spec}) -> {out / name}.{{json,dot}}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ordiv", description="Order divisor graphs of finite groups.")
    parser.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                        help="largest group order to construct (default %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="order statistics of a group")
    p.add_argument("spec", help="e.g. Z:30, D:4, U:24, S:4, A:5, EA:3^2, Z:3xZ:5")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("od", help="emit OD(G)")
    p.add_argument("spec")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--classify", action="store_true", help="embed a classification block (json)")
    p.set_defaults(func=cmd_od)

    p = sub.add_parser("classify", help="classify OD(G)")
    p.add_argument("spec")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("lattice", help="emit the divisor comparability graph G_n or E(G_n)")
    p.add_argument("n", type=int)
    p.add_argument("--extended", action="store_true")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--classify", action="store_true")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("verify", help="run the theorem checks")
    p.add_argument("--theorem", action="append", metavar="ID", help=", ".join(THEOREM_IDS))
    p.add_argument("--all", action="store_true")
    p.add_argument("--max-n", type=int, help="C11/C12 sweep limit (default 200)")
    p.add_argument("--max-dihedral", type=int, help="T4 sweep limit (default 50)")
    p.add_argument("--max-prime", type=int, help="T5: largest prime used")
    p.add_argument("--max-pair-product", type=int, help="T5: largest p1*p2 (default 150)")
    p.add_argument("--max-cyclic", type=int, help="corpus: Z_n up to this n (default 60)")
    p.add_argument("--max-units", type=int, help="corpus: U(Z_n) up to this n (default 60)")
    p.add_argument("--max-elementary", type=int, help="corpus: elementary abelian order limit (default 64)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true", help="include elapsed times (output no longer reproducible)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figures", help="write OD graphs for the five figures")
    p.add_argument("--out", default="figures")
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
