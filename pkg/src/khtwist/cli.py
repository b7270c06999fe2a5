"""Command-line entry point.

Subcommands: compute (homology table), jones (both polynomial paths),
twist-scan / torus-scan (degree-growth reports), verify (fixture suite).
Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys

from .diagram import (LinkDiagram, TwistRegion, braid_closure, parse_pd)
from .errors import KhtwistError
from .homology import (i_max, jones_from_kh, khovanov_table, normalize,
                       serialize_table)
from .jones import jones_polynomial
from .scan import report_to_csv, report_to_text, torus_scan, twist_scan


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="kh",
        description="Rational Khovanov homology, Jones polynomials, and "
                    "half-twist degree-growth scans for link diagrams.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input_opts(p, with_mark=False):
        p.add_argument("--pd", metavar="FILE",
                       help="planar diagram code file")
        p.add_argument("--braid", metavar="WORD",
                       help="braid word, e.g. '1,1,1' or '-1 2 -1'")
        p.add_argument("--strands", type=int, metavar="K",
                       help="strand count for --braid")
        if with_mark:
            p.add_argument("--mark", metavar="E1,E2",
                           help="marked edge pair (overrides any mark "
                                "in the input)")
        p.add_argument("--budget", type=int, default=16, metavar="C",
                       help="crossing budget (default 16)")
        p.add_argument("--threads", type=int, default=1, metavar="T",
                       help="worker threads for rank computations")

    p = sub.add_parser("compute", help="normalized homology table")
    add_input_opts(p)

    p = sub.add_parser("jones", help="Jones polynomial via both paths")
    add_input_opts(p)

    p = sub.add_parser("twist-scan", help="half-twist family scan")
    add_input_opts(p, with_mark=True)
    p.add_argument("--max-n", type=int, default=12, metavar="N")
    p.add_argument("--out", choices=("csv", "text"), default="text")

    p = sub.add_parser("torus-scan", help="T(2, n) family scan")
    p.add_argument("--max-n", type=int, default=10, metavar="N")
    p.add_argument("--out", choices=("csv", "text"), default="text")
    p.add_argument("--budget", type=int, default=16, metavar="C")
    p.add_argument("--threads", type=int, default=1, metavar="T")

    p = sub.add_parser("verify", help="run the built-in fixture suite")
    p.add_argument("--threads", type=int, default=1, metavar="T")

    return parser


def _load_diagram(args, need_mark=False):
    if args.pd and args.braid:
        raise KhtwistError("give either --pd or --braid, not both")
    if args.pd:
        with open(args.pd) as fh:
            diagram = parse_pd(fh.read())
    elif args.braid:
        if not args.strands:
            raise KhtwistError("--braid requires --strands")
        word = [int(w) for w in args.braid.replace(",", " ").split()]
        diagram = braid_closure(word, args.strands)
    else:
        raise KhtwistError("no input: give --pd or --braid")
    mark = getattr(args, "mark", None)
    if mark:
        left, right = (p.strip() for p in mark.split(","))
        pair = tuple(p if p.startswith("L") else int(p)
                     for p in (left, right))
        diagram = LinkDiagram(
            [c.edges for c in diagram.crossings],
            free_loops=diagram.free_loops,
            marked_region=TwistRegion(pair))
    if need_mark and diagram.marked_region is None:
        raise KhtwistError("this scan needs a marked region "
                           "(mark= in the PD file, or --mark)")
    return diagram


def _cmd_compute(args):
    diagram = _load_diagram(args)
    table = khovanov_table(diagram, budget=args.budget, threads=args.threads)
    sys.stdout.write(serialize_table(normalize(table)))
    return 0


def _cmd_jones(args):
    diagram = _load_diagram(args)
    table = khovanov_table(diagram, budget=args.budget, threads=args.threads)
    via_kh = jones_from_kh(normalize(table))
    via_bracket = jones_polynomial(diagram)
    print(f"jones_from_homology={via_kh.render()}")
    print(f"jones_from_state_sum={via_bracket.render()}")
    agree = via_kh == via_bracket
    print(f"agree={'true' if agree else 'false'}")
    return 0 if agree else 1


def _cmd_twist_scan(args):
    base = _load_diagram(args, need_mark=True)
    report = twist_scan(base, args.max_n, budget=args.budget,
                        threads=args.threads)
    writer = report_to_csv if args.out == "csv" else report_to_text
    sys.stdout.write(writer(report))
    return 0 if report.passed() else 1


def _cmd_torus_scan(args):
    report = torus_scan(args.max_n, budget=args.budget, threads=args.threads)
    writer = report_to_csv if args.out == "csv" else report_to_text
    sys.stdout.write(writer(report))
    return 0 if report.passed() else 1


def _cmd_verify(args):
    from .verify import run_verify
    return run_verify(threads=args.threads, stream=sys.stdout)


_COMMANDS = {
    "compute": _cmd_compute,
    "jones": _cmd_jones,
    "twist-scan": _cmd_twist_scan,
    "torus-scan": _cmd_torus_scan,
    "verify": _cmd_verify,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except KhtwistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
