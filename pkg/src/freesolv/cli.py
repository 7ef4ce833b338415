"""Command-line front end.

Decision commands (``wp``, ``bglp``, ``rstp --bound``) exit with 0 for
yes/trivial, 1 for no/nontrivial, 2 for usage or parse errors and 3 when the
answer is undecided within the exact-solver budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from .abelian_fox import derivative_as_ring_element, fox_abelian, wp_metabelian
from .bench import SUITES, run_bench
from .flows import path_flow
from .geodesic import UndecidedError, bglp, geodesic
from .magnus import magnus_image, magnus_is_identity
from .solvable import fox_solvable, wp_solvable
from .steiner import (
    DEFAULT_VERTEX_LIMIT,
    ExactLimitError,
    default_terminal_limit,
    parse_points,
    steiner_tree,
)
from .rstp import rstp_decide
from .words import WordError, abelianize, format_word, parse_word

YES, NO, USAGE, UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _read_word(args) -> "Word":
    if (args.word is None) == (args.word_file is None):
        raise UsageError("give exactly one of --word or --word-file")
    if args.word is not None:
        text = args.word
    else:
        with open(args.word_file) as fh:
            text = fh.read()
    return parse_word(text, args.rank)


def _read_points(args):
    if (args.points is None) == (args.points_file is None):
        raise UsageError("give exactly one of --points or --points-file")
    if args.points is not None:
        text = args.points
    else:
        with open(args.points_file) as fh:
            text = fh.read()
    return parse_points(text)


def _limits(args) -> dict:
    limit = args.exact_limit if args.exact_limit is not None else default_terminal_limit()
    return {"terminal_limit": limit, "vertex_limit": args.vertex_limit}


def cmd_wp(args, out) -> int:
    w = _read_word(args)
    if args.klass < 1:
        raise UsageError("--class must be >= 1")
    if args.klass == 1:
        trivial = not any(abelianize(w))
    elif args.klass == 2:
        trivial = wp_metabelian(w)
    else:
        trivial = wp_solvable(w, args.klass)
    if args.json:
        print(_dump({"class": args.klass, "trivial": trivial}), file=out)
    else:
        print("trivial" if trivial else "nontrivial", file=out)
    return YES if trivial else NO


def cmd_fox(args, out) -> int:
    w = _read_word(args)
    gens = [args.gen] if args.gen else list(range(1, w.rank + 1))
    for k in gens:
        if not 1 <= k <= w.rank:
            raise UsageError(f"--gen {k} out of range for rank {w.rank}")
    if args.klass < 1:
        raise UsageError("--class must be >= 1")
    if args.klass == 1:
        m = fox_abelian(w)
        if args.json:
            entries = m.to_json() if not args.gen else [e for e in m.to_json() if e["gen"] == args.gen]
            print(_dump(entries), file=out)
        else:
            for k in gens:
                print(f"d/dx{k}: {derivative_as_ring_element(m, k)}", file=out)
        return YES
    elems = [fox_solvable(w, args.klass, k) for k in gens]
    if args.json:
        print(_dump([e.to_json() for e in elems]), file=out)
    else:
        for k, e in zip(gens, elems):
            print(f"d/dx{k}: {e}", file=out)
    return YES


def cmd_magnus(args, out) -> int:
    w = _read_word(args)
    if args.klass < 2:
        raise UsageError("--class must be >= 2 for the Magnus embedding")
    img = magnus_image(w, args.klass)
    if args.json:
        print(_dump(img.to_json()), file=out)
    else:
        if img.klass == 2:
            print(f"diagonal: {list(img.diagonal)}", file=out)
        else:
            print(f"diagonal: prefix {img.diagonal}", file=out)
        for i, row in enumerate(img.rows, start=1):
            print(f"t{i}: {row}", file=out)
        print(f"identity: {magnus_is_identity(img)}", file=out)
    return YES


def cmd_flow(args, out) -> int:
    f = path_flow(_read_word(args))
    if args.json:
        print(_dump(f.to_json()), file=out)
    else:
        print(f"source {list(f.source)} sink {list(f.sink)}", file=out)
        for (v, axis), x in f.edges():
            print(f"{list(v)} x{axis} {x:+d}", file=out)
    return YES


def cmd_geodesic(args, out) -> int:
    w = _read_word(args)
    res = geodesic(w, args.mode, **_limits(args))
    if args.json:
        print(_dump(res.to_json()), file=out)
    else:
        print(format_word(res.word), file=out)
        print(f"length {res.length} exact {str(res.exact).lower()}", file=out)
    return YES


def cmd_bglp(args, out) -> int:
    w = _read_word(args)
    if args.bound < 0:
        raise UsageError("--bound must be >= 0")
    answer = bglp(w, args.bound, **_limits(args))
    print("yes" if answer else "no", file=out)
    return YES if answer else NO


def cmd_rstp(args, out) -> int:
    points = _read_points(args)
    if args.bound is None:
        res = steiner_tree(points, **_limits(args))
        if args.json:
            print(_dump(res.to_json()), file=out)
        else:
            print(f"size {res.size}", file=out)
        return YES
    answer = rstp_decide(points, args.bound, **_limits(args))
    print("yes" if answer else "no", file=out)
    return YES if answer else NO


def cmd_bench(args, out) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()] if args.sizes else []
    if any(b < a for a, b in zip(sizes, sizes[1:])):
        raise UsageError("--sizes must be non-decreasing")
    report = run_bench(args.suite, sizes, seed=args.seed, seeds=args.seeds,
                       rank=args.rank, klass=args.klass)
    if args.json:
        print(_dump(report.to_json()), file=out)
    else:
        print(report.format_table(), file=out)
    return YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freesolv",
                                     description="Word problems and geodesics in free solvable groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def word_cmd(name, help_, klass_default=None):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--rank", type=int, default=2)
        p.add_argument("--word")
        p.add_argument("--word-file")
        p.add_argument("--json", action="store_true")
        if klass_default is not None:
            p.add_argument("--class", dest="klass", type=int, default=klass_default)
        return p

    def limit_flags(p):
        p.add_argument("--exact-limit", type=int, default=None,
                       help="max components for the exact forest solver")
        p.add_argument("--vertex-limit", type=int, default=DEFAULT_VERTEX_LIMIT)

    word_cmd("wp", "word problem in S_{r,d}", 2).set_defaults(func=cmd_wp)
    p = word_cmd("fox", "Fox derivatives in Z S_{r,d}", 1)
    p.add_argument("--gen", type=int, default=None)
    p.set_defaults(func=cmd_fox)
    word_cmd("magnus", "Magnus embedding image", 2).set_defaults(func=cmd_magnus)
    word_cmd("flow", "grid flow of a word").set_defaults(func=cmd_flow)
    p = word_cmd("geodesic", "geodesic word in M_r")
    p.add_argument("--mode", choices=("auto", "exact", "approximate"), default="auto")
    limit_flags(p)
    p.set_defaults(func=cmd_geodesic)
    p = word_cmd("bglp", "decide l(w) <= bound in M_r")
    p.add_argument("--bound", type=int, required=True)
    limit_flags(p)
    p.set_defaults(func=cmd_bglp)

    p = sub.add_parser("rstp", help="rectilinear Steiner size, or decide s(A) < bound via M_2")
    p.add_argument("--points")
    p.add_argument("--points-file")
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--json", action="store_true")
    limit_flags(p)
    p.set_defaults(func=cmd_rstp)

    p = sub.add_parser("bench", help="time the word-problem solvers")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--sizes", default="")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--class", dest="klass", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else YES
    try:
        return args.func(args, out)
    except (UsageError, WordError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return USAGE
    except (UndecidedError, ExactLimitError) as exc:
        print(f"undecided: {exc}", file=err)
        return UNDECIDED


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
