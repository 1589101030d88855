"""Command-line front end.

Exit codes: 0 success, 1 the check or pass reported a problem, 2 the input did
not parse, 3 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core_ir import MalformedJoinRhs, expr_size, flatten_binds
from .exitify import ExitifyMode, exitify_program
from .freevars import expr_free_vars
from .lint import lint_program
from .subst import Subst, subst_expr
from .syntax import (
    ParseError, parse_program, parse_subst_spec, print_program,
    print_var,
)
from .core_ir import NonRec, Rec
from .testgen import gen_program
from .varset import InScopeSet, mk_var_env, mk_var_set

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class _InputError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(EXIT_USAGE, f"cannot read {path}: {exc.strerror}") from exc


def _load(path: str):
    text = _read(path)
    try:
        return parse_program(text)
    except ParseError as exc:
        raise _InputError(EXIT_PARSE, f"{path}:{exc}") from exc


def cmd_lint(args) -> int:
    report = lint_program(_load(args.file), join_points=args.join_points)
    print(report.render())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_freevars(args) -> int:
    for v, rhs in flatten_binds(_load(args.file)):
        fvs = " ".join(print_var(w) for w in expr_free_vars(rhs))
        print(f"{print_var(v)}: {fvs}".rstrip())
    return EXIT_OK


def cmd_size(args) -> int:
    total = 0
    for v, rhs in flatten_binds(_load(args.file)):
        n = expr_size(rhs)
        total += n
        print(f"{print_var(v)} {n}")
    print(f"total {total}")
    return EXIT_OK


def cmd_subst(args) -> int:
    program = _load(args.file)
    try:
        spec = parse_subst_spec(_read(args.spec))
    except ParseError as exc:
        raise _InputError(EXIT_PARSE, f"{args.spec}:{exc}") from exc
    s = Subst(InScopeSet(mk_var_set(spec.inscope)), mk_var_env(spec.mappings))
    out = []
    warnings = []
    for b in program:
        if isinstance(b, NonRec):
            rhs, ws = subst_expr(args.file, s, b.rhs)
            warnings += ws
            out.append(NonRec(b.binder, rhs))
        else:
            pairs = []
            for v, rhs in b.pairs:
                rhs2, ws = subst_expr(args.file, s, rhs)
                warnings += ws
                pairs.append((v, rhs2))
            out.append(Rec(tuple(pairs)))
    sys.stdout.write(print_program(out))
    for w in warnings:
        print(f"warning: {w.doc}: {print_var(w.offending_var)} is not in scope", file=sys.stderr)
    return EXIT_FAIL if warnings else EXIT_OK


def cmd_exitify(args) -> int:
    mode = ExitifyMode.LEGACY_BUG if args.legacy_bug else ExitifyMode.FIXED
    try:
        out = exitify_program(mode, _load(args.file))
    except MalformedJoinRhs as exc:
        print(f"{args.file}: malformed join right-hand side: {exc}", file=sys.stderr)
        return EXIT_FAIL
    sys.stdout.write(print_program(out))
    return EXIT_OK


def cmd_gen(args) -> int:
    for name, p in (("--shadow", args.shadow), ("--join-density", args.join_density)):
        if not 0.0 <= p <= 1.0:
            raise _InputError(EXIT_USAGE, f"{name} must be within [0, 1]")
    if args.size < 0:
        raise _InputError(EXIT_USAGE, "--size must be non-negative")
    sys.stdout.write(print_program(gen_program(args.seed, args.size, args.shadow, args.join_density)))
    return EXIT_OK


def cmd_fmt(args) -> int:
    sys.stdout.write(print_program(_load(args.file)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="minicore", description="Core IR checker and passes")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lint", help="check well-scopedness (and join points)")
    p.add_argument("file")
    p.add_argument("--join-points", action="store_true")
    p.set_defaults(func=cmd_lint)

    p = sub.add_parser("freevars", help="free local variables of each top-level rhs")
    p.add_argument("file")
    p.set_defaults(func=cmd_freevars)

    p = sub.add_parser("size", help="expression size of each top-level rhs")
    p.add_argument("file")
    p.set_defaults(func=cmd_size)

    p = sub.add_parser("subst", help="apply a substitution to each top-level rhs")
    p.add_argument("file")
    p.add_argument("--spec", required=True)
    p.set_defaults(func=cmd_subst)

    p = sub.add_parser("exitify", help="run the exitification pass")
    p.add_argument("file")
    p.add_argument("--legacy-bug", action="store_true",
                   help="abstract over every captured binder, shadowed or not")
    p.set_defaults(func=cmd_exitify)

    p = sub.add_parser("gen", help="generate a random valid program")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--shadow", type=float, default=0.2)
    p.add_argument("--join-density", type=float, default=0.5)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fmt", help="parse and print in canonical form")
    p.add_argument("file")
    p.set_defaults(func=cmd_fmt)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))
    try:
        return args.func(args)
    except _InputError as exc:
        print(exc, file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
