"""Command-line interface.

Exit status: 0 for SAT / all checks passed, 1 for UNSAT / a failed check,
2 for usage, parse and precondition errors.
"""
from __future__ import annotations

import argparse
import os
import sys

from .algebra import RelationSyntaxError, Subclass, default_table, derive_composition_table
from .catalog import MAXIMAL_TRACTABLE
from .classifier import classify, verify_maximality, verify_theorem_4_2
from .models import TooManyVariables, oracle_satisfiable, satisfies
from .network import NetworkSyntaxError, parse
from .solvers import PreconditionError, solve

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_solve(args) -> int:
    net = parse(_read(args.file))
    result = solve(net, args.algorithm)
    if args.model and result.model is not None and not satisfies(result.model, net):
        print("error: witness failed re-verification", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(result.render(with_model=args.model))
    return EXIT_OK if result.satisfiable else EXIT_FAIL


def cmd_oracle(args) -> int:
    net = parse(_read(args.file))
    ok, model = oracle_satisfiable(net)
    sys.stdout.write("SAT\nalgorithm oracle\n" if ok else "UNSAT\nalgorithm oracle\n")
    if ok:
        sys.stdout.write(model.serialize())
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    if args.file:
        text = _read(args.file)
        text = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    else:
        text = " ".join(args.relations)
    s = Subclass.parse(text)
    print(classify(s).render())
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.emit_table:
        print(derive_composition_table().render())
        return EXIT_OK
    workers = args.workers if args.workers is not None else (os.cpu_count() or 1)
    if derive_composition_table() != default_table():
        print("composition table: derived table differs from shipped fixture", file=sys.stderr)
        return EXIT_FAIL
    print("composition table: derived table matches shipped fixture")
    for name, m in MAXIMAL_TRACTABLE.items():
        print(f"{name}: {len(m)} relations")
    report = verify_theorem_4_2(workers=workers, keep_rows=bool(args.report))
    print(report.summary())
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write("".join(row + "\n" for row in report.rows))
    maximal = verify_maximality()
    print(maximal.summary())
    for name, r, c in maximal.exceptions:
        print(f"  exception: {name} + {r} -> {c.render()}")
    return EXIT_OK if report.ok and maximal.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rcc5", description="RCC-5 satisfiability and tractability tools")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide satisfiability of a network file")
    s.add_argument("file", help="network file, or - for stdin")
    s.add_argument("--algorithm", default="auto", choices=["auto", "a17", "a20", "r514", "pc", "bt"])
    s.add_argument("--model", action="store_true", help="print a verified witness")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("classify", help="classify a subclass as polynomial or NP-complete")
    c.add_argument("relations", nargs="*", help="relations such as {PO} {PP,PPI}")
    c.add_argument("--file", help="file with one relation per line")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="re-run the classification and maximality checks")
    v.add_argument("--emit-table", action="store_true", help="print the derived composition table")
    v.add_argument("--workers", type=int, default=None)
    v.add_argument("--report", help="write one row per checked subset to this path")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="brute-force ground truth for at most four variables")
    o.add_argument("file")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NetworkSyntaxError, RelationSyntaxError, PreconditionError, TooManyVariables, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
