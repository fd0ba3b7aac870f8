"""``contact-count`` command line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
import warnings
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .classes import ConditionMultiset, moduli_dim, parse_condition_spec
from .localization import LocalizationEngine, NonIntegralError, WeightMismatchError
from .memo import CacheFormatError, MemoStore
from .strata import (
    LabeledQuery,
    StrataCalculator,
    VerificationError,
    cone_closed_form,
    cone_recombination,
    cone_tree,
)
from .tables import TABLES, table_rows
from .treeio import TreeFormatError, describe, dump_tree, parse_tree, to_dot
from .trees import enumerate_stable_trees, validate

log = logging.getLogger("contactcount")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(value) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--cache", metavar="PATH", default=default(None), help="persistent memo file")
    parser.add_argument("--threads", type=int, metavar="K", default=default(1))
    parser.add_argument("--seed", type=int, metavar="S", default=default(0), help="weight sampling seed")
    parser.add_argument(
        "--verify-weights",
        action=argparse.BooleanOptionalAction,
        default=default(True),
        help="evaluate every localization sum with two weight vectors (default: on)",
    )
    parser.add_argument("--verbose", "-v", action="store_true", default=default(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contact-count", description="Count rational contact curves in odd-dimensional projective space."
    )
    _globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trees", help="list stable (m, d)-trees up to isomorphism")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--positive", action="store_true", help="only trees with positive vertex degrees")
    p.add_argument("--out", metavar="DIR", help="write one file per tree into DIR")
    p.add_argument("--dot", action="store_true", help="also emit DOT renderings")

    p = sub.add_parser("gw", help="contact Gromov-Witten integral")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--cond", required=True, help="condition spec, e.g. 2^7 or 2,3,3")

    p = sub.add_parser("stratum", help="integral over the closure of one stratum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tree", required=True, metavar="FILE")
    p.add_argument("--cond", required=True, help="label:codim,... for every leaf")

    p = sub.add_parser("irreducible", help="number of irreducible contact curves")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--cond", required=True)
    p.add_argument("--breakdown", action="store_true", help="print every positive-degree stratum")
    p.add_argument("--method", choices=("shapes", "trees"), default="shapes")

    p = sub.add_parser("table", help="recompute a published table")
    p.add_argument("which", choices=sorted(TABLES))
    p.add_argument("--max-d", type=int, default=4)
    p.add_argument("--diff", action="store_true", help="compare with the published values")
    p.add_argument("--long", action="store_true", help="allow degree 5 rows in P^3")

    p = sub.add_parser("lv", help="contact plane curves meeting d+3 lines in P^3")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="recompute the two cone strata and recombine")
    p.add_argument("--tree1", metavar="FILE", help="first cone tree (default: built in)")
    p.add_argument("--tree2", metavar="FILE", help="second cone tree (default: built in)")

    for action in sub.choices.values():
        _globals(action, suppress=True)
    return parser


class Session:
    def __init__(self, args):
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        self.args = args
        self.memo = MemoStore()
        if args.cache and Path(args.cache).exists():
            self.memo = MemoStore.load(args.cache)
            log.info("loaded %d cached values from %s", len(self.memo), args.cache)
        self._calcs = {}

    def calculator(self, n: int, method: str = "shapes") -> StrataCalculator:
        if n < 1 or n % 2 == 0:
            raise UsageError("--n must be a positive odd integer")
        key = (n, method)
        if key not in self._calcs:
            engine = LocalizationEngine(
                n, seed=self.args.seed, verify=self.args.verify_weights, threads=self.args.threads
            )
            self._calcs[key] = StrataCalculator(n, engine=engine, memo=self.memo, method=method)
        return self._calcs[key]

    def close(self):
        if self.args.cache:
            self.memo.save(self.args.cache)


def _conditions(n: int, spec: str) -> ConditionMultiset:
    try:
        return ConditionMultiset(n, parse_condition_spec(spec))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_trees(session: Session, out) -> int:
    a = session.args
    if a.m < 0 or a.d < 0:
        raise UsageError("--m and --d must be non-negative")
    trees = enumerate_stable_trees(a.m, a.d, positive_only=a.positive)
    if a.out:
        target = Path(a.out)
        try:
            target.mkdir(parents=True, exist_ok=True)
            for i, (_, tree) in enumerate(trees, start=1):
                (target / f"tree_{i:04d}.txt").write_text(dump_tree(tree, describe(tree)))
                if a.dot:
                    (target / f"tree_{i:04d}.dot").write_text(to_dot(tree, f"tree_{i}"))
        except OSError as exc:
            raise UsageError(f"cannot write to {target}: {exc}") from exc
    else:
        for i, (_, tree) in enumerate(trees, start=1):
            out.write(dump_tree(tree, f"class {i} {describe(tree)}"))
            if a.dot:
                out.write(to_dot(tree, f"tree_{i}"))
            out.write("\n")
    out.write(f"count {len(trees)}\n")
    return EXIT_OK


def cmd_gw(session: Session, out) -> int:
    a = session.args
    calc = session.calculator(a.n)
    cond = _conditions(a.n, a.cond)
    if a.d < 1:
        raise UsageError("--d must be >= 1")
    if cond.total != moduli_dim(a.n, a.d, len(cond)):
        log.warning("conditions sum to %d, expected %d", cond.total, moduli_dim(a.n, a.d, len(cond)))
        out.write("0\n")
        return EXIT_OK
    out.write(fmt(calc.gw(a.d, cond.codims)) + "\n")
    return EXIT_OK


def _parse_leaf_conditions(spec: str) -> dict:
    conds = {}
    try:
        for token in spec.split(","):
            label, codim = token.split(":")
            if int(label) in conds:
                raise ValueError(f"duplicate label {label}")
            conds[int(label)] = int(codim)
    except ValueError as exc:
        raise UsageError(f"malformed --cond {spec!r}: {exc}") from exc
    return conds


def _read_tree(path: str):
    try:
        tree = parse_tree(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except TreeFormatError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    problems = validate(tree)
    if problems:
        raise UsageError(f"{path}: not a stable tree: {'; '.join(problems)}")
    return tree


def cmd_stratum(session: Session, out) -> int:
    a = session.args
    calc = session.calculator(a.n)
    tree = _read_tree(a.tree)
    try:
        query = LabeledQuery(a.n, tree, _parse_leaf_conditions(a.cond))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        value = calc.graph_count(query)
    for w in caught:
        log.warning("%s", w.message)
    out.write(fmt(value) + "\n")
    return EXIT_OK


def cmd_irreducible(session: Session, out) -> int:
    a = session.args
    calc = session.calculator(a.n, a.method)
    cond = _conditions(a.n, a.cond)
    if a.d < 1:
        raise UsageError("--d must be >= 1")
    if cond.total != moduli_dim(a.n, a.d, len(cond)):
        log.warning(
            "dimension mismatch: conditions sum to %d, moduli space has dimension %d",
            cond.total,
            moduli_dim(a.n, a.d, len(cond)),
        )
        out.write("0\n")
        return EXIT_OK
    value = calc.single_vertex_closure_integral(a.d, cond.codims)
    if value.denominator != 1 or value < 0:
        raise VerificationError(f"irreducible count {value} is not a non-negative integer")
    out.write(fmt(value) + "\n")
    if a.breakdown:
        out.write(f"# full integral {fmt(calc.gw(a.d, cond.codims))}; leaves 1..{len(cond)} carry {list(cond.codims)}\n")
        for tree, v in calc.breakdown(a.d, cond.codims):
            parts = " | ".join(
                f"{tree.degrees[x]}:{{{','.join(map(str, tree.leaves_at(x)))}}}" for x in tree.degrees
            )
            out.write(f"{fmt(v)}\t{parts}\tedges={len(tree.edges)}\n")
    return EXIT_OK


def cmd_table(session: Session, out) -> int:
    a = session.args
    n, published = TABLES[a.which]
    if a.which == "p3" and a.max_d >= 5 and not a.long:
        raise UsageError("degree 5 rows in P^3 need --long")
    calc = session.calculator(n)
    mismatches = 0
    for d, vec in table_rows(a.which, a.max_d):
        t0 = time.perf_counter()
        value = calc.irreducible_count(d, vec)
        log.info("d=%d a=%s computed in %.2fs", d, vec, time.perf_counter() - t0)
        vec_text = "(" + ",".join(map(str, vec)) + ")"
        line = f"{d}\t{vec_text}\t{value}"
        if a.diff:
            expected = published.get((d, vec))
            if expected is None:
                line += "\tunpublished"
            elif expected == value:
                line += "\tok"
            else:
                line += f"\tMISMATCH published={expected}"
                mismatches += 1
        out.write(line + "\n")
    if a.diff:
        out.write(f"# {mismatches} mismatches against published values\n")
        if mismatches:
            return EXIT_VERIFY
    return EXIT_OK


def cmd_lv(session: Session, out) -> int:
    a = session.args
    if a.d < 1:
        raise UsageError("--d must be >= 1")
    closed = cone_closed_form(a.d)
    out.write(f"{closed}\n")
    if not a.verify:
        return EXIT_OK
    if a.d < 3:
        out.write("# degrees 1 and 2 need no strata\n")
        return EXIT_OK
    calc = session.calculator(3)
    values = []
    for kind, path in ((1, a.tree1), (2, a.tree2)):
        tree = _read_tree(path) if path else parse_tree(dump_tree(cone_tree(a.d, kind)))
        query = LabeledQuery(3, tree, {i: 2 for i in range(1, tree.m + 1)})
        values.append(calc.graph_count(query))
    total = cone_recombination(a.d, values[0], values[1])
    out.write(f"# stratum values {fmt(values[0])} {fmt(values[1])}; recombined {fmt(total)}\n")
    if values != [4, 8] or total != closed:
        log.error("cone verification failed: strata %s, recombined %s, closed form %d", values, total, closed)
        return EXIT_VERIFY
    return EXIT_OK


COMMANDS = {
    "trees": cmd_trees,
    "gw": cmd_gw,
    "stratum": cmd_stratum,
    "irreducible": cmd_irreducible,
    "table": cmd_table,
    "lv": cmd_lv,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        session = Session(args)
        t0 = time.perf_counter()
        code = COMMANDS[args.command](session, out)
        log.info("%s finished in %.2fs", args.command, time.perf_counter() - t0)
        session.close()
        return code
    except (UsageError, CacheFormatError) as exc:
        print(f"contact-count: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (WeightMismatchError, NonIntegralError, VerificationError) as exc:
        print(f"contact-count: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
