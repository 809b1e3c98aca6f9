"""Command line: ``loopforge construct|verify|search|convert``.

Exit status: 0 success, 1 the table is not what was asked for (or not a
loop), 2 bad input or an impossible request, 3 internal failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .construct_even import certify_even_generators, construct_even_loop
from .construct_odd import (ALTERNATING, SYMMETRIC, InfeasibleTarget,
                            certify_odd_generators, construct_odd_loop)
from .formats import TableParseError, read_table, report_to_json, write_table
from .loopcore import TableError, all_left_even, analyze
from .search import SearchTooLarge, census
from .zone import ZoneSearchError

OK, NEGATIVE, USER_ERROR, INTERNAL = 0, 1, 2, 3

GROUPS = {"sym": SYMMETRIC, "alt": ALTERNATING, "auto": SYMMETRIC}


class UserError(Exception):
    pass


def _report_path(out: Path) -> Path:
    return out.with_name(out.stem + ".report.json")


def _build(n: int, target: str):
    """The table plus the certificate of its generating pair, when the
    construction has one."""
    if n < 5:
        raise UserError(f"no nonassociative unbreakable loop of order {n}; use n >= 5")
    if n % 2 == 0:
        if target == ALTERNATING:
            raise UserError(f"order {n} is even: only the symmetric group is offered")
        t = construct_even_loop(n)
        cert = certify_even_generators(t, strict=False) if n >= 10 else None
        return t, cert
    try:
        t = construct_odd_loop(n, target)
    except InfeasibleTarget as exc:
        raise UserError(str(exc)) from None
    templated = n >= 43 or (n >= 21 and target == SYMMETRIC)
    cert = certify_odd_generators(t, strict=False) if templated else None
    return t, cert


def _problems(rep, t, n: int, target: str, cert) -> list[str]:
    out = []
    if not rep.is_loop:
        out.append("not a loop")
        return out
    if not rep.unbreakable:
        out.append("has a proper subloop")
    if rep.associative:
        out.append("associative")
    if rep.group_class.kind != target:
        out.append(f"multiplication group is {rep.group_class}, wanted {target}")
    if n % 2 and n >= 7 and not rep.commutative:
        out.append("not commutative")
    if target == ALTERNATING and not all_left_even(t):
        out.append("some left action is odd")
    if cert is not None:
        out += [f"certificate claim failed: {k}" for k, ok in cert.items() if not ok]
    return out


def cmd_construct(args) -> int:
    n = args.order
    target = GROUPS[args.group]
    t, cert = _build(n, target)
    rep = analyze(t)
    problems = _problems(rep, t, n, target, cert)
    out = Path(args.out) if args.out else Path(f"loop{n}.txt")
    write_table(t, out)
    extra = {"target": target, "problems": problems}
    if cert is not None:
        extra["certificate"] = cert
    text = report_to_json(rep, **extra)
    _report_path(out).write_text(text + "\n")
    print(text)
    for p in problems:
        print(f"verification failed: {p}", file=sys.stderr)
    return NEGATIVE if problems else OK


def cmd_verify(args) -> int:
    t = read_table(args.path)
    rep = analyze(t)
    print(report_to_json(rep))
    return OK if rep.is_loop else NEGATIVE


def cmd_search(args) -> int:
    c = census(args.order, commutative=args.commutative, allow_long=args.allow_long,
               jobs=args.jobs, checkpoint=args.checkpoint, emit_dir=args.emit_dir)
    if args.count_only:
        print(c.classes)
    else:
        print(json.dumps(c.to_dict(), indent=2))
    return OK


def cmd_convert(args) -> int:
    write_table(read_table(args.src), args.dst)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="loopforge", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build an unbreakable loop of a given order")
    c.add_argument("--order", "-n", type=int, required=True)
    c.add_argument("--group", choices=sorted(GROUPS), default="auto",
                   help="multiplication group: symmetric, alternating (odd n only); auto = sym")
    c.add_argument("--out", "-o", help="table file (.json for JSON); default loop<N>.txt")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="analyze a Cayley table file and print a JSON report")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="census of loops of a given order up to isomorphism")
    s.add_argument("--order", "-n", type=int, required=True)
    s.add_argument("--count-only", action="store_true", help="print only the number of classes")
    s.add_argument("--emit-dir", help="write one table file per class here")
    s.add_argument("--commutative", action="store_true", help="commutative loops only")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--checkpoint", help="resumable progress file")
    s.add_argument("--allow-long", action="store_true",
                   help="permit full enumeration at order 7 and above")
    s.set_defaults(func=cmd_search)

    k = sub.add_parser("convert", help="convert between text and JSON table formats")
    k.add_argument("src")
    k.add_argument("dst", help="format chosen by suffix: .json or anything else for text")
    k.set_defaults(func=cmd_convert)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except TableParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USER_ERROR
    except (UserError, SearchTooLarge, TableError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USER_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USER_ERROR
    except (ZoneSearchError, LookupError, AssertionError) as exc:
        print(f"internal failure: {exc}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
