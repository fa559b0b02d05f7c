"""Command-line interface: ``fishburn {enumerate,map,series,verify}``.

Every command writes JSON to standard output. Usage errors, including orders or
sizes beyond a guard, go to standard error with exit status 2; a failing
verification exits with status 1.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import formulas, harness, oracle
from .ascent import (
    enumerate_ascent_sequences,
    enumerate_restricted,
    parse,
    stats,
    validate,
)
from .bijection import build, decompose
from .poset import LevelPoset, poset_stats

ENUMERATION_CAP = oracle.MAX_ENUMERATION_ORDER
FORMULA_CAP = formulas.MAX_FORMULA_ORDER
ENUMERATE_CAPS = {"ascent": 10, "restricted": 12, "posets": 8}

SERIES: dict[str, tuple[Callable, int]] = {
    "p": (formulas.p_t, FORMULA_CAP),
    "ptz": (formulas.p_tz, FORMULA_CAP),
    "conjecture": (formulas.p_tz_conjecture, FORMULA_CAP),
    "g-oracle": (oracle.dp_G, ENUMERATION_CAP),
    "g1": (lambda order: formulas.gr_u1(1, order), FORMULA_CAP),
    "h": (formulas.h_closed, FORMULA_CAP),
}


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _cmd_enumerate(args: argparse.Namespace) -> int:
    cap = ENUMERATE_CAPS[args.kind]
    if not 0 <= args.n <= cap:
        raise UsageError(f"enumerate {args.kind}: --n must lie in [0, {cap}]")
    items = []
    if args.kind == "posets":
        for a in enumerate_ascent_sequences(args.n):
            lp = build(a)[0]
            item = {"poset": lp.to_json(), "sequence": a.to_json()}
            if args.stats:
                item["stats"] = poset_stats(lp).to_json()
            items.append(item)
    else:
        gen = enumerate_ascent_sequences if args.kind == "ascent" else enumerate_restricted
        for a in gen(args.n):
            items.append({"sequence": a.to_json(), "stats": stats(a).to_json()}
                         if args.stats else a.to_json())
    print(_dump({"kind": args.kind, "n": args.n, "count": len(items), "items": items}))
    return 0


def _read_sequence(data):
    if isinstance(data, dict):
        data = data.get("sequence")
    if isinstance(data, str):
        return parse(data)
    if isinstance(data, list):
        return validate(data)
    raise UsageError("expected a sequence: a JSON list of integers or a digit string")


def _cmd_map(args: argparse.Namespace) -> int:
    try:
        data = json.loads(sys.stdin.read())
    except json.JSONDecodeError as exc:
        raise UsageError(f"standard input is not JSON: {exc}") from exc
    if args.direction == "to-poset":
        lp, steps = build(_read_sequence(data))
        if args.trace:
            for k, st in enumerate(steps, 1):
                print(_dump({"step": k, "rule": st.rule, "level": st.level, "element": st.element}))
        print(_dump(lp.to_json()))
        return 0
    if not isinstance(data, dict) or "n" not in data:
        raise UsageError("expected poset JSON with keys 'n' and 'covers'")
    dec = decompose(LevelPoset.from_json(data))
    if args.trace:
        for k, st in enumerate(dec.steps, 1):
            print(_dump({"step": k, "rule": st.rule, "level": st.level, "element": st.element}))
    print(_dump(dec.sequence.to_json()))
    return 0


def _cmd_series(args: argparse.Namespace) -> int:
    fn, cap = SERIES[args.name]
    if not 0 <= args.order <= cap:
        raise UsageError(f"series {args.name}: --order must lie in [0, {cap}]")
    out = fn(args.order).to_json()
    out["name"] = args.name
    print(_dump(out))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    name = args.name
    if args.order is not None:
        formula_only = name in harness.FORMULA_ONLY
        cap = FORMULA_CAP if formula_only else ENUMERATION_CAP
        if not 0 <= args.order <= cap:
            raise UsageError(f"verify {name}: --order must lie in [0, {cap}]")
    if name == "all":
        if args.r is not None or args.m is not None:
            raise UsageError("verify all takes no --r or --m")
        order = harness.DEFAULT_ORDER if args.order is None else args.order
        tasks = harness._tasks(order)
    else:
        tasks = harness.select_tasks(name, args.order, args.r, args.m)
    reports = harness.run_tasks(tasks, None, args.workers)
    ok = all(r.passed for r in reports)
    body = {"pass": ok, "reports": [r.to_json(timing=args.timing) for r in reports]}
    print(json.dumps(body, sort_keys=True, indent=2))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fishburn",
        description="Ascent sequences, (2+2)-free posets and their generating functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list ascent sequences, restricted ones, or posets")
    p.add_argument("kind", choices=sorted(ENUMERATE_CAPS))
    p.add_argument("--n", type=int, required=True, help="length or poset size")
    p.add_argument("--stats", action="store_true", help="attach the five statistics")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("map", help="apply the bijection to JSON read from standard input")
    p.add_argument("direction", choices=["to-poset", "to-sequence"])
    p.add_argument("--trace", action="store_true",
                   help="emit one JSON line per addition or removal step first")
    p.set_defaults(func=_cmd_map)

    p = sub.add_parser("series", help="print a truncated generating function")
    p.add_argument("name", choices=list(SERIES))
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=_cmd_series)

    p = sub.add_parser("verify", help="run identity checks and cross-checks")
    p.add_argument("name", choices=["all", *harness.SUITE_NAMES])
    p.add_argument("--order", type=int, default=None,
                   help="truncation order, or size bound for the enumeration studies")
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--timing", action="store_true", help="include wall times (not reproducible)")
    p.add_argument("--workers", type=int, default=None,
                   help="process count (default: FISHBURN_WORKERS or the CPU count)")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    # guard violations, malformed sequences and non-(2+2)-free input are ValueErrors
    except (UsageError, ValueError) as exc:
        parser.error(str(exc))
    return 2  # unreachable: parser.error exits


if __name__ == "__main__":
    sys.exit(main())
