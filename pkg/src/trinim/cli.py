"""Command-line front end.

Exit codes: 0 success / claim holds, 1 violation, counterexample or
distinguished pair, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import algebra as alg
from . import verify as verify_mod
from .classify import classify
from .core import GameError, GameStore
from .enumeration import census, universe
from .gametypes import ALL_TYPES, GameType, T0, T1, T2, TINF, format_typeset
from .nim import NimPosition, nim_type, reduce_nim
from .notation import NotationError, parse, render, rendered_length

RENDER_LIMIT = 10_000


class CommandFailed(Exception):
    """Carries a payload with exit code 1."""

    def __init__(self, text: str, result: Any) -> None:
        super().__init__(text)
        self.text = text
        self.result = result


def _show(store: GameStore, g: int) -> str:
    n = rendered_length(store, g)
    if n > RENDER_LIMIT:
        return f"<game #{g}, {n}-character rendering omitted>"
    return render(store, g)


def _type_json(t: GameType) -> dict:
    return {"letter": t.letter, "symbol": t.symbol}


def _cell_json(ts) -> list[str]:
    return [t.letter for t in sorted(ts)]


def format_table(table: alg.DerivedTable) -> str:
    if table.kind == "multiple":
        head = f"G | {table.multiple}G"
        lines = [head, "-" * len(head)]
        for t in ALL_TYPES:
            lines.append(f"{t.symbol} | {format_typeset(table.cell(t))}")
        return "\n".join(lines)
    sub = table.kind == "subtraction"
    rows = (T0, T2, T1, TINF) if sub else ALL_TYPES
    width = 5
    lines = [(("-" if sub else "+") + " | "
              + "".join(t.symbol.ljust(width) for t in ALL_TYPES)).rstrip()]
    lines.append("-" * len(lines[0]))
    for r in rows:
        label = "3" if sub and r is T0 else r.symbol
        cells = [format_typeset(table.cell(r, c), zero_as_three=sub and r is T0).ljust(width)
                 for c in ALL_TYPES]
        lines.append(f"{label} | " + "".join(cells).rstrip())
    return "\n".join(lines)


def table_json(table: alg.DerivedTable) -> dict:
    if table.kind == "multiple":
        rows = {t.letter: _cell_json(table.cell(t)) for t in ALL_TYPES}
        return {"kind": "multiple", "k": table.multiple, "rows": rows}
    return {
        "kind": table.kind,
        "cells": {f"{r.letter}{c.letter}": _cell_json(table.cell(r, c))
                  for r in ALL_TYPES for c in ALL_TYPES},
    }


# --------------------------------------------------------------------------
# Subcommands. Each returns (text, result) or raises CommandFailed.

def cmd_classify(store: GameStore, args) -> tuple[str, Any]:
    g = parse(store, args.expr)
    t = classify(store, g)
    return t.describe(), {"expr": args.expr, "type": _type_json(t)}


def cmd_sum(store: GameStore, args) -> tuple[str, Any]:
    g = store.sum_all(parse(store, e) for e in args.exprs)
    t = classify(store, g)
    shown = _show(store, g)
    return f"{shown}\ntype {t.describe()}", {"game": shown, "type": _type_json(t)}


def cmd_reduce(store: GameStore, args) -> tuple[str, Any]:
    p = NimPosition.parse(args.heaps)
    r = reduce_nim(p)
    t = nim_type(p)
    return (f"{r.notation()}, type {t.describe()}",
            {"heaps": list(p.heaps), "reduced": r.notation(), "type": _type_json(t)})


def cmd_signature(store: GameStore, args) -> tuple[str, Any]:
    g = parse(store, args.expr)
    contexts = None
    if args.contexts:
        contexts = [parse(store, e) for e in args.contexts.split(";") if e.strip()]
    sig = alg.signature(store, g, contexts)
    return " ".join(t.symbol for t in sig), {"signature": [t.letter for t in sig]}


def cmd_table(store: GameStore, args) -> tuple[str, Any]:
    kind, k = alg.parse_table_kind(args.kind)
    table = alg.derive_type_table(store, kind, universe(store, args.day), k=k,
                                  threads=args.threads)
    return format_table(table), table_json(table)


def cmd_solve(store: GameStore, args) -> tuple[str, Any]:
    ta, tb, ts = alg.parse_equation(args.equation)
    found = alg.solve_equation(store, ta, tb, ts, universe(store, min(args.day, 3)))
    eq = f"{ta.letter}+{tb.letter}={ts.letter}"
    if found is None:
        raise CommandFailed(f"{eq}: no solution in scanned universe",
                            {"equation": eq, "solution": None})
    g, h = found
    return (f"{eq}: {_show(store, g)} + {_show(store, h)}",
            {"equation": eq, "solution": [_show(store, g), _show(store, h)]})


def cmd_scan(store: GameStore, args) -> tuple[str, Any]:
    base = universe(store, min(args.day, 3))
    extended = universe(store, base.day + 1) if args.extended else None
    viol = alg.scan_forbidden(store, base, extended, threads=args.threads)
    n = len(base) * (len(base) + 1) // 2 + (len(extended) * len(base) if extended else 0)
    rows = [{"g": _show(store, v.g), "h": _show(store, v.h), "equation": v.equation}
            for v in viol]
    text = f"{len(viol)} violations over {n} pairs"
    result = {"pairs": n, "violations": rows}
    if viol:
        lines = [f"{r['g']} + {r['h']}: {r['equation']}" for r in rows]
        raise CommandFailed("\n".join([text, *lines]), result)
    return text, result


def cmd_equiv(store: GameStore, args) -> tuple[str, Any]:
    g, h = parse(store, args.left), parse(store, args.right)
    battery = None
    if args.battery != "default":
        battery = [parse(store, e) for e in args.battery.split(";") if e.strip()]
    v = alg.equivalent_up_to(store, g, h, battery)
    if isinstance(v, alg.Distinguished):
        w = _show(store, v.witness)
        raise CommandFailed(
            f"distinguished by {w}: {v.left.describe()} vs {v.right.describe()}",
            {"verdict": "distinguished", "witness": w,
             "left": _type_json(v.left), "right": _type_json(v.right)})
    return (f"indistinguishable up to a battery of {v.battery_size} games",
            {"verdict": "indistinguishable", "battery_size": v.battery_size})


def cmd_near_inf(store: GameStore, args) -> tuple[str, Any]:
    t = GameType.parse(args.type)
    found = alg.near_infinity_search(store, universe(store, args.day), t,
                                     threads=args.threads)
    shown = [_show(store, g) for g in found]
    text = f"{len(found)} candidates of type {t.describe()}" + "".join(f"\n{s}" for s in shown)
    return text, {"type": _type_json(t), "day": args.day, "candidates": shown}


def cmd_enumerate(store: GameStore, args) -> tuple[str, Any]:
    u = universe(store, args.day)
    text = f"day {args.day}: {len(u)} games"
    result: dict = {"day": args.day, "count": len(u)}
    if args.census:
        counts = census(store, u)
        text += "".join(f"\n{t.describe()}: {n}" for t, n in counts.items())
        result["census"] = {t.letter: n for t, n in counts.items()}
    return text, result


def cmd_verify(store: GameStore, args) -> tuple[str, Any]:
    results = verify_mod.run(full=args.full, seed=args.seed, threads=args.threads,
                             store=store)
    text = "\n".join(r.line() for r in results)
    payload = [{"name": r.name, "passed": r.passed, "detail": r.detail,
                "seconds": round(r.seconds, 3)} for r in results]
    if not all(r.passed for r in results):
        raise CommandFailed(text, payload)
    return text, payload


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit a JSON document")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="trinim", parents=[common],
                                     description="Three-player impartial game toolkit.")
    parser.set_defaults(json=False, seed=42, threads=1)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    p = add("classify", cmd_classify, "type of a game")
    p.add_argument("expr")
    p = add("sum", cmd_sum, "disjunctive sum of games")
    p.add_argument("exprs", nargs="+")
    p = add("reduce", cmd_reduce, "reduce a Nim position, e.g. 1,1,2,5")
    p.add_argument("heaps")
    p = add("signature", cmd_signature, "types of G + 2_n")
    p.add_argument("expr")
    p.add_argument("--contexts", help="';'-separated context games (default 2_0..2_10)")
    p = add("table", cmd_table, "derive a type table")
    p.add_argument("kind", help="addition, subtraction, doubling, trebling or multiple:K")
    p.add_argument("--day", type=int, default=3)
    p = add("solve", cmd_solve, "find a solution of a type equation like Q+Q=O")
    p.add_argument("equation")
    p.add_argument("--day", type=int, default=3)
    p = add("scan-forbidden", cmd_scan, "look for sums breaking the addition table")
    p.add_argument("--day", type=int, default=3)
    p.add_argument("--extended", "--full", dest="extended", action="store_true",
                   help="also pair every game born on the next day with the base")
    p = add("equiv", cmd_equiv, "bounded equivalence test")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--battery", default="default",
                   help="'default' or ';'-separated context games")
    p = add("near-inf", cmd_near_inf, "games absorbed into infinity by every nonzero game")
    p.add_argument("--type", required=True)
    p.add_argument("--day", type=int, default=3)
    p = add("enumerate", cmd_enumerate, "all games born by a day")
    p.add_argument("--day", type=int, required=True)
    p.add_argument("--census", action="store_true")
    p = add("verify", cmd_verify, "run the reproduction suite")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--quick", dest="full", action="store_false")
    mode.add_argument("--full", dest="full", action="store_true")
    p.set_defaults(full=False)
    return parser


def _emit(args, text: str, result: Any, out) -> None:
    if args.json:
        json.dump({"command": args.command, "result": result}, out, ensure_ascii=False)
        out.write("\n")
    else:
        out.write(text + "\n")


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        err.write("trinim: --threads must be at least 1\n")
        return 2
    store = GameStore()
    try:
        text, result = args.func(store, args)
    except CommandFailed as exc:
        _emit(args, exc.text, exc.result, out)
        return 1
    except NotationError as exc:
        err.write(f"trinim: parse error: {exc}\n")
        if args.json:
            _emit(args, str(exc), {"error": str(exc), "offset": exc.offset}, out)
        return 2
    except (GameError, ValueError) as exc:
        err.write(f"trinim: {exc}\n")
        if args.json:
            _emit(args, str(exc), {"error": str(exc)}, out)
        return 2
    _emit(args, text, result, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
