"""Reproduction suite: every published table and claim, checked by
exhaustive computation at desk scale."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra as alg
from .bitscan import MaskEngine
from .classify import classify, coalition_wins
from .core import GameStore
from .enumeration import sample_games, universe
from .gametypes import GameType, Seat, T0, T1, T2, TINF, parse_typeset
from .nim import (NimPosition, nim_signature_table, nim_type, random_positions,
                  reduce_nim, to_game)
from .notation import (parse, parse_chunks, random_expressions, render, render_chunks,
                       rendered_length)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} ({self.seconds:.2f}s): {self.detail}"


# Single-game classifications worked out by hand.
HAND_CLASSIFICATIONS = (
    ("0", "P"), ("1", "N"), ("11", "O"), ("111", "P"),
    ("2", "N"), ("3", "N"),
    ("12", "Q"), ("112", "N"), ("1112", "N"), ("11112", "Q"),
    ("2+2", "Q"), ("{2}", "O"), ("{{2}}", "P"), ("{1,11}", "Q"), ("{2,11}", "Q"),
)

# Rows m = 0..5, columns n = 0..10 of type(1^m + 2_n) and type(1^m 2 + 2_n).
SIGNATURES_ONES = (
    "12012012012",
    "∞∞120120120",
    "1∞∞∞1201201",
    "1∞∞∞∞∞12012",
    "∞∞∞∞∞∞∞∞120",
    "1∞∞∞∞∞∞∞∞∞1",
)
SIGNATURES_ONES_TWO = (
    "∞∞1∞11∞11∞1",
    "∞∞∞∞1∞11∞11",
    "∞∞∞∞∞∞1∞11∞",
    "∞∞∞∞∞∞∞∞1∞1",
    "∞∞∞∞∞∞∞∞∞∞1",
    "∞∞∞∞∞∞∞∞∞∞∞",
)

RENDER_BUDGET = 50_000_000

# Expression strings used as documented examples.
DOC_EXPRESSIONS = (
    "{12}^3 4_5", "0", "1", "2", "11", "111", "12", "112", "22", "{2}", "{{2}}",
    "{1,11}", "{2,11}", "{1,11}+{1,11}", "{0,11}", "1+1+2", "12^3", "{12}^3",
    "1_12", "1_1 2", "13", "4_5", "1111", "1112", "11112",
)


def _grid_strings(grid: list[list[GameType]]) -> list[str]:
    return ["".join(t.symbol for t in row) for row in grid]


def check_hand_classifications(store: GameStore, seed: int) -> tuple[bool, str]:
    bad = [e for e, t in HAND_CLASSIFICATIONS
           if classify(store, parse(store, e)) != GameType.parse(t)]
    one, two = store.nim_heap(1), store.nim_heap(2)
    for n in range(10):
        ones = store.multiple(one, n)
        if classify(store, ones) != (T0, T1, T2)[n % 3]:
            bad.append(f"1^{n}")
        if classify(store, store.sum(ones, two)) != (T1, TINF, T1)[n % 3]:
            bad.append(f"1^{n}2")
    if store.sum(one, one) != parse(store, "{1}") or classify(store, store.sum(one, one)) != T2:
        bad.append("1+1=11")
    n = len(HAND_CLASSIFICATIONS) + 3
    return not bad, f"{n} assertions, failures: {bad or 'none'}"


def check_sample_sums(store: GameStore, seed: int) -> tuple[bool, str]:
    u3 = universe(store, 3)
    bad = []
    for eq, x, y in alg.SAMPLE_SUMS:
        ta, tb, ts = alg.parse_equation(eq)
        g, h = parse(store, x), parse(store, y)
        # Solutions may list the addends in either order.
        got = (sorted((classify(store, g), classify(store, h))),
               classify(store, store.sum(g, h)))
        if got != (sorted((ta, tb)), ts):
            bad.append(f"{x}+{y}")
        if alg.solve_equation(store, ta, tb, ts, u3) is None:
            bad.append(f"unsolved {eq}")
    return not bad, f"{len(alg.SAMPLE_SUMS)} equations, failures: {bad or 'none'}"


def check_forbidden_day3(store: GameStore, seed: int) -> tuple[bool, str]:
    u3 = universe(store, 3)
    viol = alg.scan_forbidden(store, u3)
    pairs = len(u3) * (len(u3) + 1) // 2
    return not viol, f"{pairs} pairs, {len(viol)} violations"


def check_forbidden_day4(store: GameStore, seed: int, threads: int = 1) -> tuple[bool, str]:
    u3, u4 = universe(store, 3), universe(store, 4)
    viol = alg.scan_forbidden(store, u3, u4, threads=threads)
    return not viol, f"{len(u4)}x{len(u3)} pairs, {len(viol)} violations"


def check_addition_subtraction(store: GameStore, seed: int) -> tuple[bool, str]:
    u3 = universe(store, 3)
    add = alg.table_matches(alg.derive_type_table(store, "addition", u3), alg.ADDITION_TABLE)
    sub = alg.table_matches(alg.derive_type_table(store, "subtraction", u3),
                            alg.SUBTRACTION_TABLE)
    return not add and not sub, f"addition mismatches {add or 'none'}; subtraction {sub or 'none'}"


def check_multiples_day3(store: GameStore, seed: int) -> tuple[bool, str]:
    u3 = universe(store, 3)
    dbl = alg.table_matches(alg.derive_type_table(store, "doubling", u3), alg.DOUBLING_TABLE)
    tre = alg.table_matches(alg.derive_type_table(store, "trebling", u3), alg.TREBLING_TABLE)
    return not dbl and not tre, f"doubling mismatches {dbl or 'none'}; trebling {tre or 'none'}"


def check_multiples_day4(store: GameStore, seed: int, threads: int = 1) -> tuple[bool, str]:
    eng = MaskEngine.for_store(store, threads)
    doubled, trebled = eng.multiple_types(2), eng.multiple_types(3)
    copycat = int(np.count_nonzero(trebled == T1))
    steal = int(np.count_nonzero((eng.types == T1) & (doubled == T1)))
    u4 = universe(store, 4)
    dbl = alg.table_matches(alg.derive_type_table(store, "doubling", u4, threads=threads),
                            alg.DOUBLING_TABLE)
    tre = alg.table_matches(alg.derive_type_table(store, "trebling", u4, threads=threads),
                            alg.TREBLING_TABLE)
    ok = copycat == 0 and steal == 0 and not dbl and not tre
    return ok, (f"3G of type 1: {copycat}; type-1 G with 2G of type 1: {steal}; "
                f"table mismatches {dbl + tre or 'none'}")


def check_signatures(store: GameStore, seed: int) -> tuple[bool, str]:
    ones = _grid_strings(nim_signature_table(store, 5, 10, False))
    ones_two = _grid_strings(nim_signature_table(store, 5, 10, True))
    bad = [("1^m", m) for m in range(6) if ones[m] != SIGNATURES_ONES[m]]
    bad += [("1^m2", m) for m in range(6) if ones_two[m] != SIGNATURES_ONES_TWO[m]]
    return not bad, f"132 cells, mismatched rows: {bad or 'none'}"


def check_two_one_absorbs(store: GameStore, seed: int, threads: int = 1) -> tuple[bool, str]:
    eng = MaskEngine.for_store(store, threads)
    arr = eng.context_types(parse(store, "{2}"))
    nonzero_inf = bool(np.all(arr[1:] == TINF))
    zero = GameType(int(arr[0]))
    twins = np.nonzero(alg.equivalent_to_zero_mask(store, threads=threads))[0]
    ok = nonzero_inf and zero is T2 and list(twins) == [0]
    return ok, (f"X+{{2}} infinite for all nonzero X: {nonzero_inf}; 0+{{2}} is {zero.symbol}; "
                f"games battery-equivalent to 0: {len(twins)}")


def check_oracle(store: GameStore, seed: int, samples: int = 500) -> tuple[bool, str]:
    games = list(universe(store, 3)) + sample_games(store, samples, 5, 4, seed)
    bad = 0
    for g in games:
        wins = [coalition_wins(store, g, s) for s in Seat]
        t = classify(store, g)
        expected = [t is T1, t is T2, t is T0]
        if wins != expected or sum(wins) > 1:
            bad += 1
    return bad == 0, f"{len(games)} games, {bad} disagreements"


def check_nim_reduction(store: GameStore, seed: int, count: int = 1000) -> tuple[bool, str]:
    battery = alg.default_battery(store)
    type_bad = equiv_bad = 0
    for p in random_positions(count, seed):
        g = to_game(store, p)
        if nim_type(p) != classify(store, g):
            type_bad += 1
        r = to_game(store, reduce_nim(p).position())
        if not isinstance(alg.equivalent_up_to(store, g, r, battery), alg.IndistinguishableUpTo):
            equiv_bad += 1
    return (type_bad == 0 and equiv_bad == 0,
            f"{count} positions, type mismatches {type_bad}, distinguished reductions {equiv_bad}")


def round_trip_failures(store: GameStore, texts, max_chars: int = RENDER_BUDGET) -> list[str]:
    """Texts whose game does not survive parse -> render -> parse.

    Renderings longer than ``max_chars`` are streamed in pieces through
    ``parse_chunks`` instead of being built as one string.
    """
    bad = []
    for t in texts:
        g = parse(store, t)
        if rendered_length(store, g) > max_chars:
            back = parse_chunks(store, render_chunks(store, g))
        else:
            back = parse(store, render(store, g))
        if back != g:
            bad.append(t)
    return bad


def check_round_trip(store: GameStore, seed: int, count: int = 200) -> tuple[bool, str]:
    texts = list(DOC_EXPRESSIONS) + random_expressions(store, count, seed)
    bad = [render(store, g) for g in universe(store, 3)
           if parse(store, render(store, g)) != g]
    bad += round_trip_failures(store, texts)
    return not bad, f"{len(texts) + 16} round trips, failures: {bad or 'none'}"


Check = Callable[..., tuple[bool, str]]

QUICK: tuple[tuple[str, Check], ...] = (
    ("hand classifications", check_hand_classifications),
    ("sample sums and solver", check_sample_sums),
    ("forbidden sums, day 3", check_forbidden_day3),
    ("addition and subtraction tables", check_addition_subtraction),
    ("doubling and trebling tables, day 3", check_multiples_day3),
    ("nim signature tables", check_signatures),
    ("coalition oracle agreement", check_oracle),
    ("nim reduction", check_nim_reduction),
    ("notation round trip", check_round_trip),
)
FULL_ONLY: tuple[tuple[str, Check], ...] = (
    ("forbidden sums, day 4 x day 3", check_forbidden_day4),
    ("doubling and trebling, day 4", check_multiples_day4),
    ("{2} absorbs every nonzero day-4 game", check_two_one_absorbs),
)


def run(full: bool = False, seed: int = 42, threads: int = 1,
        store: GameStore | None = None) -> list[CheckResult]:
    store = GameStore() if store is None else store
    checks = QUICK + (FULL_ONLY if full else ())
    results = []
    for name, fn in checks:
        t = time.perf_counter()
        if fn in (check_forbidden_day4, check_multiples_day4, check_two_one_absorbs):
            ok, detail = fn(store, seed, threads=threads)
        else:
            ok, detail = fn(store, seed)
        results.append(CheckResult(name, ok, detail, time.perf_counter() - t))
    return results
