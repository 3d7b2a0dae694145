"""Type tables of sums, type equations, forbidden-sum scans, bounded
equivalence, signatures and probes around the infinity class."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .bitscan import MaskEngine
from .classify import classify
from .core import NULL, GameError, GameStore
from .enumeration import Universe, universe
from .gametypes import ALL_TYPES, GameType, T0, T1, T2, TINF, parse_typeset
from .notation import parse


class UsageError(GameError):
    pass


def _table(rows: Mapping[str, Sequence[str]], cols: str = "012∞") -> dict:
    out = {}
    for r, cells in rows.items():
        rt = T0 if r == "3" else GameType.parse(r)
        for c, cell in zip(cols, cells):
            out[(rt, GameType.parse(c))] = parse_typeset(cell)
    return out


# Reference tables. Subtraction rows are the type of the sum, columns the
# type of the known addend, cells the possible types of the other addend.
ADDITION_TABLE = _table({
    "0": ("0∞", "1∞", "2∞", "∞"),
    "1": ("1∞", "12∞", "01∞", "1∞"),
    "2": ("2∞", "01∞", "1∞", "12∞"),
    "∞": ("∞", "1∞", "12∞", "2∞"),
})
SUBTRACTION_TABLE = _table({
    "3": ("3", "2", "1", "none"),
    "2": ("2", "1", "0∞", "2∞"),
    "1": ("1", "All", "12∞", "12"),
    "∞": ("All", "All", "All", "All"),
})
DOUBLING_TABLE = {T0: parse_typeset("0∞"), T1: parse_typeset("2∞"),
                  T2: parse_typeset("1∞"), TINF: parse_typeset("2∞")}
TREBLING_TABLE = {T0: parse_typeset("0∞"), T1: parse_typeset("0∞"),
                  T2: parse_typeset("0∞"), TINF: parse_typeset("∞")}

# The satisfiable equations with a known solution each.
SAMPLE_SUMS: tuple[tuple[str, str, str], ...] = (
    ("P+P=P", "0", "0"),
    ("N+P=N", "1", "0"),
    ("N+N=O", "1", "1"),
    ("O+P=O", "11", "0"),
    ("O+N=P", "11", "1"),
    ("O+O=N", "11", "11"),
    ("Q+P=Q", "12", "0"),
    ("Q+N=Q", "12", "2"),
    ("Q+O=Q", "22", "11"),
    ("Q+Q=Q", "12", "12"),
    ("N+N=Q", "2", "2"),
    ("P+P=Q", "{{2}}", "{{2}}"),
    ("N+P=Q", "1111", "{{2}}"),
    ("O+P=Q", "{2}", "111"),
    ("O+N=Q", "1", "{2}"),
    ("O+O=Q", "{2}", "{2}"),
    ("N+N=N", "112", "1"),
    ("N+O=N", "2", "11"),
    ("Q+N=N", "12", "1"),
    ("Q+O=N", "12", "11"),
    ("Q+O=O", "{2,11}", "11"),
    ("Q+Q=O", "{1,11}", "{1,11}"),
)


def parse_equation(text: str) -> tuple[GameType, GameType, GameType]:
    """``'Q+Q=O'`` -> (TINF, TINF, T2); both alias alphabets accepted."""
    try:
        lhs, rhs = text.replace(" ", "").split("=")
        a, b = lhs.split("+")
        return GameType.parse(a), GameType.parse(b), GameType.parse(rhs)
    except ValueError:
        raise UsageError(f"bad equation {text!r}; expected like 'Q+Q=O'") from None


def equation_text(a: int, b: int, s: int) -> str:
    return f"{GameType(a).letter}+{GameType(b).letter}={GameType(s).letter}"


@dataclass(frozen=True)
class ForbiddenEquation:
    addends: frozenset[GameType]  # unordered type pair (size 1 when equal)
    sum: GameType
    label: str


def _forbidden_from(table: Mapping) -> tuple[ForbiddenEquation, ...]:
    out = []
    for a, b in itertools.combinations_with_replacement(ALL_TYPES, 2):
        for s in ALL_TYPES:
            if s not in table[(a, b)]:
                out.append(ForbiddenEquation(frozenset((a, b)), s,
                                             equation_text(b, a, s)))
    return tuple(out)


FORBIDDEN_EQUATIONS = _forbidden_from(ADDITION_TABLE)


def witness_games(store: GameStore) -> list[int]:
    """Every game appearing in SAMPLE_SUMS, deduplicated, in first-seen order."""
    seen: dict[int, None] = {}
    for _, x, y in SAMPLE_SUMS:
        seen.setdefault(parse(store, x))
        seen.setdefault(parse(store, y))
    return list(seen)


def _pool(store: GameStore, base: Iterable[int], extra: Iterable[int] | None) -> list[int]:
    games = set(base)
    games.update(witness_games(store) if extra is None else extra)
    return sorted(games)


def _small_base(u: Universe | Sequence[int]) -> tuple[list[int], bool]:
    """Members to pair exhaustively, and whether the day-4 engine is needed."""
    if isinstance(u, Universe) and u.day >= 4:
        return [], True
    return list(u), False


# --------------------------------------------------------------------------
# Derived tables

@dataclass
class DerivedTable:
    kind: str
    multiple: int = 0
    cells: dict = field(default_factory=dict)

    @property
    def is_grid(self) -> bool:
        return self.kind in ("addition", "subtraction")

    def cell(self, *key) -> frozenset[GameType]:
        k = key if len(key) > 1 else key[0]
        return frozenset(self.cells.get(k, ()))


def parse_table_kind(text: str) -> tuple[str, int]:
    text = text.strip().lower()
    if text in ("addition", "subtraction"):
        return text, 0
    if text == "doubling":
        return "multiple", 2
    if text == "trebling":
        return "multiple", 3
    if text.startswith("multiple:"):
        try:
            k = int(text.split(":", 1)[1])
        except ValueError:
            k = -1
        if k >= 2:
            return "multiple", k
    raise UsageError(f"unknown table kind {text!r}")


def derive_type_table(store: GameStore, kind: str, base: Universe | Sequence[int],
                      extra_witnesses: Iterable[int] | None = None,
                      k: int = 0, threads: int = 1) -> DerivedTable:
    """Observe which types occur, cell by cell.

    ``kind`` is 'addition', 'subtraction', 'doubling', 'trebling',
    'multiple:K' or 'multiple' with ``k``. Pairs within base and the
    witnesses are summed directly; a day-4 base additionally contributes
    every day-4 x day-3 pair (addition, subtraction) or every day-4 game
    (multiples) through the bitmask engine.
    """
    if kind != "multiple":
        kind, k = parse_table_kind(kind)
    if len(base) == 0:
        raise UsageError("empty base universe")
    small, wide = _small_base(base)
    if wide:
        small = list(universe(store, 3).members)
    pool = _pool(store, small, extra_witnesses)
    table = DerivedTable(kind, k)
    cells: dict = {}
    if kind == "multiple":
        for g in pool:
            t = classify(store, g)
            cells.setdefault(t, set()).add(classify(store, store.multiple(g, k)))
        if wide:
            eng = MaskEngine.for_store(store, threads)
            _merge_pairs(cells, eng.types, eng.multiple_types(k))
    else:
        obs: set[tuple[int, int, int]] = set()
        for i, g in enumerate(pool):
            tg = classify(store, g)
            for h in pool[i:]:
                th = classify(store, h)
                obs.add((tg, th, classify(store, store.sum(g, h))))
        if wide:
            eng = MaskEngine.for_store(store, threads)
            for x in eng.day3:
                tx = int(classify(store, x))
                pairs = np.unique(eng.types * 4 + eng.context_types(x))
                obs.update((int(p) // 4, tx, int(p) % 4) for p in pairs)
        for tg, th, ts in obs:
            tg, th, ts = GameType(tg), GameType(th), GameType(ts)
            if kind == "addition":
                cells.setdefault((tg, th), set()).add(ts)
                cells.setdefault((th, tg), set()).add(ts)
            else:
                cells.setdefault((ts, th), set()).add(tg)
                cells.setdefault((ts, tg), set()).add(th)
    table.cells = {key: frozenset(v) for key, v in cells.items()}
    return table


def _merge_pairs(cells: dict, rows: np.ndarray, vals: np.ndarray) -> None:
    for p in np.unique(rows.astype(np.int64) * 4 + vals):
        cells.setdefault(GameType(int(p) // 4), set()).add(GameType(int(p) % 4))


def table_matches(derived: DerivedTable, reference: Mapping) -> list:
    """Keys whose derived cell differs from the reference (empty = equal)."""
    keys = set(reference) | set(derived.cells)
    return sorted((k for k in keys
                   if derived.cell(k) != frozenset(reference.get(k, ()))),
                  key=lambda k: k if isinstance(k, tuple) else (k,))


# --------------------------------------------------------------------------
# Equations and forbidden sums

def solve_equation(store: GameStore, t_a: GameType, t_b: GameType, t_sum: GameType,
                   base: Universe | Sequence[int],
                   extra_witnesses: Iterable[int] | None = None) -> tuple[int, int] | None:
    """First (G, H) in id order with the given addend and sum types."""
    pool = _pool(store, list(base), extra_witnesses)
    left = [g for g in pool if classify(store, g) == t_a]
    right = [h for h in pool if classify(store, h) == t_b]
    for g in left:
        for h in right:
            if classify(store, store.sum(g, h)) == t_sum:
                return g, h
    return None


@dataclass(frozen=True)
class Violation:
    g: int
    h: int
    type_g: GameType
    type_h: GameType
    type_sum: GameType
    equation: str


def _forbidden_lut(table: Mapping) -> np.ndarray:
    lut = np.zeros((4, 4, 4), dtype=bool)
    for (a, b), allowed in table.items():
        for s in ALL_TYPES:
            lut[a, b, s] = s not in allowed
    return lut


def scan_forbidden(store: GameStore, base: Universe | Sequence[int],
                   extended: Universe | Sequence[int] | None = None,
                   table: Mapping | None = None, threads: int = 1) -> list[Violation]:
    """Pairs whose sum type is not allowed by the addition table.

    All unordered pairs within ``base`` are checked; each member of
    ``extended`` is paired with every base member. A day-4 ``extended``
    runs through the bitmask engine against the day-3 games.
    """
    table = ADDITION_TABLE if table is None else table
    lut = _forbidden_lut(table)
    out: list[Violation] = []

    def check(g: int, h: int) -> None:
        tg, th = classify(store, g), classify(store, h)
        ts = classify(store, store.sum(g, h))
        if lut[tg, th, ts]:
            out.append(Violation(g, h, tg, th, ts, equation_text(tg, th, ts)))

    members = list(base)
    for i, g in enumerate(members):
        for h in members[i:]:
            check(g, h)
    if extended is None:
        return out
    if isinstance(extended, Universe) and extended.day >= 4:
        eng = MaskEngine.for_store(store, threads)
        day3 = set(eng.day3)
        if not set(members) <= day3:
            raise UsageError("day-4 scans pair only with day-3 games")
        for x in members:
            tx = classify(store, x)
            sums = eng.context_types(x)
            bad = np.nonzero(lut[eng.types, int(tx), sums])[0]
            for m in bad:
                g = int(eng.ids[m])
                out.append(Violation(g, x, GameType(int(eng.types[m])), tx,
                                     GameType(int(sums[m])),
                                     equation_text(eng.types[m], tx, sums[m])))
    else:
        for g in extended:
            for h in members:
                check(g, h)
    return out


# --------------------------------------------------------------------------
# Equivalence and signatures

@dataclass(frozen=True)
class Distinguished:
    witness: int
    left: GameType
    right: GameType


@dataclass(frozen=True)
class IndistinguishableUpTo:
    battery_size: int


EquivVerdict = Distinguished | IndistinguishableUpTo


def default_battery(store: GameStore) -> list[int]:
    """Day-3 games, 2_0..2_10, 1^1..1^6, 1^m 2 (m=0..5), {0,11}, 22, 3."""
    cache = store.memo.get("default_battery")
    if cache is not None:
        return list(cache)  # type: ignore[arg-type]
    one, two = store.nim_heap(1), store.nim_heap(2)
    games = list(universe(store, 3).members)
    games += [store.nest(two, n) for n in range(11)]
    games += [store.multiple(one, m) for m in range(1, 7)]
    games += [store.sum(store.multiple(one, m), two) for m in range(6)]
    games += [parse(store, "{0,11}"), parse(store, "22"), store.nim_heap(3)]
    battery = list(dict.fromkeys(games))
    store.memo["default_battery"] = tuple(battery)
    return battery


def equivalent_up_to(store: GameStore, g: int, h: int,
                     battery: Sequence[int] | None = None) -> EquivVerdict:
    """First context X in battery with type(g+X) != type(h+X), if any."""
    battery = default_battery(store) if battery is None else list(battery)
    if not battery:
        raise UsageError("empty battery")
    for x in battery:
        tg = classify(store, store.sum(g, x))
        th = classify(store, store.sum(h, x))
        if tg != th:
            return Distinguished(x, tg, th)
    return IndistinguishableUpTo(len(battery))


def default_contexts(store: GameStore, n: int = 11) -> list[int]:
    two = store.nim_heap(2)
    return [store.nest(two, i) for i in range(n)]


def signature(store: GameStore, g: int, contexts: Sequence[int] | None = None) -> list[GameType]:
    contexts = default_contexts(store) if contexts is None else list(contexts)
    if not contexts:
        raise UsageError("empty context list")
    return [classify(store, store.sum(g, x)) for x in contexts]


# --------------------------------------------------------------------------
# Around infinity

def infinity_absorption_check(store: GameStore, g: int,
                              battery: Sequence[int] | None = None) -> bool:
    """True iff g + X is TINF for every X in the battery."""
    battery = default_battery(store) if battery is None else list(battery)
    if not battery:
        raise UsageError("empty battery")
    return all(classify(store, store.sum(g, x)) is TINF for x in battery)


def absorbs_all_nonzero(store: GameStore, g: int, base: Universe,
                        threads: int = 1) -> bool:
    """Is g + X of type TINF for every nonzero X in base?"""
    if base.day >= 4:
        arr = MaskEngine.for_store(store, threads).context_types(g)
        return bool(np.all(arr[1:] == TINF))
    return all(classify(store, store.sum(g, x)) is TINF for x in base if x != NULL)


def near_infinity_search(store: GameStore, base: Universe, target: GameType,
                         threads: int = 1) -> list[int]:
    """Members of type ``target`` whose sum with every nonzero member is TINF.

    These are candidates only: other games outside ``base`` may still pull
    them away from infinity.
    """
    target = GameType(target)
    if base.day < 4:
        return [g for g in base if classify(store, g) == target
                and absorbs_all_nonzero(store, g, base)]
    eng = MaskEngine.for_store(store, threads)
    keep = eng.types == target
    for x in eng.day3:
        if x != NULL:
            keep &= eng.context_types(x) == TINF
    out = []
    for m in np.nonzero(keep)[0]:
        g = int(eng.ids[m])
        if absorbs_all_nonzero(store, g, base, threads):
            out.append(g)
    return out


def equivalent_to_zero_mask(store: GameStore, battery: Sequence[int] | None = None,
                            threads: int = 1) -> np.ndarray:
    """Boolean array over day-4 masks: battery-indistinguishable from 0."""
    battery = default_battery(store) if battery is None else list(battery)
    eng = MaskEngine.for_store(store, threads)
    keep = np.ones(len(eng.types), dtype=bool)
    for x in battery:
        keep &= eng.context_types(x) == int(classify(store, x))
    return keep
