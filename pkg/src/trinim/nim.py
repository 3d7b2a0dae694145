"""Three-player Nim: positions, reduction to basic forms, closed-form types."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .classify import classify
from .core import MAX_HEAP, GameStore, OutOfRange
from .gametypes import GameType, T0, T1, T2, TINF


@dataclass(frozen=True)
class NimPosition:
    """Multiset of heap sizes 1..9; zero heaps are dropped."""

    heaps: tuple[int, ...]

    def __init__(self, heaps: Iterable[int] = ()) -> None:
        hs = []
        for h in heaps:
            if not 0 <= h <= MAX_HEAP:
                raise OutOfRange(f"heap size {h} outside 1..{MAX_HEAP}")
            if h:
                hs.append(h)
        object.__setattr__(self, "heaps", tuple(sorted(hs)))

    @classmethod
    def parse(cls, text: str) -> "NimPosition":
        text = text.strip()
        if not text:
            return cls()
        try:
            return cls(int(tok) for tok in text.split(","))
        except ValueError:
            raise OutOfRange(f"bad heap list {text!r}") from None

    def notation(self) -> str:
        return "".join(map(str, self.heaps)) or "0"


@dataclass(frozen=True)
class ReducedForm:
    """One of the basic positions: 0, 1^a, 1^a 2, 3 or 22."""

    kind: str  # "zero" | "ones" | "ones_two" | "three" | "two_two"
    ones: int = 0

    def position(self) -> NimPosition:
        if self.kind == "ones_two":
            return NimPosition([1] * self.ones + [2])
        if self.kind == "three":
            return NimPosition([3])
        if self.kind == "two_two":
            return NimPosition([2, 2])
        return NimPosition([1] * self.ones)

    def notation(self) -> str:
        return self.position().notation()


def to_game(store: GameStore, p: NimPosition) -> int:
    return store.sum_all(store.nim_heap(h) for h in p.heaps)


def reduce_nim(p: NimPosition) -> ReducedForm:
    counts = Counter(min(h, 3) for h in p.heaps)
    a, b, c = counts[1], counts[2], counts[3]
    if b + c >= 2:
        return ReducedForm("two_two")
    if b == 1 or (c == 1 and a >= 1):
        # 1^a 3 behaves like 1^a 2 once there is at least one 1-heap.
        return ReducedForm("ones_two", a)
    if c == 1:
        return ReducedForm("three")
    return ReducedForm("ones", a) if a else ReducedForm("zero")


def nim_type(p: NimPosition) -> GameType:
    r = reduce_nim(p)
    if r.kind == "zero":
        return T0
    if r.kind == "ones":
        return (T0, T1, T2)[r.ones % 3]
    if r.kind == "ones_two":
        return (T1, TINF, T1)[r.ones % 3]
    if r.kind == "three":
        return T1
    return TINF


def nim_signature_table(store: GameStore, max_m: int, max_n: int,
                        with_two: bool) -> list[list[GameType]]:
    """cell[m][n] = type of 1^m (+ 2) + 2_n."""
    if max_m < 0 or max_n < 0:
        raise OutOfRange("bounds must be non-negative")
    one, two = store.nim_heap(1), store.nim_heap(2)
    contexts = [store.nest(two, n) for n in range(max_n + 1)]
    grid = []
    for m in range(max_m + 1):
        g = store.multiple(one, m)
        if with_two:
            g = store.sum(g, two)
        grid.append([classify(store, store.sum(g, x)) for x in contexts])
    return grid


def random_positions(count: int, seed: int, max_heaps: int = 5,
                     max_size: int = MAX_HEAP) -> list[NimPosition]:
    rng = random.Random(seed)
    return [
        NimPosition(rng.randint(1, max_size) for _ in range(rng.randint(0, max_heaps)))
        for _ in range(count)
    ]
