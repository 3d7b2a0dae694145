"""All games born by a given day, type censuses, and a seeded sampler."""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass

from .classify import classify, fill_types
from .core import NULL, GameError, GameStore
from .gametypes import ALL_TYPES, GameType

MAX_DAY = 4


class CapacityError(GameError):
    pass


@dataclass(frozen=True)
class Universe:
    """Games of birthday <= day, in generation order.

    Earlier days come first; each day's new games follow in lexicographic
    order of their option-id tuples. In a fresh store the ids are exactly
    0, 1, 2, ... in this order.
    """

    day: int
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, g: object) -> bool:
        return g in self._set

    @property
    def _set(self) -> frozenset[int]:
        s = self.__dict__.get("_members_set")
        if s is None:
            s = frozenset(self.members)
            object.__setattr__(self, "_members_set", s)
        return s


def universe_size(day: int) -> int:
    n = 1
    for _ in range(day):
        n = 2 ** n
    return n


def universe(store: GameStore, day: int) -> Universe:
    if day < 0:
        raise CapacityError("day must be non-negative")
    if day > MAX_DAY:
        raise CapacityError(
            f"universe({day}) would hold 2^{universe_size(day - 1)} games; "
            f"full enumeration stops at day {MAX_DAY}, use sample_games beyond it"
        )
    cache: dict[int, Universe] = store.memo.setdefault("universes", {})  # type: ignore[assignment]
    if day in cache:
        return cache[day]
    if day == 0:
        u = Universe(0, (store.intern(()),))
    else:
        prev = universe(store, day - 1)
        old = set(prev.members)
        base = sorted(prev.members)
        subsets = [
            combo
            for r in range(len(base) + 1)
            for combo in itertools.combinations(base, r)
        ]
        subsets.sort()
        members = list(prev.members)
        for combo in subsets:
            g = store.intern(combo)
            if g not in old:
                old.add(g)
                members.append(g)
        u = Universe(day, tuple(members))
    cache[day] = u
    return u


def census(store: GameStore, u: Universe) -> dict[GameType, int]:
    fill_types(store)
    counts = Counter(classify(store, g) for g in u.members)
    return {t: counts.get(t, 0) for t in ALL_TYPES}


def sample_games(store: GameStore, count: int, max_birthday: int,
                 max_width: int, seed: int) -> list[int]:
    """Seeded random games built bottom-up from earlier samples.

    Each new game takes 1..max_width options drawn uniformly from the pool
    of games sampled so far (seeded with the null game) whose birthday is
    below ``max_birthday``. The same arguments always give the same games.
    """
    if count < 0 or max_birthday < 0 or max_width < 0:
        raise ValueError("sample_games parameters must be non-negative")
    rng = random.Random(seed)
    if max_birthday == 0 or max_width == 0:
        return [NULL] * count
    births = {NULL: 0}
    eligible = [NULL]
    out = []
    for _ in range(count):
        width = rng.randint(1, max_width)
        opts = {rng.choice(eligible) for _ in range(width)}
        g = store.intern(opts)
        out.append(g)
        if g not in births:
            b = births[g] = 1 + max(births[o] for o in opts)
            if b < max_birthday:
                eligible.append(g)
    return out
