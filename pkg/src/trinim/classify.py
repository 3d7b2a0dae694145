"""Type assignment by the recursive option rules, and an independent
coalition-search oracle used to cross-check it."""
from __future__ import annotations

from .core import GameStore
from .gametypes import TYPE_FROM_BITS, GameType, Seat, T0, T1


def _type_array(store: GameStore) -> bytearray:
    arr = store.memo.get("types")
    if arr is None:
        arr = store.memo["types"] = bytearray()
    return arr  # type: ignore[return-value]


def fill_types(store: GameStore, upto: int | None = None) -> bytearray:
    """Classify every game with id <= upto (default: the whole store).

    Options always have smaller ids, so one forward pass suffices.
    """
    types = _type_array(store)
    nodes = store.nodes
    stop = len(nodes) if upto is None else upto + 1
    table = TYPE_FROM_BITS
    for g in range(len(types), stop):
        bits = 0
        for o in nodes[g]:
            bits |= 1 << types[o]
        types.append(table[bits])
    return types


def classify(store: GameStore, g: int) -> GameType:
    store.options(g)
    types = _type_array(store)
    if g >= len(types):
        fill_types(store, g)
    return GameType(types[g])


def winning_option(store: GameStore, g: int) -> int | None:
    """Smallest-id T0 option of a T1 game; None for every other type."""
    if classify(store, g) is not T1:
        return None
    types = _type_array(store)
    return next(o for o in store.options(g) if types[o] == T0)


def coalition_wins(store: GameStore, g: int, seat: Seat) -> bool:
    """Can ``seat`` force making the last move against the other two?

    Plain game-tree search on seats; shares nothing with ``classify``.
    """
    memo: dict[tuple[int, int], bool] = store.memo.setdefault("coalition", {})  # type: ignore[assignment]
    nodes = store.nodes
    store.options(g)
    # Explicit post-order walk so arbitrarily deep games are fine.
    stack = [(g, int(seat))]
    while stack:
        x, s = stack[-1]
        if (x, s) in memo:
            stack.pop()
            continue
        nxt = (s - 1) % 3
        pending = [(o, nxt) for o in nodes[x] if (o, nxt) not in memo]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        opts = nodes[x]
        if not opts:
            memo[(x, s)] = s == Seat.PREVIOUS
        elif s == Seat.NEXT:
            # The mover becomes Previous and needs one good option.
            memo[(x, s)] = any(memo[(o, nxt)] for o in opts)
        else:
            memo[(x, s)] = all(memo[(o, nxt)] for o in opts)
    return memo[(g, int(seat))]


def oracle_type(store: GameStore, g: int) -> GameType:
    """Type read off the coalition oracle alone."""
    if coalition_wins(store, g, Seat.NEXT):
        return GameType.T1
    if coalition_wins(store, g, Seat.OTHER):
        return GameType.T2
    if coalition_wins(store, g, Seat.PREVIOUS):
        return GameType.T0
    return GameType.TINF
