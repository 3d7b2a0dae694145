"""Game types (who can force the last move) and sets of them."""
from __future__ import annotations

import enum
from typing import Iterable


class GameType(enum.IntEnum):
    """Outcome class of a game: which seat can force a win, if any.

    Values double as the bold numerals used in sum tables:
    T0 = Previous wins (P), T1 = Next (N), T2 = Other (O), TINF = nobody (Q).
    """

    T0 = 0
    T1 = 1
    T2 = 2
    TINF = 3

    @property
    def letter(self) -> str:
        return "PNOQ"[self]

    @property
    def symbol(self) -> str:
        return ("0", "1", "2", "∞")[self]

    @property
    def ascii_symbol(self) -> str:
        return ("0", "1", "2", "inf")[self]

    def describe(self) -> str:
        return f"{self.letter} ({self.symbol})"

    @classmethod
    def parse(cls, text: str) -> "GameType":
        try:
            return _ALIASES[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown game type {text!r}") from None


_ALIASES = {
    "P": GameType.T0, "0": GameType.T0, "T0": GameType.T0,
    "N": GameType.T1, "1": GameType.T1, "T1": GameType.T1,
    "O": GameType.T2, "2": GameType.T2, "T2": GameType.T2,
    "Q": GameType.TINF, "INF": GameType.TINF, "∞": GameType.TINF, "TINF": GameType.TINF,
}

T0, T1, T2, TINF = GameType.T0, GameType.T1, GameType.T2, GameType.TINF
ALL_TYPES = (T0, T1, T2, TINF)


class Seat(enum.IntEnum):
    """Seat relative to the player about to move."""

    NEXT = 0
    OTHER = 1
    PREVIOUS = 2

    def after_move(self) -> "Seat":
        # The mover becomes Previous, Other becomes Next, Previous becomes Other.
        return Seat((self - 1) % 3)


SEAT_OF_TYPE = {T1: Seat.NEXT, T2: Seat.OTHER, T0: Seat.PREVIOUS}


def type_from_option_bits(bits: int) -> GameType:
    """Type of a game given the OR of ``1 << type`` over its options."""
    return GameType(TYPE_FROM_BITS[bits])


# Lookup over the 16 possible option-type bitsets:
# a T0 option gives T1; only T1 options (at least one) give T2;
# only T2 options (or none) give T0; anything else is TINF.
TYPE_FROM_BITS = tuple(
    1 if bits & 1 else 2 if bits == 2 else 0 if bits in (0, 4) else 3
    for bits in range(16)
)


TypeSet = frozenset  # frozenset[GameType]


def typeset(types: Iterable[int]) -> frozenset[GameType]:
    return frozenset(GameType(t) for t in types)


def typeset_from_bits(bits: int) -> frozenset[GameType]:
    return frozenset(t for t in ALL_TYPES if bits >> t & 1)


def typeset_bits(ts: Iterable[int]) -> int:
    bits = 0
    for t in ts:
        bits |= 1 << int(t)
    return bits


def format_typeset(ts: Iterable[int], *, zero_as_three: bool = False,
                   ascii: bool = False) -> str:
    """Table cell text: '12∞', 'All' for every type, 'none' for empty."""
    members = sorted(GameType(t) for t in set(ts))
    if not members:
        return "none"
    if len(members) == 4:
        return "All"
    out = []
    for t in members:
        if t is T0 and zero_as_three:
            out.append("3")
        else:
            out.append(t.ascii_symbol if ascii else t.symbol)
    return "".join(out)


def parse_typeset(text: str) -> frozenset[GameType]:
    """Inverse of ``format_typeset`` (accepts '3' for T0 and 'inf')."""
    text = text.strip()
    if text == "none":
        return frozenset()
    if text == "All":
        return frozenset(ALL_TYPES)
    text = text.replace("inf", "∞")
    return frozenset(GameType.parse("0" if ch == "3" else ch) for ch in text)
