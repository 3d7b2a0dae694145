"""Three-player impartial games: types, sums, Nim and equivalence."""
from .core import NULL, GameError, GameStore, InvalidReference, OutOfRange, load_dump
from .gametypes import GameType, Seat, T0, T1, T2, TINF
from .classify import classify, coalition_wins, winning_option
from .notation import NotationError, parse, render
from .enumeration import CapacityError, Universe, census, sample_games, universe
from .nim import NimPosition, ReducedForm, nim_signature_table, nim_type, reduce_nim, to_game

__all__ = [
    "NULL", "GameError", "GameStore", "InvalidReference", "OutOfRange", "load_dump",
    "GameType", "Seat", "T0", "T1", "T2", "TINF",
    "classify", "coalition_wins", "winning_option",
    "NotationError", "parse", "render",
    "CapacityError", "Universe", "census", "sample_games", "universe",
    "NimPosition", "ReducedForm", "nim_signature_table", "nim_type", "reduce_nim", "to_game",
]
