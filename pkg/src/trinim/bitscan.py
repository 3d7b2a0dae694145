"""Vectorized type evaluation over the whole day-4 universe.

Every day-4 game is an option set drawn from the 16 day-3 games, i.e. a
16-bit mask. For a fixed context game Y, the type of ``G_m + Y`` for all
65536 masks m at once depends only on

* the types of ``h + Y`` for the day-3 games h selected by m, and
* the arrays already computed for the options Y' of Y.

So each context costs a handful of numpy passes over 65536 bytes instead
of ~65536 interned sums. Repeated self-sums ``k * G_m`` follow the same
scheme with a context that accumulates day-3 summands.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .classify import classify, fill_types
from .core import GameStore
from .enumeration import universe
from .gametypes import TYPE_FROM_BITS, GameType

NBITS = 16
NMASKS = 1 << NBITS
_LUT = np.array(TYPE_FROM_BITS, dtype=np.uint8)


class MaskEngine:
    """Type arrays indexed by day-4 mask, cached per store.

    Masks are bit sets over ``day3`` (the day-3 universe in generation
    order); ``ids[m]`` is the interned game with those options.
    """

    def __init__(self, store: GameStore, threads: int = 1) -> None:
        self.store = store
        self.threads = max(1, threads)
        self.day3 = universe(store, 3).members
        assert len(self.day3) == NBITS
        self._pos = {g: i for i, g in enumerate(self.day3)}
        universe(store, 4)
        masks = np.arange(NMASKS, dtype=np.uint32)
        self.select = [((masks >> h) & 1).astype(np.uint8) for h in range(NBITS)]
        self.ids = np.fromiter(
            (store.lookup(self._subset(m)) for m in range(NMASKS)),
            dtype=np.int64, count=NMASKS,
        )
        types = fill_types(store)
        self.types = np.frombuffer(bytes(types), dtype=np.uint8)[self.ids].copy()
        self._context: dict[int, np.ndarray] = {}
        self._multiple: dict[tuple[int, int], np.ndarray] = {}

    @classmethod
    def for_store(cls, store: GameStore, threads: int = 1) -> "MaskEngine":
        eng = store.memo.get("mask_engine")
        if eng is None:
            eng = store.memo["mask_engine"] = cls(store, threads)
        eng.threads = max(1, threads)
        return eng  # type: ignore[return-value]

    def _subset(self, m: int) -> list[int]:
        return [self.day3[h] for h in range(NBITS) if m >> h & 1]

    def mask_of(self, g: int) -> int:
        """Mask of a day-4 game (its options must all be day-3 games)."""
        m = 0
        for o in self.store.options(g):
            m |= 1 << self._pos[o]
        return m

    def _combine(self, scalars: list[int], arrays: list[np.ndarray]) -> np.ndarray:
        """LUT[OR over selected scalar types and over option arrays]."""

        def run(lo: int, hi: int) -> np.ndarray:
            bits = np.zeros(hi - lo, dtype=np.uint8)
            for h, t in enumerate(scalars):
                bits |= self.select[h][lo:hi] << t
            for arr in arrays:
                bits |= np.left_shift(np.uint8(1), arr[lo:hi])
            return _LUT[bits]

        if self.threads == 1:
            return run(0, NMASKS)
        step = -(-NMASKS // self.threads)
        bounds = [(lo, min(lo + step, NMASKS)) for lo in range(0, NMASKS, step)]
        with ThreadPoolExecutor(self.threads) as pool:
            parts = list(pool.map(lambda b: run(*b), bounds))
        return np.concatenate(parts)

    def context_types(self, y: int) -> np.ndarray:
        """Array over masks m of type(G_m + y)."""
        arr = self._context.get(y)
        if arr is not None:
            return arr
        store = self.store
        opt_arrays = [self.context_types(o) for o in store.options(y)]
        scalars = [int(classify(store, store.sum(h, y))) for h in self.day3]
        arr = self._combine(scalars, opt_arrays)
        arr.setflags(write=False)
        self._context[y] = arr
        return arr

    def multiple_types(self, k: int, rest: int = 0) -> np.ndarray:
        """Array over masks m of type(k * G_m + rest)."""
        if k == 0:
            return np.full(NMASKS, int(classify(self.store, rest)), dtype=np.uint8)
        if k == 1:
            return self.context_types(rest)
        key = (k, rest)
        arr = self._multiple.get(key)
        if arr is not None:
            return arr
        store = self.store
        # A move in one copy of G_m turns it into a day-3 game h joining rest.
        lowered = [self.multiple_types(k - 1, store.sum(rest, h)) for h in self.day3]
        opt_arrays = [self.multiple_types(k, o) for o in store.options(rest)]
        arr = self._combine_selected(lowered, opt_arrays)
        arr.setflags(write=False)
        self._multiple[key] = arr
        return arr

    def _combine_selected(self, lowered: list[np.ndarray],
                          arrays: list[np.ndarray]) -> np.ndarray:
        bits = np.zeros(NMASKS, dtype=np.uint8)
        one = np.uint8(1)
        for h, arr in enumerate(lowered):
            bits |= self.select[h] * np.left_shift(one, arr)
        for arr in arrays:
            bits |= np.left_shift(one, arr)
        return _LUT[bits]

    def type_of(self, m: int) -> GameType:
        return GameType(int(self.types[m]))
