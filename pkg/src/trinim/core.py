"""Interned store of impartial games.

Every game is a node whose options are a sorted tuple of smaller ids, so
structural identity of games reduces to id equality and the store is a DAG
by construction.
"""
from __future__ import annotations

import threading
from typing import Iterable, Iterator

MAX_HEAP = 9
NULL = 0


class GameError(ValueError):
    """Base class for errors raised by the game store and its clients."""


class InvalidReference(GameError):
    pass


class OutOfRange(GameError):
    pass


class GameStore:
    """Append-only, deduplicated store of games.

    ``intern``, ``sum``, ``nest`` and ``multiple`` may add nodes and are
    serialized through a reentrant lock. Reads need no locking once
    construction has stopped.
    """

    def __init__(self) -> None:
        self.nodes: list[tuple[int, ...]] = []
        self._index: dict[tuple[int, ...], int] = {}
        self._sums: dict[tuple[int, int], int] = {}
        self._heaps: list[int] = []
        self._birthdays: list[int] = []
        self._lock = threading.RLock()
        # Downstream caches keyed by name (type arrays, oracle memos, ...).
        self.memo: dict[str, object] = {}
        self.intern(())

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, g: object) -> bool:
        return isinstance(g, int) and 0 <= g < len(self.nodes)

    def options(self, g: int) -> tuple[int, ...]:
        self._check(g)
        return self.nodes[g]

    def _check(self, g: int) -> None:
        if not (isinstance(g, int) and 0 <= g < len(self.nodes)):
            raise InvalidReference(f"unknown game id {g!r}")

    def intern(self, options: Iterable[int]) -> int:
        """Return the id of the game with exactly this option set."""
        key = tuple(sorted(set(options)))
        found = self._index.get(key)
        if found is not None:
            return found
        n = len(self.nodes)
        for o in key:
            if not (isinstance(o, int) and 0 <= o < n):
                raise InvalidReference(f"unknown option id {o!r}")
        with self._lock:
            found = self._index.get(key)
            if found is not None:
                return found
            g = len(self.nodes)
            self.nodes.append(key)
            self._index[key] = g
            return g

    def lookup(self, options: Iterable[int]) -> int | None:
        """Id of an already interned option set, or None."""
        return self._index.get(tuple(sorted(set(options))))

    def nim_heap(self, n: int) -> int:
        if not 0 <= n <= MAX_HEAP:
            raise OutOfRange(f"heap size {n} outside 0..{MAX_HEAP}")
        heaps = self._heaps
        while len(heaps) <= n:
            heaps.append(self.intern(heaps))
        return heaps[n]

    def heap_size(self, g: int) -> int | None:
        """The n with ``nim_heap(n) == g``, or None if g is not a heap."""
        self._check(g)
        n = len(self.nodes[g])
        if n > MAX_HEAP:
            return None
        # Read-only: walk the heap chain through the intern index.
        chain: list[int] = []
        for _ in range(n + 1):
            h = self._index.get(tuple(chain))
            if h is None:
                return None
            chain.append(h)
        return n if chain[n] == g else None

    def sum(self, a: int, b: int) -> int:
        """Disjunctive sum; memoized on the unordered pair."""
        self._check(a)
        self._check(b)
        return self._sum(a, b)

    def _sum(self, a: int, b: int) -> int:
        done = self._known_sum(a, b)
        if done is not None:
            return done
        nodes, sums = self.nodes, self._sums
        # Explicit post-order walk over operand pairs; depth is unbounded.
        stack = [(a, b) if a < b else (b, a)]
        while stack:
            x, y = stack[-1]
            if (x, y) in sums:
                stack.pop()
                continue
            pairs = [(o, y) for o in nodes[x]] + [(x, o) for o in nodes[y]]
            opts = []
            missing = []
            for p, q in pairs:
                r = self._known_sum(p, q)
                if r is None:
                    missing.append((p, q) if p < q else (q, p))
                else:
                    opts.append(r)
            if missing:
                stack.extend(missing)
                continue
            stack.pop()
            with self._lock:
                sums[(x, y)] = self.intern(opts)
        return self._known_sum(a, b)  # type: ignore[return-value]

    def _known_sum(self, a: int, b: int) -> int | None:
        if a > b:
            a, b = b, a
        if a == NULL:
            return b
        return self._sums.get((a, b))

    def sum_all(self, games: Iterable[int]) -> int:
        total = NULL
        for g in games:
            total = self.sum(total, g)
        return total

    def nest(self, g: int, n: int) -> int:
        """Wrap g in n layers of braces: g -> {g} -> {{g}} ..."""
        self._check(g)
        if n < 0:
            raise OutOfRange("nesting depth must be non-negative")
        for _ in range(n):
            g = self.intern((g,))
        return g

    def multiple(self, g: int, n: int) -> int:
        """n-fold sum g+g+...+g; the empty sum (n=0) is the null game."""
        self._check(g)
        if n < 0:
            raise OutOfRange("repetition count must be non-negative")
        # Binary doubling keeps intermediate sums few.
        result, power = NULL, g
        while n:
            if n & 1:
                result = self._sum(result, power)
            n >>= 1
            if n:
                power = self._sum(power, power)
        return result

    def birthday(self, g: int) -> int:
        self._check(g)
        b = self._birthdays
        nodes = self.nodes
        for i in range(len(b), g + 1):
            opts = nodes[i]
            b.append(1 + max(b[o] for o in opts) if opts else 0)
        return b[g]

    def closure(self, g: int) -> set[int]:
        """All subgames of g, g included."""
        self._check(g)
        seen = {g}
        stack = [g]
        nodes = self.nodes
        while stack:
            for o in nodes[stack.pop()]:
                if o not in seen:
                    seen.add(o)
                    stack.append(o)
        return seen

    def describe(self, g: int) -> tuple[int, int, int]:
        """(option count, birthday, number of subgames including g)."""
        return len(self.options(g)), self.birthday(g), len(self.closure(g))

    def dump(self, games: Iterable[int] | None = None) -> str:
        """Line-per-node text dump ``id: opt opt ...``.

        With ``games`` given, only their closure is written.
        """
        if games is None:
            ids: Iterable[int] = range(len(self.nodes))
        else:
            keep: set[int] = set()
            for g in games:
                keep |= self.closure(g)
            ids = sorted(keep)
        return "\n".join(_dump_line(i, self.nodes[i]) for i in ids) + "\n"

    def check_acyclic(self) -> bool:
        return all(all(o < i for o in opts) for i, opts in enumerate(self.nodes))

    def __iter__(self) -> Iterator[int]:
        return iter(range(len(self.nodes)))


def _dump_line(i: int, opts: tuple[int, ...]) -> str:
    return f"{i}:" + "".join(f" {o}" for o in opts)


def load_dump(text: str) -> GameStore:
    """Rebuild a store from ``GameStore.dump`` output.

    Ids are remapped through interning, so the dump may come from any store.
    Returns the new store; ``store.memo['load_map']`` maps old ids to new.
    """
    store = GameStore()
    mapping: dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        try:
            old = int(head)
            opts = [mapping[int(tok)] for tok in rest.split()]
        except (ValueError, KeyError) as exc:
            raise InvalidReference(f"line {lineno}: bad dump entry {line!r}") from exc
        mapping[old] = store.intern(opts)
    store.memo["load_map"] = mapping
    return store
