"""Reading and writing games in compact heap/brace notation.

Grammar::

    expr  := item ( "+"? item )*
    item  := atom ( "^" NAT | "_" NAT )*
    atom  := DIGIT | "{" expr ( "," expr )* "}"

A digit is a Nim heap, juxtaposition and ``+`` both mean disjunctive sum,
``G^n`` is the n-fold sum and ``G_n`` wraps G in n braces. Suffixes bind to
the atom just before them and NAT is maximal munch, so ``1_12`` nests 1
twelve times; write ``1_1 2`` for ``{1} + 2``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .core import GameError, GameStore


class NotationError(GameError):
    def __init__(self, message: str, text: str, pos: int) -> None:
        self.offset = len(text[:pos].encode("utf-8"))
        self.text = text
        super().__init__(f"{message} at byte {self.offset}")


@dataclass(frozen=True)
class Heap:
    size: int


@dataclass(frozen=True)
class Options:
    items: tuple["GameExpr", ...]


@dataclass(frozen=True)
class Repeat:
    base: "GameExpr"
    count: int


@dataclass(frozen=True)
class Nest:
    base: "GameExpr"
    depth: int


@dataclass(frozen=True)
class Sum:
    terms: tuple["GameExpr", ...]


GameExpr = Union[Heap, Options, Repeat, Nest, Sum]


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, message: str) -> NotationError:
        return NotationError(message, self.text, self.pos)

    def skip_ws(self) -> None:
        text = self.text
        while self.pos < len(text) and text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> GameExpr:
        terms = [self.item()]
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                terms.append(self.item())
            elif ch == "{" or _is_digit(ch):
                terms.append(self.item())
            else:
                break
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def item(self) -> GameExpr:
        node = self.atom()
        while (ch := self.peek()) in ("^", "_") and ch:
            self.pos += 1
            n = self.nat()
            node = Repeat(node, n) if ch == "^" else Nest(node, n)
        return node

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        text = self.text
        while self.pos < len(text) and _is_digit(text[self.pos]):
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a number")
        return int(text[start:self.pos])

    def atom(self) -> GameExpr:
        ch = self.peek()
        if _is_digit(ch):
            self.pos += 1
            return Heap(int(ch))
        if ch == "{":
            self.pos += 1
            if self.peek() == "}":
                raise self.error("empty braces (write 0 for the null game)")
            items = [self.expr()]
            while self.peek() == ",":
                self.pos += 1
                items.append(self.expr())
            if self.peek() != "}":
                raise self.error("expected ',' or '}'")
            self.pos += 1
            return Options(tuple(items))
        if not ch:
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected character {ch!r}")


def _is_digit(ch: str) -> bool:
    return len(ch) == 1 and "0" <= ch <= "9"


def parse_expr(text: str) -> GameExpr:
    p = _Parser(text)
    node = p.expr()
    if p.peek():
        raise p.error(f"unexpected character {p.peek()!r}")
    return node


def evaluate(store: GameStore, node: GameExpr) -> int:
    if isinstance(node, Heap):
        return store.nim_heap(node.size)
    if isinstance(node, Options):
        return store.intern(evaluate(store, item) for item in node.items)
    if isinstance(node, Repeat):
        return store.multiple(evaluate(store, node.base), node.count)
    if isinstance(node, Nest):
        return store.nest(evaluate(store, node.base), node.depth)
    return store.sum_all(evaluate(store, t) for t in node.terms)


def parse(store: GameStore, text: str) -> int:
    """Intern the game written in ``text`` and return its id."""
    return evaluate(store, parse_expr(text))


def render(store: GameStore, g: int) -> str:
    """Canonical brace form; subgames that are Nim heaps print as digits."""
    cache: dict[int, str] = {}
    # Options have smaller ids, so increasing id order is bottom-up.
    for x in sorted(store.closure(g)):
        size = store.heap_size(x)
        if size is not None:
            cache[x] = str(size)
        else:
            cache[x] = "{" + ",".join(cache[o] for o in store.options(x)) + "}"
    return cache[g]


def rendered_size(store: GameStore, g: int) -> int:
    """Number of nodes in the tree ``render`` would write out."""
    cache: dict[int, int] = {}
    for x in sorted(store.closure(g)):
        cache[x] = 1 if store.heap_size(x) is not None else \
            1 + sum(cache[o] for o in store.options(x))
    return cache[g]


def rendered_length(store: GameStore, g: int) -> int:
    """Length in characters of ``render(store, g)``, without building it."""
    cache: dict[int, int] = {}
    for x in sorted(store.closure(g)):
        opts = store.options(x)
        if store.heap_size(x) is not None:
            cache[x] = 1
        else:
            cache[x] = 2 + sum(cache[o] for o in opts) + len(opts) - 1
    return cache[g]


def render_chunks(store: GameStore, g: int, chunk_chars: int = 1 << 16) -> Iterator[str]:
    """``render(store, g)`` as a stream of pieces.

    Subgames whose rendering fits in ``chunk_chars`` arrive as one piece
    (the same string object each time). Larger ones are opened up into
    single-character ``{``, ``,`` and ``}`` pieces around their options.
    """
    lengths = {}
    for x in sorted(store.closure(g)):
        opts = store.options(x)
        lengths[x] = 1 if store.heap_size(x) is not None else \
            1 + len(opts) + sum(lengths[o] for o in opts)
    small: dict[int, str] = {}
    stack: list[int | str] = [g]
    while stack:
        x = stack.pop()
        if isinstance(x, str):
            yield x
        elif lengths[x] <= chunk_chars:
            if x not in small:
                small[x] = render(store, x)
            yield small[x]
        else:
            opts = store.options(x)
            stack.append("}")
            for i, o in enumerate(reversed(opts)):
                stack.append(o)
                if i < len(opts) - 1:
                    stack.append(",")
            yield "{"


def parse_chunks(store: GameStore, chunks: Iterable[str]) -> int:
    """Parse text delivered in pieces without joining it.

    A piece is either one of ``{``, ``,``, ``}`` or a complete expression.
    Every expression or brace group must be followed by ``,``, ``}`` or the
    end of input, so the result equals ``parse`` of the joined text. Other
    splittings raise NotationError. Expression pieces are memoized by text.
    """
    memo: dict[str, int] = {}
    groups: list[list[int]] = []
    result: int | None = None
    done = False  # an item just ended; only a delimiter may follow
    pos = 0
    for piece in chunks:
        if piece == "{":
            if done:
                raise _stream_error("brace group after a complete item", pos)
            groups.append([])
        elif piece in (",", "}"):
            if not done or not groups:
                raise _stream_error(f"unexpected {piece!r}", pos)
            groups[-1].append(result)
            if piece == ",":
                done = False
            else:
                result = store.intern(groups.pop())
        else:
            if done:
                raise _stream_error("expression piece after a complete item", pos)
            g = memo.get(piece)
            if g is None:
                try:
                    g = memo[piece] = parse(store, piece)
                except NotationError as exc:
                    raise _stream_error(str(exc), pos) from exc
            result, done = g, True
        pos += len(piece)
    if groups or not done:
        raise _stream_error("unexpected end of input", pos)
    return result


def _stream_error(message: str, pos: int) -> NotationError:
    exc = NotationError.__new__(NotationError)
    GameError.__init__(exc, f"{message} at char {pos}")
    exc.offset, exc.text = pos, ""
    return exc


def random_expressions(store: GameStore, count: int, seed: int,
                       max_size: int = 2000) -> list[str]:
    """``count`` random strings whose games render to at most max_size nodes.

    Sums of nontrivial games expand quickly when written out as trees, so
    oversized draws are rejected.
    """
    rng = random.Random(seed)
    out: list[str] = []
    while len(out) < count:
        text = random_expression(rng)
        if rendered_size(store, parse(store, text)) <= max_size:
            out.append(text)
    return out


def random_expression(rng: random.Random, depth: int = 3) -> str:
    """Random well-formed notation string, kept small enough to evaluate."""

    def item(d: int) -> str:
        if d <= 0 or rng.random() < 0.4:
            s = str(rng.randint(0, 3))
        else:
            k = rng.randint(1, 2)
            s = "{" + ",".join(expr(d - 1) for _ in range(k)) + "}"
        for _ in range(rng.choice((0, 0, 0, 1))):
            if rng.random() < 0.5:
                s += f"^{rng.randint(0, 2)}"
            else:
                s += f"_{rng.randint(0, 2)}"
        return s

    def expr(d: int) -> str:
        out = item(d)
        for _ in range(rng.randint(0, 1)):
            nxt = item(d)
            # Bare juxtaposition only where no suffix number could absorb
            # the following digit.
            seps = ["+", " + ", " "]
            if "^" not in out[-3:] and "_" not in out[-3:]:
                seps.append("")
            out += rng.choice(seps) + nxt
        return out

    return expr(depth)
