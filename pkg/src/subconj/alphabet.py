"""The 13-letter alphabet and finite words over it.

Symbols are small integers so that every table in the package can be indexed
directly by symbol code::

    a1..a6  -> 0..5
    t1..t6  -> 6..11   (t stands for a-tilde)
    #       -> 12

Words are plain tuples of :class:`Symbol`.  Because ``Symbol`` is an
``IntEnum``, a tuple of raw codes compares and hashes equal to the
corresponding tuple of symbols.
"""

from __future__ import annotations

import enum
import itertools
from typing import Iterable, Iterator, Sequence, Tuple


class ParseError(ValueError):
    """Malformed token or word text."""

    def __init__(self, message: str, token: str | None = None, position: int | None = None):
        super().__init__(message)
        self.token = token
        self.position = position


class Symbol(enum.IntEnum):
    A1 = 0
    A2 = 1
    A3 = 2
    A4 = 3
    A5 = 4
    A6 = 5
    T1 = 6
    T2 = 7
    T3 = 8
    T4 = 9
    T5 = 10
    T6 = 11
    HASH = 12

    @property
    def kind(self) -> str:
        if self is Symbol.HASH:
            return "hash"
        return "plain" if self < 6 else "tilde"

    @property
    def index(self) -> int | None:
        if self is Symbol.HASH:
            return None
        return self % 6 + 1

    @property
    def token(self) -> str:
        return _TOKENS[self]

    def __repr__(self) -> str:
        return self.token

    __str__ = __repr__


Word = Tuple[Symbol, ...]

SYMBOLS: Tuple[Symbol, ...] = tuple(Symbol)
HASH = Symbol.HASH
NSYM = len(SYMBOLS)
#: every symbol except ``#``
HASH_FREE: Tuple[Symbol, ...] = SYMBOLS[:12]

_TOKENS = {s: (f"a{s + 1}" if s < 6 else f"t{s - 5}") for s in SYMBOLS[:12]}
_TOKENS[Symbol.HASH] = "#"
_BY_TOKEN = {tok: s for s, tok in _TOKENS.items()}


def plain(i: int) -> Symbol:
    """The symbol a_i."""
    if not 1 <= i <= 6:
        raise ValueError(f"symbol index must be in 1..6, got {i}")
    return SYMBOLS[i - 1]


def tilde(i: int) -> Symbol:
    """The symbol a_i with a tilde."""
    if not 1 <= i <= 6:
        raise ValueError(f"symbol index must be in 1..6, got {i}")
    return SYMBOLS[i + 5]


def word(symbols: Iterable[int]) -> Word:
    """Coerce an iterable of symbol codes into a Word."""
    return tuple(SYMBOLS[s] for s in symbols)


def parse_word(text: str) -> Word:
    """Parse whitespace-separated tokens (``a1``..``a6``, ``t1``..``t6``, ``#``).

    >>> parse_word("a1 t2 #")
    (a1, t2, #)
    """
    out = []
    for pos, tok in enumerate(text.split()):
        try:
            out.append(_BY_TOKEN[tok])
        except KeyError:
            raise ParseError(f"unknown token {tok!r} at position {pos}", tok, pos) from None
    return tuple(out)


def format_word(w: Sequence[int]) -> str:
    return " ".join(_TOKENS[SYMBOLS[s]] for s in w)


def shift_word(w: Word) -> Word:
    """Drop the first symbol (finite analogue of the left shift)."""
    if not w:
        raise ValueError("cannot shift the empty word")
    return tuple(w[1:])


def is_hash_free(w: Sequence[int]) -> bool:
    return HASH not in w


def is_hash_free_odd(w: Sequence[int]) -> bool:
    return len(w) % 2 == 1 and HASH not in w


def all_words(length: int, symbols: Sequence[Symbol] = SYMBOLS) -> Iterator[Word]:
    """All words of ``length`` over ``symbols`` in lexicographic order."""
    return itertools.product(symbols, repeat=length)


def words_up_to(max_len: int, symbols: Sequence[Symbol] = SYMBOLS, min_len: int = 0) -> Iterator[Word]:
    for n in range(min_len, max_len + 1):
        yield from all_words(n, symbols)
