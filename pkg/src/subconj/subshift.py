"""Forbidden-word subshifts X(R) seen through their finite languages.

Admissibility is local: a finite word ``u`` occurs in some point of X(R)
exactly when no factor of ``u`` is ``# w #`` with ``w`` in R.  Padding ``u``
with ``a1`` on both sides creates no new ``#`` and hence no new forbidden
factor, so every locally admissible word extends to a point.
"""

from __future__ import annotations

import os
from collections.abc import Set
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import _vec
from .alphabet import HASH, NSYM, ParseError, Word, format_word, is_hash_free_odd, parse_word, word
from .blockcode import generator_rule
from .group import GroupElement, act
from .report import Report, timed

#: largest number of candidate words (13**n) a language enumeration may touch
DEFAULT_BUDGET = NSYM**7


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ForbiddenSet:
    """A finite set of odd-length hash-free words."""

    members: frozenset[Word] = frozenset()

    def __post_init__(self):
        members = frozenset(tuple(w) for w in self.members)
        for w in members:
            if not is_hash_free_odd(w):
                raise ValueError(f"forbidden word '{format_word(w)}' must be hash-free with odd length")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, *words: Iterable[int]) -> "ForbiddenSet":
        return cls(frozenset(word(w) for w in words))

    def __iter__(self) -> Iterator[Word]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, w) -> bool:
        return tuple(w) in self.members

    def __le__(self, other: "ForbiddenSet") -> bool:
        return self.members <= other.members

    def __str__(self) -> str:
        return "{" + ", ".join(format_word(w) for w in self) + "}"


def parse_forbidden(text: str) -> ForbiddenSet:
    """One word per line; blank lines and ``//`` comments are skipped."""
    words = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("//"):
            continue
        try:
            w = parse_word(line)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}", exc.token, lineno) from None
        if HASH in w:
            raise ParseError(f"line {lineno}: forbidden word must not contain '#'", None, lineno)
        if len(w) % 2 == 0:
            raise ParseError(f"line {lineno}: forbidden word must have odd length, got {len(w)}", None, lineno)
        words.append(w)
    return ForbiddenSet(frozenset(words))


def load_forbidden(path: str | os.PathLike) -> ForbiddenSet:
    with open(path, encoding="utf-8") as fh:
        return parse_forbidden(fh.read())


def format_forbidden(R: ForbiddenSet) -> str:
    return "".join(format_word(w) + "\n" for w in R)


def is_admissible(R: ForbiddenSet, u: Iterable[int]) -> bool:
    """True iff no factor of ``u`` is ``# w #`` with ``w`` in R."""
    u = tuple(u)
    last = None
    for pos, s in enumerate(u):
        if s == HASH:
            if last is not None and u[last + 1 : pos] in R.members:
                return False
            last = pos
    return True


class Language(Set):
    """The admissible words of one length, stored as a mask over base-13 codes.

    Iteration yields words in lexicographic (symbol code) order.
    """

    def __init__(self, length: int, mask: np.ndarray):
        if mask.shape != (NSYM**length,):
            raise ValueError("mask size does not match word length")
        self.length = length
        self.mask = mask

    def __contains__(self, w) -> bool:
        w = tuple(w)
        if len(w) != self.length:
            return False
        code = 0
        for s in w:
            code = code * NSYM + s
        return bool(self.mask[code])

    def __iter__(self) -> Iterator[Word]:
        for chunk in np.array_split(np.flatnonzero(self.mask), max(1, int(self.mask.sum()) // 65536 + 1)):
            for row in _vec.decode_codes(chunk, self.length):
                yield word(row)

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __eq__(self, other) -> bool:
        if isinstance(other, Language):
            return self.length == other.length and bool(np.array_equal(self.mask, other.mask))
        return Set.__eq__(self, other)

    def __le__(self, other) -> bool:
        if isinstance(other, Language):
            return self.length == other.length and not np.any(self.mask & ~other.mask)
        return Set.__le__(self, other)

    __hash__ = None

    def array(self) -> np.ndarray:
        return _vec.decode_codes(np.flatnonzero(self.mask), self.length)

    def difference_witness(self, other: "Language") -> tuple[str, Word] | None:
        """First word (in code order) that lies in exactly one of the two languages."""
        diff = np.flatnonzero(self.mask != other.mask)
        if not len(diff):
            return None
        code = diff[0]
        side = "left-only" if self.mask[code] else "right-only"
        return side, word(_vec.decode_codes(np.array([code]), self.length)[0])


def _check_budget(n: int, budget: int) -> None:
    if n < 0:
        raise ValueError("length must be >= 0")
    if NSYM**n > budget:
        raise BudgetExceeded(f"13**{n} candidate words exceed the enumeration budget {budget}")


def _admissible_cube(R: ForbiddenSet, n: int) -> np.ndarray:
    """Admissibility of every length-``n`` word as an ``(13,) * n`` boolean array."""
    cube = np.ones((NSYM,) * n, dtype=bool)
    full = slice(None)
    for w in R.members:
        pattern = (HASH, *w, HASH)
        for start in range(n - len(pattern) + 1):
            cube[(full,) * start + pattern + (full,) * (n - start - len(pattern))] = False
    return cube


def language(R: ForbiddenSet, n: int, budget: int = DEFAULT_BUDGET) -> Language:
    """All admissible words of length ``n`` in X(R)."""
    _check_budget(n, budget)
    return Language(n, _admissible_cube(R, n).reshape(-1))


def act_on_R(g: GroupElement, R: ForbiddenSet) -> ForbiddenSet:
    return ForbiddenSet(frozenset(act(g, w) for w in R.members))


def windowed_image(i: int, R: ForbiddenSet, n: int, budget: int = DEFAULT_BUDGET) -> Language:
    """Windowed g_i images of the admissible words of length ``n + 1``."""
    _check_budget(n + 1, budget)
    table = generator_rule(i).array.astype(np.int64)
    cube = _admissible_cube(R, n + 1)
    mask = np.zeros(NSYM**n, dtype=bool)
    # image code = sum over k of table[d_k, d_{k+1}] * 13**(n-1-k); split on d_0
    weights = [table * NSYM ** (n - 1 - k) for k in range(n)]
    for first in range(NSYM):
        code = np.zeros((NSYM,) * n, dtype=np.int64)
        if n:
            code += weights[0][first].reshape((NSYM,) + (1,) * (n - 1))
        for k in range(1, n):
            shape = [1] * n
            shape[k - 1] = shape[k] = NSYM
            code += weights[k].reshape(shape)
        mask[code[cube[first]]] = True
    return Language(n, mask)


def verify_equivariance(i: int, R: ForbiddenSet, n: int, budget: int = DEFAULT_BUDGET) -> Report:
    """The g_i image of X(R) has the same length-``n`` language as X(f*_i R)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rep = Report(f"equivariance[g{i}, R={R}, n={n}]")
    with timed(rep):
        image = windowed_image(i, R, n, budget)
        target = language(act_on_R(GroupElement.generator(i), R), n, budget)
        rep.checked = NSYM**n
        rep.detail = f"|L|={len(target)}"
        found = image.difference_witness(target)
        if found is not None:
            side, w = found
            what = "image only" if side == "left-only" else "f*R language only"
            return rep.fail(f"'{format_word(w)}' ({what})")
    return rep


def random_forbidden_set(size: int, seed: int, max_len: int = 3) -> ForbiddenSet:
    """``size`` distinct random odd hash-free words of length at most ``max_len``."""
    rng = np.random.default_rng(seed)
    lengths = list(range(1, max_len + 1, 2))
    out: set[Word] = set()
    while len(out) < size:
        n = int(rng.choice(lengths))
        out.add(word(rng.integers(0, 12, size=n)))
    return ForbiddenSet(frozenset(out))
