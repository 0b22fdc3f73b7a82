"""The group generated by the six generator involutions, in normal form.

Letters 1..3 commute with letters 4..6, and every letter is an involution,
so an element is a pair of reduced words: one over {1,2,3} and one over
{4,5,6}, each without adjacent repeats.  Text format is ``"1 2 1 | 4 5"``;
the identity is ``"|"``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import _vec
from .alphabet import HASH, HASH_FREE, ParseError, Word, format_word, plain, tilde, words_up_to
from .blockcode import TRIPLES, generator_rule, star_map
from .report import Report, timed


class InvariantViolation(AssertionError):
    """A self-verifying construction produced a wrong result."""


def _reduce(letters: Sequence[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


@dataclass(frozen=True)
class GroupElement:
    left: tuple[int, ...] = ()
    right: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        for letters, triple in ((self.left, TRIPLES[0]), (self.right, TRIPLES[1])):
            if any(x not in triple for x in letters):
                raise ValueError(f"letters {letters} must lie in {triple}")
            if any(a == b for a, b in zip(letters, letters[1:])):
                raise ValueError(f"factor {letters} is not reduced")

    @classmethod
    def generator(cls, i: int) -> "GroupElement":
        return cls((i,), ()) if i <= 3 else cls((), (i,))

    @classmethod
    def from_letters(cls, letters: Sequence[int]) -> "GroupElement":
        """Reduce an arbitrary product of generator letters into normal form."""
        return cls(_reduce([x for x in letters if x <= 3]), _reduce([x for x in letters if x >= 4]))

    @property
    def is_identity(self) -> bool:
        return not self.left and not self.right

    @property
    def norm(self) -> int:
        return len(self.left) + len(self.right)

    @property
    def letters(self) -> tuple[int, ...]:
        return self.left + self.right

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def __str__(self) -> str:
        return format_element(self)


IDENTITY = GroupElement()


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    return GroupElement(_reduce(g.left + h.left), _reduce(g.right + h.right))


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement(g.left[::-1], g.right[::-1])


def parse_element(text: str) -> GroupElement:
    """Parse ``"1 2 | 4"``; a missing bar means every letter is on the left."""
    left_text, bar, right_text = text.partition("|")
    try:
        left = tuple(int(t) for t in left_text.split())
        right = tuple(int(t) for t in right_text.split())
    except ValueError as exc:
        raise ParseError(f"bad group element {text!r}: {exc}") from None
    if not bar and any(x >= 4 for x in left):
        left, right = tuple(x for x in left if x <= 3), tuple(x for x in left if x >= 4)
    try:
        return GroupElement(left, right)
    except ValueError as exc:
        raise ParseError(f"bad group element {text!r}: {exc}") from None


def format_element(g: GroupElement) -> str:
    return " ".join([*map(str, g.left), "|", *map(str, g.right)])


def act(g: GroupElement, w: Sequence[int]) -> Word:
    """Apply the star-maps of ``g``'s letters right to left (right factor first)."""
    if HASH in w:
        raise ValueError("the group acts on hash-free words only")
    out = tuple(w)
    for letter in reversed(g.letters):
        out = star_map(letter, out)
    return out


def act_batch(g: GroupElement, words: np.ndarray) -> np.ndarray:
    out = words
    for letter in reversed(g.letters):
        out = _vec.star(generator_rule(letter).array, out)
    return out


def reduced_words(triple: Sequence[int], length: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for w in reduced_words(triple, length - 1):
        for x in triple:
            if not w or w[-1] != x:
                yield w + (x,)


def normal_forms(max_norm: int) -> Iterator[GroupElement]:
    """Every normal form with ``len(left) + len(right) <= max_norm``."""
    for total in range(max_norm + 1):
        for nl in range(total + 1):
            for left in reduced_words(TRIPLES[0], nl):
                for right in reduced_words(TRIPLES[1], total - nl):
                    yield GroupElement(left, right)


def claim1_witness(g: GroupElement, prefix: Sequence[int] = ()) -> Word:
    """A word moved by ``g``, checked by evaluation before it is returned.

    For ``g = (i_1..i_n | j_1..j_m)`` with ``n > 0`` the word is
    ``prefix + t_{i_1} .. t_{i_n}`` with ``prefix`` over {a1,a2,a3}; its image
    carries ``a_{i_1}`` at position ``len(prefix)``.  With an empty left factor
    the right factor and {a4,a5,a6} play the same roles.
    """
    if g.is_identity:
        raise ValueError("the identity moves no word")
    letters, triple = (g.left, TRIPLES[0]) if g.left else (g.right, TRIPLES[1])
    allowed = {plain(j) for j in triple}
    if any(s not in allowed for s in prefix):
        raise ValueError(f"prefix '{format_word(prefix)}' must use only a{triple[0]}..a{triple[2]}")
    v = tuple(prefix) + tuple(tilde(x) for x in letters)
    image = act(g, v)
    if image[len(prefix)] != plain(letters[0]) or image == v:
        raise InvariantViolation(
            f"witness '{format_word(v)}' for {format_element(g)} has image '{format_word(image)}'"
        )
    return v


def moved_words(g: GroupElement, count: int) -> list[Word]:
    """``count`` distinct words moved by ``g``, from witness prefixes in shortlex order."""
    if g.is_identity:
        raise ValueError("the identity moves no word")
    if count < 1:
        raise ValueError("count must be >= 1")
    triple = TRIPLES[0] if g.left else TRIPLES[1]
    prefixes = words_up_to(10**6, [plain(j) for j in triple])
    out = []
    for prefix in prefixes:
        v = claim1_witness(g, prefix)
        if act(g, v) == v:
            raise InvariantViolation(f"'{format_word(v)}' is not moved by {format_element(g)}")
        out.append(v)
        if len(out) == count:
            return out
    raise AssertionError("unreachable")


# --- checks ------------------------------------------------------------------


def verify_group_axioms(max_norm: int = 4) -> Report:
    """Identity, inverses and associativity on normal forms up to ``max_norm``.

    Multiplication is componentwise, so associativity of all triples with each
    element of norm at most ``max_norm`` follows from (a) componentwise
    multiplication on all pairs and (b) associativity of free reduction on all
    triples of single factors of length at most ``max_norm``; both are swept
    exhaustively, plus direct triples up to norm 2.
    """
    rep = Report("group-axioms")
    elements = list(normal_forms(max_norm))
    with timed(rep):
        for g in elements:
            rep.checked += 1
            if multiply(IDENTITY, g) != g or multiply(g, IDENTITY) != g:
                return rep.fail(f"identity law fails for {g}")
            if not multiply(g, inverse(g)).is_identity or not multiply(inverse(g), g).is_identity:
                return rep.fail(f"inverse law fails for {g}")
        for g, h in itertools.product(elements, repeat=2):
            rep.checked += 1
            gh = multiply(g, h)
            if gh != GroupElement.from_letters(g.left + g.right + h.left + h.right):
                return rep.fail(f"{g} * {h} = {gh} is not componentwise")
        for triple in TRIPLES:
            factors = [w for n in range(max_norm + 1) for w in reduced_words(triple, n)]
            for a, b, c in itertools.product(factors, repeat=3):
                rep.checked += 1
                if _reduce(_reduce(a + b) + c) != _reduce(a + _reduce(b + c)):
                    return rep.fail(f"free reduction not associative on {a}, {b}, {c}")
        small = list(normal_forms(min(2, max_norm)))
        for g, h, k in itertools.product(small, repeat=3):
            rep.checked += 1
            if multiply(multiply(g, h), k) != multiply(g, multiply(h, k)):
                return rep.fail(f"({g})({h})({k}) not associative")
        rep.detail = f"elements={len(elements)}"
    return rep


def verify_homomorphism(max_norm: int = 3, max_len: int = 4) -> Report:
    """``act(g*h, w) == act(g, act(h, w))`` for all pairs of normal forms and hash-free words.

    Each element's action on the hash-free words of one length is stored as a
    permutation of word indices (base-12 codes), so both sides reduce to
    index arithmetic.
    """
    rep = Report("action-homomorphism")
    elements = list(normal_forms(max_norm))
    with timed(rep):
        for n in range(max_len + 1):
            words = _vec.word_array(n, HASH_FREE)
            weights = 12 ** np.arange(n - 1, -1, -1, dtype=np.int64)
            letter_perm = {
                i: _vec.star(generator_rule(i).array, words).astype(np.int64) @ weights for i in range(1, 7)
            }
            cache: dict[GroupElement, np.ndarray] = {IDENTITY: np.arange(len(words), dtype=np.int64)}

            def perm(e: GroupElement) -> np.ndarray:
                # act(e) = act(head) after act(rest)
                if e not in cache:
                    head, *rest = e.letters
                    cache[e] = letter_perm[head][perm(GroupElement.from_letters(rest))]
                return cache[e]

            for g, h in itertools.product(elements, repeat=2):
                lhs = perm(multiply(g, h))
                rhs = perm(g)[perm(h)]
                rep.checked += len(words)
                bad = _vec.first_mismatch(lhs, rhs)
                if bad is not None:
                    return rep.fail(f"g={g}, h={h}, w='{format_word(words[bad])}'")
    return rep


def verify_freeness(max_norm: int = 6) -> Report:
    """Every non-identity normal form up to ``max_norm`` moves its witness word."""
    rep = Report("bounded-freeness")
    with timed(rep):
        for g in normal_forms(max_norm):
            if g.is_identity:
                continue
            try:
                claim1_witness(g)
            except InvariantViolation as exc:
                return rep.fail(str(exc))
            rep.checked += 1
        rep.detail = f"max_norm={max_norm}"
    return rep


def verify_moved_words(count: int = 50) -> Report:
    rep = Report("moved-words")
    with timed(rep):
        for i in range(1, 7):
            words = moved_words(GroupElement.generator(i), count)
            g = GroupElement.generator(i)
            rep.checked += len(words)
            if len(set(words)) != count or any(act(g, v) == v for v in words):
                return rep.fail(f"generator {i}: moved words not distinct or not moved")
        rep.detail = f"{count} per generator"
    return rep
