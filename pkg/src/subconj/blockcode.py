"""Local rules, sliding block codes and the star-maps of the generators.

Two finite-word semantics are kept apart on purpose:

* :func:`apply_windowed` reads ``w[k, k+m)`` for every output position and
  therefore returns ``len(w) - m + 1`` symbols;
* :func:`star_map` evaluates the generator rule on a hash-free word with a
  virtual trailing ``#`` and preserves length.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from . import _vec
from .alphabet import HASH, HASH_FREE, NSYM, SYMBOLS, Symbol, Word, format_word, plain, tilde, words_up_to
from .report import Report, timed

TRIPLES = ((1, 2, 3), (4, 5, 6))


def triple_of(i: int) -> tuple[int, int, int]:
    _check_generator(i)
    return TRIPLES[0] if i <= 3 else TRIPLES[1]


def _check_generator(i: int) -> None:
    if not isinstance(i, int) or not 1 <= i <= 6:
        raise ValueError(f"generator index must be in 1..6, got {i!r}")


def flip_context(i: int) -> frozenset[Symbol]:
    """Right neighbours that make g_i toggle the tilde on a_i: ``#`` and the other plain letters of its triple."""
    return frozenset([HASH] + [plain(j) for j in triple_of(i) if j != i])


@dataclass(frozen=True)
class SlidingBlockCode:
    """A window-``m`` code given by a materialized table over all 13**m tuples.

    Table index of a window ``(s_0, ..., s_{m-1})`` is its base-13 value with
    ``s_0`` most significant.
    """

    window: int
    rule: tuple[Symbol, ...]

    def __post_init__(self):
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if len(self.rule) != NSYM**self.window:
            raise ValueError(f"rule must have {NSYM ** self.window} entries, got {len(self.rule)}")

    def __call__(self, block: Sequence[int]) -> Symbol:
        idx = 0
        for s in block:
            idx = idx * NSYM + s
        return self.rule[idx]

    @classmethod
    def from_function(cls, window: int, fn: Callable[[Word], int]) -> "SlidingBlockCode":
        rule = tuple(SYMBOLS[fn(t)] for t in itertools.product(SYMBOLS, repeat=window))
        return cls(window, rule)


@dataclass(frozen=True)
class LocalRule:
    """A total map on ordered symbol pairs; ``label`` is set for the generator rules."""

    table: tuple[Symbol, ...]
    label: int | None = None

    def __post_init__(self):
        if len(self.table) != NSYM * NSYM:
            raise ValueError("a local rule needs all 169 pair entries")

    def __call__(self, b: int, c: int) -> Symbol:
        return self.table[b * NSYM + c]

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.uint8).reshape(NSYM, NSYM)

    def as_code(self) -> SlidingBlockCode:
        return SlidingBlockCode(2, self.table)


def _generator_value(i: int, b: Symbol, c: Symbol) -> Symbol:
    if c in flip_context(i):
        if b == tilde(i):
            return plain(i)
        if b == plain(i):
            return tilde(i)
    return b


def make_generator_rule(i: int) -> LocalRule:
    """The local rule g_i: toggle a_i/ã_i when followed by ``#`` or another plain letter of the same triple."""
    _check_generator(i)
    table = tuple(_generator_value(i, b, c) for b in SYMBOLS for c in SYMBOLS)
    return LocalRule(table, label=i)


GENERATOR_RULES: dict[int, LocalRule] = {i: make_generator_rule(i) for i in range(1, 7)}


def generator_rule(i: int) -> LocalRule:
    _check_generator(i)
    return GENERATOR_RULES[i]


def generator_code(i: int) -> SlidingBlockCode:
    return generator_rule(i).as_code()


def identity_code(window: int = 1) -> SlidingBlockCode:
    """Window-``m`` code that returns the first symbol of its window."""
    return SlidingBlockCode.from_function(window, lambda t: t[0])


def apply_windowed(code: SlidingBlockCode | LocalRule, w: Sequence[int]) -> Word:
    if isinstance(code, LocalRule):
        code = code.as_code()
    m = code.window
    if len(w) < m:
        raise ValueError(f"word of length {len(w)} is shorter than the window {m}")
    return tuple(code(w[k : k + m]) for k in range(len(w) - m + 1))


def star_map(i: int, w: Sequence[int]) -> Word:
    """Length-preserving image of a hash-free word under generator ``i``."""
    rule = generator_rule(i)
    if HASH in w:
        raise ValueError("star_map is defined on hash-free words only")
    n = len(w)
    out = [rule(w[k], w[k + 1]) for k in range(n - 1)]
    if n:
        out.append(rule(w[-1], HASH))
    return tuple(out)


def compose_codes(c1: SlidingBlockCode, c2: SlidingBlockCode) -> SlidingBlockCode:
    """The code of ``c1 after c2``; its window is ``window(c1) + window(c2) - 1``."""
    window = c1.window + c2.window - 1
    return SlidingBlockCode.from_function(window, lambda t: c1(apply_windowed(c2, t)))


# --- exhaustive sweeps -------------------------------------------------------


def _hash_free_batches(max_len: int, min_len: int = 0):
    for n in range(min_len, max_len + 1):
        yield n, _vec.word_array(n, HASH_FREE)


def verify_star_consistency(i: int, max_len: int) -> Report:
    """Windowed g_i on ``# w # x`` must equal ``# f*_i(w) #`` for every hash-free ``w`` and context ``x``."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    table = generator_rule(i).array
    rep = Report(f"star-consistency[g{i}]")
    with timed(rep):
        for n, words in _hash_free_batches(max_len):
            count = len(words)
            framed = np.empty((count * NSYM, n + 3), dtype=np.uint8)
            framed[:, 0] = HASH
            framed[:, 1 : n + 1] = np.repeat(words, NSYM, axis=0)
            framed[:, n + 1] = HASH
            framed[:, n + 2] = np.tile(np.arange(NSYM, dtype=np.uint8), count)
            lhs = _vec.windowed(table, framed)
            rhs = np.empty((count, n + 2), dtype=np.uint8)
            rhs[:, 0] = HASH
            rhs[:, 1 : n + 1] = _vec.star(table, words)
            rhs[:, n + 1] = HASH
            rhs = np.repeat(rhs, NSYM, axis=0)
            rep.checked += len(framed)
            bad = _vec.first_mismatch(lhs, rhs)
            if bad is not None:
                return rep.fail(
                    f"g{i} on '{format_word(framed[bad])}' gives '{format_word(lhs[bad])}', "
                    f"star side '{format_word(rhs[bad])}'"
                )
    return rep


def verify_involution(i: int, max_len: int) -> Report:
    """``f*_i(f*_i(w)) == w`` over all hash-free words up to ``max_len``."""
    table = generator_rule(i).array
    rep = Report(f"involution[g{i}]")
    with timed(rep):
        for n, words in _hash_free_batches(max_len):
            twice = _vec.star(table, _vec.star(table, words))
            rep.checked += len(words)
            bad = _vec.first_mismatch(twice, words)
            if bad is not None:
                return rep.fail(f"f*{i}(f*{i}('{format_word(words[bad])}')) = '{format_word(twice[bad])}'")
    return rep


def verify_windowed_involution(i: int, max_len: int) -> Report:
    """Two left-aligned windowed passes of g_i return ``w[0, |w|-2)`` for every word of length 2..max_len."""
    table = generator_rule(i).array
    rep = Report(f"windowed-involution[g{i}]")
    with timed(rep):
        for n in range(2, max_len + 1):
            words = _vec.word_array(n)
            twice = _vec.windowed(table, _vec.windowed(table, words)) if n > 2 else np.empty((len(words), 0), np.uint8)
            rep.checked += len(words)
            bad = _vec.first_mismatch(twice, words[:, : n - 2])
            if bad is not None:
                return rep.fail(f"g{i}g{i} on '{format_word(words[bad])}' gives '{format_word(twice[bad])}'")
    return rep


def verify_length_preservation(i: int, max_len: int) -> Report:
    rep = Report(f"length-preservation[g{i}]")
    with timed(rep):
        for w in words_up_to(max_len, HASH_FREE):
            img = star_map(i, w)
            rep.checked += 1
            if len(img) != len(w) or HASH in img:
                return rep.fail(f"f*{i}('{format_word(w)}') = '{format_word(img)}'")
    return rep


def verify_commutation(i: int, j: int, max_len: int) -> Report:
    """``f*_i f*_j == f*_j f*_i`` on all hash-free words up to ``max_len``."""
    ti, tj = generator_rule(i).array, generator_rule(j).array
    rep = Report(f"commutation[g{i},g{j}]")
    with timed(rep):
        for n, words in _hash_free_batches(max_len):
            ij = _vec.star(ti, _vec.star(tj, words))
            ji = _vec.star(tj, _vec.star(ti, words))
            rep.checked += len(words)
            bad = _vec.first_mismatch(ij, ji)
            if bad is not None:
                return rep.fail(
                    f"w='{format_word(words[bad])}': f*{i}f*{j} -> '{format_word(ij[bad])}', "
                    f"f*{j}f*{i} -> '{format_word(ji[bad])}'"
                )
    return rep


def verify_cross_commutation(max_len: int) -> Report:
    """All nine pairs ``(i, j)`` with ``i`` in the first triple and ``j`` in the second commute."""
    rep = Report("cross-commutation")
    with timed(rep):
        for i in TRIPLES[0]:
            for j in TRIPLES[1]:
                sub = verify_commutation(i, j, max_len)
                rep.checked += sub.checked
                if not sub:
                    return rep.fail(f"(g{i},g{j}) {sub.counterexample}")
        rep.detail = "pairs=9"
    return rep


def find_noncommuting_witness(max_len: int = 3) -> tuple[int, int, Word] | None:
    """Least ``(i, i', w)`` with ``i != i'`` in one triple and ``f*_i f*_i'(w) != f*_i' f*_i(w)``."""
    for w in words_up_to(max_len, HASH_FREE, min_len=1):
        for triple in TRIPLES:
            for i, k in itertools.permutations(triple, 2):
                if star_map(i, star_map(k, w)) != star_map(k, star_map(i, w)):
                    return i, k, w
    return None


def verify_noncommutation(max_len: int = 3) -> Report:
    rep = Report("within-triple-noncommutation")
    with timed(rep):
        found = find_noncommuting_witness(max_len)
        if found is None:
            return rep.fail(f"no non-commuting pair found on hash-free words up to length {max_len}")
        i, k, w = found
        rep.checked = 1
        rep.detail = (
            f"witness g{i},g{k} on '{format_word(w)}': '{format_word(star_map(i, star_map(k, w)))}' "
            f"vs '{format_word(star_map(k, star_map(i, w)))}'"
        )
    return rep
