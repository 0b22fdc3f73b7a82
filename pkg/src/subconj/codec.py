"""The 22-bit block substitution into binary, phase recovery and the map h.

Binary words are ``str`` values over ``"0"``/``"1"``.  A binary word ``y`` is
read *at phase n* when it starts ``n`` bits into a code block: its first
``(22 - n) % 22`` bits are a suffix of some block, followed by whole blocks,
followed by a (possibly empty) prefix of some block.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .alphabet import HASH, HASH_FREE, SYMBOLS, Symbol, Word, format_word, plain, tilde, words_up_to
from .blockcode import apply_windowed, generator_code, generator_rule
from .report import Report, timed
from .subshift import ForbiddenSet, is_admissible, language

BLOCK = 22


class DecodeError(ValueError):
    """Binary input does not parse at the requested phase."""


def is_binary(y: str) -> bool:
    return all(c in "01" for c in y)


def parse_bits(text: str) -> str:
    y = text.strip()
    if not is_binary(y):
        raise ValueError(f"binary word may contain only 0 and 1, got {text!r}")
    return y


def _check_phase(n: int) -> None:
    if not isinstance(n, int) or not 0 <= n < BLOCK:
        raise ValueError(f"phase must be in 0..21, got {n!r}")


def lead_length(n: int) -> int:
    """Length of the leading partial block at phase ``n``."""
    return (BLOCK - n) % BLOCK


@dataclass(frozen=True)
class RhoTable:
    """One 22-bit code block per symbol, indexed by symbol code."""

    entries: tuple[str, ...]

    def __post_init__(self):
        if len(self.entries) != len(SYMBOLS):
            raise ValueError("a code table needs one block per symbol")
        for s, e in zip(SYMBOLS, self.entries):
            if len(e) != BLOCK or not is_binary(e):
                raise ValueError(f"block for {s} must be 22 binary digits, got {e!r}")

    def __getitem__(self, s: int) -> str:
        return self.entries[s]

    def items(self):
        return zip(SYMBOLS, self.entries)

    def flipped(self, s: int, bit: int) -> "RhoTable":
        """A copy with one bit of one block inverted (mutation testing)."""
        e = self.entries[s]
        entries = list(self.entries)
        entries[s] = e[:bit] + ("1" if e[bit] == "0" else "0") + e[bit + 1 :]
        return RhoTable(tuple(entries))


def make_rho() -> RhoTable:
    entries = [""] * len(SYMBOLS)
    for i in range(1, 7):
        entries[plain(i)] = "110100" + "00" * (7 - i) + "11" + "00" * i
        entries[tilde(i)] = "11010011" + "00" * (6 - i) + "11" + "00" * i
    entries[HASH] = "11" * 5 + "01" + "11" * 5
    return RhoTable(tuple(entries))


RHO = make_rho()


class _Grammar:
    """Lookup tables for parsing against one code table."""

    def __init__(self, rho: RhoTable):
        self.rho = rho
        self.block_of: dict[str, Symbol] = {}
        for s, e in rho.items():
            self.block_of.setdefault(e, s)
        self.suffixes = [{e[BLOCK - k :] for e in rho.entries} for k in range(BLOCK + 1)]
        self.prefixes = [{e[:k] for e in rho.entries} for k in range(BLOCK + 1)]
        self.suffixes[0] = self.prefixes[0] = {""}

    @functools.lru_cache(maxsize=None)
    def middles(self, start: int, length: int) -> frozenset[str]:
        return frozenset(e[start : start + length] for e in self.rho.entries)

    def parse(self, y: str, n: int):
        """``(lead, symbols, trail)`` for ``y`` read at phase ``n``, or None."""
        lead = lead_length(n)
        if len(y) <= lead:
            return (y, (), "") if y in self.middles(n, len(y)) else None
        if y[:lead] not in self.suffixes[lead]:
            return None
        symbols = []
        pos = lead
        while pos + BLOCK <= len(y):
            s = self.block_of.get(y[pos : pos + BLOCK])
            if s is None:
                return None
            symbols.append(s)
            pos += BLOCK
        trail = y[pos:]
        if trail not in self.prefixes[len(trail)]:
            return None
        return y[:lead], tuple(symbols), trail


@functools.lru_cache(maxsize=64)
def _grammar(rho: RhoTable) -> _Grammar:
    return _Grammar(rho)


def encode(w: Sequence[int], rho: RhoTable = RHO) -> str:
    return "".join(rho[s] for s in w)


def phases(y: str, rho: RhoTable = RHO) -> list[int]:
    """Every phase at which ``y`` parses, ascending."""
    gram = _grammar(rho)
    return [n for n in range(BLOCK) if gram.parse(y, n) is not None]


def decode(y: str, rho: RhoTable = RHO) -> list[tuple[int, Word, int, int]]:
    """``(phase, symbols, leading fragment length, trailing fragment length)`` per consistent phase."""
    gram = _grammar(rho)
    out = []
    for n in range(BLOCK):
        parsed = gram.parse(y, n)
        if parsed is not None:
            lead, symbols, trail = parsed
            out.append((n, symbols, len(lead), len(trail)))
    return out


def check_unique_readability(rho: RhoTable = RHO) -> Report:
    """No block equals a window at offset 1..21 of any concatenation of two blocks."""
    rep = Report("unique-readability")
    with timed(rep):
        for a, a1, a2 in itertools.product(SYMBOLS, repeat=3):
            pair = rho[a1] + rho[a2]
            block = rho[a]
            for n in range(1, BLOCK):
                rep.checked += 1
                if block == pair[n : n + BLOCK]:
                    return rep.fail(f"rho({a}) = (rho({a1}) rho({a2}))[{n},{n + BLOCK})")
    return rep


def verify_suffix_agreement(rho: RhoTable = RHO) -> Report:
    """``rho(a_i)`` and ``rho(t_i)`` share every suffix starting at 8..21."""
    rep = Report("suffix-agreement")
    with timed(rep):
        for i in range(1, 7):
            for m in range(8, BLOCK):
                rep.checked += 1
                if rho[plain(i)][m:] != rho[tilde(i)][m:]:
                    return rep.fail(f"rho(a{i})[{m},22) != rho(t{i})[{m},22)")
    return rep


def verify_prefix_discrimination(rho: RhoTable = RHO) -> Report:
    """``rho(a_i)`` and ``rho(t_i)`` differ at bits 6 and 7."""
    rep = Report("tilde-discrimination")
    with timed(rep):
        for i in range(1, 7):
            for pos in (6, 7):
                rep.checked += 1
                if rho[plain(i)][pos] == rho[tilde(i)][pos]:
                    return rep.fail(f"rho(a{i}) and rho(t{i}) agree at bit {pos}")
    return rep


# --- synchronization ---------------------------------------------------------


class SyncWindow(NamedTuple):
    length: int
    witness: str
    witness_phases: tuple[int, ...]


def encoding_factors(length: int, max_symbols: int = 4, rho: RhoTable = RHO) -> set[str]:
    """Distinct ``length``-bit factors of ``encode(u)`` over all ``u`` with at most ``max_symbols`` symbols."""
    total = BLOCK * max_symbols
    out: set[str] = set()
    for p in range(min(BLOCK, total - length + 1)):
        blocks = math.ceil((p + length) / BLOCK) if length else 1
        for u in itertools.product(SYMBOLS, repeat=blocks):
            out.add(encode(u, rho)[p : p + length])
    return out


def _max_phases(length: int, rho: RhoTable):
    worst, witness = 0, ""
    for y in sorted(encoding_factors(length, rho=rho)):
        count = len(phases(y, rho))
        if count > worst:
            worst, witness = count, y
    return worst, witness


def sync_window(rho: RhoTable = RHO, max_symbols: int = 4) -> SyncWindow:
    """Least ``L`` such that every ``L``-bit factor of a bounded encoding has exactly one phase.

    Phases of a word are a superset of the phases of any extension, so the
    property is monotone in ``L`` and a binary search suffices.  The returned
    witness is an ``(L-1)``-bit factor with two or more phases.
    """
    lo, hi = 1, BLOCK * max_symbols
    if _max_phases(hi, rho)[0] != 1:
        raise ValueError("no synchronizing window within the bounded encodings")
    while lo < hi:
        mid = (lo + hi) // 2
        if _max_phases(mid, rho)[0] == 1:
            hi = mid
        else:
            lo = mid + 1
    if lo == 1:
        return SyncWindow(1, "", tuple(range(BLOCK)))
    _, witness = _max_phases(lo - 1, rho)
    return SyncWindow(lo, witness, tuple(phases(witness, rho)))


def verify_sync(rho: RhoTable = RHO, bound: int = 43) -> Report:
    rep = Report("sync-window")
    with timed(rep):
        try:
            found = sync_window(rho)
        except ValueError as exc:
            return rep.fail(str(exc))
        rep.extra = found._asdict()
        rep.detail = f"L={found.length} witness_phases={list(found.witness_phases)}"
        if found.length > bound:
            return rep.fail(f"sync window {found.length} exceeds {bound}")
        if len(found.witness_phases) < 2 or len(found.witness) != found.length - 1:
            return rep.fail(f"minimality witness {found.witness!r} is not ambiguous")
        for y in encoding_factors(bound, rho=rho):
            rep.checked += 1
            ph = phases(y, rho)
            if len(ph) != 1:
                return rep.fail(f"{bound}-bit factor {y} has phases {ph}")
    return rep


# --- the image subshift ------------------------------------------------------


def phi_language(R: ForbiddenSet, n: int, rho: RhoTable = RHO, budget: int | None = None) -> set[str]:
    """All ``n``-bit factors of the binary image of X(R)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = math.ceil(n / BLOCK) + 1
    words = language(R, k) if budget is None else language(R, k, budget)
    out: set[str] = set()
    for u in words:
        y = encode(u, rho)
        for p in range(len(y) - n + 1):
            out.add(y[p : p + n])
    return out


def in_phi_language(R: ForbiddenSet, y: str, rho: RhoTable = RHO) -> bool:
    """Whether ``y`` is a factor of the binary image of X(R), decided through its parses."""
    gram = _grammar(rho)
    for n in range(BLOCK):
        parsed = gram.parse(y, n)
        if parsed is None:
            continue
        lead, symbols, trail = parsed
        if len(y) <= lead_length(n) and not symbols:
            return True
        heads = [(s,) for s, e in rho.items() if e[n:] == lead] if lead else [()]
        tails = [(s,) for s, e in rho.items() if e[: len(trail)] == trail] if trail else [()]
        for head in heads:
            for tail in tails:
                if is_admissible(R, head + symbols + tail):
                    return True
    return False


def verify_forbidden_correspondence(R: ForbiddenSet, n: int, rho: RhoTable = RHO) -> Report:
    """For odd hash-free ``v``: ``# v #`` is forbidden iff its encoding is absent from the image."""
    rep = Report(f"forbidden-correspondence[R={R}, n={n}]")
    with timed(rep):
        for v in words_up_to(n, HASH_FREE, min_len=1):
            if len(v) % 2 == 0:
                continue
            framed = (HASH, *v, HASH)
            forbidden = not is_admissible(R, framed)
            present = in_phi_language(R, encode(framed, rho), rho)
            rep.checked += 1
            if forbidden == present:
                state = "forbidden but encoded" if forbidden else "admissible but not encoded"
                return rep.fail(f"'{format_word(framed)}' {state}")
    return rep


# --- the conjugacy h ---------------------------------------------------------


def apply_h(y: str, n: int, i: int = 1, rho: RhoTable = RHO) -> str:
    """Image of the phase-``n`` word ``y`` under the block map built from g_i.

    ``y`` must be a leading fragment followed by at least two whole blocks and
    no trailing fragment.  The last block is only lookahead, so the result is
    22 bits shorter than ``y``.
    """
    _check_phase(n)
    rule = generator_rule(i)
    gram = _grammar(rho)
    lead = lead_length(n)
    body = len(y) - lead
    if body < 0 or body % BLOCK:
        raise ValueError(f"length {len(y)} at phase {n} leaves a trailing partial block")
    if body // BLOCK < 2:
        raise ValueError(f"need at least 2 whole blocks at phase {n}, got {max(body // BLOCK, 0)}")
    blocks = []
    for pos in range(lead, len(y), BLOCK):
        s = gram.block_of.get(y[pos : pos + BLOCK])
        if s is None:
            raise DecodeError(f"bits [{pos},{pos + BLOCK}) are not a code block")
        blocks.append(s)
    fragment = y[:lead]
    if n == 0:
        out = []
    elif n < 8:
        owners = [s for s, e in rho.items() if e[n:] == fragment]
        if len(owners) != 1:
            raise DecodeError(f"leading fragment {fragment} at phase {n} matches {len(owners)} blocks")
        out = [rho[rule(owners[0], blocks[0])][n:]]
    else:
        if fragment not in gram.suffixes[lead]:
            raise DecodeError(f"leading fragment {fragment} is not a block suffix")
        out = [fragment]
    out.extend(rho[rule(b, c)] for b, c in zip(blocks, blocks[1:]))
    return "".join(out)


def verify_intertwining(i: int, max_len: int, rho: RhoTable = RHO) -> Report:
    """``h(encode(u)) == encode(windowed g_i image of u)`` for every word of length 2..max_len."""
    if max_len < 2:
        raise ValueError("max_len must be >= 2")
    code = generator_code(i)
    rep = Report(f"intertwining[g{i}]")
    with timed(rep):
        for u in words_up_to(max_len, SYMBOLS, min_len=2):
            rep.checked += 1
            expected = encode(apply_windowed(code, u), rho)
            try:
                got = apply_h(encode(u, rho), 0, i, rho)
            except ValueError as exc:
                return rep.fail(f"u='{format_word(u)}': {exc}")
            if got != expected:
                return rep.fail(f"u='{format_word(u)}': h gives {got}, expected {expected}")
    return rep


def verify_h_inverse(i: int, samples: int, seed: int, rho: RhoTable = RHO) -> Report:
    """``h(h(y))`` is ``y`` minus its last two blocks, on seeded random encodings at every phase."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    rep = Report(f"h-inverse[g{i}]")
    with timed(rep):
        for _ in range(samples):
            u = tuple(rng.choices(SYMBOLS, k=rng.randint(4, 8)))
            full = encode(u, rho)
            for n in range(BLOCK):
                y = full[n:]
                if (len(y) - lead_length(n)) // BLOCK < 3:
                    rep.skipped += 1
                    continue
                rep.checked += 1
                try:
                    back = apply_h(apply_h(y, n, i, rho), n, i, rho)
                except ValueError as exc:
                    return rep.fail(f"u='{format_word(u)}' phase {n}: {exc}")
                if back != y[: len(y) - 2 * BLOCK]:
                    return rep.fail(f"u='{format_word(u)}' phase {n}: hh(y) = {back}")
        rep.detail = f"samples={samples} seed={seed}"
    return rep


def verify_round_trip(max_len: int, rho: RhoTable = RHO) -> Report:
    """``decode(encode(w))`` recovers ``w`` at phase 0, and for non-empty ``w`` nothing else."""
    rep = Report("decode-encode-round-trip")
    with timed(rep):
        for w in words_up_to(max_len):
            rep.checked += 1
            parses = decode(encode(w, rho), rho)
            if (0, w, 0, 0) not in parses:
                return rep.fail(f"'{format_word(w)}' is not recovered at phase 0")
            if w and len(parses) != 1:
                return rep.fail(f"'{format_word(w)}' also parses at phases {[p[0] for p in parses[1:]]}")
    return rep
