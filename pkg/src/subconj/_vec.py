"""Numpy batch kernels for the exhaustive sweeps.

A batch of words of equal length ``n`` is a ``(N, n)`` uint8 array of symbol
codes.  Rows are produced in lexicographic order so that the first failing
row of a sweep is also the lexicographically least counterexample.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .alphabet import HASH, NSYM

BASE = NSYM


def word_array(length: int, symbols: Sequence[int] | None = None, prefix: Sequence[int] = ()) -> np.ndarray:
    """All words ``prefix + w`` with ``w`` of ``length`` over ``symbols``."""
    syms = np.arange(BASE, dtype=np.uint8) if symbols is None else np.asarray(symbols, dtype=np.uint8)
    k = len(syms)
    total = len(prefix) + length
    out = np.empty((k**length, total), dtype=np.uint8)
    if prefix:
        out[:, : len(prefix)] = np.asarray(prefix, dtype=np.uint8)
    for pos in range(length):
        # digit at ``pos`` repeats in blocks of k**(length-pos-1)
        inner = k ** (length - pos - 1)
        col = np.repeat(syms, inner)
        out[:, len(prefix) + pos] = np.tile(col, k**pos)
    return out


def windowed(table: np.ndarray, arr: np.ndarray) -> np.ndarray:
    """Apply a window-2 rule (``table[b, c]``) left-aligned to every row."""
    return table[arr[:, :-1], arr[:, 1:]]


def star(table: np.ndarray, arr: np.ndarray) -> np.ndarray:
    """Apply a window-2 rule with a virtual trailing ``#`` to every row."""
    if arr.shape[1] == 0:
        return arr.copy()
    padded = np.empty((arr.shape[0], arr.shape[1] + 1), dtype=np.uint8)
    padded[:, :-1] = arr
    padded[:, -1] = HASH
    return windowed(table, padded)


def codes(arr: np.ndarray) -> np.ndarray:
    """Base-13 integer code of each row, most significant symbol first."""
    out = np.zeros(arr.shape[0], dtype=np.int64)
    for col in range(arr.shape[1]):
        out *= BASE
        out += arr[:, col]
    return out


def decode_codes(values: np.ndarray, length: int) -> np.ndarray:
    out = np.empty((len(values), length), dtype=np.uint8)
    rest = np.asarray(values, dtype=np.int64).copy()
    for col in range(length - 1, -1, -1):
        out[:, col] = rest % BASE
        rest //= BASE
    return out


def first_mismatch(a: np.ndarray, b: np.ndarray) -> int | None:
    bad = np.flatnonzero(np.any(a != b, axis=1)) if a.ndim == 2 else np.flatnonzero(a != b)
    return int(bad[0]) if len(bad) else None
