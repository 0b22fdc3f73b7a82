"""Independent reference implementations used to freeze expected values.

Everything here works on token strings ("a1", "t1", "#") and re-derives the
constructions from their printed definitions without touching the package's
tables or numpy kernels.
"""

import itertools

TOKENS = [f"a{i}" for i in range(1, 7)] + [f"t{i}" for i in range(1, 7)] + ["#"]
HASH_FREE_TOKENS = TOKENS[:12]


def g(i, b, c):
    """The printed three-branch local rule, token level."""
    lo, hi = (1, 3) if i <= 3 else (4, 6)
    flips = c == "#" or (c.startswith("a") and lo <= int(c[1:]) <= hi and int(c[1:]) != i)
    if flips and b == f"t{i}":
        return f"a{i}"
    if flips and b == f"a{i}":
        return f"t{i}"
    return b


def star(i, w):
    """f*_i(a_0..a_n) = g(a_0 a_1) .. g(a_n #)."""
    padded = list(w) + ["#"]
    return [g(i, padded[k], padded[k + 1]) for k in range(len(w))]


def windowed(i, w):
    return [g(i, w[k], w[k + 1]) for k in range(len(w) - 1)]


def admissible(R, u):
    """Brute force: search every factor '# w #' of u."""
    for a in range(len(u)):
        for b in range(a + 2, len(u)):
            if u[a] == "#" and u[b] == "#" and tuple(u[a + 1 : b]) in R:
                return False
    return True


def extendable(R, u, pad=2):
    """u is a factor of some admissible word with ``pad`` symbols on each side."""
    for left in itertools.product(TOKENS, repeat=pad):
        for right in itertools.product(TOKENS, repeat=pad):
            if admissible(R, list(left) + list(u) + list(right)):
                return True
    return False


def rho(sym):
    if sym == "#":
        return "11" * 5 + "01" + "11" * 5
    i = int(sym[1:])
    if sym[0] == "a":
        return "110100" + "00" * (7 - i) + "11" + "00" * i
    return "11010011" + "00" * (6 - i) + "11" + "00" * i


BLOCKS = [rho(s) for s in TOKENS]


def naive_phases(y, blocks=BLOCKS):
    """Phases n such that y laid on a 22-bit grid starting at offset n fits block by block."""
    out = []
    for n in range(22):
        pos, off, ok = 0, n, True
        while pos < len(y):
            take = min(22 - off, len(y) - pos)
            if not any(e[off : off + take] == y[pos : pos + take] for e in blocks):
                ok = False
                break
            pos += take
            off = 0
        if ok:
            out.append(n)
    return out


def bounded_factors(length, symbols=4):
    """All distinct length-bit factors of encodings of every word of exactly ``symbols`` symbols."""
    out = set()
    for u in itertools.product(BLOCKS, repeat=symbols):
        y = "".join(u)
        for p in range(len(y) - length + 1):
            out.add(y[p : p + length])
    return out
