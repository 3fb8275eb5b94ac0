"""Shared generators and independent oracles for the test suite.

Everything here is deliberately written from definitions, not by calling the
package: oracles must be able to catch the package being wrong.
"""

from __future__ import annotations

import random
from fractions import Fraction

from filtrate.emap import ExplicitEMap
from filtrate.magnus import TruncSeries
from filtrate.words import GroupWord


def rational_rank(matrix) -> int:
    """Row reduction over Fraction, choosing the *last* nonzero pivot row.

    Same answer as fraction-free elimination, different route and pivoting.
    """
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(len(rows) - 1, rank - 1, -1) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = Fraction(1) / rows[rank][c]
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def brute_lyndon(alphabet_size: int, weight: int) -> list[tuple[int, ...]]:
    """All Lyndon words by checking every word against every proper rotation."""
    from itertools import product

    out = []
    for w in product(range(1, alphabet_size + 1), repeat=weight):
        if all(w < w[i:] + w[:i] for i in range(1, weight)):
            out.append(w)
    return out


def necklace_by_mobius(m: int, n: int) -> int:
    """(1/n) sum over d | n of mu(d) m^(n/d), written out from scratch."""

    def mu(d):
        result = 1
        p = 2
        while p * p <= d:
            if d % p == 0:
                d //= p
                if d % p == 0:
                    return 0
                result = -result
            p += 1
        if d > 1:
            result = -result
        return result

    total = sum(mu(d) * m ** (n // d) for d in range(1, n + 1) if n % d == 0)
    assert total % n == 0
    return total // n


def random_reduced_word(rng: random.Random, alphabet_size: int, max_length: int) -> GroupWord:
    letters = []
    for _ in range(rng.randint(0, max_length)):
        idx = rng.randint(1, alphabet_size)
        letters.append(idx if rng.random() < 0.5 else -idx)
    return GroupWord(alphabet_size, letters)


def random_series(rng: random.Random, ring, alphabet_size: int, cap: int,
                  terms: int = 8, bound: int = 30) -> TruncSeries:
    coeffs = {}
    for _ in range(terms):
        length = rng.randint(0, cap)
        w = tuple(rng.randint(1, alphabet_size) for _ in range(length))
        coeffs[w] = rng.randint(-bound, bound)
    return TruncSeries(ring, alphabet_size, cap, coeffs)


def random_descending_table(rng: random.Random, n_max: int,
                            multipliers=(0, 1, 1, 2, 2, 3, 4, 6)) -> ExplicitEMap:
    """A random table with e(n, n) = 1 built downward by integer multipliers.

    Multiplying by 0 pins the rest of the row to 0, which keeps the chain
    condition: 0 is a multiple of everything and only 0 is a multiple of 0.
    """
    table = {}
    for n in range(1, n_max + 1):
        row = [0] * n
        row[n - 1] = 1
        for i in range(n - 2, -1, -1):
            row[i] = row[i + 1] * rng.choice(multipliers)
        table[n] = tuple(row)
    return ExplicitEMap(table)


def random_row_table(rng: random.Random, n_max: int, bound: int = 12) -> ExplicitEMap:
    """Arbitrary non-negative rows with diagonal 1; descending only by luck."""
    table = {}
    for n in range(1, n_max + 1):
        row = [rng.randint(0, bound) for _ in range(n - 1)] + [1]
        table[n] = tuple(row)
    return ExplicitEMap(table)


def decompose_in_ideal(s: TruncSeries, e, n: int):
    """Constructive membership oracle for the level-n ideal over Z.

    Splits s degree by degree: for i < n with prefix gcd g_i != 0 the
    degree-i part must be g_i * (integer polynomial); zero g_i forces a zero
    part.  Returns the reassembled series (equal to s on success) or None.
    """
    from math import gcd

    if s.coeffs.get((), 0):
        return None
    gs = []
    g = 0
    for i in range(1, n):
        g = gcd(g, e.evaluate(n, i))
        gs.append(g)
    rebuilt = {}
    for w, c in s.coeffs.items():
        d = len(w)
        if d == 0:
            return None
        if d >= n:
            rebuilt[w] = c
            continue
        g = gs[d - 1]
        if g == 0:
            if c != 0:
                return None
            continue
        if c % g:
            return None
        rebuilt[w] = g * (c // g)
    return TruncSeries(s.ring, s.alphabet_size, s.cap, rebuilt)
