"""Seeded random instances for the self-test and the property suites."""
from __future__ import annotations

import random
from fractions import Fraction

from .exactmat import Matrix, PolyVec, is_coprime, rank
from .structured import ToeplitzBand, complete_band


def rational(rng: random.Random, lo: int = -9, hi: int = 9, maxden: int = 4, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(lo, hi), rng.randint(1, maxden))
        if x or not nonzero:
            return x


def polyvec(rng: random.Random, n: int, ends: bool = True) -> PolyVec:
    """Random vector of length n+1; ``ends`` forces nonzero first and last entries."""
    c = [rational(rng) for _ in range(n + 1)]
    if ends:
        c[0] = rational(rng, nonzero=True)
        c[-1] = rational(rng, nonzero=True)
    return PolyVec(c)


def coprime_pair(rng: random.Random, n: int) -> tuple[PolyVec, PolyVec]:
    while True:
        u, v = polyvec(rng, n), polyvec(rng, n)
        if is_coprime(u, v):
            return u, v


def band(rng: random.Random, n: int) -> ToeplitzBand:
    return ToeplitzBand([rational(rng) for _ in range(2 * n - 1)])


def matrix(rng: random.Random, rows: int, cols: int | None = None) -> Matrix:
    return Matrix([[rational(rng) for _ in range(cols or rows)] for _ in range(rows)])


def invertible_matrix(rng: random.Random, n: int) -> Matrix:
    while True:
        m = matrix(rng, n)
        if rank(m) == n:
            return m


def kernel_toeplitz(rng: random.Random, u: PolyVec) -> ToeplitzBand:
    """An invertible Toeplitz matrix with ``u`` in the kernel of its del."""
    while True:
        t = complete_band(u, [rational(rng) for _ in range(u.n)])
        if rank(t.to_dense()) == u.n:
            return t


def unimodular(rng: random.Random, bound: int = 4) -> tuple[tuple[int, int], tuple[int, int]]:
    """Random 2x2 integer matrix with determinant 1."""
    while True:
        a, b = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if a == 0 and b == 0:
            continue
        # extended gcd to solve a*d - b*c = 1 when gcd(a, b) = 1
        old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if abs(old_r) != 1:
            continue
        # a*old_s + b*old_t = old_r = +-1
        d, c = old_s * old_r, -old_t * old_r
        k = rng.randint(-2, 2)
        return (a, b + k * a), (c, d + k * c)
