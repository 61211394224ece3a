"""Toeplitz/Hankel band representations and the del operator.

An n x n Toeplitz matrix is stored as its band ``a_{1-n}, ..., a_{n-1}``
with ``T[i, j] = a_{i-j}``.  A Hankel matrix uses the same band with
``H[i, j] = a_{i+j-n+1}`` (0-based), so that ``H = T J`` share one band.

``del T`` is the (n-1) x (n+1) Toeplitz matrix obtained by adding one column
on the right and dropping the first row; ``del H`` adds a column on the right
and drops the last row.  Its two-dimensional kernel is what decides whether
``T`` carries a companion-matrix similarity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DimensionError, EndpointError, SingularMatrixError, StructureError
from .exactmat import (
    Matrix,
    PolyVec,
    as_rational,
    format_rational,
    nullspace,
    poly_divmod,
    rank,
    tally,
)

__all__ = [
    "ToeplitzBand",
    "HankelBand",
    "detect_toeplitz",
    "detect_hankel",
    "del_toeplitz",
    "del_hankel",
    "kernel_del",
    "kernel_del_euclid",
    "complete_band",
    "build_u_plus",
    "build_u_minus",
    "primitive",
]


class _Band:
    __slots__ = ()
    n: int
    band: tuple[Fraction, ...]

    def __init__(self, band: Sequence):
        b = tuple(as_rational(x) for x in band)
        if len(b) % 2 == 0:
            raise DimensionError(f"a band must have odd length 2n-1, got {len(b)}")
        object.__setattr__(self, "band", b)
        object.__setattr__(self, "n", (len(b) + 1) // 2)

    @classmethod
    def parse(cls, text: str):
        return cls(t for t in text.split(","))

    def a(self, m: int) -> Fraction:
        """The band value ``a_m`` for ``1-n <= m <= n-1``."""
        if not 1 - self.n <= m <= self.n - 1:
            raise IndexError(f"a_{m} outside the band of an order-{self.n} matrix")
        return self.band[m + self.n - 1]

    def __str__(self) -> str:
        return ",".join(format_rational(x) for x in self.band)


@dataclass(frozen=True, init=False)
class ToeplitzBand(_Band):
    n: int
    band: tuple[Fraction, ...]

    def to_dense(self) -> Matrix:
        n, b = self.n, self.band
        return Matrix._wrap(tuple(tuple(b[i - j + n - 1] for j in range(n)) for i in range(n)), n)

    def first_column(self) -> tuple[Fraction, ...]:
        return self.band[self.n - 1:]

    def first_row(self) -> tuple[Fraction, ...]:
        return self.band[: self.n][::-1]


@dataclass(frozen=True, init=False)
class HankelBand(_Band):
    n: int
    band: tuple[Fraction, ...]

    def to_dense(self) -> Matrix:
        n, b = self.n, self.band
        return Matrix._wrap(tuple(tuple(b[i + j] for j in range(n)) for i in range(n)), n)

    def flipped(self) -> ToeplitzBand:
        """The Toeplitz band of ``H J`` (the same sequence)."""
        return ToeplitzBand(self.band)


def detect_toeplitz(a: Matrix) -> ToeplitzBand:
    if not a.is_square:
        raise DimensionError(f"Toeplitz detection needs a square matrix, got {a.shape}")
    n = a.nrows
    for i in range(1, n):
        for j in range(1, n):
            if a[i, j] != a[i - 1, j - 1]:
                raise StructureError(
                    f"not Toeplitz: entry ({i + 1},{j + 1}) = {format_rational(a[i, j])} "
                    f"differs from ({i},{j}) = {format_rational(a[i - 1, j - 1])}"
                )
    if n == 0:
        raise DimensionError("empty matrix")
    return ToeplitzBand([a[0, n - 1 - p] for p in range(n - 1)] + [a[p, 0] for p in range(n)])


def detect_hankel(a: Matrix) -> HankelBand:
    if not a.is_square:
        raise DimensionError(f"Hankel detection needs a square matrix, got {a.shape}")
    n = a.nrows
    for i in range(1, n):
        for j in range(n - 1):
            if a[i, j] != a[i - 1, j + 1]:
                raise StructureError(
                    f"not Hankel: entry ({i + 1},{j + 1}) = {format_rational(a[i, j])} "
                    f"differs from ({i},{j + 2}) = {format_rational(a[i - 1, j + 1])}"
                )
    if n == 0:
        raise DimensionError("empty matrix")
    return HankelBand([a[0, p] for p in range(n)] + [a[p - n + 1, n - 1] for p in range(n, 2 * n - 1)])


def del_toeplitz(t: ToeplitzBand) -> Matrix:
    n = t.n
    if n < 2:
        raise DimensionError("del T needs n >= 2")
    return Matrix._wrap(
        tuple(tuple(t.a(i - j + 1) for j in range(n + 1)) for i in range(n - 1)), n + 1
    )


def del_hankel(h: HankelBand) -> Matrix:
    n = h.n
    if n < 2:
        raise DimensionError("del H needs n >= 2")
    return Matrix._wrap(
        tuple(tuple(h.a(i + j - n + 1) for j in range(n + 1)) for i in range(n - 1)), n + 1
    )


def primitive(vec: Sequence) -> tuple[Fraction, ...]:
    """Scale a nonzero rational vector to coprime integers (sign kept)."""
    vec = [as_rational(x) for x in vec]
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [x.numerator * (den // x.denominator) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    tally(2 * len(vec))
    return tuple(Fraction(x // g) for x in ints)


def kernel_del(t: ToeplitzBand) -> tuple[PolyVec, PolyVec]:
    """Basis of ker(del T) by exact elimination on del T.

    T must be invertible; this is checked by elimination too, so the cost
    is cubic.  :func:`kernel_del_euclid` is the quadratic route.
    """
    dense = t.to_dense()
    if rank(dense) < t.n:
        raise SingularMatrixError("T is singular")
    d = del_toeplitz(t)
    basis = nullspace(d)
    if len(basis) != 2:
        raise SingularMatrixError(f"del T has rank {t.n + 1 - len(basis)}, expected {t.n - 1}")
    return PolyVec(basis[0]), PolyVec(basis[1])


def _deg(p: list) -> int:
    return len(p) - 1


def _poly_sub_mul(a: list[Fraction], q: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """a - q*b."""
    size = max(len(a), len(q) + len(b) - 1 if q and b else 0)
    out = list(a) + [Fraction(0)] * (size - len(a))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] -= qi * bj
    tally(len(q) * len(b))
    while out and out[-1] == 0:
        out.pop()
    return out


def kernel_del_euclid(t: ToeplitzBand) -> tuple[PolyVec, PolyVec]:
    """Two independent vectors of ker(del T) in O(n^2) operations.

    With ``a(z) = sum_m a_m z^(m+n-1)``, a vector ``u`` of degree <= n lies in
    ker(del T) exactly when coefficients n..2n-2 of ``a(z) u(z)`` vanish,
    i.e. ``a u mod z^(2n-1)`` has degree < n.  Running the extended Euclidean
    algorithm on ``(z^(2n-1), a)`` until the remainder drops below degree n
    yields a multiplier ``t_j`` of degree <= n-1; the second vector is
    ``z t_j`` when the remainder has degree <= n-2 and the next multiplier
    ``t_{j+1}`` (degree exactly n) otherwise.

    No invertibility check is made here: for singular T the kernel can be
    larger than two and callers must verify what they build from it.
    """
    n = t.n
    modulus = [Fraction(0)] * (2 * n - 1) + [Fraction(1)]
    r_prev, t_prev = modulus, []
    r_cur = list(t.band)
    while r_cur and r_cur[-1] == 0:
        r_cur.pop()
    t_cur = [Fraction(1)]
    while _deg(r_cur) >= n:
        q, rem = poly_divmod(r_prev, r_cur)
        t_new = _poly_sub_mul(t_prev, q, t_cur)
        if rem:
            inv = 1 / rem[-1]
            rem = [x * inv for x in rem]
            t_new = [x * inv for x in t_new]
            tally(len(rem) + len(t_new))
        r_prev, t_prev, r_cur, t_cur = r_cur, t_cur, rem, t_new

    first = t_cur
    if _deg(r_cur) <= n - 2:
        second = [Fraction(0)] + t_cur
    else:
        q, _ = poly_divmod(r_prev, r_cur)
        second = _poly_sub_mul(t_prev, q, t_cur)

    def pad(p: list[Fraction]) -> PolyVec:
        if len(p) > n + 1:
            raise AssertionError("kernel multiplier exceeds degree n")
        return PolyVec(primitive(p + [Fraction(0)] * (n + 1 - len(p))))

    return pad(first), pad(second)


def complete_band(u: PolyVec, free: Sequence) -> ToeplitzBand:
    """Fill a Toeplitz band so that ``u`` lies in ker(del T).

    ``free`` supplies ``a_{1-n}, ..., a_0``; the rest follow from
    ``a_i = -(a_{i-1} u_2 + ... + a_{i-n} u_{n+1}) / u_1``.
    """
    n = u.n
    free = [as_rational(x) for x in free]
    if len(free) != n:
        raise DimensionError(f"need {n} free values a_(1-n)..a_0, got {len(free)}")
    if not u.first_nonzero:
        raise EndpointError("band completion divides by u_1, which is zero")
    band = list(free)  # band[m + n - 1] = a_m
    c = u.coeffs
    for i in range(1, n):
        acc = sum((band[i - k + n - 1] * c[k] for k in range(1, n + 1)), Fraction(0))
        band.append(-acc / c[0])
    tally(n * n)
    return ToeplitzBand(band)


def build_u_plus(u: PolyVec) -> ToeplitzBand:
    """Lower-triangular Toeplitz U_+ with first column (u_1, ..., u_n)."""
    n = u.n
    return ToeplitzBand([0] * (n - 1) + list(u.coeffs[:n]))


def build_u_minus(u: PolyVec) -> ToeplitzBand:
    """Upper-triangular Toeplitz U_- with first row (u_{n+1}, ..., u_2)."""
    # band a_{1-n}..a_0 = u_2..u_{n+1}
    return ToeplitzBand(list(u.coeffs[1:]) + [0] * (u.n - 1))
