"""Exact rational scalars, dense matrices and coefficient vectors.

Scalars are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator.  :class:`Matrix` is an immutable
row-major grid of them and :class:`PolyVec` holds the coefficient vector
``(u_1, ..., u_{n+1})`` of ``u(x) = u_1 + u_2 x + ... + u_{n+1} x^n``.

A scalar-multiplication counter can be switched on with
:func:`count_mults`; the hot loops report into it so that structured and
dense algorithms can be compared by operation count.
"""
from __future__ import annotations

import numbers
import re
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, SingularMatrixError

__all__ = [
    "Fraction",
    "Matrix",
    "PolyVec",
    "as_rational",
    "parse_rational",
    "format_rational",
    "count_mults",
    "tally",
    "mat_mul",
    "mat_inverse",
    "flip_secondary",
    "flip_matrix",
    "rref",
    "rank",
    "nullspace",
    "poly_eval",
    "poly_divmod",
    "poly_gcd",
    "is_coprime",
    "reverse",
]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and rational literals to a Fraction.

    Floats are rejected: nothing in this package is allowed to round.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, numbers.Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    raise TypeError(f"cannot use {type(x).__name__} {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (``q`` must be nonzero)."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational literal {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(x: Fraction) -> str:
    x = as_rational(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# multiplication counter

class _Counter:
    __slots__ = ("mults",)

    def __init__(self) -> None:
        self.mults = 0


_counters: ContextVar[tuple[_Counter, ...]] = ContextVar("_counters", default=())


@contextmanager
def count_mults() -> Iterator[_Counter]:
    """Count scalar multiplications/divisions performed inside the block."""
    c = _Counter()
    token = _counters.set(_counters.get() + (c,))
    try:
        yield c
    finally:
        _counters.reset(token)


def tally(k: int) -> None:
    for c in _counters.get():
        c.mults += k


# ---------------------------------------------------------------------------
# matrices

class Matrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("_rows", "_nrows", "_ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_rational(x) for x in r) for r in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged rows")
            if ncols is not None and ncols != width:
                raise DimensionError(f"expected {ncols} columns, got {width}")
        else:
            width = ncols or 0
        self._rows = data
        self._nrows = len(data)
        self._ncols = width

    @classmethod
    def _wrap(cls, rows: tuple[tuple[Fraction, ...], ...], ncols: int) -> "Matrix":
        # trusted constructor: rows already hold Fractions
        m = object.__new__(cls)
        m._rows = rows
        m._nrows = len(rows)
        m._ncols = ncols
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._wrap(
            tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        zero = Fraction(0)
        return cls._wrap(tuple((zero,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def column(cls, vec: Iterable) -> "Matrix":
        return cls([x] for x in vec)

    @classmethod
    def row_vector(cls, vec: Iterable) -> "Matrix":
        return cls([list(vec)])

    @property
    def shape(self) -> tuple[int, int]:
        return self._nrows, self._ncols

    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def is_square(self) -> bool:
        return self._nrows == self._ncols

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def __iter__(self) -> Iterator[tuple[Fraction, ...]]:
        return iter(self._rows)

    @property
    def T(self) -> "Matrix":
        if not (self._nrows and self._ncols):
            return Matrix.zeros(self._ncols, self._nrows)
        return Matrix._wrap(tuple(zip(*self._rows)), self._nrows)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        """Sub-matrix of rows ``r0:r1`` and columns ``c0:c1`` (half-open)."""
        if not (0 <= r0 <= r1 <= self._nrows and 0 <= c0 <= c1 <= self._ncols):
            raise DimensionError(f"block [{r0}:{r1}, {c0}:{c1}] outside {self.shape}")
        return Matrix._wrap(tuple(r[c0:c1] for r in self._rows[r0:r1]), c1 - c0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._wrap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self._ncols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._wrap(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self._ncols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(tuple(tuple(-a for a in r) for r in self._rows), self._ncols)

    def __mul__(self, scalar) -> "Matrix":
        if isinstance(scalar, Matrix):
            raise TypeError("use @ for matrix products")
        c = as_rational(scalar)
        tally(self._nrows * self._ncols)
        return Matrix._wrap(tuple(tuple(c * a for a in r) for r in self._rows), self._ncols)

    __rmul__ = __mul__

    def matvec(self, vec: Sequence) -> tuple[Fraction, ...]:
        if len(vec) != self._ncols:
            raise DimensionError(f"matrix {self.shape} times vector of length {len(vec)}")
        v = [as_rational(x) for x in vec]
        tally(self._nrows * self._ncols)
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self._rows)

    def _check_same(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __repr__(self) -> str:
        body = "; ".join(", ".join(format_rational(x) for x in r) for r in self._rows)
        return f"Matrix({self._nrows}x{self._ncols}: [{body}])"

    def __str__(self) -> str:
        cells = [[format_rational(x) for x in r] for r in self._rows]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


def hstack(*blocks: Matrix) -> Matrix:
    if len({b.nrows for b in blocks}) > 1:
        raise DimensionError("hstack needs equal row counts")
    rows = tuple(sum((b.row(i) for b in blocks), ()) for i in range(blocks[0].nrows))
    return Matrix._wrap(rows, sum(b.ncols for b in blocks))


def vstack(*blocks: Matrix) -> Matrix:
    if len({b.ncols for b in blocks}) > 1:
        raise DimensionError("vstack needs equal column counts")
    return Matrix._wrap(sum((tuple(b) for b in blocks), ()), blocks[0].ncols)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    tally(a.nrows * a.ncols * b.ncols)
    bcols = list(zip(*b)) if b.nrows else [()] * b.ncols
    zero = Fraction(0)
    rows = tuple(
        tuple(sum((x * y for x, y in zip(r, c) if x and y), zero) for c in bcols)
        for r in a
    )
    return Matrix._wrap(rows, b.ncols)


def flip_matrix(n: int) -> Matrix:
    """The anti-identity J."""
    one, zero = Fraction(1), Fraction(0)
    return Matrix._wrap(
        tuple(tuple(one if i + j == n - 1 else zero for j in range(n)) for i in range(n)), n
    )


def flip_secondary(a: Matrix) -> Matrix:
    """Reflection about the secondary diagonal, ``A^J = J A^T J``."""
    if not a.is_square:
        raise DimensionError(f"flip_secondary needs a square matrix, got {a.shape}")
    n = a.nrows
    return Matrix._wrap(
        tuple(tuple(a[n - 1 - j, n - 1 - i] for j in range(n)) for i in range(n)), n
    )


def mat_inverse(a: Matrix) -> Matrix:
    """Exact Gauss-Jordan inverse; the pivot is the first nonzero entry in the column."""
    if not a.is_square:
        raise DimensionError(f"cannot invert a {a.shape} matrix")
    n = a.nrows
    zero, one = Fraction(0), Fraction(1)
    work = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if work[r][c] != 0), None)
        if piv is None:
            raise SingularMatrixError(f"matrix is singular (no pivot in column {c})")
        if piv != c:
            work[c], work[piv] = work[piv], work[c]
        prow = work[c]
        inv = one / prow[c]
        prow[:] = [x * inv for x in prow]
        for r in range(n):
            if r == c:
                continue
            f = work[r][c]
            if f:
                row = work[r]
                for j in range(c, 2 * n):
                    if prow[j]:
                        row[j] -= f * prow[j]
        tally(2 * n * n + 2 * n)
    return Matrix._wrap(tuple(tuple(r[n:]) for r in work), n)


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    work = [list(r) for r in a]
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        tally(nrows * ncols)
        pivots.append(c)
        r += 1
    return Matrix._wrap(tuple(tuple(row) for row in work), ncols), pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix) -> list[tuple[Fraction, ...]]:
    """A basis of ``{x : A x = 0}``, one vector per free column."""
    r, pivots = rref(a)
    ncols = a.ncols
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -r[i, f]
        basis.append(tuple(x))
    return basis


# ---------------------------------------------------------------------------
# polynomials

@dataclass(frozen=True)
class PolyVec:
    """Coefficients ``(u_1, ..., u_{n+1})``, lowest degree first.

    ``n`` is the nominal degree (``len(coeffs) - 1``); the top coefficient
    may be zero, as in the ``v = (b_n, ..., b_1, 0)`` convention.
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable):
        c = tuple(as_rational(x) for x in coeffs)
        if not c:
            raise ValueError("a coefficient vector needs at least one entry")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def parse(cls, text: str) -> "PolyVec":
        return cls(parse_rational(t) for t in text.split(","))

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    @property
    def first(self) -> Fraction:
        return self.coeffs[0]

    @property
    def last(self) -> Fraction:
        return self.coeffs[-1]

    @property
    def first_nonzero(self) -> bool:
        return self.coeffs[0] != 0

    @property
    def last_nonzero(self) -> bool:
        return self.coeffs[-1] != 0

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, x) -> Fraction:
        return poly_eval(self, x)

    def reversed(self) -> "PolyVec":
        return reverse(self)

    def scaled(self, c) -> "PolyVec":
        c = as_rational(c)
        return PolyVec(c * x for x in self.coeffs)

    def __str__(self) -> str:
        return ",".join(format_rational(x) for x in self.coeffs)


def poly_eval(u: PolyVec | Sequence, x) -> Fraction:
    """Horner evaluation of ``sum u[i] x^i``."""
    x = as_rational(x)
    acc = Fraction(0)
    for c in reversed(tuple(u)):
        acc = acc * x + c
    return acc


def reverse(u: PolyVec) -> PolyVec:
    return PolyVec(reversed(u.coeffs))


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder of low-to-high coefficient lists over Q."""
    a = _trim([as_rational(x) for x in a])
    b = _trim([as_rational(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        coef = a[k + len(b) - 1] / lead
        q[k] = coef
        if coef:
            for i, bi in enumerate(b):
                a[k + i] -= coef * bi
        tally(len(b) + 1)
    return _trim(q), _trim(a[: len(b) - 1])


def poly_gcd(u: PolyVec | Sequence, v: PolyVec | Sequence) -> PolyVec:
    """Monic greatest common divisor by the Euclidean algorithm."""
    a = _trim([as_rational(x) for x in u])
    b = _trim([as_rational(x) for x in v])
    if not a and not b:
        raise ValueError("gcd of two zero polynomials is undefined")
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return PolyVec(x / lead for x in a)


def is_coprime(u: PolyVec | Sequence, v: PolyVec | Sequence) -> bool:
    return poly_gcd(u, v).n == 0
