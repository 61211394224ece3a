"""Toeplitz and Hankel Bezoutians, and structured Toeplitz/Hankel inversion.

The generating-function definitions are the reference::

    sum b_ij x^(i-1) y^(j-1) = (u(x) v^J(y) - u^J(y) v(x)) / (1 - x y)    Toeplitz
    sum b_ij x^(i-1) y^(j-1) = (u(x) v(y) - u(y) v(x)) / (x - y)          Hankel

Both divisions are carried out coefficient by coefficient and every
coefficient the quotient cannot absorb is checked to vanish.  The triangular
product (Gohberg-Semencul) forms are computed separately and compared.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, DimensionError, SingularMatrixError
from .exactmat import Matrix, PolyVec, flip_matrix, flip_secondary, rank, tally
from .structured import (
    HankelBand,
    ToeplitzBand,
    build_u_minus,
    build_u_plus,
    kernel_del_euclid,
)

__all__ = [
    "toeplitz_numerator",
    "hankel_numerator",
    "bez_toeplitz_oracle",
    "bez_toeplitz_gs",
    "bez_hankel_oracle",
    "bez_hankel_gs_literal",
    "HankelGSReport",
    "q_transform",
    "scalar_product_check",
    "toeplitz_inverse_structured",
    "hankel_inverse_structured",
]


def _same_degree(u: PolyVec, v: PolyVec) -> int:
    if len(u) != len(v):
        raise DimensionError(f"Bezoutian needs equal lengths, got {len(u)} and {len(v)}")
    if u.n < 1:
        raise DimensionError("Bezoutian needs n >= 1")
    return u.n


def toeplitz_numerator(u: PolyVec, v: PolyVec) -> Matrix:
    """Coefficients N[i][j] of x^i y^j in u(x) v^J(y) - u^J(y) v(x), i, j = 0..n."""
    n = _same_degree(u, v)
    tally(2 * (n + 1) ** 2)
    return Matrix._wrap(
        tuple(tuple(u[i] * v[n - j] - v[i] * u[n - j] for j in range(n + 1)) for i in range(n + 1)),
        n + 1,
    )


def hankel_numerator(u: PolyVec, v: PolyVec) -> Matrix:
    """Coefficients W[i][j] of x^i y^j in u(x) v(y) - u(y) v(x)."""
    n = _same_degree(u, v)
    tally(2 * (n + 1) ** 2)
    return Matrix._wrap(
        tuple(tuple(u[i] * v[j] - u[j] * v[i] for j in range(n + 1)) for i in range(n + 1)),
        n + 1,
    )


def bez_toeplitz_oracle(u: PolyVec, v: PolyVec) -> Matrix:
    n = _same_degree(u, v)
    N = toeplitz_numerator(u, v)
    zero = Fraction(0)
    c = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c[i][j] = N[i, j] + (c[i - 1][j - 1] if i and j else zero)
    # x^i y^j with i = n or j = n must cancel exactly
    for i in range(n + 1):
        for j in range(n + 1):
            if i == n or j == n:
                prev = c[i - 1][j - 1] if i and j else zero
                if N[i, j] + prev != 0:
                    raise ConsistencyError(
                        f"(1 - xy) does not divide the Toeplitz numerator at x^{i} y^{j}"
                    )
    return Matrix(c)


def bez_toeplitz_gs(u: PolyVec, v: PolyVec) -> Matrix:
    """``U_+ V_- - V_+ U_-``, asserted equal to ``V_- U_+ - U_- V_+``."""
    _same_degree(u, v)
    up, um = build_u_plus(u).to_dense(), build_u_minus(u).to_dense()
    vp, vm = build_u_plus(v).to_dense(), build_u_minus(v).to_dense()
    first = up @ vm - vp @ um
    second = vm @ up - um @ vp
    if first != second:
        raise ConsistencyError("the two triangular-product forms of B_T disagree")
    return first


def bez_hankel_oracle(u: PolyVec, v: PolyVec) -> Matrix:
    n = _same_degree(u, v)
    W = hankel_numerator(u, v)
    zero = Fraction(0)

    def get(c, i, j):
        return c[i][j] if 0 <= i < n and 0 <= j < n else zero

    # coefficient of x^i y^j in (x - y) c(x, y):  c[i-1][j] - c[i][j-1] = W[i][j]
    c = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c[i][j] = get(c, i - 1, j + 1) - W[i, j + 1]
    for i in range(n + 1):
        for j in range(n + 1):
            if get(c, i - 1, j) - get(c, i, j - 1) != W[i, j]:
                raise ConsistencyError(
                    f"(x - y) does not divide the Hankel numerator at x^{i} y^{j}"
                )
    return Matrix(c)


@dataclass(frozen=True)
class HankelGSReport:
    """The two triangular-product expressions for B_H next to the reference."""

    first: Matrix   # V_+ J U_- - U_+ J V_-
    second: Matrix  # U_- J V_+ - V_- J U_+
    oracle: Matrix

    @property
    def first_matches(self) -> bool:
        return self.first == self.oracle

    @property
    def second_matches(self) -> bool:
        return self.second == self.oracle

    @property
    def forms_agree(self) -> bool:
        return self.first == self.second

    @property
    def forms_flip_related(self) -> bool:
        return flip_secondary(self.first) == self.second

    def summary(self) -> str:
        if self.first_matches and self.second_matches:
            return "both product forms equal the generating-function value"
        return (
            f"MISMATCH: first form {'==' if self.first_matches else '!='} reference, "
            f"second form {'==' if self.second_matches else '!='} reference, "
            f"second is flip of first: {self.forms_flip_related}"
        )


def bez_hankel_gs_literal(u: PolyVec, v: PolyVec) -> HankelGSReport:
    """Evaluate both Hankel product formulas without asserting anything."""
    n = _same_degree(u, v)
    J = flip_matrix(n)
    up, um = build_u_plus(u).to_dense(), build_u_minus(u).to_dense()
    vp, vm = build_u_plus(v).to_dense(), build_u_minus(v).to_dense()
    first = vp @ J @ um - up @ J @ vm
    second = um @ J @ vp - vm @ J @ up
    return HankelGSReport(first, second, bez_hankel_oracle(u, v))


def q_transform(u: PolyVec, v: PolyVec) -> Matrix:
    """``Q = -B_T^T J``."""
    bt = bez_toeplitz_oracle(u, v)
    return -(bt.T @ flip_matrix(bt.nrows))


def scalar_product_check(b: Matrix, u: PolyVec, v: PolyVec, t: ToeplitzBand) -> Fraction | None:
    """Return lam if ``B_T(u, v) T = lam I``, else None, in O(n^2) operations.

    ``b`` must be ``bez_toeplitz_oracle(u, v)``.  Writing ``B[i][j] =
    N[i][j] + B[i-1][j-1]`` with the rank-two numerator ``N`` and
    ``T[k][j] = t_{k-j}``, entries of ``P = B T`` obey::

        P[i+1][j+1] = P[i][j] + B[i+1][0] t_{-j-1} - B[i][n-1] t_{n-1-j}
                      + u_{i+1} Y_j - v_{i+1} W_j

    with ``Y_j = sum_k v[n-k-1] t_{k-j}`` and ``W_j = sum_k u[n-k-1] t_{k-j}``
    (k = 0..n-2), so only row 0, column 0, Y and W cost O(n) each.
    """
    n = t.n
    a = t.a
    zero = Fraction(0)
    row0 = [sum((b[0, k] * a(k - j) for k in range(n)), zero) for j in range(n)]
    col0 = [sum((b[i, k] * a(k) for k in range(n)), zero) for i in range(n)]
    tally(2 * n * n)
    lam = row0[0]
    if any(row0[1:]) or any(col0[1:]):
        return None
    Y = [sum((v[n - k - 1] * a(k - j) for k in range(n - 1)), zero) for j in range(n - 1)]
    W = [sum((u[n - k - 1] * a(k - j) for k in range(n - 1)), zero) for j in range(n - 1)]
    tally(2 * n * n)
    prev = row0
    for i in range(n - 1):
        cur = [col0[i + 1]]
        bi0, bin = b[i + 1, 0], b[i, n - 1]
        ui, vi = u[i + 1], v[i + 1]
        for j in range(n - 1):
            p = prev[j] + bi0 * a(-j - 1) - bin * a(n - 1 - j) + ui * Y[j] - vi * W[j]
            cur.append(p)
        tally(4 * (n - 1))
        for j, p in enumerate(cur):
            if p != (lam if j == i + 1 else zero):
                return None
        prev = cur
    return lam


def toeplitz_inverse_structured(t: ToeplitzBand) -> Matrix:
    """T^{-1} as a rescaled Bezoutian of a basis of ker(del T).

    Quadratic in n: Euclidean kernel, recurrence-built Bezoutian, and a
    displacement check that ``B T`` is a nonzero multiple of I.
    """
    a, b = kernel_del_euclid(t)
    bez = bez_toeplitz_oracle(a, b)
    lam = scalar_product_check(bez, a, b, t)
    if lam is None or lam == 0:
        if lam == 0 or rank(t.to_dense()) < t.n:
            raise SingularMatrixError("Toeplitz matrix is singular")
        raise ConsistencyError("Bezoutian of the del-kernel basis is not a multiple of T^{-1}")
    return bez * (1 / lam)


def hankel_inverse_structured(h: HankelBand) -> Matrix:
    """H^{-1} = J (H J)^{-1}; ``H J`` is Toeplitz with the same band."""
    tinv = toeplitz_inverse_structured(h.flipped())
    return Matrix._wrap(tuple(reversed(tuple(tinv))), tinv.ncols)
