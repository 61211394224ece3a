"""The four companion matrices of a coefficient vector and their powers.

For ``u = (u_1, ..., u_{n+1})``::

    top     C_t: first row  (-u_n, ..., -u_1) / u_{n+1}, shifted identity below
    bottom  C_b: last row   (-u_{n+1}, ..., -u_2) / u_1, shifted identity above
    left    C_l: first col  (-u_2, ..., -u_{n+1}) / u_1, shifted identity right
    right   C_r: last col   (-u_1, ..., -u_n) / u_{n+1}, shifted identity left

The "barred" variants are the same constructions applied to the reversed
vector ``u^J``.
"""
from __future__ import annotations

import enum
from fractions import Fraction

from .errors import EndpointError
from .exactmat import Matrix, PolyVec, reverse

__all__ = ["Kind", "companion", "companion_power", "inverse_kind"]


class Kind(enum.Enum):
    TOP = "top"
    BOTTOM = "bottom"
    LEFT = "left"
    RIGHT = "right"


# C_t^{-1} = C_b and C_l^{-1} = C_r
_PARTNER = {Kind.TOP: Kind.BOTTOM, Kind.BOTTOM: Kind.TOP, Kind.LEFT: Kind.RIGHT, Kind.RIGHT: Kind.LEFT}


def inverse_kind(kind: Kind) -> Kind:
    return _PARTNER[kind]


def _as_kind(kind) -> Kind:
    return kind if isinstance(kind, Kind) else Kind(str(kind).lower())


def companion(u: PolyVec, kind, barred: bool = False) -> Matrix:
    kind = _as_kind(kind)
    if barred:
        u = reverse(u)
    n = u.n
    if n < 1:
        raise EndpointError("companion matrices need n >= 1 (at least two coefficients)")
    c = u.coeffs
    zero, one = Fraction(0), Fraction(1)
    if kind in (Kind.TOP, Kind.RIGHT):
        if c[n] == 0:
            raise EndpointError(f"{kind.value} companion needs a nonzero last coefficient u_{n + 1}")
        coef = [-x / c[n] for x in c[:n]]  # -u_1/u_{n+1} ... -u_n/u_{n+1}
    else:
        if c[0] == 0:
            raise EndpointError(f"{kind.value} companion needs a nonzero first coefficient u_1")
        coef = [-x / c[0] for x in c[1:]]  # -u_2/u_1 ... -u_{n+1}/u_1
    rows = [[zero] * n for _ in range(n)]
    if kind is Kind.TOP:
        rows[0] = coef[::-1]
        for i in range(1, n):
            rows[i][i - 1] = one
    elif kind is Kind.BOTTOM:
        for i in range(n - 1):
            rows[i][i + 1] = one
        rows[n - 1] = coef[::-1]
    elif kind is Kind.LEFT:
        for i in range(n):
            rows[i][0] = coef[i]
            if i + 1 < n:
                rows[i][i + 1] = one
    else:
        for i in range(n):
            rows[i][n - 1] = coef[i]
            if i >= 1:
                rows[i][i - 1] = one
    return Matrix(rows)


def _power(m: Matrix, k: int) -> Matrix:
    result = Matrix.identity(m.nrows)
    base = m
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def companion_power(u: PolyVec, kind, k: int, barred: bool = False) -> Matrix:
    """``companion(u, kind)**k``; negative powers go through the inverse partner."""
    kind = _as_kind(kind)
    if k < 0:
        kind, k = inverse_kind(kind), -k
    base = companion(u, kind, barred)
    return _power(base, k)
