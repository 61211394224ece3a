"""Executable forms of the Toeplitz/Hankel similarity criteria.

A Toeplitz ``T`` carries ``C_t(u)`` to ``C_r(u)`` (``T^-1 C_t T = C_r``)
exactly when ``u`` lies in the kernel of ``del T``; the Hankel version swaps
in ``u^J``, ``del H`` and the barred companions.  The check functions here
evaluate each equivalent statement from scratch so that the equivalence
itself is what gets tested.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bezoutian import bez_toeplitz_oracle, q_transform
from .companion import Kind, companion, companion_power
from .errors import (
    ConsistencyError,
    DimensionError,
    EndpointError,
    NotCoprimeError,
    SingularMatrixError,
    StructureError,
)
from .exactmat import Matrix, PolyVec, as_rational, mat_inverse, rank, reverse
from .structured import (
    HankelBand,
    ToeplitzBand,
    del_hankel,
    del_toeplitz,
    detect_hankel,
    detect_toeplitz,
)

__all__ = [
    "SimilarityReport",
    "toeplitz_similarity_report",
    "hankel_similarity_report",
    "check_theorem_2_1",
    "check_corollary_2_2",
    "Side",
    "shift_transform",
    "conjugates",
    "ctrb",
    "obsv",
    "CanonicalPair",
    "canonical_pair",
    "canonical_q",
    "bezoutian_similarity_check",
]

DEFAULT_K_RANGE = (-3, 3)


@dataclass(frozen=True)
class SimilarityReport:
    stmt1: bool
    stmt2: bool
    stmt3: bool
    power_checks: dict[int, bool] = field(default_factory=dict)
    # Hankel case only: the variant H^-1 C_b^k H = Cbar_l^k, which generally fails for k != 0
    cb_power_checks: dict[int, bool] | None = None

    @property
    def consistent(self) -> bool:
        return self.stmt1 == self.stmt2 == self.stmt3

    @property
    def all_true(self) -> bool:
        return self.stmt1 and self.stmt2 and self.stmt3 and all(self.power_checks.values())

    def lines(self) -> list[str]:
        out = [
            f"stmt1 = {self.stmt1}",
            f"stmt2 = {self.stmt2}",
            f"stmt3 = {self.stmt3}",
        ]
        for k, ok in sorted(self.power_checks.items()):
            out.append(f"power k={k} = {ok}")
        if self.cb_power_checks is not None:
            for k, ok in sorted(self.cb_power_checks.items()):
                out.append(f"C_b power k={k} = {ok}")
        return out


def _is_toeplitz(m: Matrix) -> bool:
    try:
        detect_toeplitz(m)
    except StructureError:
        return False
    return True


def _is_hankel(m: Matrix) -> bool:
    try:
        detect_hankel(m)
    except StructureError:
        return False
    return True


def _require_ends(u: PolyVec, n: int) -> None:
    if u.n != n:
        raise DimensionError(f"u must have {n + 1} coefficients, got {len(u)}")
    if not (u.first_nonzero and u.last_nonzero):
        raise EndpointError("u_1 and u_(n+1) must both be nonzero")


def _inverse(m: Matrix, what: str) -> Matrix:
    try:
        return mat_inverse(m)
    except SingularMatrixError:
        raise SingularMatrixError(f"{what} is singular") from None


def toeplitz_similarity_report(t: ToeplitzBand, u: PolyVec, k_range: tuple[int, int] = DEFAULT_K_RANGE) -> SimilarityReport:
    n = t.n
    _require_ends(u, n)
    T = t.to_dense()
    Tinv = _inverse(T, "T")
    ct, cb = companion(u, Kind.TOP), companion(u, Kind.BOTTOM)
    cl, cr = companion(u, Kind.LEFT), companion(u, Kind.RIGHT)

    stmt1 = n < 2 or not any(del_toeplitz(t).matvec(u.coeffs))
    ctT, TcR = ct @ T, T @ cr
    stmt2 = _is_toeplitz(ctT) and _is_toeplitz(TcR) and ctT == TcR
    cbT, TcL = cb @ T, T @ cl
    stmt3 = _is_toeplitz(cbT) and _is_toeplitz(TcL) and cbT == TcL

    powers = {
        k: Tinv @ companion_power(u, Kind.TOP, k) @ T == companion_power(u, Kind.RIGHT, k)
        for k in range(k_range[0], k_range[1] + 1)
    }
    return SimilarityReport(stmt1, stmt2, stmt3, powers)


def hankel_similarity_report(h: HankelBand, u: PolyVec, k_range: tuple[int, int] = DEFAULT_K_RANGE) -> SimilarityReport:
    """Hankel analogue.

    ``power_checks`` holds ``H^-1 C_t^k H == Cbar_l^k`` (what item 2 implies);
    ``cb_power_checks`` holds the C_b variant ``H^-1 C_b^k H == Cbar_l^k``,
    which agrees only at k = 0 in general.
    """
    n = h.n
    _require_ends(u, n)
    H = h.to_dense()
    Hinv = _inverse(H, "H")
    ct, cb = companion(u, Kind.TOP), companion(u, Kind.BOTTOM)
    bar_l, bar_r = companion(u, Kind.LEFT, barred=True), companion(u, Kind.RIGHT, barred=True)

    stmt1 = n < 2 or not any(del_hankel(h).matvec(reverse(u).coeffs))
    ctH, HbL = ct @ H, H @ bar_l
    stmt2 = _is_hankel(ctH) and _is_hankel(HbL) and ctH == HbL
    cbH, HbR = cb @ H, H @ bar_r
    stmt3 = _is_hankel(cbH) and _is_hankel(HbR) and cbH == HbR

    ks = range(k_range[0], k_range[1] + 1)
    implied = {
        k: Hinv @ companion_power(u, Kind.TOP, k) @ H == companion_power(u, Kind.LEFT, k, barred=True)
        for k in ks
    }
    with_cb = {
        k: Hinv @ companion_power(u, Kind.BOTTOM, k) @ H == companion_power(u, Kind.LEFT, k, barred=True)
        for k in ks
    }
    return SimilarityReport(stmt1, stmt2, stmt3, implied, with_cb)


class Side(enum.Enum):
    PRE_TOP = "pre_top"                     # C_t^k A
    POST_RIGHT = "post_right"               # A C_r^k
    POST_BARRED_RIGHT = "post_barred_right"  # A Cbar_r^k


def shift_transform(a: Matrix, u: PolyVec, side, k: int = 1) -> Matrix:
    """Move a similarity transformer along by companion powers.

    If ``A^-1 C_t A = C_r`` then the same holds for ``C_t^k A`` and
    ``A C_r^k``; if ``A^-1 C_t A = Cbar_l`` it holds for ``C_t^k A`` and
    ``A Cbar_r^k``.  ``k = -1`` gives the inverse steps (e.g. ``A C_l``).
    """
    side = side if isinstance(side, Side) else Side(side)
    if not a.is_square or a.nrows != u.n:
        raise DimensionError(f"A must be {u.n}x{u.n}")
    if rank(a) < a.nrows:
        raise SingularMatrixError("A is singular")
    if side is Side.PRE_TOP:
        return companion_power(u, Kind.TOP, k) @ a
    if side is Side.POST_RIGHT:
        return a @ companion_power(u, Kind.RIGHT, k)
    return a @ companion_power(u, Kind.RIGHT, k, barred=True)


def conjugates(a: Matrix, u: PolyVec, target: str = "right") -> bool:
    """Does ``A^-1 C_t A`` equal ``C_r`` (target="right") or ``Cbar_l`` (target="barred_left")?"""
    ct = companion(u, Kind.TOP)
    goal = companion(u, Kind.RIGHT) if target == "right" else companion(u, Kind.LEFT, barred=True)
    # A invertible: A^-1 C_t A = G  <=>  C_t A = A G
    return ct @ a == a @ goal


def ctrb(a: Matrix, b: Matrix) -> Matrix:
    """``[B, AB, ..., A^(n-1) B]``."""
    n = a.nrows
    if not a.is_square or b.shape != (n, 1):
        raise DimensionError(f"ctrb needs A n x n and B n x 1, got {a.shape} and {b.shape}")
    cols, x = [], b
    for _ in range(n):
        cols.append(x.col(0))
        x = a @ x
    return Matrix(zip(*cols)) if n else Matrix.zeros(0, 0)


def obsv(d: Matrix, a: Matrix) -> Matrix:
    """``[D; DA; ...; D A^(n-1)]``."""
    n = a.nrows
    if not a.is_square or d.shape != (1, n):
        raise DimensionError(f"obsv needs D 1 x n and A n x n, got {d.shape} and {a.shape}")
    rows, x = [], d
    for _ in range(n):
        rows.append(x.row(0))
        x = x @ a
    return Matrix(rows)


@dataclass(frozen=True)
class CanonicalPair:
    """Observer form (A1, B1, D1) and controller form (A2, B2, D2) of one SISO system.

    With ``u = (a_n, ..., a_1, 1)``: ``A2 = C_t(u)`` and ``A1 = C_t(u)^T``.
    """

    u: PolyVec
    v: PolyVec
    A1: Matrix
    B1: Matrix
    D1: Matrix
    A2: Matrix
    B2: Matrix
    D2: Matrix


def canonical_pair(a: Sequence, b: Sequence, swap_gains: bool = False) -> CanonicalPair:
    """Build both canonical forms from ``a = (a_1..a_n)``, ``b = (b_1..b_n)``.

    The default is the usual assignment: observer ``(C_t^T, b, e_1^T)`` and
    controller ``(C_t, e_1, b^T)``.  ``swap_gains=True`` uses the alternative
    ``(C_t^T, e_1, b^T)`` / ``(C_t, b, e_1^T)``, which describes the same
    transfer function but is not linked to the Bezoutian.
    """
    a = [as_rational(x) for x in a]
    b = [as_rational(x) for x in b]
    n = len(a)
    if n < 1 or len(b) != n:
        raise DimensionError("a and b must have the same positive length")
    u = PolyVec(a[::-1] + [Fraction(1)])
    v = PolyVec(b[::-1] + [Fraction(0)])
    A2 = companion(u, Kind.TOP)
    A1 = A2.T
    e1 = [Fraction(1)] + [Fraction(0)] * (n - 1)
    if swap_gains:
        return CanonicalPair(u, v, A1, Matrix.column(e1), Matrix.row_vector(b),
                             A2, Matrix.column(b), Matrix.row_vector(e1))
    return CanonicalPair(u, v, A1, Matrix.column(b), Matrix.row_vector(e1),
                         A2, Matrix.column(e1), Matrix.row_vector(b))


def canonical_q(a: Sequence, b: Sequence, swap_gains: bool = False) -> Matrix:
    """``Q = O(D2, A2)^-1 O(D1, A1)`` with ``Q^-1 A2 Q = A1``.

    Also asserts ``Q = C(A2, B2) C(A1, B1)^-1`` and, for the default
    assignment, ``Q^-1 = -B_T^T J`` with ``v = (b_n, ..., b_1, 0)``.
    """
    p = canonical_pair(a, b, swap_gains)
    o1, o2 = obsv(p.D1, p.A1), obsv(p.D2, p.A2)
    c1, c2 = ctrb(p.A1, p.B1), ctrb(p.A2, p.B2)
    for name, m in (("observability matrix O(D2, A2)", o2), ("controllability matrix C(A1, B1)", c1),
                    ("observability matrix O(D1, A1)", o1), ("controllability matrix C(A2, B2)", c2)):
        if rank(m) < m.nrows:
            raise NotCoprimeError(f"{name} is singular: the system is not controllable and observable")
    q = mat_inverse(o2) @ o1
    if q != c2 @ mat_inverse(c1):
        raise ConsistencyError("O2^-1 O1 and C2 C1^-1 disagree")
    qinv = mat_inverse(q)
    if qinv @ p.A2 @ q != p.A1:
        raise ConsistencyError("Q^-1 A2 Q != A1")
    if not swap_gains and qinv != q_transform(p.u, p.v):
        raise ConsistencyError("Q^-1 differs from -B_T^T J")
    return q


def bezoutian_similarity_check(u: PolyVec, v: PolyVec, k_range: tuple[int, int] = (-2, 2)) -> bool:
    """``B_T C_t(w)^k B_T^-1 == C_r(w)^k`` for w in {u, v} and every k in range."""
    for w in (u, v):
        if not (w.first_nonzero and w.last_nonzero):
            raise EndpointError("u and v need nonzero first and last coefficients")
    bt = bez_toeplitz_oracle(u, v)
    try:
        btinv = mat_inverse(bt)
    except SingularMatrixError:
        raise NotCoprimeError("B_T(u, v) is singular: u and v share a root") from None
    for w in (u, v):
        for k in range(k_range[0], k_range[1] + 1):
            if bt @ companion_power(w, Kind.TOP, k) @ btinv != companion_power(w, Kind.RIGHT, k):
                return False
    return True


# interface names used by callers of the original API
check_theorem_2_1 = toeplitz_similarity_report
check_corollary_2_2 = hankel_similarity_report
