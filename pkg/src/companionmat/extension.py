"""Extending a square matrix with companion-matrix powers.

``extend_vertical(A, u, k, l)`` stacks first rows of ``C_t^i A`` above
``C_t^l A`` for ``i = l+1 .. k``, so every window of n consecutive rows is
``C_t^i A`` for some i.  ``extend_full`` then appends last columns of
``X C_r^j`` to ``X C_r^t`` for ``j = t+1 .. s``; every aligned n x n block of
the result is ``C_t^i A C_r^j``.  In Hankel mode the horizontal steps use the
barred companions of ``u^J``.

When ``A`` is Toeplitz and ``u`` annihilates ``del A`` the result is again
Toeplitz (Hankel in Hankel mode), i.e. a window onto a single two-sided
sequence extending the band of ``A``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bezoutian import bez_toeplitz_oracle
from .companion import Kind, companion, inverse_kind
from .errors import (
    ConsistencyError,
    DimensionError,
    EndpointError,
    NotCoprimeError,
    SingularMatrixError,
    StructureError,
)
from .exactmat import (
    Matrix,
    PolyVec,
    format_rational,
    hstack,
    mat_inverse,
    rank,
    reverse,
    vstack,
)
from .structured import (
    HankelBand,
    ToeplitzBand,
    build_u_minus,
    build_u_plus,
    del_hankel,
    del_toeplitz,
)

__all__ = [
    "ExtensionSpec",
    "ExtensionGrid",
    "ExtendedBand",
    "extend_vertical",
    "extend_full",
    "extended_band",
    "extension_kernel_basis",
    "check_extension_kernel",
    "verify_structure_preservation",
    "UplusReport",
    "analyze_uplus_extension",
    "bezoutian_extension_pair",
]


@dataclass(frozen=True)
class ExtensionSpec:
    k: int
    l: int
    s: int
    t: int
    hankel: bool = False

    def __post_init__(self):
        if self.k < self.l or self.s < self.t:
            raise ValueError(f"extension needs k >= l and s >= t, got ({self.k},{self.l};{self.s},{self.t})")

    def shifted(self, i: int, j: int) -> "ExtensionSpec":
        """Spec describing the same grid from generator ``C_t^i A C_r^j``."""
        return ExtensionSpec(self.k - i, self.l - i, self.s - j, self.t - j, self.hankel)

    def __str__(self) -> str:
        return f"({self.k},{self.l};{self.s},{self.t}){' hankel' if self.hankel else ''}"


@dataclass(frozen=True)
class ExtensionGrid:
    """The extended matrix and the (row, col) of the generator block.

    The aligned block at rows ``r..r+n`` and columns ``c..c+n`` is
    ``C_t^(row0 - r) A C_r^(c - col0)``; the origin may lie outside the grid.
    """

    matrix: Matrix
    origin: tuple[int, int]
    n: int
    spec: ExtensionSpec

    def block(self, i: int, j: int) -> Matrix:
        """``C_t^i A C_r^j`` read off the grid (must be inside it)."""
        r = self.origin[0] - i
        c = self.origin[1] + j
        return self.matrix.block(r, r + self.n, c, c + self.n)


def _stepper(u: PolyVec, up: Kind, barred: bool = False):
    """``get(+1)`` is the companion of kind ``up``, ``get(-1)`` its inverse.

    Each is built lazily, so a walk over non-positive powers never needs the
    endpoint that only the positive direction divides by.
    """
    cache: dict[int, Matrix] = {}

    def get(k: int) -> Matrix:
        if k not in cache:
            cache[k] = companion(u, up if k > 0 else inverse_kind(up), barred)
        return cache[k]

    return get


def _vertical_rows(a: Matrix, u: PolyVec, k: int, l: int) -> Matrix:
    n = a.nrows
    if not a.is_square or u.n != n:
        raise DimensionError(f"A must be {u.n}x{u.n}, got {a.shape}")
    if k < l:
        raise ValueError("need k >= l")
    comp = _stepper(u, Kind.TOP)
    # C_t^m A for m = l..k, walking outward from m = 0
    powers = {0: a}
    for m in range(1, k + 1):
        powers[m] = comp(1) @ powers[m - 1]
    for m in range(-1, l - 1, -1):
        powers[m] = comp(-1) @ powers[m + 1]
    gammas = [powers[m].row(0) for m in range(k, l, -1)]
    base = powers[l]
    return vstack(Matrix(gammas, ncols=n), base) if gammas else base
def extend_vertical(a: Matrix, u: PolyVec, k: int, l: int) -> Matrix:
    """``T[A:k,l]``, an (n+k-l) x n matrix."""
    return _vertical_rows(a, u, k, l)


def extend_full(a: Matrix, u: PolyVec, spec: ExtensionSpec) -> ExtensionGrid:
    """``T[A:k,l;s,t]`` (or ``H[...]`` in Hankel mode)."""
    x = _vertical_rows(a, u, spec.k, spec.l)
    n = a.nrows
    comp = _stepper(u, Kind.RIGHT, barred=spec.hankel)
    # X C_r^j for j = t..s, walking outward from j = 0
    powers = {0: x}
    for j in range(1, spec.s + 1):
        powers[j] = powers[j - 1] @ comp(1)
    for j in range(-1, spec.t - 1, -1):
        powers[j] = powers[j + 1] @ comp(-1)
    left = powers[spec.t]
    betas = [powers[j].col(n - 1) for j in range(spec.t + 1, spec.s + 1)]
    m = hstack(left, Matrix(zip(*betas))) if betas else left
    return ExtensionGrid(m, (spec.k, -spec.t), n, spec)


@dataclass(frozen=True)
class ExtendedBand:
    """Values of a rectangular Toeplitz (or Hankel) grid, indexed like the generator's band.

    For a Toeplitz grid ``a(m)`` is the entry at relative offset
    ``m = (i - row0) - (j - col0)``; for Hankel ``m = (i - row0) + (j - col0) - n + 1``.
    On the generator block this agrees with the ``a_m`` of its own band.
    """

    hankel: bool
    lo: int
    values: tuple[Fraction, ...]

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1

    def a(self, m: int) -> Fraction:
        if not self.lo <= m <= self.hi:
            raise IndexError(f"a_{m} outside [{self.lo}, {self.hi}]")
        return self.values[m - self.lo]

    def central(self, n: int) -> tuple[Fraction, ...]:
        return tuple(self.a(m) for m in range(1 - n, n))

    def overlap(self, n: int) -> range:
        """Offsets of the central 2n-1 diagonals that the grid actually shows."""
        return range(max(self.lo, 1 - n), min(self.hi, n - 1) + 1)


def extended_band(grid: ExtensionGrid, hankel: bool | None = None) -> ExtendedBand:
    """Read the single sequence behind a Toeplitz/Hankel grid, or raise StructureError."""
    hankel = grid.spec.hankel if hankel is None else hankel
    r0, c0 = grid.origin
    n = grid.n
    m = grid.matrix
    seen: dict[int, tuple[Fraction, tuple[int, int]]] = {}
    for i in range(m.nrows):
        for j in range(m.ncols):
            off = (i - r0) + (j - c0) - n + 1 if hankel else (i - r0) - (j - c0)
            val = m[i, j]
            if off in seen:
                if seen[off][0] != val:
                    pi, pj = seen[off][1]
                    raise StructureError(
                        f"not {'Hankel' if hankel else 'Toeplitz'}: entry ({i + 1},{j + 1}) = "
                        f"{format_rational(val)} but ({pi + 1},{pj + 1}) = {format_rational(seen[off][0])}"
                    )
            else:
                seen[off] = (val, (i, j))
    lo, hi = min(seen), max(seen)
    return ExtendedBand(hankel, lo, tuple(seen[o][0] for o in range(lo, hi + 1)))


def extension_kernel_basis(u: PolyVec, r: int, hankel: bool = False) -> Matrix:
    """(n+r) x r banded matrix whose columns are shifted copies of u (of u^J, reversed order, for Hankel)."""
    if r < 1:
        raise ValueError("r must be positive")
    n = u.n
    zero = Fraction(0)
    cols = []
    for i in range(r):
        col = [zero] * (n + r)
        if hankel:
            start = r - 1 - i
            col[start:start + n + 1] = reverse(u).coeffs
        else:
            col[i:i + n + 1] = u.coeffs
        cols.append(col)
    return Matrix(zip(*cols))


def check_extension_kernel(a: Matrix, u: PolyVec, spec: ExtensionSpec) -> bool:
    """Rank of the grid is n and the banded u-shifts span its kernel."""
    if rank(a) < a.nrows:
        raise SingularMatrixError("generator A is singular")
    grid = extend_full(a, u, spec).matrix
    if rank(grid) != a.nrows:
        return False
    r = spec.s - spec.t
    if r == 0:
        return True
    e = extension_kernel_basis(u, r, hankel=spec.hankel)
    if rank(e) != r:
        return False
    return not any(any(row) for row in grid @ e)


def verify_structure_preservation(gen: ToeplitzBand | HankelBand, u: PolyVec, spec: ExtensionSpec) -> ExtendedBand:
    """Extend a Toeplitz (Hankel) generator and confirm the grid keeps the structure."""
    hankel = isinstance(gen, HankelBand)
    if hankel != spec.hankel:
        raise ValueError("Hankel generators need spec.hankel=True and Toeplitz ones False")
    if not (u.first_nonzero and u.last_nonzero):
        raise EndpointError("u_1 and u_(n+1) must both be nonzero")
    n = gen.n
    if n >= 2:
        if hankel:
            resid = del_hankel(gen).matvec(reverse(u).coeffs)
        else:
            resid = del_toeplitz(gen).matvec(u.coeffs)
        if any(resid):
            what = "del H u^J" if hankel else "del T u"
            raise ValueError(f"precondition violated: {what} = ({', '.join(map(format_rational, resid))}) != 0")
    dense = gen.to_dense()
    if rank(dense) < n:
        raise SingularMatrixError("generator is singular")
    grid = extend_full(dense, u, spec)
    try:
        band = extended_band(grid, hankel)
    except StructureError as exc:
        raise ConsistencyError(f"extension lost its structure: {exc}") from None
    if any(band.a(m) != gen.a(m) for m in band.overlap(n)):
        raise ConsistencyError("extended band does not contain the generator band")
    return band


@dataclass(frozen=True)
class UplusReport:
    spec: ExtensionSpec
    zero_band: bool
    lower_size: int      # order of the lower-triangular inverse displayed below the zero band
    upper_size: int      # order of the upper-triangular inverse displayed above it
    block_identities: bool | None
    vacuous: bool

    def lines(self) -> list[str]:
        return [
            f"spec = {self.spec}",
            f"(a) zero band of n-1 diagonals = {self.zero_band}",
            f"(b) lower part = inverse of {self.lower_size}x{self.lower_size} lower-triangular Toeplitz(u) = True",
            f"(c) upper part = inverse of {self.upper_size}x{self.upper_size} upper-triangular Toeplitz(-u^J) = True",
            f"block identities = {self.block_identities}",
            f"vacuous = {self.vacuous}",
        ]


def _tri_toeplitz_inverse_first(col: list[Fraction]) -> list[Fraction]:
    """First column of the inverse of the lower-triangular Toeplitz with first column ``col``."""
    size = len(col)
    inv = [Fraction(0)] * size
    inv[0] = 1 / col[0]
    for m in range(1, size):
        inv[m] = -sum((col[j] * inv[m - j] for j in range(1, m + 1)), Fraction(0)) / col[0]
    return inv


def analyze_uplus_extension(u: PolyVec, spec: ExtensionSpec) -> UplusReport:
    """Check the three-region layout of ``T[U_+^-1: k,l; s,t]``.

    Relative to the generator, diagonals -1..-(n-1) are zero; diagonal
    ``m >= 0`` carries entry m of the first column of the inverse of the lower
    triangular Toeplitz matrix with first column ``(u_1, ..., u_(n+1), 0, ...)``,
    and diagonal ``m <= -n`` carries entry ``-m-n`` of the first row of the
    inverse of the upper triangular Toeplitz matrix with first row
    ``(-u_(n+1), ..., -u_1, 0, ...)``.  Raises StructureError at the first
    entry that breaks this.
    """
    if spec.hankel:
        raise ValueError("the U_+^-1 layout is a Toeplitz-mode statement")
    if not (u.first_nonzero and u.last_nonzero):
        raise EndpointError("u_1 and u_(n+1) must both be nonzero")
    n = u.n
    up = build_u_plus(u).to_dense()
    grid = extend_full(mat_inverse(up), u, spec)
    g = grid.matrix
    r0, c0 = grid.origin

    offsets = [(i - r0) - (j - c0) for i in range(g.nrows) for j in range(g.ncols)]
    lower_size = max(max(offsets) + 1, 0)
    upper_size = max(-min(offsets) - n + 1, 0)
    lower_col = list(u.coeffs) + [Fraction(0)] * max(lower_size - n - 1, 0)
    lower = _tri_toeplitz_inverse_first(lower_col[:lower_size]) if lower_size else []
    neg_rev = [-c for c in reversed(u.coeffs)] + [Fraction(0)] * max(upper_size - n - 1, 0)
    # upper-triangular Toeplitz inverse has the same recurrence along its first row
    upper = _tri_toeplitz_inverse_first(neg_rev[:upper_size]) if upper_size else []

    zero_band = True
    for i in range(g.nrows):
        for j in range(g.ncols):
            m = (i - r0) - (j - c0)
            val = g[i, j]
            if m >= 0:
                want, region = lower[m], "(b) lower"
            elif m > -n:
                want, region = Fraction(0), "(a) zero band"
            else:
                want, region = upper[-m - n], "(c) upper"
            if val != want:
                raise StructureError(
                    f"feature {region} violated at entry ({i + 1},{j + 1}): "
                    f"{format_rational(val)} != {format_rational(want)}"
                )

    block_ok = None
    if (spec.k, spec.l, spec.s, spec.t) == (n, 0, n, -n):
        um = build_u_minus(u).to_dense()
        z = Matrix.zeros(n, n)
        s1, r1, r2 = g.block(0, n, 0, n), g.block(0, n, n, 2 * n), g.block(0, n, 2 * n, 3 * n)
        s2, s1b, r1b = g.block(n, 2 * n, 0, n), g.block(n, 2 * n, n, 2 * n), g.block(n, 2 * n, 2 * n, 3 * n)
        s_blk = vstack(hstack(s1, z), hstack(s2, s1))
        r_blk = vstack(hstack(r1, r2), hstack(z, r1))
        lo_blk = vstack(hstack(up, z), hstack(um, up))
        hi_blk = vstack(hstack(um, up), hstack(z, um))
        block_ok = (
            s1 == s1b and r1 == r1b
            and s_blk == mat_inverse(lo_blk)
            and r_blk == -mat_inverse(hi_blk)
        )
        if not block_ok:
            raise StructureError("block identities for S1, S2, R1, R2 do not hold")
    vacuous = max(spec.k, spec.s) <= 0 or max(-spec.l, -spec.t) <= 0
    return UplusReport(spec, zero_band, lower_size, upper_size, block_ok, vacuous)


def bezoutian_extension_pair(u: PolyVec, v: PolyVec, spec: ExtensionSpec) -> tuple[ExtensionGrid, ExtensionGrid]:
    """Extend ``B_T(u, v)^-1`` once with u's companions and once with v's.

    Both grids are checked to be Toeplitz and to agree on the 2n-1 diagonals
    of ``B_T^-1``.
    """
    if spec.hankel:
        raise ValueError("Bezoutian extension pairs are Toeplitz-mode")
    for w in (u, v):
        if not (w.first_nonzero and w.last_nonzero):
            raise EndpointError("u and v need nonzero first and last coefficients")
    try:
        binv = mat_inverse(bez_toeplitz_oracle(u, v))
    except SingularMatrixError:
        raise NotCoprimeError("B_T(u, v) is singular: u and v share a root") from None
    gu, gv = extend_full(binv, u, spec), extend_full(binv, v, spec)
    try:
        bu, bv = extended_band(gu), extended_band(gv)
    except StructureError as exc:
        raise ConsistencyError(f"extension of B_T^-1 is not Toeplitz: {exc}") from None
    n = u.n
    if any(bu.a(m) != bv.a(m) for m in bu.overlap(n)):
        raise ConsistencyError("u- and v-extensions disagree on the central band")
    return gu, gv
