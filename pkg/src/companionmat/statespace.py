"""Discrete-time SISO realizations of the transfer function -v(z)/u(z).

A sequence ``b`` drives the system through

    x_k = -(u_{n+1} b_k + u_n b_{k+1} + ... + u_1 b_{k+n})
    y_k =   v_{n+1} b_k + v_n b_{k+1} + ... + v_1 b_{k+n}

and the state at time k is the window ``(b_k, ..., b_{k+n-1})``.  The
controller form evolves that window with ``C_b``; multiplying states by
``B_T(u, v)`` gives the second canonical form driven by ``C_l``.

Indexing: the initial state is the first window ``b_1..b_n`` and the first
input consumed from it is ``x_1``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bezoutian import bez_toeplitz_oracle
from .companion import Kind, companion
from .errors import DimensionError, EndpointError, NotCoprimeError
from .exactmat import Matrix, PolyVec, as_rational, is_coprime, mat_inverse, rank
from .extension import ExtensionSpec, extend_full, extend_vertical

__all__ = [
    "SisoSystem",
    "Realization",
    "Trajectory",
    "controller_form",
    "transformed_form",
    "simulate",
    "b_to_io",
    "build_F",
    "input_band",
    "long_state",
    "late_state",
    "mixed_state",
]


@dataclass(frozen=True)
class SisoSystem:
    u: PolyVec
    v: PolyVec
    coprime: bool = field(init=False)

    def __post_init__(self):
        if len(self.u) != len(self.v):
            raise DimensionError(f"u and v must have equal length, got {len(self.u)} and {len(self.v)}")
        if self.u.n < 1:
            raise DimensionError("system order must be at least 1")
        if self.u.is_zero():
            raise ValueError("u must be nonzero")
        # a shared trailing zero is a common root at infinity and makes B_T singular
        ok = (
            not self.v.is_zero()
            and is_coprime(self.u, self.v)
            and (self.u.last_nonzero or self.v.last_nonzero)
        )
        object.__setattr__(self, "coprime", ok)
        if not ok:
            warnings.warn("u and v are not coprime; the realization is not minimal", stacklevel=2)

    @classmethod
    def parse(cls, u: str, v: str) -> "SisoSystem":
        return cls(PolyVec.parse(u), PolyVec.parse(v))

    @property
    def n(self) -> int:
        return self.u.n


@dataclass(frozen=True)
class Realization:
    A: Matrix
    B: tuple[Fraction, ...]
    D: tuple[Fraction, ...]
    d: Fraction

    def step(self, state: Sequence[Fraction], x: Fraction) -> tuple[tuple[Fraction, ...], Fraction]:
        y = sum((di * si for di, si in zip(self.D, state)), Fraction(0)) + self.d * x
        nxt = tuple(a + b * x for a, b in zip(self.A.matvec(state), self.B))
        return nxt, y


@dataclass(frozen=True)
class Trajectory:
    states: tuple[tuple[Fraction, ...], ...]
    outputs: tuple[Fraction, ...]
    inputs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.states) != len(self.inputs) + 1 or len(self.outputs) != len(self.inputs):
            raise DimensionError("trajectory lengths are inconsistent")


def _need_u1(sys: SisoSystem) -> Fraction:
    if not sys.u.first_nonzero:
        raise EndpointError("u_1 must be nonzero")
    return sys.u[0]


def controller_form(sys: SisoSystem) -> Realization:
    u1 = _need_u1(sys)
    u, v, n = sys.u, sys.v, sys.n
    B = tuple(Fraction(0) for _ in range(n - 1)) + (-1 / u1,)
    D = tuple((u1 * v[n - j] - v[0] * u[n - j]) / u1 for j in range(n))
    return Realization(companion(u, Kind.BOTTOM), B, D, -v[0] / u1)


def _bezoutian(sys: SisoSystem) -> Matrix:
    bt = bez_toeplitz_oracle(sys.u, sys.v)
    if rank(bt) < sys.n:
        raise NotCoprimeError("B_T(u, v) is singular: u and v share a root")
    return bt


def transformed_form(sys: SisoSystem) -> Realization:
    """Realization with state ``B_T beta``: ``A = C_l``, ``D_1 = e_1 / u_1``."""
    u1 = _need_u1(sys)
    bt = _bezoutian(sys)
    n = sys.n
    B1 = tuple(-x / u1 for x in bt.col(n - 1))
    D1 = (1 / u1,) + tuple(Fraction(0) for _ in range(n - 1))
    return Realization(companion(sys.u, Kind.LEFT), B1, D1, -sys.v[0] / u1)


def simulate(r: Realization, beta0: Sequence, inputs: Sequence) -> Trajectory:
    state = tuple(as_rational(x) for x in beta0)
    if len(state) != r.A.nrows:
        raise DimensionError(f"initial state must have {r.A.nrows} entries, got {len(state)}")
    xs = tuple(as_rational(x) for x in inputs)
    states, outputs = [state], []
    for x in xs:
        state, y = r.step(state, x)
        states.append(state)
        outputs.append(y)
    return Trajectory(tuple(states), tuple(outputs), xs)


def b_to_io(b: Sequence, sys: SisoSystem) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Inputs and outputs generated by a finite stretch ``b_1..b_N`` (N >= n+1)."""
    b = [as_rational(x) for x in b]
    n, u, v = sys.n, sys.u, sys.v
    if len(b) < n + 1:
        raise DimensionError(f"need at least {n + 1} values of b, got {len(b)}")
    xs, ys = [], []
    for k in range(len(b) - n):
        xs.append(-sum((u[n - j] * b[k + j] for j in range(n + 1)), Fraction(0)))
        ys.append(sum((v[n - j] * b[k + j] for j in range(n + 1)), Fraction(0)))
    return tuple(xs), tuple(ys)


def build_F(u: PolyVec, p: int) -> Matrix:
    """Unit lower-triangular Toeplitz with subdiagonal i equal to ``(C_b^i)[n, n]``."""
    if p < 1:
        raise ValueError("p must be positive")
    if not u.first_nonzero:
        raise EndpointError("u_1 must be nonzero")
    n = u.n
    cb = companion(u, Kind.BOTTOM)
    s = [Fraction(1)]
    last_row = tuple(Fraction(int(j == n - 1)) for j in range(n))
    for _ in range(1, p):
        last_row = tuple(sum((last_row[k] * cb[k, j] for k in range(n)), Fraction(0)) for j in range(n))
        s.append(last_row[n - 1])
    zero = Fraction(0)
    return Matrix([[s[i - j] if i >= j else zero for j in range(p)] for i in range(p)])


def input_band(column: Sequence[Fraction], q: int) -> Matrix:
    """The (n+q-1) x q band whose column j is ``column`` starting at row j."""
    n = len(column)
    zero = Fraction(0)
    cols = []
    for j in range(q):
        c = [zero] * (n + q - 1)
        c[j:j + n] = column
        cols.append(c)
    return Matrix(zip(*cols), ncols=q) if q else Matrix.zeros(n - 1, 0)


def _forced_part(u: PolyVec, xs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """``-(1/u_1) [O; F_p] x``."""
    p, n = len(xs), u.n
    fx = build_F(u, p).matvec(xs)
    return tuple(Fraction(0) for _ in range(n)) + tuple(-x / u[0] for x in fx)


def _check_state(state: Sequence, n: int) -> tuple[Fraction, ...]:
    s = tuple(as_rational(x) for x in state)
    if len(s) != n:
        raise DimensionError(f"state must have {n} entries, got {len(s)}")
    return s


def long_state(sys: SisoSystem, beta_init: Sequence, inputs: Sequence) -> tuple[Fraction, ...]:
    """``b_1..b_{n+p}`` from the first window and ``x_1..x_p``."""
    _need_u1(sys)
    xs = tuple(as_rational(x) for x in inputs)
    if not xs:
        raise ValueError("need at least one input")
    beta = _check_state(beta_init, sys.n)
    free = extend_vertical(Matrix.identity(sys.n), sys.u, 0, -len(xs)).matvec(beta)
    return tuple(a + b for a, b in zip(free, _forced_part(sys.u, xs)))


def late_state(sys: SisoSystem, betap_init: Sequence, inputs: Sequence) -> tuple[Fraction, ...]:
    """Transformed-form state after ``q`` inputs, in closed form."""
    r = transformed_form(sys)
    xs = tuple(as_rational(x) for x in inputs)
    q, n = len(xs), sys.n
    if q < 1:
        raise ValueError("need at least one input")
    beta = _check_state(betap_init, n)
    free = (extend_full(Matrix.identity(n), sys.u, ExtensionSpec(0, 0, -q, -q)).matrix).matvec(beta)
    spread = extend_full(Matrix.identity(n), sys.u, ExtensionSpec(0, 0, 0, 1 - q)).matrix
    forced = (spread @ input_band(r.B, q)).matvec(xs)
    return tuple(a + b for a, b in zip(free, forced))


def mixed_state(sys: SisoSystem, betap_init: Sequence, inputs: Sequence, q: int) -> tuple[Fraction, ...]:
    """``b_{q+1}..b_{q+n+p}``: q steps in the transformed form, then p in the controller form.

    ``inputs`` holds ``x_1..x_{q+p}``.  Closed form::

        T[B_T^-1: 0,-p; -q,-q] beta'(0) + T[B_T^-1: 0,-p; 0,1-q] E_q x_{1..q}
            - (1/u_1) [O; F_p] x_{q+1..q+p}
    """
    r = transformed_form(sys)
    xs = tuple(as_rational(x) for x in inputs)
    n = sys.n
    if q < 0:
        raise ValueError("q must be non-negative")
    p = len(xs) - q
    if p < 1:
        raise ValueError(f"need more than q={q} inputs, got {len(xs)}")
    beta = _check_state(betap_init, n)
    btinv = mat_inverse(_bezoutian(sys))
    head = extend_full(btinv, sys.u, ExtensionSpec(0, -p, -q, -q)).matrix.matvec(beta)
    if q:
        spread = extend_full(btinv, sys.u, ExtensionSpec(0, -p, 0, 1 - q)).matrix
        mid = (spread @ input_band(r.B, q)).matvec(xs[:q])
        head = tuple(a + b for a, b in zip(head, mid))
    return tuple(a + b for a, b in zip(head, _forced_part(sys.u, xs[q:])))
