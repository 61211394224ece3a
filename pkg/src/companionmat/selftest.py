"""Claim-by-claim self-test with golden worked examples.

Each row of the table is one identity checked exactly on either a fixed
worked example or a batch of seeded random instances.  Rows marked KNOWN
record published formulas that do not hold in their stated form; they are shown with
the evidence and do not count as failures.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import randgen
from .bezoutian import (
    bez_hankel_gs_literal,
    bez_hankel_oracle,
    bez_toeplitz_gs,
    bez_toeplitz_oracle,
    hankel_inverse_structured,
    toeplitz_inverse_structured,
)
from .companion import Kind, companion, companion_power
from .errors import SingularMatrixError
from .exactmat import Matrix, PolyVec, flip_matrix, flip_secondary, mat_inverse, rank, reverse
from .extension import (
    ExtensionSpec,
    analyze_uplus_extension,
    bezoutian_extension_pair,
    check_extension_kernel,
    extend_full,
    extend_vertical,
    verify_structure_preservation,
)
from .similarity import (
    Side,
    bezoutian_similarity_check,
    hankel_similarity_report,
    toeplitz_similarity_report,
    shift_transform,
)
from .statespace import (
    SisoSystem,
    b_to_io,
    build_F,
    controller_form,
    late_state,
    long_state,
    mixed_state,
    simulate,
    transformed_form,
)
from .structured import (
    HankelBand,
    ToeplitzBand,
    build_u_plus,
    complete_band,
    del_toeplitz,
    detect_hankel,
    detect_toeplitz,
)
from .textio import format_matrix

__all__ = ["Row", "run_selftest", "render", "WORKED_U", "GOLDEN"]

WORKED_U = PolyVec.parse("4,3,2,1")

# matrices displayed in the worked example for u = (4,3,2,1)
GOLDEN = {
    "C_t": "-2,-3,-4; 1,0,0; 0,1,0",
    "C_r": "0,0,-4; 1,0,-3; 0,1,-2",
    "del T1": "1/4,0,0,-1; -3/16,1/4,0,0",
    "T1": "0,0,-1; 1/4,0,0; -3/16,1/4,0",
    "T1 C_l": "1/4,0,0; -3/16,1/4,0; 1/64,-3/16,1/4",
}


@dataclass
class Row:
    name: str
    status: str  # PASS, FAIL or KNOWN
    detail: str = ""
    evidence: list[str] = field(default_factory=list)


def _golden(u: PolyVec) -> list[tuple[str, bool, str]]:
    ct, cr, cl = companion(u, Kind.TOP), companion(u, Kind.RIGHT), companion(u, Kind.LEFT)
    t1 = complete_band(u, [-1, 0, 0])
    t = t1.to_dense() @ cl
    up = build_u_plus(u).to_dense()
    n = u.n
    eye = Matrix.identity(n)
    out = [
        ("C_t golden", format_matrix(ct) == GOLDEN["C_t"], format_matrix(ct)),
        ("C_r golden", format_matrix(cr) == GOLDEN["C_r"], format_matrix(cr)),
        ("del T1 golden", format_matrix(del_toeplitz(t1)) == GOLDEN["del T1"], format_matrix(del_toeplitz(t1))),
        ("T1 golden", format_matrix(t1.to_dense()) == GOLDEN["T1"], format_matrix(t1.to_dense())),
        ("T = T1 C_l golden", format_matrix(t) == GOLDEN["T1 C_l"], format_matrix(t)),
        ("T = U_+^-1", up @ t == eye, "U_+ T = I"),
        ("shift: T1 C_l via post-right inverse", shift_transform(t1.to_dense(), u, Side.POST_RIGHT, -1) == t, ""),
        ("C_t^-1 = C_b", companion_power(u, Kind.TOP, -1) == companion(u, Kind.BOTTOM), ""),
        ("C_t^J = C_r", flip_secondary(ct) == cr, ""),
        ("band of U_+^-1", str(detect_toeplitz(t)) == "0,0,1/4,-3/16,1/64", str(detect_toeplitz(t))),
        ("complete (0,0,1/4) gives U_+^-1", complete_band(u, [0, 0, Fraction(1, 4)]).to_dense() == t, ""),
        ("Toeplitz similarity report on U_+^-1 all true", toeplitz_similarity_report(detect_toeplitz(t), u).all_true, ""),
        ("Toeplitz similarity report on T1 all true", toeplitz_similarity_report(t1, u).all_true, ""),
    ]
    g = extend_full(eye, u, ExtensionSpec(n, -n, n, -n))
    blocks_ok = all(
        g.matrix.block(n * r, n * r + n, n * c, n * c + n)
        == companion_power(u, Kind.TOP, n * (1 - r)) @ companion_power(u, Kind.RIGHT, n * (c - 1))
        for r in range(3)
        for c in range(3)
    )
    out.append(("9x9 block display T[I:n,-n;n,-n]", blocks_ok, f"shape {g.matrix.shape}"))
    rep = analyze_uplus_extension(u, ExtensionSpec(n, 0, n, -n))
    out.append(("U_+^-1 extension features and blocks", bool(rep.block_identities), "; ".join(rep.lines()[1:5])))
    return out


def _batch(rng: random.Random, count: int, fn: Callable[[random.Random], bool]) -> tuple[bool, str]:
    for i in range(count):
        if not fn(rng):
            return False, f"failed on instance {i}"
    return True, f"{count} instances"


def _prop_companion(rng):
    u = randgen.polyvec(rng, rng.randint(1, 6))
    c = {(k, b): companion(u, k, b) for k in Kind for b in (False, True)}
    ok = all(
        mat_inverse(c[(Kind.TOP, b)]) == c[(Kind.BOTTOM, b)] and mat_inverse(c[(Kind.LEFT, b)]) == c[(Kind.RIGHT, b)]
        for b in (False, True)
    )
    ok &= flip_secondary(c[(Kind.TOP, False)]) == c[(Kind.RIGHT, False)]
    ok &= flip_secondary(c[(Kind.BOTTOM, False)]) == c[(Kind.LEFT, False)]
    ok &= flip_secondary(c[(Kind.TOP, True)]) == c[(Kind.RIGHT, True)]
    ok &= flip_secondary(c[(Kind.BOTTOM, True)]) == c[(Kind.LEFT, True)]
    ok &= c[(Kind.TOP, False)].T == c[(Kind.LEFT, True)] and c[(Kind.BOTTOM, False)].T == c[(Kind.RIGHT, True)]
    ok &= c[(Kind.RIGHT, False)].T == c[(Kind.BOTTOM, True)] and c[(Kind.LEFT, False)].T == c[(Kind.TOP, True)]
    return ok


def _prop_similar1(rng):
    u = randgen.polyvec(rng, rng.randint(1, 6))
    up = build_u_plus(u).to_dense()
    upi = mat_inverse(up)
    return all(
        up @ companion_power(u, Kind.TOP, k) @ upi == companion_power(u, Kind.RIGHT, k) for k in range(-3, 4)
    )


def _prop_toeplitz_pos(rng):
    u = randgen.polyvec(rng, rng.randint(2, 6))
    rep = toeplitz_similarity_report(randgen.kernel_toeplitz(rng, u), u)
    return rep.all_true


def _prop_toeplitz_neg(rng):
    n = rng.randint(2, 6)
    u = randgen.polyvec(rng, n)
    t = randgen.kernel_toeplitz(rng, u)
    band = list(t.band)
    band[rng.randrange(len(band))] += rng.randint(1, 5)
    t2 = ToeplitzBand(band)
    if rank(t2.to_dense()) < n:
        return True
    rep = toeplitz_similarity_report(t2, u)
    return rep.consistent and not (rep.stmt1 or rep.stmt2 or rep.stmt3)


def _prop_hankel(rng):
    u = randgen.polyvec(rng, rng.randint(2, 6))
    # del H u^J = del(HJ) u, so H = TJ with u in ker(del T)
    t = randgen.kernel_toeplitz(rng, u)
    h = detect_hankel(t.to_dense() @ flip_matrix(u.n))
    rep = hankel_similarity_report(h, u)
    return rep.all_true


def _prop_gs(rng):
    n = rng.randint(1, 6)
    u, v = randgen.polyvec(rng, n, ends=False), randgen.polyvec(rng, n, ends=False)
    return bez_toeplitz_gs(u, v) == bez_toeplitz_oracle(u, v)


def _prop_unimodular(rng):
    n = rng.randint(1, 6)
    a, b = randgen.polyvec(rng, n, ends=False), randgen.polyvec(rng, n, ends=False)
    (p, q), (r, s) = randgen.unimodular(rng)
    a1 = PolyVec(p * x + r * y for x, y in zip(a, b))
    b1 = PolyVec(q * x + s * y for x, y in zip(a, b))
    return bez_toeplitz_oracle(a1, b1) == bez_toeplitz_oracle(a, b) and bez_hankel_oracle(a1, b1) == bez_hankel_oracle(a, b)


def _prop_inverse(rng):
    n = rng.randint(1, 8)
    t = randgen.band(rng, n)
    dense = t.to_dense()
    try:
        inv = toeplitz_inverse_structured(t)
    except SingularMatrixError:
        return rank(dense) < n
    h = HankelBand(t.band)
    return inv == mat_inverse(dense) and hankel_inverse_structured(h) == mat_inverse(h.to_dense())


def _prop_bez_similarity(rng):
    u, v = randgen.coprime_pair(rng, rng.randint(1, 6))
    return bezoutian_similarity_check(u, v)


def _prop_hankel_oracle(rng):
    u, v = randgen.coprime_pair(rng, rng.randint(1, 6))
    bh = bez_hankel_oracle(u, v)
    if bh.T != bh:
        return False
    detect_hankel(mat_inverse(bh))
    return True


def _random_spec(rng, hankel=False):
    k, l = sorted((rng.randint(-4, 4), rng.randint(-4, 4)), reverse=True)
    s, t = sorted((rng.randint(-4, 4), rng.randint(-4, 4)), reverse=True)
    return ExtensionSpec(k, l, s, t, hankel)


def _prop_ext_kernel(rng):
    n = rng.randint(1, 5)
    u = randgen.polyvec(rng, n)
    hankel = rng.random() < 0.5
    return check_extension_kernel(randgen.invertible_matrix(rng, n), u, _random_spec(rng, hankel))


def _prop_ext_structure(rng):
    n = rng.randint(2, 5)
    u = randgen.polyvec(rng, n)
    if rng.random() < 0.5:
        t = randgen.kernel_toeplitz(rng, u)
        band = verify_structure_preservation(t, u, _random_spec(rng))
        return all(band.a(m) == t.a(m) for m in band.overlap(n))
    t = randgen.kernel_toeplitz(rng, u)
    h = detect_hankel(t.to_dense() @ flip_matrix(n))
    band = verify_structure_preservation(h, u, _random_spec(rng, True))
    return all(band.a(m) == h.a(m) for m in band.overlap(n))


def _prop_ext_identities(rng):
    n = rng.randint(1, 4)
    u = randgen.polyvec(rng, n)
    a = randgen.matrix(rng, n)
    sp = _random_spec(rng)
    grid = extend_full(a, u, sp).matrix
    eye = Matrix.identity(n)
    fact = grid == extend_vertical(eye, u, sp.k, sp.l) @ a @ extend_full(eye, u, ExtensionSpec(0, 0, sp.s, sp.t)).matrix
    i, j = rng.randint(-1, 1), rng.randint(-1, 1)
    gen = companion_power(u, Kind.TOP, i) @ a @ companion_power(u, Kind.RIGHT, j)
    return fact and grid == extend_full(gen, u, sp.shifted(i, j)).matrix


def _prop_example3(rng):
    u, v = randgen.coprime_pair(rng, rng.randint(1, 4))
    bezoutian_extension_pair(u, v, _random_spec(rng))
    return True


def _prop_statespace(rng):
    n = rng.randint(1, 5)
    u, v = randgen.coprime_pair(rng, n)
    sys = SisoSystem(u, v)
    p, q = rng.randint(1, 5), rng.randint(0, 4)
    b = [randgen.rational(rng) for _ in range(n + p + q)]
    xs, ys = b_to_io(b, sys)
    tr = simulate(controller_form(sys), b[:n], xs)
    ok = all(tr.states[k] == tuple(b[k:k + n]) for k in range(len(xs) + 1)) and tr.outputs == ys
    bt = bez_toeplitz_oracle(u, v)
    ok &= tuple(u[0] * d for d in controller_form(sys).D) == bt.row(0)
    f = build_F(u, p + n) * (1 / u[0])
    trunc = Matrix([[(u[i - j] if 0 <= i - j <= n else 0) for j in range(p + n)] for i in range(p + n)])
    ok &= f @ trunc == Matrix.identity(p + n)
    ok &= long_state(sys, b[:n], xs) == tuple(b)
    bp = bt.matvec(b[:n])
    tr2 = simulate(transformed_form(sys), bp, xs)
    ok &= all(bt.matvec(s1) == s2 for s1, s2 in zip(tr.states, tr2.states)) and tr2.outputs == tr.outputs
    if q:
        ok &= late_state(sys, bp, xs[:q]) == tr2.states[q]
    ok &= mixed_state(sys, bp, xs, q) == tuple(b[q:])
    return ok


PROPERTIES: list[tuple[str, Callable[[random.Random], bool]]] = [
    ("companion inverse/flip/transpose relations", _prop_companion),
    ("U_+ C_t^k U_+^-1 = C_r^k, k in [-3,3]", _prop_similar1),
    ("Toeplitz similarity equivalence, kernel-built T (all true)", _prop_toeplitz_pos),
    ("Toeplitz similarity equivalence, perturbed T (all false)", _prop_toeplitz_neg),
    ("Hankel similarity via H = TJ (C_t relation, all k)", _prop_hankel),
    ("Toeplitz Bezoutian GS forms = oracle", _prop_gs),
    ("Bezoutian invariance under det-1 integer maps", _prop_unimodular),
    ("structured Toeplitz/Hankel inverse = dense", _prop_inverse),
    ("B_T C_t(w)^k B_T^-1 = C_r(w)^k, k in [-2,2]", _prop_bez_similarity),
    ("Hankel oracle symmetric, inverse Hankel", _prop_hankel_oracle),
    ("extension rank n and kernel basis", _prop_ext_kernel),
    ("extension preserves Toeplitz/Hankel", _prop_ext_structure),
    ("extension factorization and generator shift", _prop_ext_identities),
    ("Bezoutian extensions share central band", _prop_example3),
    ("state space windows, D row, F_p, closed forms", _prop_statespace),
]


def _known_issues(u: PolyVec) -> list[Row]:
    v = PolyVec.parse("1,1,1,1")
    rep = bez_hankel_gs_literal(u, v)
    rows = [
        Row(
            "Hankel Bezoutian triangular-product formulas",
            "KNOWN" if not (rep.first_matches and rep.second_matches) else "PASS",
            rep.summary(),
            [
                f"oracle      = {format_matrix(rep.oracle)}",
                f"first form  = {format_matrix(rep.first)}",
                f"second form = {format_matrix(rep.second)}",
            ],
        )
    ]
    t1 = complete_band(u, [-1, 0, 0])
    h = detect_hankel(t1.to_dense() @ flip_matrix(u.n))
    cor = hankel_similarity_report(h, u)
    with_cb = cor.cb_power_checks or {}
    holds = [k for k, ok in sorted(with_cb.items()) if ok]
    rows.append(
        Row(
            "H^-1 C_b^k H = Cbar_l^k (C_b variant)",
            "KNOWN" if not all(with_cb.values()) else "PASS",
            f"holds only for k in {holds}; H^-1 C_t^k H = Cbar_l^k holds for all k: {all(cor.power_checks.values())}",
        )
    )
    return rows


def run_selftest(seed: int = 2024, count: int = 25) -> tuple[list[Row], bool]:
    rows: list[Row] = []
    for name, ok, detail in _golden(WORKED_U):
        rows.append(Row(f"[worked] {name}", "PASS" if ok else "FAIL", detail))
    rng = random.Random(seed)
    for name, fn in PROPERTIES:
        try:
            ok, detail = _batch(rng, count, fn)
        except Exception as exc:  # a raised check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append(Row(name, "PASS" if ok else "FAIL", detail))
    rows.extend(_known_issues(WORKED_U))
    return rows, all(r.status != "FAIL" for r in rows)


def render(rows: list[Row]) -> list[str]:
    width = max(len(r.name) for r in rows)
    out = []
    for r in rows:
        out.append(f"{r.status:<5}  {r.name:<{width}}  {r.detail}".rstrip())
        out.extend(f"       {e}" for e in r.evidence)
    return out
