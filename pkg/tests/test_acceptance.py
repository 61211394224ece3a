"""Acceptance suite: one PASS/FAIL line per criterion.

Each test draws its own seeded instances and checks against independent
dense oracles rather than reusing the self-test families.
"""
from __future__ import annotations

import io
import math
import random
import time
from typing import Callable

import pytest

from companionmat import bezoutian, randgen, structured
from companionmat.bezoutian import (
    bez_hankel_gs_literal,
    bez_hankel_oracle,
    bez_toeplitz_gs,
    bez_toeplitz_oracle,
    hankel_inverse_structured,
    toeplitz_inverse_structured,
)
from companionmat.cli import run
from companionmat.companion import Kind, companion, companion_power
from companionmat.errors import SingularMatrixError
from companionmat.exactmat import Matrix, PolyVec, count_mults, flip_matrix, flip_secondary, mat_inverse, rank
from companionmat.extension import (
    ExtensionSpec,
    analyze_uplus_extension,
    bezoutian_extension_pair,
    check_extension_kernel,
    extend_full,
    extend_vertical,
    extended_band,
    verify_structure_preservation,
)
from companionmat.similarity import hankel_similarity_report, toeplitz_similarity_report
from companionmat.statespace import (
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
from companionmat.structured import HankelBand, ToeplitzBand, build_u_plus, del_toeplitz, detect_hankel
from companionmat.textio import format_matrix

INSTANCES = 200
SEED = 20240


@pytest.fixture
def emit(capsys):
    def _emit(label: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\n[acceptance] {'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
    return _emit


def sweep(fn: Callable[[random.Random, int], bool], lo: int, hi: int, seed: int) -> tuple[bool, str]:
    """Run ``fn`` on INSTANCES instances, cycling n through [lo, hi]."""
    rng = random.Random(seed)
    for i in range(INSTANCES):
        n = lo + i % (hi - lo + 1)
        if not fn(rng, n):
            return False, f"first failure at instance {i} (n={n})"
    return True, f"{INSTANCES} instances, n in [{lo},{hi}]"


def random_spec(rng: random.Random, hankel: bool = False) -> ExtensionSpec:
    k, l = sorted((rng.randint(-4, 4), rng.randint(-4, 4)), reverse=True)
    s, t = sorted((rng.randint(-4, 4), rng.randint(-4, 4)), reverse=True)
    return ExtensionSpec(k, l, s, t, hankel)


# worked example


def test_worked_example_byte_exact(emit):
    start = time.perf_counter()
    u = PolyVec.parse("4,3,2,1")
    ct, cr, cl = companion(u, Kind.TOP), companion(u, Kind.RIGHT), companion(u, Kind.LEFT)
    t1 = structured.complete_band(u, [-1, 0, 0]).to_dense()
    t = t1 @ cl
    up = build_u_plus(u).to_dense()
    checks = {
        "C_t": format_matrix(ct) == "-2,-3,-4; 1,0,0; 0,1,0",
        "C_r": format_matrix(cr) == "0,0,-4; 1,0,-3; 0,1,-2",
        "T1": format_matrix(t1) == "0,0,-1; 1/4,0,0; -3/16,1/4,0",
        "T1 C_l": format_matrix(t) == "1/4,0,0; -3/16,1/4,0; 1/64,-3/16,1/4",
        "U_+ T = I": up @ t == Matrix.identity(3) and t @ up == Matrix.identity(3),
    }
    elapsed = time.perf_counter() - start
    ok = all(checks.values()) and elapsed < 1.0
    failed = [k for k, v in checks.items() if not v]
    emit("A1 worked example C_t, C_r, T1, T1 C_l, U_+ T = I", ok,
         f"({elapsed:.3f} s{'; failed: ' + ', '.join(failed) if failed else ''})")
    assert ok


# property families


def _companion_relations(rng, n):
    u = randgen.polyvec(rng, n)
    c = {(k, b): companion(u, k, b) for k in Kind for b in (False, True)}
    eye = Matrix.identity(n)
    ok = True
    for b in (False, True):
        ok &= c[(Kind.TOP, b)] @ c[(Kind.BOTTOM, b)] == eye == c[(Kind.BOTTOM, b)] @ c[(Kind.TOP, b)]
        ok &= c[(Kind.LEFT, b)] @ c[(Kind.RIGHT, b)] == eye == c[(Kind.RIGHT, b)] @ c[(Kind.LEFT, b)]
        ok &= flip_secondary(c[(Kind.TOP, b)]) == c[(Kind.RIGHT, b)]
        ok &= flip_secondary(c[(Kind.BOTTOM, b)]) == c[(Kind.LEFT, b)]
    ok &= c[(Kind.TOP, False)].T == c[(Kind.LEFT, True)]
    ok &= c[(Kind.BOTTOM, False)].T == c[(Kind.RIGHT, True)]
    ok &= c[(Kind.LEFT, False)].T == c[(Kind.TOP, True)]
    ok &= c[(Kind.RIGHT, False)].T == c[(Kind.BOTTOM, True)]
    return ok


def _power_similarities(rng, n):
    u = randgen.polyvec(rng, n)
    up = build_u_plus(u).to_dense()
    upi = mat_inverse(up)
    ok = all(up @ companion_power(u, Kind.TOP, k) @ upi == companion_power(u, Kind.RIGHT, k) for k in range(-3, 4))
    if n >= 2:
        t = randgen.kernel_toeplitz(rng, u).to_dense()
        ti = mat_inverse(t)
        ok &= all(ti @ companion_power(u, Kind.TOP, k) @ t == companion_power(u, Kind.RIGHT, k) for k in range(-3, 4))
    return ok


def _toeplitz_equivalence(rng, n):
    u = randgen.polyvec(rng, n)
    t = randgen.kernel_toeplitz(rng, u)
    pos = toeplitz_similarity_report(t, u)
    if not (pos.all_true and all(pos.power_checks.values())):
        return False
    band = list(t.band)
    band[rng.randrange(len(band))] += rng.randint(1, 5)
    t2 = ToeplitzBand(band)
    if rank(t2.to_dense()) < n:
        return True
    in_kernel = not any(del_toeplitz(t2).matvec(u.coeffs))
    neg = toeplitz_similarity_report(t2, u)
    # all three statements must agree with the direct kernel test
    return neg.stmt1 == neg.stmt2 == neg.stmt3 == in_kernel


_cb_variant_probe: dict[str, int] = {"instances": 0, "only_k0": 0}


def _hankel_equivalence(rng, n):
    u = randgen.polyvec(rng, n)
    t = randgen.kernel_toeplitz(rng, u)
    h = detect_hankel(t.to_dense() @ flip_matrix(n))
    rep = hankel_similarity_report(h, u)
    with_cb = rep.cb_power_checks or {}
    _cb_variant_probe["instances"] += 1
    if [k for k, ok in with_cb.items() if ok] == [0]:
        _cb_variant_probe["only_k0"] += 1
    return rep.stmt1 and rep.stmt2 and rep.stmt3 and all(rep.power_checks.values())


def _bezoutian_forms(rng, n):
    a, b = randgen.polyvec(rng, n, ends=False), randgen.polyvec(rng, n, ends=False)
    if bez_toeplitz_gs(a, b) != bez_toeplitz_oracle(a, b):
        return False
    (p, q), (r, s) = randgen.unimodular(rng)
    a1 = PolyVec(p * x + r * y for x, y in zip(a, b))
    b1 = PolyVec(q * x + s * y for x, y in zip(a, b))
    return bez_toeplitz_oracle(a1, b1) == bez_toeplitz_oracle(a, b) and bez_hankel_oracle(a1, b1) == bez_hankel_oracle(a, b)


def _structured_inverse(rng, n):
    t = randgen.band(rng, n)
    dense = t.to_dense()
    if rank(dense) < n:
        with pytest.raises(SingularMatrixError):
            toeplitz_inverse_structured(t)
        return True
    h = HankelBand(t.band)
    return toeplitz_inverse_structured(t) == mat_inverse(dense) and hankel_inverse_structured(h) == mat_inverse(h.to_dense())


def _bezoutian_similarity(rng, n):
    u, v = randgen.coprime_pair(rng, n)
    bt = bez_toeplitz_oracle(u, v)
    bti = mat_inverse(bt)
    return all(
        bt @ companion_power(w, Kind.TOP, k) @ bti == companion_power(w, Kind.RIGHT, k)
        for w in (u, v)
        for k in range(-2, 3)
    )


def _extension_kernel(rng, n):
    u = randgen.polyvec(rng, n)
    return check_extension_kernel(randgen.invertible_matrix(rng, n), u, random_spec(rng, rng.random() < 0.5))


def _extension_structure(rng, n):
    u = randgen.polyvec(rng, n)
    t = randgen.kernel_toeplitz(rng, u)
    band = verify_structure_preservation(t, u, random_spec(rng))
    ok = all(band.a(m) == t.a(m) for m in band.overlap(n))
    h = detect_hankel(t.to_dense() @ flip_matrix(n))
    hband = verify_structure_preservation(h, u, random_spec(rng, True))
    return ok and all(hband.a(m) == h.a(m) for m in hband.overlap(n))


def _extension_identities(rng, n):
    u = randgen.polyvec(rng, n)
    a = randgen.matrix(rng, n)
    sp = random_spec(rng)
    grid = extend_full(a, u, sp).matrix
    eye = Matrix.identity(n)
    left = extend_vertical(eye, u, sp.k, sp.l)
    right = extend_full(eye, u, ExtensionSpec(0, 0, sp.s, sp.t)).matrix
    i, j = rng.randint(-2, 2), rng.randint(-2, 2)
    gen = companion_power(u, Kind.TOP, i) @ a @ companion_power(u, Kind.RIGHT, j)
    return grid == left @ a @ right and grid == extend_full(gen, u, sp.shifted(i, j)).matrix


def _bezoutian_central_band(rng, n):
    u, v = randgen.coprime_pair(rng, n)
    sp = random_spec(rng)
    gu, gv = bezoutian_extension_pair(u, v, sp)
    bu, bv = extended_band(gu), extended_band(gv)
    binv = mat_inverse(bez_toeplitz_oracle(u, v))
    return all(bu.a(m) == bv.a(m) for m in bu.overlap(n)) and all(
        bu.a(m) == binv[max(m, 0), max(-m, 0)] for m in bu.overlap(n))


def _state_space(rng, n):
    u, v = randgen.coprime_pair(rng, n)
    sys_ = SisoSystem(u, v)
    p, q = rng.randint(1, 5), rng.randint(0, 4)
    b = [randgen.rational(rng) for _ in range(n + p + q)]
    xs, ys = b_to_io(b, sys_)
    ctl = controller_form(sys_)
    tr = simulate(ctl, b[:n], xs)
    ok = all(tr.states[k] == tuple(b[k:k + n]) for k in range(len(xs) + 1)) and tr.outputs == ys
    bt = bez_toeplitz_oracle(u, v)
    ok &= ctl.D == tuple(x / u[0] for x in bt.row(0))
    m = p + n
    lower = Matrix([[(u[i - j] if 0 <= i - j <= n else 0) for j in range(m)] for i in range(m)])
    ok &= (build_F(u, m) * (1 / u[0])) @ lower == Matrix.identity(m)
    ok &= long_state(sys_, b[:n], xs) == tuple(b)
    bp = bt.matvec(b[:n])
    tr2 = simulate(transformed_form(sys_), bp, xs)
    if q:
        ok &= late_state(sys_, bp, xs[:q]) == tr2.states[q]
    ok &= mixed_state(sys_, bp, xs, q) == tuple(b[q:])
    return ok


FAMILIES = [
    ("companion inverse, flip and transpose relations", _companion_relations, 1, 8),
    ("U_+ and del-kernel Toeplitz conjugate C_t^k to C_r^k, k in [-3,3]", _power_similarities, 1, 8),
    ("Toeplitz similarity equivalence, positives and perturbed negatives", _toeplitz_equivalence, 2, 8),
    ("Hankel similarity via H = TJ", _hankel_equivalence, 2, 8),
    ("Toeplitz Bezoutian product form and det-1 invariance", _bezoutian_forms, 1, 8),
    ("structured Toeplitz and Hankel inverse = dense inverse", _structured_inverse, 1, 8),
    ("B_T C_t(w)^k B_T^-1 = C_r(w)^k for w = u, v, k in [-2,2]", _bezoutian_similarity, 1, 8),
    ("extension rank n and kernel basis, specs in [-4,4]^4", _extension_kernel, 1, 8),
    ("extension preserves Toeplitz and Hankel structure", _extension_structure, 2, 8),
    ("extension factorization and generator shift", _extension_identities, 1, 8),
    ("Bezoutian-driven extensions share the central band", _bezoutian_central_band, 1, 8),
    ("state space windows, D row, F_p inverse, closed forms", _state_space, 1, 8),
]


@pytest.mark.parametrize("label,fn,lo,hi", FAMILIES, ids=[f[1].__name__.strip("_") for f in FAMILIES])
def test_property_family(emit, label, fn, lo, hi):
    start = time.perf_counter()
    ok, detail = sweep(fn, lo, hi, SEED + FAMILIES.index((label, fn, lo, hi)))
    if fn is _hankel_equivalence:
        detail += (f"; C_b variant held only at k=0 in "
                   f"{_cb_variant_probe['only_k0']}/{_cb_variant_probe['instances']}")
    emit(f"A2 {label}", ok, f"({detail}, {time.perf_counter() - start:.1f} s)")
    assert ok


def test_structured_inverse_large_and_dense_free(emit, monkeypatch):
    rng = random.Random(SEED)
    ok = True
    for n in (10, 20, 30, 40, 50):
        t = randgen.band(rng, n)
        expected = mat_inverse(t.to_dense())
        h = HankelBand(t.band)
        expected_h = mat_inverse(h.to_dense())

        def forbidden(*_args, **_kwargs):
            raise AssertionError("dense elimination inside the structured path")

        with monkeypatch.context() as mp:
            for mod in (bezoutian, structured):
                for name in ("mat_inverse", "rank", "solve"):
                    if hasattr(mod, name):
                        mp.setattr(mod, name, forbidden)
            got, got_h = toeplitz_inverse_structured(t), hankel_inverse_structured(h)
        ok &= got == expected and got_h == expected_h
    emit("A2 structured inverse = dense inverse for n up to 50, no dense inversion on the structured path", ok)
    assert ok


def test_identity_block_display_and_uplus_features(emit):
    u = PolyVec.parse("4,3,2,1")
    g = extend_full(Matrix.identity(3), u, ExtensionSpec(3, -3, 3, -3))
    p = lambda kind, k: companion_power(u, kind, k)
    rows = [(Kind.TOP, 3), (None, 0), (Kind.BOTTOM, 3)]
    cols = [(Kind.LEFT, 3), (None, 0), (Kind.RIGHT, 3)]
    ok = g.matrix.shape == (9, 9)
    for r, (rk, re) in enumerate(rows):
        for c, (ck, ce) in enumerate(cols):
            left = p(rk, re) if rk else Matrix.identity(3)
            right = p(ck, ce) if ck else Matrix.identity(3)
            ok &= g.matrix.block(3 * r, 3 * r + 3, 3 * c, 3 * c + 3) == left @ right
    rep = analyze_uplus_extension(u, ExtensionSpec(3, 0, 3, -3))
    ok &= bool(rep.zero_band and rep.block_identities)
    emit("A2 identity-generator 9x9 block display and U_+^-1 extension features at n=3", ok,
         f"(lower {rep.lower_size}, upper {rep.upper_size})")
    assert ok


# documented discrepancy


def test_hankel_product_forms_flagged_known(emit):
    out, err = io.StringIO(), io.StringIO()
    code = run(["selftest"], out, err)
    text = out.getvalue()
    u, v = PolyVec.parse("4,3,2,1"), PolyVec.parse("1,1,1,1")
    lit = bez_hankel_gs_literal(u, v)
    known = [ln for ln in text.splitlines() if ln.startswith("KNOWN") and "Hankel Bezoutian" in ln]
    shows_all = all(f"{tag} = {format_matrix(m)}" in text
                    for tag, m in (("oracle     ", lit.oracle), ("first form ", lit.first), ("second form", lit.second)))
    oracle_ok = True
    rng = random.Random(SEED)
    for i in range(INSTANCES):
        a, b = randgen.coprime_pair(rng, 1 + i % 8)
        bh = bez_hankel_oracle(a, b)
        oracle_ok &= bh == bh.T
        detect_hankel(mat_inverse(bh))
    bh = bez_hankel_oracle(u, v)
    oracle_ok &= bh == bh.T
    detect_hankel(mat_inverse(bh))
    ok = code == 0 and len(known) == 1 and shows_all and not (lit.first_matches and lit.second_matches) and oracle_ok
    emit("A3 Hankel product forms shown next to the oracle and flagged KNOWN; oracle symmetric with Hankel inverse", ok)
    assert ok


# performance


def test_structured_inverse_quadratic_count(emit):
    rng = random.Random(SEED)
    ratios = {}
    for n in (25, 50, 100, 200):
        while True:
            t = ToeplitzBand([rng.randint(-9, 9) for _ in range(2 * n - 1)])
            try:
                with count_mults() as c:
                    toeplitz_inverse_structured(t)
                break
            except SingularMatrixError:
                continue
        ratios[n] = c.mults / n ** 2
    dense = {}
    for n in (25, 50):
        t = ToeplitzBand([rng.randint(-9, 9) for _ in range(2 * n - 1)])
        with count_mults() as c:
            mat_inverse(t.to_dense())
        dense[n] = c.mults
    structured_exp = math.log(ratios[200] * 200 ** 2 / (ratios[25] * 25 ** 2)) / math.log(8)
    dense_exp = math.log(dense[50] / dense[25]) / math.log(2)
    bound = 20
    ok = all(r <= bound for r in ratios.values()) and structured_exp < 2.1 and dense_exp > 2.8
    detail = ", ".join(f"n={n}: {r:.2f} n^2" for n, r in ratios.items())
    emit("A4 structured inverse multiplications <= 20 n^2", ok,
         f"({detail}; growth exponent {structured_exp:.2f} vs dense {dense_exp:.2f})")
    assert ok
