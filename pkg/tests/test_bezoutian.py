from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from companionmat.bezoutian import (
    bez_hankel_gs_literal,
    bez_hankel_oracle,
    bez_toeplitz_gs,
    bez_toeplitz_oracle,
    hankel_inverse_structured,
    q_transform,
    scalar_product_check,
    toeplitz_inverse_structured,
)
from companionmat.errors import DimensionError, SingularMatrixError
from companionmat.exactmat import Matrix, PolyVec, flip_matrix, flip_secondary, is_coprime, mat_inverse, rank
from companionmat.randgen import unimodular
from companionmat.structured import HankelBand, ToeplitzBand, build_u_plus, detect_hankel, detect_toeplitz

from conftest import M, polyvec_pairs, rationals

BT_WORKED = "3,2,1; 2,4,2; 1,2,3"
BH_WORKED = "-1,-2,-3; -2,-4,-2; -3,-2,-1"


def test_toeplitz_oracle_examples(u4321, v1111):
    assert bez_toeplitz_oracle(u4321, v1111) == M(BT_WORKED)
    assert bez_toeplitz_oracle(u4321, PolyVec.parse("0,0,0,1")) == build_u_plus(u4321).to_dense()
    assert bez_toeplitz_oracle(u4321, u4321) == Matrix.zeros(3, 3)
    with pytest.raises(DimensionError):
        bez_toeplitz_oracle(u4321, PolyVec.parse("1,1"))


def test_toeplitz_gs_examples(u4321, v1111):
    assert bez_toeplitz_gs(u4321, v1111) == M(BT_WORKED)
    assert bez_toeplitz_gs(u4321, u4321) == Matrix.zeros(3, 3)


def test_hankel_oracle_examples(u4321, v1111):
    bh = bez_hankel_oracle(u4321, v1111)
    assert bh == M(BH_WORKED)
    assert bez_hankel_oracle(u4321, u4321) == Matrix.zeros(3, 3)
    assert bez_hankel_oracle(v1111, u4321) == -bh


def test_hankel_oracle_first_column_spot_check(u4321, v1111):
    # column j=0 is the coefficient list of (u(x) v(0) - u(0) v(x)) / x
    num = [u4321[i] * v1111[0] - u4321[0] * v1111[i] for i in range(4)]
    assert bez_hankel_oracle(u4321, v1111).col(0) == tuple(num[1:])


def test_hankel_literal_forms_disagree_with_oracle(u4321, v1111):
    rep = bez_hankel_gs_literal(u4321, v1111)
    assert rep.first == M("0,0,-3; 0,-3,-4; -3,-4,-3")
    assert rep.second == M("-3,-4,-3; -4,-3,0; -3,0,0")
    assert not rep.first_matches and not rep.second_matches
    assert rep.forms_flip_related
    assert rep.summary().startswith("MISMATCH")
    zero = bez_hankel_gs_literal(u4321, u4321)
    assert zero.first == zero.second == Matrix.zeros(3, 3)


def test_q_transform_examples(u4321, v1111):
    q = q_transform(u4321, v1111)
    assert q == M(BH_WORKED)
    assert q_transform(u4321, u4321) == Matrix.zeros(3, 3)
    assert rank(q) == 3


def test_structured_inverse_examples(u4321, uplus_inv):
    t = detect_toeplitz(uplus_inv)
    assert toeplitz_inverse_structured(t) == build_u_plus(u4321).to_dense()
    eye = detect_toeplitz(Matrix.identity(4))
    assert toeplitz_inverse_structured(eye) == Matrix.identity(4)
    j = detect_hankel(flip_matrix(3))
    assert hankel_inverse_structured(j) == flip_matrix(3)
    h = detect_hankel(uplus_inv @ flip_matrix(3))
    assert hankel_inverse_structured(h) == mat_inverse(h.to_dense())


def test_structured_inverse_singular():
    with pytest.raises(SingularMatrixError):
        toeplitz_inverse_structured(ToeplitzBand.parse("1,2,1,2,1"))
    with pytest.raises(SingularMatrixError):
        toeplitz_inverse_structured(ToeplitzBand.parse("0"))


def test_scalar_check_rejects_non_multiple(u4321, v1111):
    t = ToeplitzBand.parse("1,2,3,4,5")
    assert scalar_product_check(bez_toeplitz_oracle(u4321, v1111), u4321, v1111, t) is None


@given(polyvec_pairs(max_n=8, ends=False))
def test_gs_equals_oracle(pair):
    u, v = pair
    assert bez_toeplitz_gs(u, v) == bez_toeplitz_oracle(u, v)


@given(polyvec_pairs(max_n=8, ends=False))
def test_toeplitz_bezoutian_is_persymmetric(pair):
    bt = bez_toeplitz_oracle(*pair)
    assert flip_secondary(bt) == bt


def test_toeplitz_bezoutian_not_symmetric_in_general():
    # so flip(B_T) = B_T^T fails outside symmetric cases
    bt = bez_toeplitz_oracle(PolyVec.parse("1,2,3"), PolyVec.parse("1,0,2"))
    assert bt == M("-1,-2; 4,-1")
    assert flip_secondary(bt) != bt.T


def test_hankel_bezoutian_differs_from_q_in_general():
    u, v = PolyVec.parse("1,2,3"), PolyVec.parse("1,0,2")
    assert bez_hankel_oracle(u, v) == M("2,1; 1,-4")
    assert q_transform(u, v) == M("-4,1; 1,2")


@given(polyvec_pairs(max_n=6, ends=False))
def test_hankel_oracle_symmetric_and_literal_forms_flip_related(pair):
    bh = bez_hankel_oracle(*pair)
    assert bh.T == bh
    rep = bez_hankel_gs_literal(*pair)
    assert rep.forms_flip_related


@given(polyvec_pairs(max_n=6))
def test_coprime_bezoutians_invert_to_structured(pair):
    u, v = pair
    assume(is_coprime(u, v))
    detect_toeplitz(mat_inverse(bez_toeplitz_oracle(u, v)))
    detect_hankel(mat_inverse(bez_hankel_oracle(u, v)))


@given(polyvec_pairs(max_n=6, ends=False), st.randoms(use_true_random=False))
def test_unimodular_invariance(pair, rng):
    a, b = pair
    (p, q), (r, s) = unimodular(rng)
    assert p * s - q * r == 1
    a1 = PolyVec(p * x + r * y for x, y in zip(a, b))
    b1 = PolyVec(q * x + s * y for x, y in zip(a, b))
    assert bez_toeplitz_oracle(a1, b1) == bez_toeplitz_oracle(a, b)
    assert bez_hankel_oracle(a1, b1) == bez_hankel_oracle(a, b)


@given(st.integers(1, 7).flatmap(lambda n: st.lists(rationals(), min_size=2 * n - 1, max_size=2 * n - 1)))
def test_structured_inverse_matches_dense(band):
    t = ToeplitzBand(band)
    dense = t.to_dense()
    if rank(dense) < t.n:
        with pytest.raises(SingularMatrixError):
            toeplitz_inverse_structured(t)
        return
    inv = toeplitz_inverse_structured(t)
    assert inv == mat_inverse(dense)
    assert flip_secondary(inv) == inv
    h = HankelBand(band)
    hinv = hankel_inverse_structured(h)
    assert hinv == mat_inverse(h.to_dense())
    assert hinv.T == hinv
