from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from companionmat.exactmat import Matrix, PolyVec, mat_inverse
from companionmat.structured import build_u_plus

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example]
)
settings.load_profile("default")


def rationals(lo: int = -9, hi: int = 9, maxden: int = 4, nonzero: bool = False):
    s = st.builds(Fraction, st.integers(lo, hi), st.integers(1, maxden))
    return s.filter(bool) if nonzero else s


@st.composite
def polyvecs(draw, min_n: int = 1, max_n: int = 6, ends: bool = True, n: int | None = None):
    n = draw(st.integers(min_n, max_n)) if n is None else n
    coeffs = draw(st.lists(rationals(), min_size=n + 1, max_size=n + 1))
    if ends:
        coeffs[0] = draw(rationals(nonzero=True))
        coeffs[-1] = draw(rationals(nonzero=True))
    return PolyVec(coeffs)


@st.composite
def polyvec_pairs(draw, min_n: int = 1, max_n: int = 6, ends: bool = True):
    n = draw(st.integers(min_n, max_n))
    return draw(polyvecs(n=n, ends=ends)), draw(polyvecs(n=n, ends=ends))


@st.composite
def square_matrices(draw, min_n: int = 1, max_n: int = 5, n: int | None = None):
    n = draw(st.integers(min_n, max_n)) if n is None else n
    return Matrix(draw(st.lists(st.lists(rationals(), min_size=n, max_size=n), min_size=n, max_size=n)))


@pytest.fixture
def u4321() -> PolyVec:
    return PolyVec.parse("4,3,2,1")


@pytest.fixture
def v1111() -> PolyVec:
    return PolyVec.parse("1,1,1,1")


@pytest.fixture
def uplus_inv(u4321) -> Matrix:
    return mat_inverse(build_u_plus(u4321).to_dense())


def M(text: str) -> Matrix:
    """Matrix from 'a,b; c,d' text."""
    return Matrix([x.strip() for x in row.split(",")] for row in text.split(";"))
