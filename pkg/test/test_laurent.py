import pytest
from hypothesis import given
from hypothesis import strategies as st

from motivic_verifier.algebra import Bidegree, Element
from motivic_verifier.laurent import (
    MOD2_MOTIVIC,
    LaurentExponents,
    NotInRingError,
    deficit,
    mod2_motivic_basis,
)


@pytest.mark.parametrize(
    "a, b, c, expected",
    [
        (0, 0, 0, 0),
        (1, 0, 0, 0),
        (2, 0, 0, 2),
        (3, 0, 0, 2),
        (0, 2, 0, 1),
        (1, 1, 0, 1),
        (1, 0, 1, 1),
        (0, 1, 1, 1),
        (0, 0, 2, 2),
        (2, 1, 1, 3),
    ],
)
def test_deficit(a, b, c, expected):
    assert deficit(a, b, c) == expected


def test_deficit_rejects_negative_exponents():
    with pytest.raises(ValueError):
        deficit(-1, 0, 0)


small = st.integers(min_value=0, max_value=5)


@given(small, small, small, small, small, small)
def test_deficit_is_superadditive(a1, b1, c1, a2, b2, c2):
    assert deficit(a1 + a2, b1 + b2, c1 + c2) >= deficit(a1, b1, c1) + deficit(a2, b2, c2)


@pytest.mark.parametrize(
    "deg, dim",
    [
        (Bidegree(0, 0), 1),
        (Bidegree(0, 3), 1),
        (Bidegree(3, 2), 1),
        (Bidegree(4, 2), 2),
        (Bidegree(4, 1), 0),
        (Bidegree(8, 4), 3),
        *[(Bidegree(8, q), 4) for q in range(5, 13)],
    ],
)
def test_mod2_motivic_dimensions(deg, dim):
    assert len(mod2_motivic_basis(deg)) == dim


def test_basis_at_4_2():
    basis = set(mod2_motivic_basis(Bidegree(4, 2)))
    assert basis == {
        LaurentExponents(-2, 2, 0, 0).monomial(),
        LaurentExponents(0, 0, 0, 0, y=1).monomial(),
    }


def test_basis_requires_a_weight():
    with pytest.raises(ValueError):
        mod2_motivic_basis(Bidegree(4))


def test_membership():
    assert MOD2_MOTIVIC.is_member(LaurentExponents(-1, 1, 0, 1).monomial())
    assert not MOD2_MOTIVIC.is_member(LaurentExponents(-2, 1, 0, 1).monomial())
    assert MOD2_MOTIVIC.is_member(LaurentExponents(-2, 2, 0, 0, y=1).monomial())
    assert not MOD2_MOTIVIC.is_member(LaurentExponents(-1, 2, 0, 0, y=1).monomial())
    assert not MOD2_MOTIVIC.is_member(LaurentExponents(0, 0, 0, 0, y=2).monomial())


def test_normalize_drops_killed_y_products():
    y_w3 = Element.from_monomial(LaurentExponents(0, 0, 1, 0, y=1).monomial(), 1, 2)
    w3 = Element.from_monomial(LaurentExponents(0, 0, 1, 0).monomial(), 1, 2)
    assert MOD2_MOTIVIC.normalize(y_w3 + w3) == w3


def test_normalize_rejects_non_members():
    outside = Element.from_monomial(LaurentExponents(-1, 0, 0, 0).monomial(), 1, 2)
    with pytest.raises(NotInRingError):
        MOD2_MOTIVIC.normalize(outside)


def test_basis_degrees_match():
    for p in range(0, 13):
        for q in range(0, 9):
            for m in mod2_motivic_basis(Bidegree(p, q)):
                assert MOD2_MOTIVIC.degree(m) == Bidegree(p, q)
                assert MOD2_MOTIVIC.is_member(m)
