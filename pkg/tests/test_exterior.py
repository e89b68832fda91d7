"""Exterior forms: parsing, wedge products, bivector invariants."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nil7.errors import FormError
from nil7.exterior import (
    KForm,
    bivector_from_matrix,
    bivector_matrix,
    bivector_rank,
    form_from_lambda2,
    lambda2_coordinates,
    parse_form,
    top_coefficient,
    wedge_square,
)
from nil7.fields import PrimeField, Rationals

Q = Rationals()
F5 = PrimeField(5)


def rand_form(field, rng, n, k, density=0.5):
    from itertools import combinations

    phi = KForm(field, n, k)
    for idx in combinations(range(1, n + 1), k):
        if rng.random() < density:
            c = field.coerce(rng.randint(-4, 4))
            if not field.is_zero(c):
                phi._accumulate(idx, c)
    return phi


def test_parse_form_basic():
    phi = parse_form(Q, 7, "x1^x2 + 3 x3^x4 - 1/2 x5^x7", degree=2)
    assert phi.coeffs[(1, 2)] == 1
    assert phi.coeffs[(3, 4)] == 3
    assert phi.coeffs[(5, 7)] == Fraction(-1, 2)
    assert parse_form(Q, 7, "0", degree=2).is_zero()


def test_parse_form_normalizes_index_order():
    assert parse_form(Q, 7, "x2^x1") == parse_form(Q, 7, "- x1^x2")
    with pytest.raises(FormError):
        parse_form(Q, 7, "x3^x3")


def test_parse_form_rejects_garbage():
    with pytest.raises(FormError):
        parse_form(Q, 7, "x1^x9")
    with pytest.raises(FormError):
        parse_form(Q, 7, "x1 + bananas")


def test_str_parse_roundtrip():
    rng = random.Random(2)
    for _ in range(40):
        phi = rand_form(Q, rng, 7, 2)
        assert parse_form(Q, 7, str(phi), degree=2) == phi


def test_wedge_graded_anticommutative():
    rng = random.Random(4)
    for _ in range(25):
        p, q = rng.choice([(1, 1), (1, 2), (2, 2), (2, 3)])
        a = rand_form(Q, rng, 7, p)
        b = rand_form(Q, rng, 7, q)
        sign = Q.from_int((-1) ** (p * q))
        assert a.wedge(b) == b.wedge(a).scale(sign)


def test_wedge_associative_and_bilinear():
    rng = random.Random(6)
    for _ in range(15):
        a = rand_form(Q, rng, 7, 1)
        b = rand_form(Q, rng, 7, 2)
        c = rand_form(Q, rng, 7, 2)
        assert a.wedge(b.wedge(c)) == a.wedge(b).wedge(c)
        assert a.wedge(b + c) == a.wedge(b) + a.wedge(c)


@pytest.mark.parametrize("field", [Q, F5])
def test_bivector_matrix_antisymmetric_even_rank(field):
    rng = random.Random(8)
    for _ in range(40):
        phi = rand_form(field, rng, 7, 2)
        M = bivector_matrix(phi)
        assert M.transpose() == M.scale(field.from_int(-1))
        r = bivector_rank(phi)
        assert r == M.rank()
        assert r % 2 == 0
        assert bivector_from_matrix(M) == phi


def test_rank_vs_wedge_square():
    rng = random.Random(10)
    for _ in range(40):
        phi = rand_form(Q, rng, 6, 2)
        # rank >= 4 exactly when the wedge square is nonzero
        assert (bivector_rank(phi) >= 4) == (not wedge_square(phi).is_zero())


def test_top_coefficient():
    phi = parse_form(Q, 4, "x1^x2 + x3^x4", degree=2)
    top = wedge_square(phi)
    assert top_coefficient(top) == 2


def test_lambda2_coordinate_roundtrip():
    rng = random.Random(12)
    for _ in range(20):
        phi = rand_form(Q, rng, 7, 2)
        coords = lambda2_coordinates(phi)
        assert len(coords) == 21
        assert form_from_lambda2(Q, 7, coords) == phi


@settings(max_examples=40)
@given(st.integers(-8, 8), st.integers(-8, 8))
def test_scale_compatible_with_rank(c1, c2):
    phi = parse_form(Q, 7, "x1^x2 + x3^x4")
    c = Fraction(c1)
    scaled = phi.scale(c)
    if c1 == 0:
        assert scaled.is_zero()
    else:
        assert bivector_rank(scaled) == bivector_rank(phi)
