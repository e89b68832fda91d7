"""Field arithmetic, square classes, and square roots."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nil7.errors import FieldError, NotASquareError
from nil7.fields import (
    AlgClosedModel,
    PrimeField,
    QuadraticExtension,
    Rationals,
    RealsModel,
    field_from_descriptor,
    field_from_name,
    squarefree_part,
)

Q = Rationals()
F5 = PrimeField(5)
F13 = PrimeField(13)

nonzero_fracs = st.fractions(
    min_value=-100, max_value=100, max_denominator=30
).filter(lambda x: x != 0)
fracs = st.fractions(min_value=-100, max_value=100, max_denominator=30)


@given(fracs, fracs, fracs)
def test_rationals_ring_axioms(x, y, z):
    assert Q.mul(x, Q.add(y, z)) == Q.add(Q.mul(x, y), Q.mul(x, z))
    assert Q.sub(x, y) == Q.add(x, Q.neg(y))


@given(nonzero_fracs)
def test_rationals_inverse(x):
    assert Q.mul(x, Q.inv(x)) == Q.one()


@given(st.integers(1, 12), st.integers(1, 12))
def test_rationals_square_class_is_squarefree(n, d):
    x = Fraction(n, d)
    c = Q.square_class(x)
    assert c.denominator == 1
    assert squarefree_part(c.numerator) == c.numerator
    # x / class rep is a square
    assert Q.is_square(Q.div(x, c))


def test_squarefree_part_small():
    assert squarefree_part(1) == 1
    assert squarefree_part(4) == 1
    assert squarefree_part(8) == 2
    assert squarefree_part(-18) == -2
    assert squarefree_part(360) == 10


def test_rational_sqrt():
    assert Q.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(NotASquareError):
        Q.sqrt(Fraction(2))
    with pytest.raises(NotASquareError):
        Q.sqrt(Fraction(-1))


def test_reals_model_square_classes():
    R = RealsModel()
    assert R.is_square(Fraction(2))
    assert not R.is_square(Fraction(-3))
    assert R.square_class_reps() == [Fraction(1), Fraction(-1)]
    # positives are squares abstractly, but only rational roots exist here
    with pytest.raises(NotASquareError):
        R.sqrt(Fraction(2))


def test_algclosed_model_square_classes():
    C = AlgClosedModel()
    assert C.is_square(Fraction(-7))
    assert C.square_class_reps() == [Fraction(1)]


def test_is_square_undefined_at_zero():
    for f in (Q, F5, RealsModel(), AlgClosedModel()):
        with pytest.raises(FieldError):
            f.is_square(f.zero())


@pytest.mark.parametrize("p", [3, 5, 7, 13, 101])
def test_prime_field_squares_match_bruteforce(p):
    f = PrimeField(p)
    squares = {x * x % p for x in range(1, p)}
    for x in range(1, p):
        assert f.is_square(x) == (x in squares)
        if x in squares:
            r = f.sqrt(x)
            assert r * r % p == x
        else:
            with pytest.raises(NotASquareError):
                f.sqrt(x)
    assert len(f.square_class_reps()) == 2


def test_prime_field_rejects_bad_modulus():
    with pytest.raises(FieldError):
        PrimeField(2)
    with pytest.raises(FieldError):
        PrimeField(9)


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_quadratic_extension_arithmetic(u1, v1, u2, v2):
    ext = QuadraticExtension(F5, 2)  # 2 is a nonsquare mod 5
    x, y = (u1, v1), (u2, v2)
    # norm is multiplicative
    assert ext.base.mul(ext.norm(x), ext.norm(y)) == ext.norm(ext.mul(x, y))
    if not ext.is_zero(x):
        assert ext.mul(x, ext.inv(x)) == ext.one()


def test_quadratic_extension_generator():
    ext = QuadraticExtension(Q, Fraction(-1))
    i = ext.gen()
    assert ext.mul(i, i) == ext.embed(Fraction(-1))
    assert ext.project(ext.embed(Fraction(3, 2))) == Fraction(3, 2)
    with pytest.raises(FieldError):
        ext.project(i)


def test_quadratic_extension_rejects_square():
    with pytest.raises(FieldError):
        QuadraticExtension(Q, Fraction(4))


def test_field_from_name_and_descriptor_roundtrip():
    for name, kw in [("Q", {}), ("R", {}), ("Qbar", {}), ("Fp", {"p": 7})]:
        f = field_from_name(name, kw.get("p"))
        assert field_from_descriptor(f.descriptor()) == f


@settings(max_examples=50)
@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
def test_prime_field_axioms(x, y, z):
    f = F13
    assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))
    if x % 13:
        assert f.mul(x, f.inv(x)) == 1
