"""Ternary quadratic forms, Hilbert symbols, quaternion classes."""

import random
from fractions import Fraction
from math import isqrt

import pytest

from nil7.fields import AlgClosedModel, PrimeField, Rationals, RealsModel
from nil7.linalg import Matrix
from nil7.quadform import (
    INF,
    ConicNormalForm,
    TernaryForm,
    conic_point_count,
    diagonalize_symmetric,
    hilbert_symbol,
    is_isotropic_ternary,
    legendre_symbol,
    normalize_conic,
    quaternion_class,
    quaternion_iso,
    relevant_places,
)

Q = Rationals()

PLACES = [INF, 2, 3, 5, 7, 11, 13]


def rand_nonzero(rng):
    x = 0
    while x == 0:
        x = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
    return x


def test_legendre_symbol():
    for p in (3, 5, 7, 11, 13):
        squares = {x * x % p for x in range(1, p)}
        for u in range(1, p):
            assert legendre_symbol(u, p) == (1 if u in squares else -1)
            assert legendre_symbol(u + p, p) == legendre_symbol(u, p)


def test_diagonalize_symmetric_congruence():
    rng = random.Random(3)
    for _ in range(30):
        rows = [[Fraction(rng.randint(-5, 5)) for _ in range(3)] for _ in range(3)]
        for i in range(3):
            for j in range(i):
                rows[i][j] = rows[j][i]
        G = Matrix(Q, rows)
        diag, T = diagonalize_symmetric(G)
        D = T.transpose() @ G @ T
        for i in range(3):
            for j in range(3):
                assert D.rows[i][j] == (diag[i] if i == j else 0)
        assert not Q.is_zero(T.det())


def test_normalize_conic_congruent_to_input():
    rng = random.Random(5)
    for _ in range(30):
        rows = [[Fraction(rng.randint(-5, 5)) for _ in range(3)] for _ in range(3)]
        for i in range(3):
            for j in range(i):
                rows[i][j] = rows[j][i]
        form = TernaryForm(Q, rows)
        if form.is_zero():
            continue
        nf, T = normalize_conic(form)
        D = T.transpose() @ form.mat @ T
        assert nf.rank == form.rank()
        # off-diagonal vanishes, nonzero entries come first
        seen_zero = False
        for i in range(3):
            for j in range(3):
                if i != j:
                    assert D.rows[i][j] == 0
            if D.rows[i][i] == 0:
                seen_zero = True
            else:
                assert not seen_zero


def test_hilbert_symbol_properties_random():
    rng = random.Random(7)
    for _ in range(300):
        a, b = rand_nonzero(rng), rand_nonzero(rng)
        p = rng.choice(PLACES)
        assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
        c = rand_nonzero(rng)
        assert hilbert_symbol(a, c * c, p) == 1
        assert hilbert_symbol(a, -a, p) == 1
        if a != 1:
            assert hilbert_symbol(a, 1 - a, p) == 1
        a2 = rand_nonzero(rng)
        assert hilbert_symbol(a * a2, b, p) == \
            hilbert_symbol(a, b, p) * hilbert_symbol(a2, b, p)
        assert hilbert_symbol(a, b, p) == hilbert_symbol(a, -a * b, p)


def test_hilbert_product_formula():
    rng = random.Random(11)
    for _ in range(300):
        a, b = rand_nonzero(rng), rand_nonzero(rng)
        places = relevant_places(a, b)
        prod = 1
        for p in places:
            prod *= hilbert_symbol(a, b, p)
        assert prod == 1
        # places outside the relevant set are unramified
        for p in (17, 101):
            if p not in places:
                assert hilbert_symbol(a, b, p) == 1


def test_hilbert_anchors():
    assert hilbert_symbol(Fraction(-1), Fraction(-1), INF) == -1
    assert hilbert_symbol(Fraction(-1), Fraction(-1), 2) == -1
    assert hilbert_symbol(Fraction(2), Fraction(3), 2) == -1
    assert hilbert_symbol(Fraction(2), Fraction(3), 3) == -1
    assert hilbert_symbol(Fraction(5), Fraction(7), 11) == 1


def test_quaternion_class_over_q():
    c = quaternion_class(Fraction(-1), Fraction(-1), Q)
    assert c.ramified == frozenset({2, INF})
    assert not c.split
    # ramification sets always have even size
    rng = random.Random(13)
    for _ in range(100):
        a, b = rand_nonzero(rng), rand_nonzero(rng)
        cl = quaternion_class(a, b, Q)
        assert len(cl.ramified) % 2 == 0
        assert cl.split == (len(cl.ramified) == 0)
    # (-1,3) and (2,3) are isomorphic: both ramify exactly at {2,3}
    c1 = quaternion_class(Fraction(-1), Fraction(3), Q)
    c2 = quaternion_class(Fraction(2), Fraction(3), Q)
    assert c1.ramified == c2.ramified == frozenset({2, 3})
    assert quaternion_iso(c1, c2)
    assert not quaternion_iso(c, c1)


def test_quaternion_class_other_fields():
    R = RealsModel()
    assert not quaternion_class(Fraction(-1), Fraction(-1), R).split
    assert quaternion_class(Fraction(-1), Fraction(2), R).split
    assert quaternion_class(Fraction(-1), Fraction(-1), AlgClosedModel()).split
    for p in (3, 5, 7):
        f = PrimeField(p)
        # every quaternion algebra over a finite field splits
        for a in range(1, p):
            for b in range(1, p):
                assert quaternion_class(a, b, f).split


def brute_isotropic_q(a: Fraction, b: Fraction, bound=25) -> bool:
    """Search x^2 = a y^2 + b z^2 over a common denominator grid."""
    den = a.denominator * b.denominator
    an, bn = a * den * den, b * den * den  # integer coefficients
    for y in range(bound + 1):
        for z in range(bound + 1):
            if y == 0 and z == 0:
                continue
            val = an * y * y + bn * z * z
            if val < 0:
                continue
            v = int(val)
            r = isqrt(v)
            if r * r == v:
                return True
    return False


def test_isotropy_matches_bruteforce_small():
    for a in (-3, -1, 1, 2, 5, -7):
        for b in (-5, -2, 1, 3, 7):
            nf = ConicNormalForm(Q, Fraction(a), Fraction(b))
            assert is_isotropic_ternary(nf, Q) == brute_isotropic_q(
                Fraction(a), Fraction(b)
            ), (a, b)


def test_isotropy_over_models():
    R = RealsModel()
    assert is_isotropic_ternary(ConicNormalForm(R, Fraction(1), Fraction(1)), R)
    assert not is_isotropic_ternary(ConicNormalForm(R, Fraction(-1), Fraction(-1)), R)
    C = AlgClosedModel()
    assert is_isotropic_ternary(ConicNormalForm(C, Fraction(-1), Fraction(-1)), C)
    for p in (3, 5, 7):
        f = PrimeField(p)
        for a in range(1, p):
            for b in range(1, p):
                assert is_isotropic_ternary(ConicNormalForm(f, a, b), f)


def brute_conic_points(nf: ConicNormalForm, p: int) -> int:
    """Projective points of X^2 - aY^2 - bZ^2 = 0 by full enumeration."""
    a, b = int(nf.a) % p, int(nf.b) % p
    reps = []
    for x in range(p):
        for y in range(p):
            reps.append((x, y, 1))
    for x in range(p):
        reps.append((x, 1, 0))
    reps.append((1, 0, 0))
    count = 0
    for x, y, z in reps:
        if (x * x - a * y * y - b * z * z) % p == 0:
            count += 1
    return count


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_conic_point_count_smooth(p):
    f = PrimeField(p)
    for a in range(1, p):
        for b in range(1, p):
            nf = ConicNormalForm(f, a, b)
            n = conic_point_count(nf, f)
            assert n == brute_conic_points(nf, p) == p + 1
