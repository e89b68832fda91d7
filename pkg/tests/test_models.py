"""The sixteen canonical models and their basic sanity properties."""

import pytest

from nil7.fields import PrimeField, Rationals
from nil7.liealg import characteristic_filtration, check_flatness
from nil7.models import (
    PARAMETRIC_A,
    PARAMETRIC_AB,
    REAL_TABLE,
    SHAPES,
    canonical_presentation,
    real_table_presentation,
    shape_label,
    shape_signature,
)

from conftest import model_params, standard_fields

Q = Rationals()


def test_sixteen_shapes():
    assert len(SHAPES) == 16
    sigs = [shape_signature(t) for t in SHAPES]
    assert sigs.count((6, 1)) == 3
    assert sigs.count((5, 2)) == 6
    assert sigs.count((4, 3)) == 7
    assert len({shape_label(t) for t in SHAPES}) == 16


@pytest.mark.parametrize("tag", sorted(SHAPES))
def test_models_flat_with_correct_signature(tag):
    for field in standard_fields().values():
        alg = canonical_presentation(tag, field, model_params(tag, field))
        assert check_flatness(alg)
        assert characteristic_filtration(alg).dims == list(shape_signature(tag))


def test_parametric_models_use_parameters():
    a2 = canonical_presentation("52-bisecant-conjugate", Q, {"a": Q.coerce(2)})
    a3 = canonical_presentation("52-bisecant-conjugate", Q, {"a": Q.coerce(3)})
    assert a2 != a3
    q1 = canonical_presentation(
        "43-smooth-anisotropic", Q, {"a": Q.coerce(-1), "b": Q.coerce(-1)}
    )
    q2 = canonical_presentation(
        "43-smooth-anisotropic", Q, {"a": Q.coerce(-1), "b": Q.coerce(-2)}
    )
    assert q1 != q2


def test_parametric_tags_registered():
    assert set(PARAMETRIC_A) <= set(SHAPES)
    assert set(PARAMETRIC_AB) <= set(SHAPES)


def test_real_table_covers_all_shapes():
    assert len(REAL_TABLE) == 16
    assert {row["tag"] for row in REAL_TABLE} == set(SHAPES)
    for row in REAL_TABLE:
        alg = real_table_presentation(row, Q)
        assert check_flatness(alg)
        assert len(row["betti"]) == 3
        assert "sum_printed" in row


def test_models_over_prime_field():
    f = PrimeField(3)
    for tag in SHAPES:
        alg = canonical_presentation(tag, f, model_params(tag, f))
        assert check_flatness(alg)
