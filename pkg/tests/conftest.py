"""Shared helpers for the test suite."""

import random

from nil7.errors import LinAlgError
from nil7.fields import AlgClosedModel, PrimeField, RealsModel
from nil7.linalg import Matrix
from nil7.models import PARAMETRIC_A, PARAMETRIC_AB


def random_invertible(field, rng: random.Random, n: int = 7) -> Matrix:
    """Random invertible n x n matrix with small integer entries."""
    while True:
        rows = [
            [field.coerce(rng.randint(-4, 4)) for _ in range(n)]
            for _ in range(n)
        ]
        M = Matrix(field, rows)
        try:
            M.inverse()
        except LinAlgError:
            continue
        return M


def model_params(tag: str, field) -> dict:
    """Default parameters used to instantiate a parametric model."""
    if tag in PARAMETRIC_A:
        if isinstance(field, PrimeField):
            return {"a": field.coerce(field.least_nonsquare())}
        if isinstance(field, AlgClosedModel):
            # no nonsquare exists; the tag collapses onto its split row
            return {"a": field.coerce(2)}
        return {"a": field.coerce(-1)}
    if tag in PARAMETRIC_AB:
        if isinstance(field, (PrimeField, AlgClosedModel)):
            # every quaternion algebra splits; the conic is isotropic
            return {"a": field.coerce(-1), "b": field.coerce(-1)}
        return {"a": field.coerce(-1), "b": field.coerce(-1)}
    return {}


def standard_fields():
    from nil7.fields import Rationals

    return {
        "Q": Rationals(),
        "F5": PrimeField(5),
        "R": RealsModel(),
        "Qbar": AlgClosedModel(),
    }
