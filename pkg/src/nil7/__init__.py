"""Exact classification of 7-dimensional 2-step nilpotent Lie algebras.

Public entry points:

* :func:`nil7.classify.classify` -- canonical form + certificate.
* :func:`nil7.classify.enumerate_classes` -- class census per field.
* :func:`nil7.cohomology.betti_numbers` -- Chevalley-Eilenberg Betti numbers.
* :mod:`nil7.cli` -- command line interface.
"""

__version__ = "0.1.0"

from .classify import (  # noqa: E402,F401
    CanonicalForm,
    Certificate,
    ClassificationReport,
    PencilClass,
    classify,
    classify_43,
    classify_52,
    classify_61,
    enumerate_classes,
    is_isomorphic,
    net_conic,
    pencil_position,
)
from .cohomology import betti_numbers, verify_real_table  # noqa: E402,F401
from .fields import (  # noqa: E402,F401
    AlgClosedModel,
    PrimeField,
    QuadraticExtension,
    Rationals,
    RealsModel,
)
from .liealg import (  # noqa: E402,F401
    Presentation,
    apply_basis_change,
    check_flatness,
    presentation_from_json,
    presentation_to_json,
    random_presentation,
)
from .models import canonical_presentation  # noqa: E402,F401
