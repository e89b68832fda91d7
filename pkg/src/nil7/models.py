"""Canonical models: the sixteen shapes of length-2 minimal algebras.

Each shape has a stable tag, a signature (f0, f1), canonical
differentials for the last f1 generators, an optional parameter slot,
and the Lie-algebra label used in the literature.  The real-form table
additionally carries the first three Betti numbers used by the
cohomology self-check.
"""

from __future__ import annotations

from .errors import ClassificationError
from .exterior import KForm, parse_form
from .fields import Field
from .liealg import Presentation

# tag -> (signature, differential templates for (dx5, dx6, dx7), label)
# Templates may mention the parameters a and b.
SHAPES: dict[str, tuple[tuple[int, int], tuple[str, str, str], str]] = {
    "61-rank2": ((6, 1), ("0", "0", "x1^x2"), "L_3 + A_4"),
    "61-rank4": ((6, 1), ("0", "0", "x1^x2 + x3^x4"), "L_{5,1} + A_2"),
    "61-rank6": ((6, 1), ("0", "0", "x1^x2 + x3^x4 + x5^x6"), "L_{7,1}"),
    "52-contained": ((5, 2), ("0", "x1^x2", "x1^x3"), "L_{5,2} + A_2"),
    "52-bisecant": ((5, 2), ("0", "x1^x2", "x3^x4"), "L_3 + L_3 + A_1"),
    "52-tangent-lagrangian": (
        (5, 2), ("0", "x1^x2", "x1^x3 + x2^x4"), "L_{6,1} + A_1"),
    "52-tangent-line": ((5, 2), ("0", "x1^x2", "x1^x3 + x4^x5"), "L_{7,2}"),
    "52-disjoint": ((5, 2), ("0", "x1^x2 + x3^x4", "x1^x3 + x2^x5"), "L_{7,3}"),
    "52-bisecant-conjugate": (
        (5, 2), ("0", "x1^x3 + a x2^x4", "x1^x4 + x2^x3"), "L_{6,2} + A_1"),
    "43-common-line": ((4, 3), ("x1^x2", "x1^x3", "x1^x4"), "L_{7,4}"),
    "43-hyperplane": ((4, 3), ("x1^x2", "x1^x3", "x2^x3"), "L_{6,4} + A_1"),
    "43-double-line": ((4, 3), ("x1^x2", "x1^x3", "x1^x4 + x2^x3"), "L_{7,5}"),
    "43-pair-lines": ((4, 3), ("x1^x2", "x3^x4", "x1^x3"), "L_{7,6}"),
    "43-smooth-isotropic": (
        (4, 3), ("x1^x2", "x3^x4", "x1^x3 + x2^x4"), "L_{7,7}"),
    "43-pair-lines-conjugate": (
        (4, 3), ("x1^x4 + x2^x3", "a x1^x3 + x2^x4", "x1^x2"), "L_{7,8}"),
    "43-smooth-anisotropic": (
        (4, 3), ("x1^x4 + x2^x3", "a x1^x3 + x2^x4", "x1^x2 - b x3^x4"), "L_{7,9}"),
}

PARAMETRIC_A = ("52-bisecant-conjugate", "43-pair-lines-conjugate")
PARAMETRIC_AB = ("43-smooth-anisotropic",)


def shape_signature(tag: str) -> tuple[int, int]:
    return SHAPES[tag][0]


def shape_label(tag: str) -> str:
    return SHAPES[tag][2]


def canonical_presentation(tag: str, field: Field, params: dict | None = None) -> Presentation:
    """Build the Table 1 model with the given parameters over `field`."""
    if tag not in SHAPES:
        raise ClassificationError("unknown shape tag %r" % (tag,))
    params = params or {}
    (f0, f1), templates, _ = SHAPES[tag]
    n = 7
    diffs = [KForm(field, n, 2) for _ in range(n)]
    for k, text in enumerate(templates):
        if text == "0":
            continue
        form = _parse_with_params(field, n, text, params)
        diffs[4 + k] = form
    return Presentation(field, n, diffs)


def _parse_with_params(field: Field, n: int, text: str, params: dict) -> KForm:
    """Parse a template, substituting scalar parameters a, b first."""
    out = KForm(field, n, 2)
    for chunk, sign in _signed_chunks(text):
        coef = field.one() if sign > 0 else field.neg(field.one())
        parts = chunk.split()
        mono = parts[-1]
        for factor in parts[:-1]:
            factor = factor.strip("()")
            if factor in params:
                coef = field.mul(coef, field.coerce(params[factor]))
            else:
                coef = field.mul(coef, field.coerce(factor))
        idx = tuple(int(t[1:]) for t in mono.split("^"))
        out._accumulate(idx, coef)
    return out


def _signed_chunks(text: str):
    out = []
    cur, sign = "", 1
    for ch in text:
        if ch in "+-" and cur.strip():
            out.append((cur.strip(), sign))
            cur, sign = "", (1 if ch == "+" else -1)
        elif ch in "+-":
            sign = sign * (1 if ch == "+" else -1)
        else:
            cur += ch
    if cur.strip():
        out.append((cur.strip(), sign))
    return out


# Betti numbers (b1, b2, b3) of the real-form table, with the printed
# differentials of that table (rows 9, 15, 16 are the a = b = -1 forms).
REAL_TABLE: list[dict] = [
    {"tag": "61-rank2", "diffs": ("0", "0", "x1^x2"), "betti": (6, 16, 25), "sum_printed": 71},
    {"tag": "61-rank4", "diffs": ("0", "0", "x1^x2 + x3^x4"), "betti": (6, 14, 19), "sum_printed": 61},
    {"tag": "61-rank6", "diffs": ("0", "0", "x1^x2 + x3^x4 + x5^x6"),
     "betti": (6, 14, 14), "sum_printed": 56},
    {"tag": "52-contained", "diffs": ("0", "x1^x2", "x1^x3"), "betti": (5, 13, 21), "sum_printed": 59},
    {"tag": "52-bisecant", "diffs": ("0", "x1^x2", "x3^x4"), "betti": (5, 12, 18), "sum_printed": 54},
    {"tag": "52-tangent-lagrangian", "diffs": ("0", "x1^x2", "x1^x3 + x2^x4"),
     "betti": (5, 12, 18), "sum_printed": 54},
    {"tag": "52-tangent-line", "diffs": ("0", "x1^x2", "x1^x3 + x4^x5"),
     "betti": (5, 10, 16), "sum_printed": 48},
    {"tag": "52-disjoint", "diffs": ("0", "x1^x2 + x3^x4", "x1^x3 + x2^x5"),
     "betti": (5, 9, 15), "sum_printed": 45},
    {"tag": "52-bisecant-conjugate", "diffs": ("0", "x1^x3 - x2^x4", "x1^x4 + x2^x3"),
     "betti": (5, 12, 18), "sum_printed": 54},
    {"tag": "43-common-line", "diffs": ("x1^x2", "x1^x3", "x1^x4"),
     "betti": (4, 12, 18), "sum_printed": 52},
    {"tag": "43-hyperplane", "diffs": ("x1^x2", "x1^x3", "x2^x3"),
     "betti": (4, 11, 20), "sum_printed": 52},
    {"tag": "43-double-line", "diffs": ("x1^x2", "x1^x3", "x1^x4 + x2^x3"),
     "betti": (4, 11, 17), "sum_printed": 49},
    {"tag": "43-pair-lines", "diffs": ("x1^x2", "x3^x4", "x1^x3"),
     "betti": (4, 11, 16), "sum_printed": 48},
    {"tag": "43-smooth-isotropic", "diffs": ("x1^x2", "x3^x4", "x1^x4 + x2^x3"),
     "betti": (4, 11, 14), "sum_printed": 46},
    {"tag": "43-pair-lines-conjugate",
     "diffs": ("x1^x4 + x2^x3", "-x1^x3 + x2^x4", "x1^x2"), "betti": (4, 11, 16), "sum_printed": 48},
    {"tag": "43-smooth-anisotropic",
     "diffs": ("x1^x4 + x2^x3", "-x1^x3 + x2^x4", "x1^x2 + x3^x4"),
     "betti": (4, 11, 14), "sum_printed": 46},
]


def real_table_presentation(row: dict, field: Field) -> Presentation:
    """Instantiate a REAL_TABLE row (printed differentials) over `field`."""
    n = 7
    diffs = [KForm(field, n, 2) for _ in range(n)]
    for k, text in enumerate(row["diffs"]):
        if text != "0":
            diffs[4 + k] = parse_form(field, n, text, degree=2)
    return Presentation(field, n, diffs)
