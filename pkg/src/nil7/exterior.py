"""Sparse exterior forms on a finite-dimensional space.

A k-form is a map from strictly increasing 1-based index tuples to
nonzero scalars.  Degree-2 forms double as antisymmetric coefficient
matrices; that view drives all the pencil/net geometry.

The text syntax accepted by `parse_form` is the one used in the JSON
input schema: terms like ``x1^x2``, ``3 x3^x4``, ``-1/2 x1^x5``,
joined by ``+`` and ``-``.
"""

from __future__ import annotations

import re
from itertools import combinations

from .errors import FormError
from .fields import Field
from .linalg import Matrix

class KForm:
    """Exterior form of fixed degree on an n-dimensional space."""

    __slots__ = ("field", "n", "degree", "coeffs")

    def __init__(self, field: Field, n: int, degree: int, coeffs=None):
        self.field = field
        self.n = n
        self.degree = degree
        self.coeffs: dict[tuple, object] = {}
        if coeffs:
            for idx, c in coeffs.items():
                self._accumulate(tuple(idx), c)

    def _accumulate(self, idx: tuple, c) -> None:
        f = self.field
        if len(idx) != self.degree:
            raise FormError("index tuple %r has wrong degree" % (idx,))
        if len(set(idx)) != len(idx):
            return
        sorted_idx = tuple(sorted(idx))
        if any(i < 1 or i > self.n for i in sorted_idx):
            raise FormError("index out of range in %r" % (idx,))
        if sorted_idx != idx:
            c = f.mul(_perm_sign_scalar(f, idx), c)
        cur = self.coeffs.get(sorted_idx)
        new = c if cur is None else f.add(cur, c)
        if f.is_zero(new):
            self.coeffs.pop(sorted_idx, None)
        else:
            self.coeffs[sorted_idx] = new

    # -- basic ops -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, KForm):
            return NotImplemented
        if (self.field, self.n, self.degree) != (other.field, other.n, other.degree):
            return False
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(self.field.eq(c, other.coeffs[i]) for i, c in self.coeffs.items())

    def __hash__(self):
        raise TypeError("forms are not hashable")

    def __add__(self, other: "KForm") -> "KForm":
        self._check_compatible(other)
        out = KForm(self.field, self.n, self.degree, dict(self.coeffs))
        for idx, c in other.coeffs.items():
            out._accumulate(idx, c)
        return out

    def __sub__(self, other: "KForm") -> "KForm":
        return self + other.scale(self.field.from_int(-1))

    def scale(self, c) -> "KForm":
        f = self.field
        if f.is_zero(c):
            return KForm(f, self.n, self.degree)
        return KForm(
            f, self.n, self.degree,
            {idx: f.mul(c, v) for idx, v in self.coeffs.items()},
        )

    def _check_compatible(self, other: "KForm") -> None:
        if (self.field, self.n, self.degree) != (other.field, other.n, other.degree):
            raise FormError("incompatible forms")

    def wedge(self, other: "KForm") -> "KForm":
        if self.field != other.field or self.n != other.n:
            raise FormError("incompatible forms")
        f = self.field
        out = KForm(f, self.n, self.degree + other.degree)
        if out.degree > self.n:
            return out
        for ia, ca in self.coeffs.items():
            for ib, cb in other.coeffs.items():
                if set(ia) & set(ib):
                    continue
                sign, merged = _merge_sign(ia, ib)
                c = f.mul(ca, cb)
                if sign < 0:
                    c = f.neg(c)
                out._accumulate(merged, c)
        return out

    # -- presentation ---------------------------------------------
    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        f = self.field
        parts = []
        for idx in sorted(self.coeffs):
            c = self.coeffs[idx]
            mono = "^".join("x%d" % i for i in idx)
            s = f.fmt(c)
            if s == "1":
                parts.append(mono)
            elif s == "-1":
                parts.append("-" + mono)
            else:
                parts.append("%s %s" % (s, mono))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__

    def monomials(self):
        return sorted(self.coeffs)

    # -- coordinate changes ---------------------------------------
    def change_basis(self, p_inv: Matrix) -> "KForm":
        """Rewrite the form in new coordinates.

        `p_inv` is the inverse of the new-generators-in-old matrix P,
        so the old generator x_i expands as sum_j (P^-1)_{ji} y_j.
        """
        f = self.field
        if p_inv.m != self.n or p_inv.n != self.n:
            raise FormError("basis change has wrong size")
        lines = []
        for i in range(self.n):
            lin = KForm(f, self.n, 1)
            for j in range(self.n):
                lin._accumulate((j + 1,), p_inv.rows[j][i])
            lines.append(lin)
        out = KForm(f, self.n, self.degree)
        for idx, c in self.coeffs.items():
            term = None
            for i in idx:
                term = lines[i - 1] if term is None else term.wedge(lines[i - 1])
            for midx, mc in term.coeffs.items():
                out._accumulate(midx, f.mul(c, mc))
        return out

    def map_coefficients(self, new_field: Field, convert) -> "KForm":
        return KForm(
            new_field, self.n, self.degree,
            {idx: convert(c) for idx, c in self.coeffs.items()},
        )

    def restrict(self, m: int) -> "KForm":
        """Reinterpret in the subspace of the first m coordinates."""
        for idx in self.coeffs:
            if any(i > m for i in idx):
                raise FormError("form is not supported on the first %d coordinates" % m)
        return KForm(self.field, m, self.degree, dict(self.coeffs))

    def extend(self, n: int) -> "KForm":
        """Reinterpret in a larger ambient space."""
        if n < self.n:
            raise FormError("cannot shrink ambient space")
        return KForm(self.field, n, self.degree, dict(self.coeffs))


def _perm_sign_scalar(field: Field, idx: tuple):
    sign = 1
    lst = list(idx)
    for i in range(len(lst)):
        for j in range(i + 1, len(lst)):
            if lst[i] > lst[j]:
                sign = -sign
    return field.from_int(sign)


def _merge_sign(ia: tuple, ib: tuple) -> tuple[int, tuple]:
    """Sign and sorted tuple for wedging two increasing index tuples."""
    merged = list(ia)
    sign = 1
    for b in ib:
        pos = 0
        while pos < len(merged) and merged[pos] < b:
            pos += 1
        sign *= (-1) ** (len(merged) - pos)
        merged.insert(pos, b)
    return sign, tuple(merged)


_TERM_RE = re.compile(
    r"^\s*(?P<coef>[+-]?\s*\d+(?:/\d+)?)?\s*(?P<mono>x\d+(?:\s*\^\s*x\d+)*)?\s*$"
)


def parse_form(field: Field, n: int, text: str, degree: int | None = None) -> KForm:
    """Parse expressions like ``x1^x2 + 3 x3^x4 - 1/2 x1^x5``."""
    text = text.strip()
    if text in ("", "0"):
        return KForm(field, n, 2 if degree is None else degree)
    terms = _split_terms(text)
    parsed = []
    for sign, term in terms:
        m = _TERM_RE.match(term)
        if not m or (m.group("coef") is None and m.group("mono") is None):
            raise FormError("cannot parse term %r" % term)
        coef_txt = m.group("coef")
        mono_txt = m.group("mono")
        coef = field.one() if coef_txt is None else field.coerce(coef_txt.replace(" ", ""))
        if sign < 0:
            coef = field.neg(coef)
        if mono_txt is None:
            raise FormError("constant term %r is not a form" % term)
        idx = tuple(int(t[1:]) for t in re.split(r"\s*\^\s*", mono_txt))
        parsed.append((idx, coef))
    degs = {len(idx) for idx, _ in parsed}
    if len(degs) != 1:
        raise FormError("mixed degrees in %r" % text)
    deg = degs.pop()
    if degree is not None and deg != degree:
        raise FormError("expected degree %d, got %d" % (degree, deg))
    out = KForm(field, n, deg)
    for idx, coef in parsed:
        if len(set(idx)) != len(idx):
            raise FormError("repeated generator in %r" % text)
        out._accumulate(idx, coef)
    return out


def _split_terms(text: str) -> list[tuple[int, str]]:
    out = []
    cur = ""
    sign = 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "+-" and cur.strip():
            out.append((sign, cur.strip()))
            cur = ""
            sign = 1 if ch == "+" else -1
        elif ch in "+-" and not cur.strip():
            sign = sign * (1 if ch == "+" else -1)
        else:
            cur += ch
        i += 1
    if cur.strip():
        out.append((sign, cur.strip()))
    if not out:
        raise FormError("empty form expression")
    return out


# -- bivector utilities -------------------------------------------

def bivector_matrix(phi: KForm) -> Matrix:
    """Antisymmetric n x n coefficient matrix of a 2-form."""
    if phi.degree != 2:
        raise FormError("not a bivector")
    f = phi.field
    n = phi.n
    rows = [[f.zero()] * n for _ in range(n)]
    for (i, j), c in phi.coeffs.items():
        rows[i - 1][j - 1] = c
        rows[j - 1][i - 1] = f.neg(c)
    return Matrix(f, rows)


def bivector_from_matrix(mat: Matrix) -> KForm:
    f = mat.field
    out = KForm(f, mat.n, 2)
    for i in range(mat.n):
        for j in range(i + 1, mat.n):
            if not f.is_zero(mat.rows[i][j]):
                out._accumulate((i + 1, j + 1), mat.rows[i][j])
    return out


def bivector_rank(phi: KForm) -> int:
    return bivector_matrix(phi).rank()


def bivector_support(phi: KForm) -> list[list]:
    """Basis of the smallest subspace W with phi in Lambda^2(W)."""
    return bivector_matrix(phi).column_space_basis()


def wedge_square(phi: KForm) -> KForm:
    return phi.wedge(phi)


def top_coefficient(form: KForm):
    """Coefficient of x1^...^xn of a top-degree form."""
    if form.degree != form.n:
        raise FormError("not a top-degree form")
    return form.coeffs.get(tuple(range(1, form.n + 1)), form.field.zero())


def lambda2_coordinates(phi: KForm) -> list:
    """Coefficients of a 2-form in the lexicographic Lambda^2 basis."""
    f = phi.field
    return [phi.coeffs.get(idx, f.zero()) for idx in combinations(range(1, phi.n + 1), 2)]


def form_from_lambda2(field: Field, n: int, coords) -> KForm:
    out = KForm(field, n, 2)
    for idx, c in zip(combinations(range(1, n + 1), 2), coords):
        if not field.is_zero(c):
            out._accumulate(idx, c)
    return out
