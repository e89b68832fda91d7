"""Nilpotent Lie algebras and their dual minimal-algebra presentations.

A presentation records the differential of each degree-1 generator as a
2-form.  The bracket side stores structure constants a^k_ij (i < j),
and the two views are related by the sign convention

    dx_k = - sum_{i<j} a^k_ij  x_i ^ x_j.

The characteristic filtration W_0 = ker d, W_k = d^{-1}(Lambda^2 W_{k-1})
recovers the grading from an arbitrary basis; its dimension vector
(f_0, f_1, ...) is the primary invariant of the classification.
"""

from __future__ import annotations

import random
from itertools import combinations

from .errors import AlgebraError, NotFlatError, NotMinimalError, WrongLength
from .exterior import KForm, parse_form
from .fields import Field, field_from_descriptor
from .linalg import Matrix, complete_basis, span_rank


class StructureConstants:
    """Bracket table [X_i, X_j] = sum_k a^k_ij X_k with i < j keys."""

    def __init__(self, field: Field, n: int, entries=None):
        self.field = field
        self.n = n
        self.entries: dict[tuple[int, int, int], object] = {}
        if entries:
            for (i, j, k), c in entries.items():
                self.set(i, j, k, c)

    def set(self, i: int, j: int, k: int, c) -> None:
        if not (1 <= i < j <= self.n and 1 <= k <= self.n):
            raise AlgebraError("bad bracket indices (%d,%d,%d)" % (i, j, k))
        c = self.field.coerce(c)
        if self.field.is_zero(c):
            self.entries.pop((i, j, k), None)
        else:
            self.entries[(i, j, k)] = c

    def bracket(self, u, v):
        """Bracket of two coordinate vectors."""
        f = self.field
        out = [f.zero()] * self.n
        for (i, j, k), c in self.entries.items():
            term = f.mul(c, f.sub(f.mul(u[i - 1], v[j - 1]), f.mul(u[j - 1], v[i - 1])))
            out[k - 1] = f.add(out[k - 1], term)
        return out


class Presentation:
    """Minimal-algebra presentation: one bivector differential per generator."""

    def __init__(self, field: Field, n: int, differentials):
        self.field = field
        self.n = n
        self.diffs: list[KForm] = []
        for k in range(n):
            d = differentials[k] if k < len(differentials) else None
            if d is None:
                d = KForm(field, n, 2)
            if d.field != field or d.n != n or d.degree != 2:
                raise AlgebraError("differential %d has wrong type" % (k + 1,))
            self.diffs.append(d)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Presentation)
            and self.field == other.field
            and self.n == other.n
            and all(a == b for a, b in zip(self.diffs, other.diffs))
        )

    def __repr__(self):
        items = [
            "d x%d = %s" % (k + 1, d) for k, d in enumerate(self.diffs) if not d.is_zero()
        ]
        return "Presentation[%s](%s)" % (self.field.kind, "; ".join(items) or "abelian")

    def map_field(self, new_field: Field, convert) -> "Presentation":
        return Presentation(
            new_field, self.n,
            [d.map_coefficients(new_field, convert) for d in self.diffs],
        )


def dualize(sc: StructureConstants) -> Presentation:
    f = sc.field
    diffs = [KForm(f, sc.n, 2) for _ in range(sc.n)]
    for (i, j, k), c in sc.entries.items():
        diffs[k - 1]._accumulate((i, j), f.neg(c))
    return Presentation(f, sc.n, diffs)


def undualize(alg: Presentation) -> StructureConstants:
    f = alg.field
    sc = StructureConstants(f, alg.n)
    for k, d in enumerate(alg.diffs, start=1):
        for (i, j), c in d.coeffs.items():
            sc.set(i, j, k, f.neg(c))
    return sc


def differential_of_form(alg: Presentation, form: KForm) -> KForm:
    """Extend d to any form by the graded Leibnitz rule."""
    f = alg.field
    out = KForm(f, alg.n, form.degree + 1)
    for idx, c in form.coeffs.items():
        for pos, gen in enumerate(idx):
            dg = alg.diffs[gen - 1]
            if dg.is_zero():
                continue
            rest = idx[:pos] + idx[pos + 1:]
            sign = f.from_int((-1) ** pos)
            partial = KForm(f, alg.n, 2, dict(dg.coeffs))
            if rest:
                rest_form = KForm(f, alg.n, len(rest), {rest: f.one()})
                partial = partial.wedge(rest_form)
            for midx, mc in partial.coeffs.items():
                out._accumulate(midx, f.mul(f.mul(c, sign), mc))
    return out


def check_flatness(alg: Presentation) -> bool:
    """True iff d(dx_k) = 0 for every generator (d squares to zero)."""
    for d in alg.diffs:
        if not differential_of_form(alg, d).is_zero():
            return False
    return True


def jacobi_check(sc: StructureConstants) -> bool:
    """Direct Jacobi identity on basis triples, independent of d."""
    f = sc.field
    basis = []
    for i in range(sc.n):
        e = [f.zero()] * sc.n
        e[i] = f.one()
        basis.append(e)
    for a, b, c in combinations(range(sc.n), 3):
        s = [f.zero()] * sc.n
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            t = sc.bracket(basis[x], sc.bracket(basis[y], basis[z]))
            s = [f.add(p, q) for p, q in zip(s, t)]
        if any(not f.is_zero(v) for v in s):
            return False
    return True


def lower_central_series(sc: StructureConstants) -> list[int]:
    """Dims of the quotients g^(k)/g^(k+1); raises if not nilpotent."""
    f = sc.field
    n = sc.n
    basis = [[f.one() if i == j else f.zero() for j in range(n)] for i in range(n)]
    current = basis  # g^(0) = g
    dims = []
    prev_dim = n
    while True:
        products = []
        for u in basis:
            for v in current:
                w = sc.bracket(u, v)
                if any(not f.is_zero(x) for x in w):
                    products.append(w)
        if not products:
            dims.append(prev_dim)
            return dims
        nxt = Matrix(f, products).row_space_rref()
        d = len(nxt)
        if d == prev_dim:
            raise AlgebraError("algebra is not nilpotent")
        dims.append(prev_dim - d)
        current = nxt
        prev_dim = d


class Filtration:
    """Characteristic filtration bases and dimension vector."""

    def __init__(self, subspaces: list[list[list]], dims: list[int]):
        self.subspaces = subspaces  # W_0, W_1, ... as lists of column vectors
        self.dims = dims

    @property
    def length(self) -> int:
        return len(self.dims)


def characteristic_filtration(alg: Presentation) -> Filtration:
    """W_0 = ker d, W_k = d^{-1}(Lambda^2 W_{k-1}); raises NotMinimalError."""
    cached = getattr(alg, "_filtration", None)
    if cached is not None:
        return cached
    f = alg.field
    n = alg.n
    pair_index = {p: i for i, p in enumerate(combinations(range(1, n + 1), 2))}
    # d as a matrix Lambda^1 -> Lambda^2 (columns = generators)
    dmat_cols = []
    for d in alg.diffs:
        col = [f.zero()] * len(pair_index)
        for idx, c in d.coeffs.items():
            col[pair_index[idx]] = c
        dmat_cols.append(col)
    dmat = Matrix.from_cols(f, dmat_cols)

    subspaces = []
    dims = []
    prev: list[list] = []
    while True:
        if not prev:
            w = dmat.kernel_basis()
        else:
            # v in W_k iff d(v) lies in Lambda^2(W_{k-1})
            lam2 = _lambda2_space(f, n, prev, pair_index)
            if lam2:
                proj = Matrix(f, lam2)  # rows span Lambda^2 W_{k-1}
                # solve: d(v) in row space  <=>  kernel of composite map
                comp = _quotient_map(f, dmat, lam2)
            else:
                comp = dmat
            w = comp.kernel_basis()
        w = Matrix(f, w).row_space_rref() if w else []
        d_prev = len(prev)
        d_now = len(w)
        if d_now == d_prev:
            raise NotMinimalError(
                "characteristic filtration stabilizes at dimension %d < %d" % (d_now, n)
            )
        subspaces.append(w)
        dims.append(d_now - d_prev)
        if d_now == n:
            filt = Filtration(subspaces, dims)
            alg._filtration = filt
            return filt
        prev = w


def _lambda2_space(field: Field, n: int, basis_vectors, pair_index) -> list[list]:
    """Coordinates of a basis of Lambda^2(span) inside Lambda^2(k^n)."""
    forms = []
    for a, b in combinations(range(len(basis_vectors)), 2):
        u, v = basis_vectors[a], basis_vectors[b]
        coords = [field.zero()] * len(pair_index)
        for (i, j), pos in pair_index.items():
            c = field.sub(
                field.mul(u[i - 1], v[j - 1]), field.mul(u[j - 1], v[i - 1])
            )
            coords[pos] = c
        forms.append(coords)
    if not forms:
        return []
    return Matrix(field, forms).row_space_rref()


def _quotient_map(field: Field, dmat: Matrix, subspace_rows: list[list]) -> Matrix:
    """Compose d with the projection killing the given row space.

    Returns a matrix whose kernel is d^{-1}(row span).
    """
    sub = Matrix(field, subspace_rows)
    R, pivots = sub.rref()
    pivset = set(pivots)
    free = [j for j in range(dmat.m) if j not in pivset]
    # reduce each column of dmat modulo the subspace, keep free coordinates
    out_rows = [[field.zero()] * dmat.n for _ in free]
    for cidx in range(dmat.n):
        col = dmat.col(cidx)
        for i, pc in enumerate(pivots):
            c = col[pc]
            if not field.is_zero(c):
                col = [field.sub(x, field.mul(c, y)) for x, y in zip(col, R.rows[i])]
        for r, j in enumerate(free):
            out_rows[r][cidx] = col[j]
    return Matrix(field, out_rows)


def apply_basis_change(alg: Presentation, P: Matrix) -> Presentation:
    """Rewrite the presentation in generators y_j = columns of P (new in old).

    The field of P may be an extension of the algebra's field, in which
    case the result lives over P.field.
    """
    f = P.field
    if f != alg.field:
        # promote algebra coefficients into the extension
        from .fields import QuadraticExtension

        if isinstance(f, QuadraticExtension) and f.base == alg.field:
            alg = alg.map_field(f, f.embed)
        else:
            raise AlgebraError("basis change field does not match presentation")
    p_inv = P.inverse()
    new_diffs = []
    for j in range(alg.n):
        # d(y_j) = sum_i P_ij dx_i, rewritten in the y coordinates
        acc = KForm(f, alg.n, 2)
        for i in range(alg.n):
            c = P.rows[i][j]
            if not f.is_zero(c):
                acc = acc + alg.diffs[i].scale(c)
        new_diffs.append(acc.change_basis(p_inv))
    return Presentation(f, alg.n, new_diffs)


def random_presentation(f0: int, f1: int, seed, field: Field) -> Presentation:
    """Random flat presentation with signature (f0, f1), deterministic in seed."""
    if (f0, f1) not in ((6, 1), (5, 2), (4, 3)):
        raise AlgebraError("unsupported signature (%d,%d)" % (f0, f1))
    rng = random.Random(seed)
    n = f0 + f1
    while True:
        forms = []
        for _ in range(f1):
            phi = KForm(field, n, 2)
            for idx in combinations(range(1, f0 + 1), 2):
                c = field.coerce(rng.randint(-4, 4))
                if not field.is_zero(c):
                    phi._accumulate(idx, c)
            forms.append(phi)
        from .exterior import lambda2_coordinates

        coords = [lambda2_coordinates(phi) for phi in forms]
        if span_rank(field, coords) == f1:
            diffs = [KForm(field, n, 2) for _ in range(f0)] + forms
            alg = Presentation(field, n, diffs)
            filt = characteristic_filtration(alg)
            if filt.dims == [f0, f1]:
                return alg


# -- JSON interchange ---------------------------------------------

def presentation_from_json(data: dict) -> Presentation:
    if not isinstance(data, dict):
        raise AlgebraError("input must be a JSON object")
    if "field" not in data:
        raise AlgebraError("input is missing the field descriptor")
    field = field_from_descriptor(
        data["field"] if isinstance(data["field"], dict) else {"field": data["field"], **({"p": data["p"]} if "p" in data else {})}
    )
    n = int(data.get("dim", 7))
    if "differentials" in data:
        diffs = [KForm(field, n, 2) for _ in range(n)]
        for key, text in data["differentials"].items():
            k = int(key)
            if not 1 <= k <= n:
                raise AlgebraError("differential index %d out of range" % k)
            diffs[k - 1] = parse_form(field, n, text, degree=2)
        return Presentation(field, n, diffs)
    if "brackets" in data:
        sc = StructureConstants(field, n)
        for item in data["brackets"]:
            if len(item) != 4:
                raise AlgebraError("bracket entries are [i, j, k, coef]")
            i, j, k, coef = item
            sc.set(int(i), int(j), int(k), field.coerce(coef))
        return dualize(sc)
    raise AlgebraError("input needs either 'differentials' or 'brackets'")


def presentation_to_json(alg: Presentation) -> dict:
    return {
        "field": alg.field.descriptor(),
        "dim": alg.n,
        "differentials": {
            str(k + 1): str(d) for k, d in enumerate(alg.diffs) if not d.is_zero()
        },
    }


def adapted_change(alg: Presentation) -> tuple[Matrix, Filtration]:
    """Basis change whose first f0 columns span W_0 (closed generators first)."""
    filt = characteristic_filtration(alg)
    if filt.length != 2:
        raise WrongLength(
            "expected length 2, got filtration dims %r" % (filt.dims,)
        )
    f = alg.field
    w0 = filt.subspaces[0]
    cols = [list(v) for v in w0]
    cols += complete_basis(f, cols, alg.n)
    return Matrix.from_cols(f, cols), filt
