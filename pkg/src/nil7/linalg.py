"""Exact dense linear algebra over the field objects of this package.

Matrices are small (at most 35x35 in the cohomology module) but the
workloads run to tens of thousands of eliminations, so row reduction
over Q and F_p is routed through the _kern backend: rational rows are
scaled to primitive integer rows, reduced fraction-free, and divided
back by their pivots.  Extension fields use a generic elimination.

Vectors are plain lists of field scalars.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import _kern
from .errors import LinAlgError
from .fields import Field, PrimeField, _FractionField


def vec_add(field: Field, u, v):
    return [field.add(a, b) for a, b in zip(u, v)]

def vec_sub(field: Field, u, v):
    return [field.sub(a, b) for a, b in zip(u, v)]

def vec_scale(field: Field, c, u):
    return [field.mul(c, a) for a in u]

def vec_is_zero(field: Field, u) -> bool:
    return all(field.is_zero(a) for a in u)

def dot(field: Field, u, v):
    s = field.zero()
    for a, b in zip(u, v):
        s = field.add(s, field.mul(a, b))
    return s


class Matrix:
    """Immutable-by-convention dense matrix with row-major scalar lists."""

    __slots__ = ("field", "m", "n", "rows")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.m = len(self.rows)
        self.n = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.n:
                raise LinAlgError("ragged rows")

    # -- constructors ---------------------------------------------
    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, field: Field, m: int, n: int) -> "Matrix":
        z = field.zero()
        return cls(field, [[z] * n for _ in range(m)])

    @classmethod
    def from_cols(cls, field: Field, cols) -> "Matrix":
        cols = list(cols)
        if not cols:
            return cls(field, [])
        return cls(field, [[c[i] for c in cols] for i in range(len(cols[0]))])

    def col(self, j: int):
        return [r[j] for r in self.rows]

    def cols(self):
        return [self.col(j) for j in range(self.n)]

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.m == other.m
            and self.n == other.n
            and all(
                self.field.eq(a, b)
                for ra, rb in zip(self.rows, other.rows)
                for a, b in zip(ra, rb)
            )
        )

    def __hash__(self):
        raise TypeError("matrices are not hashable")

    def __repr__(self):
        body = "; ".join(
            " ".join(self.field.fmt(x) for x in row) for row in self.rows
        )
        return "Matrix[%s](%s)" % (self.field.kind, body)

    # -- arithmetic -----------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.m, self.n) != (other.m, other.n):
            raise LinAlgError("shape mismatch in addition")
        f = self.field
        return Matrix(
            f,
            [
                [f.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        f = self.field
        return self + Matrix(f, [[f.neg(x) for x in r] for r in other.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.n != other.m:
            raise LinAlgError("shape mismatch in product")
        f = self.field
        ocols = list(zip(*other.rows)) if other.rows else []
        out = []
        for row in self.rows:
            out.append([dot(f, row, list(c)) for c in ocols])
        return Matrix(f, out)

    def scale(self, c) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.mul(c, x) for x in r] for r in self.rows])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [list(r) for r in zip(*self.rows)] if self.rows else [])

    def mat_vec(self, v):
        if len(v) != self.n:
            raise LinAlgError("vector length mismatch")
        return [dot(self.field, row, v) for row in self.rows]

    def is_zero(self) -> bool:
        return all(self.field.is_zero(x) for r in self.rows for x in r)

    # -- elimination ----------------------------------------------
    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form with unit pivots; returns (R, pivots)."""
        f = self.field
        if self.m == 0 or self.n == 0:
            return self.copy(), []
        if isinstance(f, PrimeField):
            work = [[x % f.p for x in r] for r in self.rows]
            _, pivots = _kern.gf_rref(work, f.p)
            return Matrix(f, work), pivots
        if isinstance(f, _FractionField):
            work = [_int_row(r) for r in self.rows]
            _, pivots = _kern.int_rref(work)
            out = []
            for i, row in enumerate(work):
                if i < len(pivots):
                    piv = row[pivots[i]]
                    out.append([Fraction(x, piv) for x in row])
                else:
                    out.append([Fraction(0)] * self.n)
            return Matrix(f, out), pivots
        return self._rref_generic()

    def _rref_generic(self) -> tuple["Matrix", list[int]]:
        f = self.field
        work = [list(r) for r in self.rows]
        m, n = self.m, self.n
        rank = 0
        pivots: list[int] = []
        for col in range(n):
            piv = -1
            for r in range(rank, m):
                if not f.is_zero(work[r][col]):
                    piv = r
                    break
            if piv < 0:
                continue
            work[rank], work[piv] = work[piv], work[rank]
            inv = f.inv(work[rank][col])
            work[rank] = [f.mul(inv, x) for x in work[rank]]
            for r in range(m):
                if r != rank and not f.is_zero(work[r][col]):
                    c = work[r][col]
                    work[r] = [
                        f.sub(x, f.mul(c, y)) for x, y in zip(work[r], work[rank])
                    ]
            pivots.append(col)
            rank += 1
            if rank == m:
                break
        return Matrix(f, work), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list[list]:
        """Basis of the right null space, as column vectors."""
        f = self.field
        R, pivots = self.rref()
        pivset = set(pivots)
        basis = []
        for j in range(self.n):
            if j in pivset:
                continue
            v = [f.zero()] * self.n
            v[j] = f.one()
            for i, pc in enumerate(pivots):
                v[pc] = f.neg(R.rows[i][j])
            basis.append(v)
        return basis

    def column_space_basis(self) -> list[list]:
        """Basis of the column space (original columns at pivot positions)."""
        _, pivots = self.rref()
        return [self.col(j) for j in pivots]

    def row_space_rref(self) -> list[list]:
        """Canonical row-space basis: nonzero rows of the RREF."""
        R, pivots = self.rref()
        return [R.rows[i] for i in range(len(pivots))]

    def solve(self, b):
        """One solution x of A x = b; raises LinAlgError if inconsistent."""
        f = self.field
        aug = Matrix(f, [row + [bv] for row, bv in zip(self.rows, b)])
        R, pivots = aug.rref()
        if self.n in pivots:
            raise LinAlgError("inconsistent linear system")
        x = [f.zero()] * self.n
        for i, pc in enumerate(pivots):
            x[pc] = R.rows[i][self.n]
        return x

    def inverse(self) -> "Matrix":
        if self.m != self.n:
            raise LinAlgError("only square matrices invert")
        f = self.field
        ident = Matrix.identity(f, self.n)
        aug = Matrix(
            f, [row + irow for row, irow in zip(self.rows, ident.rows)]
        )
        R, pivots = aug.rref()
        if pivots != list(range(self.n)):
            raise LinAlgError("singular matrix")
        return Matrix(f, [row[self.n:] for row in R.rows[: self.n]])

    def det(self):
        if self.m != self.n:
            raise LinAlgError("determinant of non-square matrix")
        f = self.field
        work = [list(r) for r in self.rows]
        n = self.n
        sign = 1
        acc = f.one()
        for col in range(n):
            piv = -1
            for r in range(col, n):
                if not f.is_zero(work[r][col]):
                    piv = r
                    break
            if piv < 0:
                return f.zero()
            if piv != col:
                work[col], work[piv] = work[piv], work[col]
                sign = -sign
            acc = f.mul(acc, work[col][col])
            inv = f.inv(work[col][col])
            for r in range(col + 1, n):
                if not f.is_zero(work[r][col]):
                    c = f.mul(inv, work[r][col])
                    work[r] = [
                        f.sub(x, f.mul(c, y)) for x, y in zip(work[r], work[col])
                    ]
        return acc if sign > 0 else f.neg(acc)


def _int_row(row) -> list[int]:
    """Scale a Fraction row to a primitive integer row."""
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    if den == 1:
        out = [x.numerator for x in row]
    else:
        out = [x.numerator * (den // x.denominator) for x in row]
    g = 0
    for x in out:
        if x:
            g = gcd(g, abs(x))
            if g == 1:
                return out
    if g > 1:
        out = [x // g for x in out]
    return out


def span_rank(field: Field, vectors) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    return Matrix(field, vectors).rank()


def in_span(field: Field, vectors, v) -> bool:
    base = span_rank(field, vectors)
    return span_rank(field, list(vectors) + [v]) == base


def intersect_spaces(field: Field, basis_a, basis_b) -> list[list]:
    """Basis of the intersection of two column-spans in k^n."""
    basis_a, basis_b = list(basis_a), list(basis_b)
    if not basis_a or not basis_b:
        return []
    A = Matrix.from_cols(field, basis_a)
    B = Matrix.from_cols(field, basis_b)
    neg_b = [[field.neg(x) for x in row] for row in B.rows]
    stacked = Matrix(field, [ra + rb for ra, rb in zip(A.rows, neg_b)])
    out = []
    for k in stacked.kernel_basis():
        coeffs = k[: len(basis_a)]
        v = [field.zero()] * A.m
        for c, bvec in zip(coeffs, basis_a):
            v = vec_add(field, v, vec_scale(field, c, bvec))
        if not vec_is_zero(field, v):
            out.append(v)
    # the construction can repeat directions; reduce to a basis
    if not out:
        return []
    reduced = Matrix(field, out).row_space_rref()
    return reduced


def complete_basis(field: Field, vectors, dim: int) -> list[list]:
    """Extend independent vectors to a basis of k^dim using standard vectors.

    Returns only the appended vectors, chosen greedily from e_1, e_2, ...
    """
    cur = [list(v) for v in vectors]
    added = []
    r = span_rank(field, cur) if cur else 0
    if r != len(cur):
        raise LinAlgError("complete_basis needs independent input vectors")
    for j in range(dim):
        if r == dim:
            break
        e = [field.zero()] * dim
        e[j] = field.one()
        if span_rank(field, cur + [e]) > r:
            cur.append(e)
            added.append(e)
            r += 1
    if r != dim:
        raise LinAlgError("failed to complete basis")
    return added


def change_field(mat: Matrix, new_field: Field, convert) -> Matrix:
    """Map every entry through `convert` into `new_field`."""
    return Matrix(new_field, [[convert(x) for x in row] for row in mat.rows])
