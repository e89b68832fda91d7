"""Ternary quadratic forms, Hilbert symbols, and quaternion classes.

The conic attached to a net of bivectors decides the hardest branch of
the classification, through three questions answered here: what is the
normal form X^2 - a Y^2 - b Z^2 of a ternary form, is it isotropic over
the ground field, and which quaternion algebra (a, b) does it carry.

Over the rationals, isotropy is decided by Hilbert symbols on the
finite set of relevant places (infinity, 2, and the odd primes dividing
a or b); a quaternion class is stored as its ramified-place set, which
is a complete invariant.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldError, Nil7Error
from .fields import (
    AlgClosedModel,
    Field,
    PrimeField,
    Rationals,
    RealsModel,
    trial_factor,
)
from .linalg import Matrix

INF = "inf"


class TernaryForm:
    """Symmetric 3x3 Gram matrix of a quadratic form on a 3-space."""

    def __init__(self, field: Field, rows):
        self.field = field
        self.mat = Matrix(field, rows)
        if self.mat.m != 3 or self.mat.n != 3:
            raise Nil7Error("ternary form needs a 3x3 matrix")
        for i in range(3):
            for j in range(3):
                if not field.eq(self.mat.rows[i][j], self.mat.rows[j][i]):
                    raise Nil7Error("Gram matrix is not symmetric")

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def rank(self) -> int:
        return self.mat.rank()

    def evaluate(self, v):
        f = self.field
        w = self.mat.mat_vec(v)
        s = f.zero()
        for a, b in zip(v, w):
            s = f.add(s, f.mul(a, b))
        return s

    def bilinear(self, u, v):
        """Polarization B(u, v) = (Q(u+v) - Q(u) - Q(v)) / 2 = u^T G v."""
        f = self.field
        w = self.mat.mat_vec(v)
        s = f.zero()
        for a, b in zip(u, w):
            s = f.add(s, f.mul(a, b))
        return s


class ConicNormalForm:
    """Diagonal data (a, b) for Q ~ X^2 - a Y^2 - b Z^2 projectively.

    a = b = 0 encodes rank 1; b = 0, a != 0 encodes rank 2.
    """

    def __init__(self, field: Field, a, b):
        self.field = field
        self.a = a
        self.b = b

    @property
    def rank(self) -> int:
        za = self.field.is_zero(self.a)
        zb = self.field.is_zero(self.b)
        if za and zb:
            return 1
        if zb:
            return 2
        return 3

    def __repr__(self):
        return "ConicNormalForm(a=%s, b=%s)" % (
            self.field.fmt(self.a),
            self.field.fmt(self.b),
        )


def diagonalize_symmetric(gram: Matrix) -> tuple[list, Matrix]:
    """Congruence-diagonalize: returns (diagonal entries, T) with
    T^T G T diagonal; T columns are the new coordinate vectors."""
    f = gram.field
    n = gram.n
    G = Matrix(f, gram.rows)
    T = Matrix.identity(f, n)

    def bil(u, v):
        s = f.zero()
        w = gram.mat_vec(v)
        for a, b in zip(u, w):
            s = f.add(s, f.mul(a, b))
        return s

    basis = [T.col(j) for j in range(n)]
    out: list = []
    done: list = []
    vecs = list(basis)
    while vecs:
        # find a vector with nonzero square, fixing one up if needed
        pick = None
        for i, v in enumerate(vecs):
            if not f.is_zero(bil(v, v)):
                pick = i
                break
        if pick is None:
            # all squares vanish; find a pair with nonzero pairing
            pair = None
            for i in range(len(vecs)):
                for j in range(i + 1, len(vecs)):
                    if not f.is_zero(bil(vecs[i], vecs[j])):
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                # remaining space is in the radical
                for v in vecs:
                    done.append((f.zero(), v))
                break
            i, j = pair
            vecs[i] = [f.add(a, b) for a, b in zip(vecs[i], vecs[j])]
            pick = i
        v = vecs.pop(pick)
        q = bil(v, v)
        done.append((q, v))
        qinv = f.inv(q)
        vecs = [
            [
                f.sub(w_c, f.mul(f.mul(bil(v, w), qinv), v_c))
                for w_c, v_c in zip(w, v)
            ]
            for w in vecs
        ]
    diag = [q for q, _ in done]
    cols = [v for _, v in done]
    return diag, Matrix.from_cols(f, cols)


def normalize_conic(form: TernaryForm) -> tuple[ConicNormalForm, Matrix]:
    """Normal form (a, b) with canonical square-class representatives.

    Returns the normal form and the coordinate change T such that
    T^T G T is diagonal(s, -s*a', -s*b') realizing Q ~ X^2 - aY^2 - bZ^2
    up to the projective scaling s and square factors.
    """
    f = form.field
    if form.is_zero():
        raise Nil7Error("cannot normalize the zero form")
    diag, T = diagonalize_symmetric(form.mat)
    # move nonzero entries to the front, keep the change consistent
    order = sorted(range(3), key=lambda i: f.is_zero(diag[i]))
    diag = [diag[i] for i in order]
    T = Matrix.from_cols(f, [T.col(i) for i in order])
    lead = diag[0]
    inv = f.inv(lead)
    scaled = [f.mul(inv, d) for d in diag]  # (1, d1, d2) projectively
    a = f.zero() if f.is_zero(scaled[1]) else f.square_class(f.neg(scaled[1]))
    b = f.zero() if f.is_zero(scaled[2]) else f.square_class(f.neg(scaled[2]))
    return ConicNormalForm(f, a, b), T


# -- rational place machinery -------------------------------------

def legendre_symbol(u: int, p: int) -> int:
    if p == 2 or p < 2:
        raise FieldError("legendre symbol needs an odd prime")
    if u % p == 0:
        raise FieldError("p divides u in legendre symbol")
    return 1 if pow(u % p, (p - 1) // 2, p) == 1 else -1


def _split_valuation(x: Fraction, p: int) -> tuple[int, int]:
    """x = p^alpha * u with u a p-unit; returns (alpha, u as integer mod-friendly pair folded)."""
    num, den = x.numerator, x.denominator
    alpha = 0
    while num % p == 0:
        num //= p
        alpha += 1
    while den % p == 0:
        den //= p
        alpha -= 1
    # u = num/den is a p-unit; fold into an integer representative mod p^3
    mod = p**3 if p > 2 else 16
    u = num * pow(den, -1, mod) % mod
    return alpha, u


def hilbert_symbol(a: Fraction, b: Fraction, place) -> int:
    """Hilbert symbol (a, b)_v for v = INF, 2, or an odd prime."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise FieldError("hilbert symbol needs nonzero arguments")
    if place == INF:
        return -1 if a < 0 and b < 0 else 1
    p = int(place)
    if p == 2:
        alpha, u = _split_valuation(a, 2)
        beta, v = _split_valuation(b, 2)
        eps_u = (u - 1) // 2 % 2
        eps_v = (v - 1) // 2 % 2
        om_u = (u * u - 1) // 8 % 2
        om_v = (v * v - 1) // 8 % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    if p < 3:
        raise FieldError("bad place %r" % (place,))
    alpha, u = _split_valuation(a, p)
    beta, v = _split_valuation(b, p)
    eps_p = (p - 1) // 2 % 2
    s = (-1) ** (alpha * beta * eps_p)
    if beta % 2:
        s *= legendre_symbol(u, p)
    if alpha % 2:
        s *= legendre_symbol(v, p)
    return s


def relevant_places(a: Fraction, b: Fraction) -> list:
    """{infinity, 2} plus the odd primes dividing numerator or denominator."""
    places = [INF, 2]
    primes: set[int] = set()
    for x in (a, b):
        for n in (x.numerator, x.denominator):
            for q in trial_factor(abs(n)):
                if q > 2:
                    primes.add(q)
    return places + sorted(primes)


class QuaternionClass:
    """Similarity class of the quaternion algebra (a, b) over a field."""

    def __init__(self, field: Field, ramified=frozenset()):
        self.field = field
        self.ramified = frozenset(ramified)

    @property
    def split(self) -> bool:
        return not self.ramified

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuaternionClass)
            and self.field == other.field
            and self.ramified == other.ramified
        )

    def __hash__(self):
        return hash((repr(self.field.descriptor()), self.ramified))

    def __repr__(self):
        if self.split:
            return "QuaternionClass(split)"
        return "QuaternionClass(ramified=%s)" % sorted(self.ramified, key=str)

    def to_json(self):
        return {
            "split": self.split,
            "ramified": sorted(
                (str(v) for v in self.ramified), key=lambda s: (s != "inf", s)
            ),
        }


def quaternion_class(a, b, field: Field) -> QuaternionClass:
    """Ramified-place description of the quaternion algebra (a, b)."""
    if field.is_zero(field.coerce(a)) or field.is_zero(field.coerce(b)):
        raise FieldError("quaternion parameters must be nonzero")
    if isinstance(field, (PrimeField, AlgClosedModel)):
        return QuaternionClass(field)
    if isinstance(field, RealsModel):
        a, b = field.coerce(a), field.coerce(b)
        ram = {INF} if (a < 0 and b < 0) else set()
        return QuaternionClass(field, ram)
    if isinstance(field, Rationals):
        a, b = Fraction(a), Fraction(b)
        ram = {
            v for v in relevant_places(a, b) if hilbert_symbol(a, b, v) == -1
        }
        if len(ram) % 2:
            raise Nil7Error(
                "odd ramified set %r for (%s, %s); product formula violated"
                % (sorted(ram, key=str), a, b)
            )
        return QuaternionClass(field, ram)
    raise FieldError("quaternion classes unsupported over %s" % field.kind)


def quaternion_iso(c1: QuaternionClass, c2: QuaternionClass) -> bool:
    if c1.field != c2.field:
        raise FieldError("quaternion classes over different fields")
    return c1.ramified == c2.ramified


def is_isotropic_ternary(nf: ConicNormalForm, field: Field) -> bool:
    """Does X^2 - a Y^2 - b Z^2 = 0 have a nonzero solution over `field`."""
    if nf.rank != 3:
        raise Nil7Error("isotropy test requires rank 3")
    if isinstance(field, (PrimeField, AlgClosedModel)):
        return True
    if isinstance(field, RealsModel):
        return not (nf.a < 0 and nf.b < 0)
    if isinstance(field, Rationals):
        return quaternion_class(nf.a, nf.b, field).split
    raise FieldError("isotropy unsupported over %s" % field.kind)


def conic_point_count(nf: ConicNormalForm, field: PrimeField) -> int:
    """Number of projective points of the conic over F_p (rank 3)."""
    if nf.rank != 3:
        raise Nil7Error("point count requires rank 3")
    if not isinstance(field, PrimeField):
        raise FieldError("point count is a finite-field operation")
    p = field.p
    a, b = nf.a % p, nf.b % p
    count = 0
    # projective representatives: (1, y, z); (0, 1, z); (0, 0, 1)
    for y in range(p):
        for z in range(p):
            if (1 - a * y * y - b * z * z) % p == 0:
                count += 1
    for z in range(p):
        if (-a - b * z * z) % p == 0:
            count += 1
    if (-b) % p == 0:
        count += 1
    return count


# -- quaternion element arithmetic (for property tests) ------------

class Quaternion:
    """Element xi0 + xi1 x1 + xi2 x2 + xi3 x3 of the algebra (a, b)."""

    __slots__ = ("field", "a", "b", "c")

    def __init__(self, field: Field, a, b, coords):
        self.field = field
        self.a = a
        self.b = b
        self.c = [field.coerce(x) for x in coords]
        if len(self.c) != 4:
            raise Nil7Error("quaternions have four coordinates")

    def _check(self, other: "Quaternion") -> None:
        if (
            self.field != other.field
            or not self.field.eq(self.a, other.a)
            or not self.field.eq(self.b, other.b)
        ):
            raise Nil7Error("quaternions from different algebras")

    def __add__(self, other: "Quaternion") -> "Quaternion":
        self._check(other)
        f = self.field
        return Quaternion(
            f, self.a, self.b, [f.add(x, y) for x, y in zip(self.c, other.c)]
        )

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        """Product per the defining table: x1^2 = a, x2^2 = b, x1 x2 = x3."""
        self._check(other)
        f = self.field
        a, b = self.a, self.b
        p0, p1, p2, p3 = self.c
        q0, q1, q2, q3 = other.c

        def m(x, y):
            return f.mul(x, y)

        ab = m(a, b)
        r0 = m(p0, q0)
        r0 = f.add(r0, m(a, m(p1, q1)))
        r0 = f.add(r0, m(b, m(p2, q2)))
        r0 = f.sub(r0, m(ab, m(p3, q3)))
        r1 = f.add(m(p0, q1), m(p1, q0))
        r1 = f.sub(r1, m(b, m(p2, q3)))
        r1 = f.add(r1, m(b, m(p3, q2)))
        r2 = f.add(m(p0, q2), m(p2, q0))
        r2 = f.add(r2, m(a, m(p1, q3)))
        r2 = f.sub(r2, m(a, m(p3, q1)))
        r3 = f.add(m(p0, q3), m(p3, q0))
        r3 = f.add(r3, m(p1, q2))
        r3 = f.sub(r3, m(p2, q1))
        return Quaternion(f, a, b, [r0, r1, r2, r3])

    def conjugate(self) -> "Quaternion":
        f = self.field
        return Quaternion(
            f, self.a, self.b, [self.c[0]] + [f.neg(x) for x in self.c[1:]]
        )

    def norm(self):
        """N(q) = xi0^2 - a xi1^2 - b xi2^2 + ab xi3^2."""
        f = self.field
        x0, x1, x2, x3 = self.c
        n = f.mul(x0, x0)
        n = f.sub(n, f.mul(self.a, f.mul(x1, x1)))
        n = f.sub(n, f.mul(self.b, f.mul(x2, x2)))
        n = f.add(n, f.mul(f.mul(self.a, self.b), f.mul(x3, x3)))
        return n

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Quaternion)
            and self.field == other.field
            and all(self.field.eq(x, y) for x, y in zip(self.c, other.c))
        )

    def __repr__(self):
        f = self.field
        return "Quaternion(%s)" % ", ".join(f.fmt(x) for x in self.c)
