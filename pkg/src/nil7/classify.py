"""Classification of 7-dimensional length-2 minimal algebras.

The pipeline follows the geometry of the span of the F1-differentials
inside the bivectors of W_0:

* signature (6,1): the single bivector is classified by its rank;
* signature (5,2): the pencil of bivectors meets the decomposable locus
  in a scheme read off the gcd of five binary quadratics;
* signature (4,3): the net of bivectors cuts a plane conic whose rank,
  square-class and isotropy data select the model.

Each branch also knows how to build an isomorphism certificate: a basis
change carrying the input onto the canonical model, assembled from a
prescribed-pairing dual basis (see _constructions) followed by a linear
solve for the generator mix.  Certificates are always verified before
they are returned.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import isqrt

from . import _constructions as con
from .errors import (
    CertificateError,
    ClassificationError,
    DependentNet,
    DependentPencil,
    InputError,
    LinAlgError,
    NotASquareError,
    NotFlatError,
    PointSearchExceeded,
    UnexpectedGcdDegree,
    WrongDimension,
    ZeroBivector,
)
from .exterior import KForm, bivector_matrix, lambda2_coordinates
from .fields import (
    AlgClosedModel,
    Field,
    PrimeField,
    QuadraticExtension,
    Rationals,
    RealsModel,
)
from .liealg import (
    Presentation,
    adapted_change,
    apply_basis_change,
    check_flatness,
    presentation_to_json,
    random_presentation,
)
from .linalg import Matrix, change_field, span_rank, vec_add, vec_scale
from .models import (
    PARAMETRIC_A,
    PARAMETRIC_AB,
    SHAPES,
    canonical_presentation,
    shape_label,
    shape_signature,
)
from .quadform import (
    TernaryForm,
    QuaternionClass,
    is_isotropic_ternary,
    normalize_conic,
    quaternion_class,
)

DEFAULT_HEIGHT_BOUND = 10**4
MODEL_FIELD_HEIGHT_CAP = 256

# quaternion pairs used to seed the two-parameter family over Q;
# isotropic pairs are harmless (they fold into the isotropic row)
DEFAULT_QUATERNION_PAIRS = [(-1, -1), (-1, 3), (3, 5), (-2, -5)]
DEFAULT_SQUARE_CLASS_SAMPLE = [-1, 2, -2, 3, -3, 5]


class CanonicalForm:
    """A Table-1 row instance: shape tag plus canonical parameters."""

    def __init__(self, field: Field, tag: str, params: dict | None = None):
        if tag not in SHAPES:
            raise ClassificationError("unknown shape tag %r" % (tag,))
        self.field = field
        self.tag = tag
        self.signature = shape_signature(tag)
        self.label = shape_label(tag)
        self.params = dict(params or {})
        self.qclass: QuaternionClass | None = None
        if tag in PARAMETRIC_AB:
            self.qclass = quaternion_class(
                self.params["a"], self.params["b"], field
            )

    def presentation(self) -> Presentation:
        return canonical_presentation(self.tag, self.field, self.params)

    def _key(self):
        if self.tag in PARAMETRIC_AB:
            return (self.tag, ("quaternion", self.qclass.ramified))
        if self.tag in PARAMETRIC_A:
            return (self.tag, ("a", self.field.fmt(self.params["a"])))
        return (self.tag, None)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CanonicalForm)
            and self.field == other.field
            and self._key() == other._key()
        )

    def __hash__(self):
        return hash((repr(self.field.descriptor()),) + self._key())

    def __repr__(self):
        extra = ""
        if self.params:
            extra = "; " + ", ".join(
                "%s=%s" % (k, self.field.fmt(v)) for k, v in sorted(self.params.items())
            )
        return "CanonicalForm(%s%s)" % (self.tag, extra)

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "label": self.label,
            "signature": list(self.signature),
            "params": {
                k: self.field.to_json(v) for k, v in sorted(self.params.items())
            },
            "quaternion": self.qclass.to_json() if self.qclass else None,
            "differentials": presentation_to_json(self.presentation())[
                "differentials"
            ],
        }


class Certificate:
    """Verified basis change onto the canonical model, or a reason why not.

    `matrix` is a 7x7 new-in-old basis change over the ground field.
    `extension` optionally carries an auditable witness over k(sqrt(a)):
    a basis change onto the split model of the corresponding row.
    """

    def __init__(self, matrix: Matrix | None, reason: str | None = None,
                 extension: dict | None = None):
        self.matrix = matrix
        self.reason = reason
        self.extension = extension

    def to_json(self) -> dict:
        out: dict = {"status": "base" if self.matrix is not None else "omitted"}
        if self.matrix is not None:
            f = self.matrix.field
            out["matrix"] = [[f.to_json(x) for x in row] for row in self.matrix.rows]
        else:
            out["reason"] = self.reason
        if self.extension:
            ext = self.extension["matrix"].field
            out["extension"] = {
                "a": self.extension["a_json"],
                "split_tag": self.extension["split_tag"],
                "matrix": [
                    [ext.to_json(x) for x in row]
                    for row in self.extension["matrix"].rows
                ],
            }
        return out


class ClassificationReport:
    def __init__(self, alg: Presentation, signature, trace, canonical,
                 certificate):
        self.field = alg.field
        self.input_json = presentation_to_json(alg)
        self.signature = signature
        self.trace = trace
        self.canonical = canonical
        self.certificate = certificate

    def to_json(self) -> dict:
        return {
            "input": self.input_json,
            "signature": list(self.signature),
            "trace": [{"branch": b, "witness": w} for b, w in self.trace],
            "canonical": self.canonical.to_json(),
            "certificate": self.certificate.to_json()
            if self.certificate is not None
            else None,
        }


class PencilClass:
    """Position of the (5,2) pencil relative to the decomposable locus."""

    CONTAINED = "contained"
    BISECANT = "bisecant"
    BISECANT_CONJUGATE = "bisecant-conjugate"
    TANGENT_LAGRANGIAN = "tangent-lagrangian"
    TANGENT_LINE = "tangent-line"
    DISJOINT = "disjoint"

    def __init__(self, kind: str, data: dict | None = None):
        self.kind = kind
        self.data = dict(data or {})

    def __repr__(self):
        return "PencilClass(%s)" % self.kind


# -- small helpers --------------------------------------------------

def _upper_entries(M: Matrix) -> list:
    return [M.rows[i][j] for i, j in combinations(range(M.n), 2)]


def _block_diag(field: Field, A: Matrix, B: Matrix) -> Matrix:
    n = A.n + B.n
    z = field.zero()
    rows = [[z] * n for _ in range(n)]
    for i in range(A.n):
        for j in range(A.n):
            rows[i][j] = A.rows[i][j]
    for i in range(B.n):
        for j in range(B.n):
            rows[A.n + i][A.n + j] = B.rows[i][j]
    return Matrix(field, rows)


def _member_matrix(field: Field, coeffs, mats: list[Matrix]) -> Matrix:
    acc = Matrix.zero(field, mats[0].m, mats[0].n)
    for c, M in zip(coeffs, mats):
        if not field.is_zero(c):
            acc = acc + M.scale(c)
    return acc


def _solve_generator_mix(field: Field, transformed: list[Matrix],
                         targets: list[Matrix]) -> Matrix:
    """S with sum_i S[i][j] * transformed_i = target_j; S invertible."""
    A = Matrix.from_cols(field, [_upper_entries(M) for M in transformed])
    cols = []
    for T in targets:
        try:
            cols.append(A.solve(_upper_entries(T)))
        except LinAlgError as exc:
            raise CertificateError(
                "canonical generator not in transformed span: %s" % exc
            ) from exc
    S = Matrix.from_cols(field, cols)
    try:
        S.inverse()
    except LinAlgError as exc:
        raise CertificateError("generator mix is singular") from exc
    return S


def _certificate_matrix(alg: Presentation, P0: Matrix, f0: int,
                        phis: list[KForm], ucols, tag: str,
                        params: dict) -> Matrix:
    """Assemble and verify the full 7x7 certificate for a dual basis."""
    field = alg.field
    U = con.u_matrix(field, ucols)
    T = U.inverse().transpose()
    mats = [bivector_matrix(phi) for phi in phis]
    Ut = U.transpose()
    transformed = [Ut @ C @ U for C in mats]
    model = canonical_presentation(tag, field, params)
    targets = [
        bivector_matrix(model.diffs[f0 + i].restrict(f0))
        for i in range(len(phis))
    ]
    S = _solve_generator_mix(field, transformed, targets)
    P = P0 @ _block_diag(field, T, S)
    if apply_basis_change(alg, P) != model:
        raise CertificateError("certificate verification failed for %s" % tag)
    return P


def _extension_setup(field: Field, a0):
    """Quadratic extension used for conjugate-root constructions.

    The two model fields share rational element arithmetic, so their
    constructions run over Q(sqrt(a0)); elements transfer unchanged.
    """
    if isinstance(field, PrimeField):
        base = field
    else:
        base = Rationals()
    ext = QuadraticExtension(base, base.coerce(a0))
    return base, ext


def _lift_matrix(mat: Matrix, ext: QuadraticExtension) -> Matrix:
    return change_field(mat, ext, ext.embed)


def _project_cols(ext: QuadraticExtension, field: Field, cols) -> list[list]:
    return [[field.coerce(ext.project(x)) for x in col] for col in cols]


def _conj_vec(ext: QuadraticExtension, v):
    return [ext.conj(x) for x in v]


def _sqrt_base(field: Field, x):
    """Square root in the ground field; NotASquareError propagates."""
    return field.sqrt(x)


# -- conic point search ---------------------------------------------

def _conic_point_search(field: Field, diag, height_bound: int):
    """Projective zero of d0 X^2 + d1 Y^2 + d2 Z^2, or None (model fields).

    Over Rationals the form is known isotropic, so exhaustion of the
    height bound raises PointSearchExceeded.
    """
    d0, d1, d2 = diag
    if isinstance(field, PrimeField):
        p = field.p
        e = [x % p for x in (d0, d1, d2)]
        for y in range(p):
            for z in range(p):
                if (e[0] + e[1] * y * y + e[2] * z * z) % p == 0:
                    return [field.one(), field.coerce(y), field.coerce(z)]
        for z in range(p):
            if (e[1] + e[2] * z * z) % p == 0:
                return [field.zero(), field.one(), field.coerce(z)]
        raise ClassificationError("conic over F_%d has no points" % p)
    fr = [Fraction(x) for x in (d0, d1, d2)]
    den = 1
    for x in fr:
        den *= x.denominator
    e = [int(x * den) for x in fr]
    g = 0
    for x in e:
        g = _gcd_int(g, abs(x))
    e = [x // g for x in e]
    rational = isinstance(field, Rationals)
    bound = height_bound if rational else min(height_bound, MODEL_FIELD_HEIGHT_CAP)
    for s in range(0, bound + 1):
        edge = [(y, s) for y in range(s + 1)] + [(s, z) for z in range(s)]
        for y, z in edge:
            if y == 0 and z == 0:
                continue
            num = -(e[1] * y * y + e[2] * z * z) * e[0]
            if num < 0:
                continue
            r = isqrt(num)
            if r * r == num:
                return [
                    field.coerce(Fraction(r, e[0])),
                    field.coerce(y),
                    field.coerce(z),
                ]
    if rational:
        raise PointSearchExceeded(
            "no rational conic point of height <= %d" % bound
        )
    return None


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# -- (6,1) ----------------------------------------------------------

def classify_61(field: Field, phi: KForm):
    """Rank decides everything; returns (tag, params, trace, builder)."""
    C = bivector_matrix(phi)
    r = C.rank()
    if r == 0:
        raise ZeroBivector("the (6,1) differential vanishes")
    tag = "61-rank%d" % r

    def builder():
        return con.symplectic_basis(field, C), None

    return tag, {}, [("bivector-rank", r)], builder


# -- (5,2) ----------------------------------------------------------

def _pencil_quadratics(field: Field, phi6: KForm, phi7: KForm):
    """The five binary quadratics: Lambda^4-coordinates of the member's
    wedge square, as (A, B, C) triples in (lambda, mu)."""
    w66 = phi6.wedge(phi6)
    w67 = phi6.wedge(phi7)
    w77 = phi7.wedge(phi7)
    two = field.from_int(2)
    quads = []
    for idx in combinations(range(1, 6), 4):
        A = w66.coeffs.get(idx, field.zero())
        B = field.mul(two, w67.coeffs.get(idx, field.zero()))
        C = w77.coeffs.get(idx, field.zero())
        if not (field.is_zero(A) and field.is_zero(B) and field.is_zero(C)):
            quads.append((A, B, C))
    return quads


def _poly_trimmed(field: Field, coeffs: list) -> list:
    out = list(coeffs)
    while out and field.is_zero(out[-1]):
        out.pop()
    return out


def _poly_mod(field: Field, a: list, b: list) -> list:
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    inv = field.inv(lead)
    while len(a) - 1 >= db and a:
        if field.is_zero(a[-1]):
            a.pop()
            continue
        f = field.mul(a[-1], inv)
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] = field.sub(a[shift + i], field.mul(f, c))
        a = _poly_trimmed(field, a)
    return a


def _poly_gcd(field: Field, polys: list[list]) -> list:
    """Monic gcd of dehomogenized quadratics (Euclid)."""
    g: list = []
    for p in polys:
        a, b = g, _poly_trimmed(field, p)
        while b:
            a, b = b, _poly_mod(field, a, b)
        g = a
    if g:
        inv = field.inv(g[-1])
        g = [field.mul(inv, c) for c in g]
    return g


def pencil_position(field: Field, phi6: KForm, phi7: KForm) -> PencilClass:
    if span_rank(
        field, [lambda2_coordinates(phi6), lambda2_coordinates(phi7)]
    ) != 2:
        raise DependentPencil("pencil differentials are dependent")
    quads = _pencil_quadratics(field, phi6, phi7)
    if not quads:
        return PencilClass(PencilClass.CONTAINED, {"gcd_degree": None})
    polys = []
    mu_mult = 2
    for A, B, C in quads:
        poly = _poly_trimmed(field, [C, B, A])
        polys.append(poly)
        mu_mult = min(mu_mult, 2 - (len(poly) - 1))
    g = _poly_gcd(field, polys)
    total = (len(g) - 1) + mu_mult
    if total == 0:
        return PencilClass(PencilClass.DISJOINT, {"gcd_degree": 0})
    zero, one = field.zero(), field.one()
    if total == 1:
        # a single reduced intersection point: the line crosses the
        # rank-2 locus transversally at one rational member
        root = (one, zero) if mu_mult == 1 else (field.neg(g[0]), one)
        data = {"gcd_degree": 1, "root": root}
        return _tangent_subcase(field, phi6, phi7, data)
    # reconstruct the homogeneous degree-2 gcd as (A, B, C)
    if mu_mult == 0:
        A, B, C = one, g[1], g[0]
    elif mu_mult == 1:
        A, B, C = zero, one, g[0]
    else:
        A, B, C = zero, zero, one
    disc = field.sub(field.mul(B, B), field.mul(field.from_int(4), field.mul(A, C)))
    data = {"gcd_degree": 2, "quadratic": (A, B, C), "disc": disc}
    if field.is_zero(disc):
        if not field.is_zero(A):
            data["root"] = (
                field.div(field.neg(B), field.mul(field.from_int(2), A)),
                one,
            )
        else:
            # disc = B^2 = 0 forces B = 0, so the double root is mu = 0
            data["root"] = (one, zero)
        return _tangent_subcase(field, phi6, phi7, data)
    if field.is_square(disc):
        return PencilClass(PencilClass.BISECANT, data)
    data["a"] = field.square_class(disc)
    return PencilClass(PencilClass.BISECANT_CONJUGATE, data)


def _tangent_subcase(field: Field, phi6, phi7, data: dict) -> PencilClass:
    root = data["root"]
    mats = [bivector_matrix(phi6), bivector_matrix(phi7)]
    Cp = _member_matrix(field, root, mats)
    if Cp.rank() != 2:
        if data["gcd_degree"] == 1:
            raise UnexpectedGcdDegree(
                "degree-1 pencil gcd whose root is not a rank-2 member"
            )
        raise ClassificationError("double-root member is not rank 2")
    one, zero = field.one(), field.zero()
    Cq = None
    q_coeffs = None
    for cand in ((zero, one), (one, zero), (one, one)):
        M = _member_matrix(field, cand, mats)
        if M.rank() == 4:
            Cq, q_coeffs = M, cand
            break
    if Cq is None:
        raise ClassificationError("tangent pencil has no rank-4 member")
    kp = Cp.kernel_basis()
    rows = [
        [con.pair(field, Cq, u, v) for v in kp] for u in kp
    ]
    r = Matrix(field, rows).rank()
    data = dict(data, q_coeffs=q_coeffs)
    if r == 0:
        return PencilClass(PencilClass.TANGENT_LAGRANGIAN, data)
    if r == 2:
        return PencilClass(PencilClass.TANGENT_LINE, data)
    raise ClassificationError("tangent restriction has odd structure")


_PENCIL_TAGS = {
    PencilClass.CONTAINED: "52-contained",
    PencilClass.BISECANT: "52-bisecant",
    PencilClass.BISECANT_CONJUGATE: "52-bisecant-conjugate",
    PencilClass.TANGENT_LAGRANGIAN: "52-tangent-lagrangian",
    PencilClass.TANGENT_LINE: "52-tangent-line",
    PencilClass.DISJOINT: "52-disjoint",
}


def classify_52(field: Field, phi6: KForm, phi7: KForm):
    pos = pencil_position(field, phi6, phi7)
    tag = _PENCIL_TAGS[pos.kind]
    params: dict = {}
    if pos.kind == PencilClass.BISECANT_CONJUGATE:
        params["a"] = pos.data["a"]
    trace = [("pencil", _pencil_trace(field, pos))]
    mats = [bivector_matrix(phi6), bivector_matrix(phi7)]

    def builder():
        if pos.kind == PencilClass.CONTAINED:
            return con.dual_basis_contained(field, mats[0], mats[1]), None
        if pos.kind == PencilClass.BISECANT:
            r1, r2 = _split_roots(field, pos.data["quadratic"], pos.data["disc"])
            Cp = _member_matrix(field, r1, mats)
            Cm = _member_matrix(field, r2, mats)
            return con.dual_basis_bisecant(field, Cp, Cm), None
        if pos.kind == PencilClass.TANGENT_LAGRANGIAN:
            Cp = _member_matrix(field, pos.data["root"], mats)
            Cq = _member_matrix(field, pos.data["q_coeffs"], mats)
            return con.dual_basis_tangent_lagrangian(field, Cp, Cq), None
        if pos.kind == PencilClass.TANGENT_LINE:
            Cp = _member_matrix(field, pos.data["root"], mats)
            Cq = _member_matrix(field, pos.data["q_coeffs"], mats)
            return con.dual_basis_tangent_line(field, Cp, Cq), None
        if pos.kind == PencilClass.DISJOINT:
            return con.dual_basis_disjoint(field, mats[0], mats[1]), None
        return _conjugate_pencil_basis(field, mats, pos.data)

    return tag, params, trace, builder


def _pencil_trace(field: Field, pos: PencilClass) -> dict:
    out = {"kind": pos.kind, "gcd_degree": pos.data.get("gcd_degree")}
    if "disc" in pos.data:
        out["disc"] = field.fmt(pos.data["disc"])
    if "a" in pos.data:
        out["a"] = field.fmt(pos.data["a"])
    return out


def _split_roots(field: Field, quad, disc):
    """Both roots of a split quadratic, as projective (lambda, mu)."""
    A, B, C = quad
    if not field.is_zero(A):
        s = _sqrt_base(field, disc)
        twoa = field.mul(field.from_int(2), A)
        t1 = field.div(field.sub(s, B), twoa)
        t2 = field.div(field.sub(field.neg(B), s), twoa)
        return (t1, field.one()), (t2, field.one())
    # A = 0, B != 0: mu * (B lambda + C mu)
    return (field.one(), field.zero()), (field.div(field.neg(C), B), field.one())


def _conjugate_pencil_basis(field: Field, mats, data: dict):
    """(5,2) conjugate-root case: descend from k(sqrt(a)) to k."""
    A, B, C = data["quadratic"]
    disc = data["disc"]
    a0 = data["a"]
    r = field.div(field.neg(B), field.mul(field.from_int(2), A))
    s_val = field.div(
        _sqrt_base(field, field.div(disc, a0)),
        field.mul(field.from_int(2), A),
    )
    base, ext = _extension_setup(field, a0)
    emats = [_lift_matrix(M, ext) for M in mats]
    t_plus = (base.coerce(r), base.coerce(s_val))
    Cplus = emats[0].scale(t_plus) + emats[1]
    Cminus = emats[0].scale(ext.conj(t_plus)) + emats[1]
    km = Cminus.kernel_basis()
    if len(km) != 3:
        raise CertificateError("conjugate member is not rank 2")
    u1, u2 = con.symplectic_pair(ext, Cplus, km)
    u3, u4 = _conj_vec(ext, u1), _conj_vec(ext, u2)
    shared = con.joint_kernel(field, mats)
    if len(shared) != 1:
        raise CertificateError("pencil kernel is not a line")
    v1 = vec_add(ext, u1, u3)
    v2 = vec_scale(ext, ext.gen(), [ext.sub(a, b) for a, b in zip(u1, u3)])
    v3 = vec_add(ext, u2, u4)
    v4 = vec_scale(ext, ext.gen(), [ext.sub(a, b) for a, b in zip(u2, u4)])
    ucols = _project_cols(ext, field, [v1, v2, v3, v4])
    ucols.append(shared[0])
    ext_data = {
        "ext": ext,
        "a0": a0,
        "split_tag": "52-bisecant",
        "ucols_ext": [u1, u2, u3, u4, [ext.embed(x) for x in shared[0]]],
    }
    return ucols, ext_data


# -- (4,3) ----------------------------------------------------------

def net_conic(field: Field, phi5: KForm, phi6: KForm, phi7: KForm) -> TernaryForm:
    """Gram form of the rank-2 locus: Q(X) = top((sum X_i phi_i)^2)."""
    phis = [phi5, phi6, phi7]
    if span_rank(field, [lambda2_coordinates(p) for p in phis]) != 3:
        raise DependentNet("net differentials are dependent")
    top = (1, 2, 3, 4)
    rows = [
        [phis[i].wedge(phis[j]).coeffs.get(top, field.zero()) for j in range(3)]
        for i in range(3)
    ]
    return TernaryForm(field, rows)


def classify_43(field: Field, phi5: KForm, phi6: KForm, phi7: KForm,
                height_bound: int = DEFAULT_HEIGHT_BOUND):
    Q = net_conic(field, phi5, phi6, phi7)
    mats = [bivector_matrix(p) for p in (phi5, phi6, phi7)]
    if Q.is_zero():
        shared = con.joint_kernel(field, mats)
        trace = [("conic", {"rank": 0, "shared_kernel_dim": len(shared)})]
        if len(shared) == 1:
            def builder():
                return con.dual_basis_hyperplane(field, *mats), None
            return "43-hyperplane", {}, trace, builder
        if len(shared) == 0:
            def builder():
                return con.dual_basis_common_line(field, *mats), None
            return "43-common-line", {}, trace, builder
        raise ClassificationError(
            "zero conic with shared kernel of dimension %d" % len(shared)
        )
    nf, Tdiag = normalize_conic(Q)
    D = Tdiag.transpose() @ Q.mat @ Tdiag
    rank = nf.rank
    if rank == 1:
        trace = [("conic", {"rank": 1})]

        def builder():
            rad = Q.mat.kernel_basis()
            if len(rad) != 2:
                raise CertificateError("rank-1 conic radical is not a plane")
            Ca = _member_matrix(field, rad[0], mats)
            Cb = _member_matrix(field, rad[1], mats)
            c_dir = con.pick_outside(
                field, list(con._standard_vectors(field, 3)), rad
            )
            Cc = _member_matrix(field, c_dir, mats)
            if Ca.rank() != 2 or Cb.rank() != 2 or Cc.rank() != 4:
                raise CertificateError("double-line member ranks are off")
            return con.dual_basis_double_line(field, Ca, Cb, Cc), None

        return "43-double-line", {}, trace, builder
    if rank == 2:
        a0 = nf.a
        if field.eq(a0, field.one()):
            trace = [("conic", {"rank": 2, "a": field.fmt(a0)})]

            def builder():
                return _pair_lines_basis(field, mats, D, Tdiag), None

            return "43-pair-lines", {}, trace, builder
        trace = [("conic", {"rank": 2, "a": field.fmt(a0)})]

        def builder():
            return _pair_lines_conjugate_basis(field, mats, D, Tdiag, a0)

        return "43-pair-lines-conjugate", {"a": a0}, trace, builder
    isotropic = is_isotropic_ternary(nf, field)
    if isotropic:
        trace = [("conic", {"rank": 3, "isotropic": True})]

        def builder():
            return _smooth_isotropic_basis(
                field, mats, Q, D, Tdiag, height_bound
            ), None

        return "43-smooth-isotropic", {}, trace, builder
    a0, b0 = nf.a, nf.b
    trace = [
        ("conic", {"rank": 3, "isotropic": False,
                   "a": field.fmt(a0), "b": field.fmt(b0)})
    ]

    def builder():
        return _smooth_anisotropic_basis(field, mats, D, Tdiag, a0, b0), None

    return "43-smooth-anisotropic", {"a": a0, "b": b0}, trace, builder


def _pair_lines_basis(field: Field, mats, D: Matrix, Tdiag: Matrix):
    d0, d1 = D.rows[0][0], D.rows[1][1]
    tau = _sqrt_base(field, field.div(field.neg(d1), d0))
    n1, n2, np_ = Tdiag.col(0), Tdiag.col(1), Tdiag.col(2)
    ca = vec_add(field, vec_scale(field, tau, n1), n2)
    cb = [field.sub(a, b) for a, b in zip(vec_scale(field, tau, n1), n2)]
    Ca = _member_matrix(field, ca, mats)
    Cb = _member_matrix(field, cb, mats)
    Cp = _member_matrix(field, np_, mats)
    if Ca.rank() != 2 or Cb.rank() != 2 or Cp.rank() != 2:
        raise CertificateError("pair-lines member ranks are off")
    return con.dual_basis_pair_lines(field, Ca, Cb, Cp)


def _pair_lines_conjugate_basis(field: Field, mats, D: Matrix, Tdiag: Matrix,
                                a0):
    d0, d1 = D.rows[0][0], D.rows[1][1]
    rho = _sqrt_base(field, field.div(field.div(field.neg(d1), d0), a0))
    base, ext = _extension_setup(field, a0)
    emats = [_lift_matrix(M, ext) for M in mats]
    tau = (base.zero(), base.coerce(rho))
    n1 = [ext.embed(x) for x in Tdiag.col(0)]
    n2 = [ext.embed(x) for x in Tdiag.col(1)]
    np_ = Tdiag.col(2)
    cplus = [ext.add(ext.mul(tau, a), b) for a, b in zip(n1, n2)]
    Cplus = _member_matrix(ext, cplus, emats)
    Cminus = _member_matrix(ext, [ext.conj(x) for x in cplus], emats)
    Cp = _member_matrix(field, np_, mats)
    Cp_ext = _lift_matrix(Cp, ext)
    km = Cminus.kernel_basis()
    if len(km) != 2 or Cp.rank() != 2:
        raise CertificateError("conjugate line member ranks are off")
    # u2 spans ker(psi-) meet ker(psi_p); u1 completes ker(psi-)
    meet = con.joint_kernel(ext, [Cminus, Cp_ext])
    if len(meet) != 1:
        raise CertificateError("line/vertex kernels do not meet in a line")
    u2 = meet[0]
    u1 = con.pick_outside(ext, km, [u2])
    c = con.pair(ext, Cplus, u1, u2)
    if ext.is_zero(c):
        raise CertificateError("degenerate pairing in conjugate line case")
    u2 = vec_scale(ext, ext.inv(c), u2)
    u3, u4 = _conj_vec(ext, u1), _conj_vec(ext, u2)
    sq = ext.gen()
    v1 = vec_scale(ext, sq, [ext.sub(a, b) for a, b in zip(u1, u3)])
    v2 = vec_add(ext, u1, u3)
    v3 = vec_scale(ext, sq, [ext.sub(a, b) for a, b in zip(u2, u4)])
    v4 = vec_add(ext, u2, u4)
    ucols = _project_cols(ext, field, [v1, v2, v3, v4])
    ext_data = {
        "ext": ext,
        "a0": a0,
        "split_tag": "43-pair-lines",
        "ucols_ext": [u1, u2, u3, u4],
    }
    return ucols, ext_data


def _smooth_isotropic_basis(field: Field, mats, Q: TernaryForm, D: Matrix,
                            Tdiag: Matrix, height_bound: int):
    diag = [D.rows[i][i] for i in range(3)]
    P1 = _conic_point_search(field, diag, height_bound)
    if P1 is None:
        raise NotASquareError("no rational conic point within the search cap")
    i = next(j for j in range(3) if not field.is_zero(P1[j]))
    if all(field.is_zero(P1[j]) for j in range(3) if j != i):
        raise CertificateError("conic point lies on a coordinate axis")
    P2 = list(P1)
    P2[i] = field.neg(P2[i])
    c1 = Tdiag.mat_vec(P1)
    c2 = Tdiag.mat_vec(P2)
    Ca = _member_matrix(field, c1, mats)
    Cb = _member_matrix(field, c2, mats)
    if Ca.rank() != 2 or Cb.rank() != 2:
        raise CertificateError("conic point members are not rank 2")
    pole = Matrix(
        field, [Q.mat.mat_vec(c1), Q.mat.mat_vec(c2)]
    ).kernel_basis()
    if len(pole) != 1:
        raise CertificateError("chord pole is not unique")
    Cc = _member_matrix(field, pole[0], mats)
    if Cc.rank() != 4:
        raise CertificateError("pole member is not rank 4")
    return con.dual_basis_smooth_isotropic(field, Ca, Cb, Cc)


def _smooth_anisotropic_basis(field: Field, mats, D: Matrix, Tdiag: Matrix,
                              a0, b0):
    d0, d1 = D.rows[0][0], D.rows[1][1]
    rho = _sqrt_base(field, field.div(field.div(field.neg(d1), d0), a0))
    base, ext = _extension_setup(field, a0)
    emats = [_lift_matrix(M, ext) for M in mats]
    Tde = _lift_matrix(Tdiag, ext)
    pplus = [(base.zero(), base.coerce(rho)), ext.one(), ext.zero()]
    cplus = Tde.mat_vec(pplus)
    Cplus = _member_matrix(ext, cplus, emats)
    Cminus = _member_matrix(ext, [ext.conj(x) for x in cplus], emats)
    pole = Tdiag.col(2)
    Cc = _member_matrix(field, pole, mats)
    if Cc.rank() != 4:
        raise CertificateError("pole member is not rank 4")
    km = Cminus.kernel_basis()
    if len(km) != 2:
        raise CertificateError("conjugate point member is not rank 2")
    u1, u2 = con.symplectic_pair(ext, Cplus, km)
    u3, u4 = _conj_vec(ext, u1), _conj_vec(ext, u2)
    sq = ext.gen()
    v1 = vec_scale(ext, sq, [ext.sub(a, b) for a, b in zip(u1, u3)])
    v2 = vec_add(ext, u1, u3)
    v3 = vec_scale(ext, sq, [ext.sub(a, b) for a, b in zip(u2, u4)])
    v4 = vec_add(ext, u2, u4)
    vcols = _project_cols(ext, field, [v1, v2, v3, v4])
    return _anisotropic_tail(field, vcols, Cc, a0, b0)


def _anisotropic_tail(field: Field, vcols, Cc: Matrix, a0, b0):
    """Normalize the pole member to x1x2 - b x3x4 in the v-coordinates.

    The descent basis already carries the other two members onto scalar
    multiples of x1x4 + x2x3 and a x1x3 + x2x4; the remaining freedom
    (shifts inside the conjugate kernel, the half swap, the cross-term
    substitution and a diagonal rescale) only touches the pole member's
    pattern, and each step below preserves the first two patterns.
    """
    def mc(cols):
        return [[con.pair(field, Cc, u, v) for v in cols] for u in cols]

    def entry(M, i, j):
        return M[i][j]

    v = [list(c) for c in vcols]
    M = mc(v)
    zero = field.zero()

    def both_zero(M):
        return field.is_zero(entry(M, 0, 1)) and field.is_zero(entry(M, 2, 3))

    if both_zero(M):
        # shift u1 by a multiple of u2 to make a corner usable
        for s0, s1 in ((1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)):
            w = [list(c) for c in v]
            s0c, s1c = field.from_int(s0), field.from_int(s1)
            a_s1 = field.mul(field.coerce(a0), s1c)
            w[0] = vec_add(field, w[0], vec_add(
                field, vec_scale(field, s0c, v[2]), vec_scale(field, a_s1, v[3])))
            w[1] = vec_add(field, w[1], vec_add(
                field, vec_scale(field, s1c, v[2]), vec_scale(field, s0c, v[3])))
            Mw = mc(w)
            if not both_zero(Mw):
                v, M = w, Mw
                break
        else:
            raise CertificateError("cannot expose a usable pole corner")
    c13, c24 = entry(M, 0, 2), entry(M, 1, 3)
    if not (field.is_zero(c13) and field.is_zero(c24)):
        fixed = False
        c12, c34 = entry(M, 0, 1), entry(M, 2, 3)
        candidates = []
        if not field.is_zero(c12):
            t = field.div(c24, c12)
            candidates += [("u2", t), ("u2", field.neg(t))]
        if not field.is_zero(c34):
            s = field.div(c24, c34)
            candidates += [("u1", s), ("u1", field.neg(s))]
        for kind, t in candidates:
            w = [list(c) for c in v]
            at = field.mul(field.coerce(a0), t)
            if kind == "u2":
                w[2] = vec_add(field, w[2], vec_scale(field, at, v[1]))
                w[3] = vec_add(field, w[3], vec_scale(field, t, v[0]))
            else:
                w[0] = vec_add(field, w[0], vec_scale(field, at, v[3]))
                w[1] = vec_add(field, w[1], vec_scale(field, t, v[2]))
            Mw = mc(w)
            if field.is_zero(entry(Mw, 0, 2)) and field.is_zero(entry(Mw, 1, 3)):
                v, M = w, Mw
                fixed = True
                break
        if not fixed:
            raise CertificateError("cannot clear the pole cross terms")
    if field.is_zero(entry(M, 0, 1)):
        v = [v[2], v[3], v[0], v[1]]
        M = mc(v)
        if field.is_zero(entry(M, 0, 1)):
            raise CertificateError("pole member has no symplectic corner")
    c = entry(M, 0, 3)
    if not field.is_zero(c):
        fixed = False
        e = field.div(c, entry(M, 0, 1))
        for eps in (field.neg(e), e):
            w = [list(x) for x in v]
            w[2] = vec_add(field, w[2], vec_scale(field, eps, v[0]))
            w[3] = vec_add(field, w[3], vec_scale(field, eps, v[1]))
            Mw = mc(w)
            if field.is_zero(entry(Mw, 0, 3)) and field.is_zero(entry(Mw, 1, 2)):
                v, M = w, Mw
                fixed = True
                break
        if not fixed:
            raise CertificateError("cannot remove the pole cross pairing")
    for i, j in ((0, 2), (0, 3), (1, 2), (1, 3)):
        if not field.is_zero(entry(M, i, j)):
            raise CertificateError("pole member did not reach split shape")
    c12, c34 = entry(M, 0, 1), entry(M, 2, 3)
    b_cur = field.neg(field.div(c34, c12))
    if not field.eq(field.square_class(b_cur), field.coerce(b0)):
        raise CertificateError("pole square class disagrees with the conic")
    t = _sqrt_base(field, field.div(b_cur, field.coerce(b0)))
    lam = field.inv(t)
    v[2] = vec_scale(field, lam, v[2])
    v[3] = vec_scale(field, lam, v[3])
    return v


# -- the pipeline ---------------------------------------------------

def classify(alg: Presentation, with_certificate: bool = True,
             height_bound: int = DEFAULT_HEIGHT_BOUND) -> ClassificationReport:
    field = alg.field
    if isinstance(field, QuadraticExtension):
        raise InputError("classification runs over the four base fields only")
    if alg.n != 7:
        raise WrongDimension("expected dimension 7, got %d" % alg.n)
    if not check_flatness(alg):
        raise NotFlatError("differential does not square to zero")
    P0, filt = adapted_change(alg)
    f0, f1 = filt.dims
    alg0 = apply_basis_change(alg, P0)
    phis = [alg0.diffs[i].restrict(f0) for i in range(f0, 7)]
    trace = [("signature", {"f0": f0, "f1": f1})]
    if (f0, f1) == (6, 1):
        tag, params, t2, builder = classify_61(field, phis[0])
    elif (f0, f1) == (5, 2):
        tag, params, t2, builder = classify_52(field, phis[0], phis[1])
    elif (f0, f1) == (4, 3):
        tag, params, t2, builder = classify_43(
            field, phis[0], phis[1], phis[2], height_bound
        )
    else:
        raise ClassificationError("unsupported signature (%d,%d)" % (f0, f1))
    trace.extend(t2)
    canonical = CanonicalForm(field, tag, params)
    certificate = None
    if with_certificate:
        certificate = _build_certificate(
            alg, field, P0, f0, phis, tag, params, builder
        )
    return ClassificationReport(alg, (f0, f1), trace, canonical, certificate)


def _build_certificate(alg, field, P0, f0, phis, tag, params, builder):
    model_field = isinstance(field, (RealsModel, AlgClosedModel))
    try:
        ucols, ext_data = builder()
        P = _certificate_matrix(alg, P0, f0, phis, ucols, tag, params)
    except NotASquareError as exc:
        if model_field:
            reason = (
                "needs algebraic closure"
                if isinstance(field, AlgClosedModel)
                else "needs an irrational square root"
            )
            return Certificate(None, reason="%s (%s)" % (reason, exc))
        raise CertificateError(str(exc)) from exc
    extension = None
    if ext_data is not None and isinstance(field, (Rationals, PrimeField)):
        extension = _extension_witness(alg, P0, f0, phis, ext_data)
    return Certificate(P, extension=extension)


def _extension_witness(alg, P0, f0, phis, ext_data) -> dict:
    """Basis change onto the split model over k(sqrt(a)), verified."""
    ext = ext_data["ext"]
    split_tag = ext_data["split_tag"]
    U = con.u_matrix(ext, ext_data["ucols_ext"])
    T = U.inverse().transpose()
    mats = [_lift_matrix(bivector_matrix(phi), ext) for phi in phis]
    Ut = U.transpose()
    transformed = [Ut @ C @ U for C in mats]
    model = canonical_presentation(split_tag, ext)
    targets = [
        bivector_matrix(model.diffs[f0 + i].restrict(f0))
        for i in range(len(phis))
    ]
    S = _solve_generator_mix(ext, transformed, targets)
    P = _lift_matrix(P0, ext) @ _block_diag(ext, T, S)
    if apply_basis_change(alg, P) != model:
        raise CertificateError("extension witness verification failed")
    return {
        "matrix": P,
        "split_tag": split_tag,
        "a_json": ext.base.to_json(ext.a),
    }


def is_isomorphic(a: Presentation, b: Presentation) -> bool:
    if a.field != b.field:
        raise InputError("presentations live over different fields")
    ra = classify(a, with_certificate=False)
    rb = classify(b, with_certificate=False)
    return ra.canonical == rb.canonical


def _seed_params(tag: str, field: Field) -> list[dict]:
    if tag in PARAMETRIC_A:
        reps = field.square_class_reps()
        if reps is None:
            reps = [field.coerce(x) for x in DEFAULT_SQUARE_CLASS_SAMPLE]
        return [{"a": r} for r in reps if not field.eq(r, field.one())]
    if tag in PARAMETRIC_AB:
        if isinstance(field, Rationals):
            pairs = DEFAULT_QUATERNION_PAIRS
        elif isinstance(field, RealsModel):
            pairs = [(-1, -1)]
        else:
            return []
        return [
            {"a": field.coerce(a), "b": field.coerce(b)} for a, b in pairs
        ]
    return [{}]


def enumerate_classes(field: Field, samples: int = 0, seed=0,
                      height_bound: int = DEFAULT_HEIGHT_BOUND):
    """Distinct canonical forms from the model seeds plus random samples."""
    found: set[CanonicalForm] = set()
    for tag in SHAPES:
        for params in _seed_params(tag, field):
            alg = canonical_presentation(tag, field, params)
            rep = classify(alg, with_certificate=False, height_bound=height_bound)
            found.add(rep.canonical)
    rng = random.Random(seed)
    signatures = [(6, 1), (5, 2), (4, 3)]
    for i in range(samples):
        f0, f1 = signatures[i % 3]
        alg = random_presentation(f0, f1, rng.getrandbits(64), field)
        rep = classify(alg, with_certificate=False, height_bound=height_bound)
        found.add(rep.canonical)
    return found
