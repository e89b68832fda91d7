"""Certificate constructions for each canonical shape.

All constructions follow one recipe.  A bivector phi with coefficient
matrix C transforms under a basis change with new-in-old matrix T as
C' = T^-1 C T^-T, so prescribing the entries of C' is the same as
finding vectors u_1..u_m with prescribed pairings u_i^T C u_j and
setting T = U^-T.  Every case below builds such a U from kernels of the
relevant pencil/net members by exact linear solves; the generator-side
mix is recovered afterwards by solving for the canonical bivectors
inside the transformed span (classify._solve_generator_mix).

Raises CertificateError when an input violates the geometry the case
analysis guarantees; the classifier treats that as an internal bug.
"""

from __future__ import annotations

from .errors import CertificateError, LinAlgError
from .fields import Field
from .linalg import Matrix, complete_basis, span_rank, vec_add, vec_is_zero, vec_scale


def pair(field: Field, C: Matrix, u, v):
    """u^T C v."""
    w = C.mat_vec(v)
    s = field.zero()
    for a, b in zip(u, w):
        s = field.add(s, field.mul(a, b))
    return s


def pairing_row(field: Field, C: Matrix, u):
    """Row r with r . x = x^T C u, as a functional on x."""
    return C.mat_vec(u)


def solve_pairings(field: Field, conditions, dim: int, within=None):
    """Solve B_i(x, u_i) = c_i for x; conditions are (C, u, rhs) triples.

    With `within`, x is constrained to the span of the given vectors.
    Raises CertificateError if the system is inconsistent.
    """
    rows = []
    rhs = []
    for C, u, c in conditions:
        rows.append(pairing_row(field, C, u))
        rhs.append(c)
    if within is not None:
        basis = Matrix.from_cols(field, within)
        rows = [basis.transpose().mat_vec(r) for r in rows]
        try:
            z = Matrix(field, rows).solve(rhs)
        except LinAlgError as exc:
            raise CertificateError("pairing system unsolvable: %s" % exc) from exc
        return basis.mat_vec(z)
    try:
        return Matrix(field, rows).solve(rhs)
    except LinAlgError as exc:
        raise CertificateError("pairing system unsolvable: %s" % exc) from exc


def kernel_of(C: Matrix) -> list[list]:
    return C.kernel_basis()


def joint_kernel(field: Field, mats: list[Matrix]) -> list[list]:
    rows = []
    for C in mats:
        rows.extend(C.rows)
    return Matrix(field, rows).kernel_basis()


def symplectic_pair(field: Field, C: Matrix, vectors):
    """Vectors (u, v) in the span of `vectors` with u^T C v = 1."""
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            c = pair(field, C, vectors[i], vectors[j])
            if not field.is_zero(c):
                return vectors[i], vec_scale(field, field.inv(c), vectors[j])
    raise CertificateError("form vanishes on the given subspace")


def symplectic_basis(field: Field, C: Matrix) -> list[list]:
    """Vectors u_1..u_m with pairings u_{2i-1}^T C u_{2i} = 1, rest 0.

    Classical symplectic reduction; the trailing vectors span the
    kernel of C.  Deterministic (lowest-index pivots).
    """
    m = C.n
    vecs = []
    for i in range(m):
        e = [field.zero()] * m
        e[i] = field.one()
        vecs.append(e)
    out: list[list] = []
    while True:
        found = None
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                c = pair(field, C, vecs[i], vecs[j])
                if not field.is_zero(c):
                    found = (i, j, c)
                    break
            if found:
                break
        if not found:
            break
        i, j, c = found
        u = vecs[i]
        v = vec_scale(field, field.inv(c), vecs[j])
        rest = [vecs[k] for k in range(len(vecs)) if k not in (i, j)]
        new_rest = []
        for w in rest:
            w1 = vec_add(field, w, vec_scale(field, pair(field, C, v, w), u))
            w1 = vec_add(
                field, w1, vec_scale(field, field.neg(pair(field, C, u, w)), v)
            )
            new_rest.append(w1)
        out.extend([u, v])
        vecs = new_rest
    return out + vecs


def u_matrix(field: Field, cols) -> Matrix:
    U = Matrix.from_cols(field, cols)
    if U.m != U.n:
        raise CertificateError("dual basis is not square")
    try:
        U.inverse()
    except LinAlgError as exc:
        raise CertificateError("dual basis is singular") from exc
    return U


def basis_change_from_dual(field: Field, cols) -> Matrix:
    """T = U^-T for the dual-basis columns; C' = U^T C U for every member."""
    U = u_matrix(field, cols)
    return U.inverse().transpose()


def pick_outside(field: Field, candidates, avoid_span):
    """First candidate vector not inside the given span."""
    for v in candidates:
        if not avoid_span or span_rank(field, avoid_span + [v]) > len(avoid_span):
            return v
    raise CertificateError("no candidate vector outside the span")


def complete_to_square(field: Field, cols, dim: int):
    """Append standard vectors keeping independence, until dim columns."""
    return list(cols) + complete_basis(field, cols, dim)


# -- per-case dual bases -------------------------------------------

def dual_basis_contained(field: Field, C6: Matrix, C7: Matrix) -> list[list]:
    k6 = kernel_of(C6)
    k7 = kernel_of(C7)
    both = joint_kernel(field, [C6, C7])
    if len(both) != 2 or len(k6) != 3 or len(k7) != 3:
        raise CertificateError("kernel dimensions off in contained case")
    u4, u5 = both
    u3 = pick_outside(field, k6, both)
    u2 = pick_outside(field, k7, both + [u3])
    u1 = None
    cur = [u2, u3, u4, u5]
    for cand in _standard_vectors(field, C6.n):
        if span_rank(field, cur + [cand]) == 5:
            u1 = cand
            break
    if u1 is None:
        raise CertificateError("cannot complete contained-case basis")
    return [u1, u2, u3, u4, u5]


def dual_basis_bisecant(field: Field, Cp: Matrix, Cm: Matrix) -> list[list]:
    """Members psi+ (target x1^x2) and psi- (target x3^x4), both rank 2."""
    kp = kernel_of(Cp)
    km = kernel_of(Cm)
    if len(kp) != 3 or len(km) != 3:
        raise CertificateError("bisecant members must have rank 2")
    shared = joint_kernel(field, [Cp, Cm])
    if len(shared) != 1:
        raise CertificateError("bisecant kernels must meet in a line")
    u5 = shared[0]
    u1, u2 = symplectic_pair(field, Cp, km)
    u3, u4 = symplectic_pair(field, Cm, kp)
    return [u1, u2, u3, u4, u5]


def dual_basis_tangent_lagrangian(field: Field, Cp: Matrix, Cq: Matrix) -> list[list]:
    """Cp rank 2 (double root member), Cq rank 4, B_q zero on ker Cp."""
    kp = kernel_of(Cp)
    kq = kernel_of(Cq)
    if len(kp) != 3 or len(kq) != 1:
        raise CertificateError("tangent member ranks are off")
    u5 = kq[0]
    if span_rank(field, kp + [u5]) != 3:
        raise CertificateError("rank-4 kernel not inside rank-2 kernel")
    rest = []
    for v in kp:
        if span_rank(field, [u5] + rest + [v]) == 2 + len(rest):
            rest.append(v)
    if len(rest) < 2:
        raise CertificateError("cannot complete the rank-2 kernel basis")
    u3, u4 = rest[0], rest[1]
    u1 = solve_pairings(
        field,
        [(Cq, u3, field.one()), (Cq, u4, field.zero())],
        Cq.n,
    )
    u2_star = solve_pairings(
        field,
        [(Cq, u3, field.zero()), (Cq, u4, field.one())],
        Cq.n,
    )
    # fix B_q(u1, u2) = 0 by a kernel shift, which leaves B_p untouched
    target = field.neg(pair(field, Cq, u1, u2_star))
    # find delta in ker Cp with B_q(u1, delta) = target, i.e. delta^T C_q u1 = -target
    row = pairing_row(field, Cq, u1)  # x -> x^T Cq u1 = B_q(x, u1) = -B_q(u1, x)
    basis = Matrix.from_cols(field, kp)
    coefs = basis.transpose().mat_vec(row)
    try:
        z = Matrix(field, [coefs]).solve([field.neg(target)])
    except LinAlgError as exc:
        raise CertificateError("lagrangian shift unsolvable") from exc
    delta = basis.mat_vec(z)
    u2 = vec_add(field, u2_star, delta)
    beta = pair(field, Cp, u1, u2)
    if field.is_zero(beta):
        raise CertificateError("degenerate symplectic pairing in lagrangian case")
    u3 = vec_scale(field, beta, u3)
    u1 = vec_scale(field, field.inv(beta), u1)
    return [u1, u2, u3, u4, u5]


def dual_basis_tangent_line(field: Field, Cp: Matrix, Cq: Matrix) -> list[list]:
    """Cp rank 2, Cq rank 4, B_q of rank 2 on ker Cp."""
    kp = kernel_of(Cp)
    kq = kernel_of(Cq)
    if len(kp) != 3 or len(kq) != 1:
        raise CertificateError("tangent member ranks are off")
    u2 = kq[0]
    u4, u5 = symplectic_pair(field, Cq, kp)
    # radical of B_q on ker Cp is one-dimensional
    basis = Matrix.from_cols(field, kp)
    rows = [
        basis.transpose().mat_vec(pairing_row(field, Cq, u4)),
        basis.transpose().mat_vec(pairing_row(field, Cq, u5)),
    ]
    null = Matrix(field, rows).kernel_basis()
    if len(null) != 1:
        raise CertificateError("tangent-line radical is not a line")
    u3_dir = basis.mat_vec(null[0])
    u1 = solve_pairings(
        field,
        [
            (Cp, u2, field.one()),
            (Cq, u4, field.zero()),
            (Cq, u5, field.zero()),
        ],
        Cp.n,
    )
    c = pair(field, Cq, u1, u3_dir)
    if field.is_zero(c):
        raise CertificateError("tangent-line normalization failed")
    u3 = vec_scale(field, field.inv(c), u3_dir)
    return [u1, u2, u3, u4, u5]


def dual_basis_disjoint(field: Field, C6: Matrix, C7: Matrix) -> list[list]:
    """Both members rank 4 with independent kernels (generic pencil pair).

    u2 and u3 are found jointly with the linear constraint C6 u2 = C7 u3;
    this makes B6(u2, u3) = B7(u2, u3) = 0 automatic (antisymmetry) and
    ties the two unit pairings of u1 to the same functional, so the
    final six-condition solve for u1 is consistent.
    """
    k6 = kernel_of(C6)
    k7 = kernel_of(C7)
    if len(k6) != 1 or len(k7) != 1:
        raise CertificateError("disjoint members must have rank 4")
    n6, n7 = k6[0], k7[0]
    if span_rank(field, [n6, n7]) != 2:
        raise CertificateError("disjoint members share their kernel line")
    one, zero = field.one(), field.zero()
    w6 = C6.mat_vec(n7)
    w7 = C7.mat_vec(n6)
    z5 = [zero] * 5
    rows = [
        list(C6.rows[i]) + [field.neg(x) for x in C7.rows[i]] for i in range(5)
    ]
    rhs = [zero] * 5
    rows.append(z5 + list(w7))  # B7(u3, n6) = 0
    rhs.append(zero)
    rows.append(list(w6) + z5)  # B6(u2, n7) = 0
    rhs.append(zero)
    rows.append(list(w7) + z5)  # B7(u2, n6) = 1
    rhs.append(one)
    A = Matrix(field, rows)
    try:
        z0 = A.solve(rhs)
    except LinAlgError as exc:
        raise CertificateError("disjoint joint system unsolvable") from exc
    candidates = [z0] + [vec_add(field, z0, k) for k in A.kernel_basis()]
    for z in candidates:
        u2, u3 = z[:5], z[5:]
        alpha = pair(field, C6, u3, n7)
        if field.is_zero(alpha):
            continue
        try:
            u1 = solve_pairings(
                field,
                [
                    (C6, u2, one),
                    (C7, u2, zero),
                    (C6, u3, zero),
                    (C7, u3, one),
                    (C6, n7, zero),
                    (C7, n6, zero),
                ],
                5,
            )
        except CertificateError:
            continue
        u4 = vec_scale(field, field.inv(alpha), n7)
        cols = [u1, u2, u3, u4, n6]
        if span_rank(field, cols) == 5:
            return cols
    raise CertificateError("disjoint dual basis construction failed")


def _standard_vectors(field: Field, n: int):
    for i in range(n):
        e = [field.zero()] * n
        e[i] = field.one()
        yield e


# -- (4,3) cases ----------------------------------------------------

def dual_basis_common_line(field: Field, C5, C6, C7) -> list[list]:
    u4 = joint_kernel(field, [C5, C6])
    u3 = joint_kernel(field, [C5, C7])
    u2 = joint_kernel(field, [C6, C7])
    if len(u4) != 1 or len(u3) != 1 or len(u2) != 1:
        raise CertificateError("pairwise kernels are not lines")
    u4, u3, u2 = u4[0], u3[0], u2[0]
    u1 = None
    for cand in _standard_vectors(field, 4):
        if span_rank(field, [u2, u3, u4, cand]) == 4:
            u1 = cand
            break
    if u1 is None:
        raise CertificateError("cannot complete common-line basis")
    return [u1, u2, u3, u4]


def dual_basis_hyperplane(field: Field, C5, C6, C7) -> list[list]:
    shared = joint_kernel(field, [C5, C6, C7])
    if len(shared) != 1:
        raise CertificateError("triple kernel is not a line")
    u4 = shared[0]
    k5, k6, k7 = kernel_of(C5), kernel_of(C6), kernel_of(C7)

    def indep_pick(kern, chosen):
        for v in kern:
            if span_rank(field, chosen + [v]) == len(chosen) + 1:
                return v
        for v in kern:
            w = vec_add(field, v, u4)
            if span_rank(field, chosen + [w]) == len(chosen) + 1:
                return w
        raise CertificateError("cannot pick independent kernel vector")

    u3 = indep_pick(k5, [u4])
    u2 = indep_pick(k6, [u4, u3])
    u1 = indep_pick(k7, [u4, u3, u2])
    return [u1, u2, u3, u4]


def dual_basis_double_line(field: Field, Ca, Cb, Cc) -> list[list]:
    """Ca, Cb rank-2 radical members; Cc rank 4."""
    ka, kb = kernel_of(Ca), kernel_of(Cb)
    if len(ka) != 2 or len(kb) != 2:
        raise CertificateError("radical members must have rank 2")
    shared = joint_kernel(field, [Ca, Cb])
    if len(shared) != 1:
        raise CertificateError("radical kernels must meet in a line")
    u4 = shared[0]
    u3 = pick_outside(field, ka, [u4])
    u2 = pick_outside(field, kb, [u4, u3])
    u1 = None
    for cand in _standard_vectors(field, 4):
        if span_rank(field, [u2, u3, u4, cand]) == 4:
            u1 = cand
            break
    if u1 is None:
        raise CertificateError("cannot complete double-line basis")
    # kill spurious C_c entries using the (u2, u3) directions
    c23 = pair(field, Cc, u2, u3)
    if field.is_zero(c23):
        raise CertificateError("double-line cross pairing vanishes")
    c12 = pair(field, Cc, u1, u2)
    c13 = pair(field, Cc, u1, u3)
    s = field.neg(field.div(c13, c23))
    t = field.div(c12, c23)
    u1 = vec_add(field, u1, vec_scale(field, s, u2))
    u1 = vec_add(field, u1, vec_scale(field, t, u3))
    for v in (u2, u3):
        if not field.is_zero(pair(field, Cc, v, u4)):
            raise CertificateError("unexpected pairing with the shared kernel")
    c14 = pair(field, Cc, u1, u4)
    if field.is_zero(c14):
        raise CertificateError("double-line member is degenerate")
    u4 = vec_scale(field, field.div(c23, c14), u4)
    return [u1, u2, u3, u4]


def dual_basis_pair_lines(field: Field, Ca, Cb, Cp) -> list[list]:
    """Line members Ca, Cb and the vertex member Cp, all rank 2."""
    ka, kb, kp = kernel_of(Ca), kernel_of(Cb), kernel_of(Cp)
    if len(ka) != 2 or len(kb) != 2 or len(kp) != 2:
        raise CertificateError("pair-lines members must have rank 2")
    i_ap = joint_kernel(field, [Ca, Cp])
    i_bp = joint_kernel(field, [Cb, Cp])
    if len(i_ap) != 1 or len(i_bp) != 1:
        raise CertificateError("line/vertex kernels must meet in lines")
    u4 = i_ap[0]
    u2 = i_bp[0]
    u3 = pick_outside(field, ka, [u4, u2])
    u1 = pick_outside(field, kb, [u4, u2, u3])
    if span_rank(field, [u1, u2, u3, u4]) != 4:
        raise CertificateError("pair-lines dual basis is singular")
    return [u1, u2, u3, u4]


def dual_basis_smooth_isotropic(field: Field, Ca, Cb, Cc) -> list[list]:
    """Members at two rational conic points plus the pole member (rank 4)."""
    ka, kb = kernel_of(Ca), kernel_of(Cb)
    if len(ka) != 2 or len(kb) != 2:
        raise CertificateError("point members must have rank 2")
    u3, u4 = ka
    one, zero = field.one(), field.zero()
    u1 = solve_pairings(field, [(Cc, u3, one), (Cc, u4, zero)], 4, within=kb)
    u2 = solve_pairings(field, [(Cc, u3, zero), (Cc, u4, one)], 4, within=kb)
    if not field.is_zero(pair(field, Cc, u1, u2)):
        raise CertificateError("pole member pairs inside a point kernel")
    if not field.is_zero(pair(field, Cc, u3, u4)):
        raise CertificateError("pole member pairs inside a point kernel")
    return [u1, u2, u3, u4]
