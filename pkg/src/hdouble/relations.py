"""Exact checks for pentagon-type operator identities.

Both sides of an identity are leg scripts: sequences of (operator, legs)
factors read left to right as an operator product.  The default strategy
applies both sides to every basis vector of the ambient space with
sparse intermediate vectors, so nothing of size dim x dim is ever
materialized; the first failing basis vector (lexicographically) becomes
the witness.  materialize_script builds the full product for small
spaces and is used to cross-validate the sweep.
"""

from dataclasses import dataclass
from itertools import product as iter_product

from .errors import DimensionMismatchError, FieldMismatchError
from .report import RelationId, Stopwatch, VerificationReport, Witness
from .tensor import LegPlacement, Operator, apply_to_vector, place_on_legs


@dataclass(frozen=True)
class Placed:
    op: Operator
    legs: tuple

    def __post_init__(self):
        object.__setattr__(self, "legs", tuple(self.legs))


def _check_script_legs(script, leg_dims):
    for placed in script:
        selected = tuple(leg_dims[l] for l in placed.legs)
        if placed.op.row_dims != selected or placed.op.col_dims != selected:
            raise DimensionMismatchError(
                "operator dims %r do not fit legs %r"
                % (placed.op.row_dims, placed.legs))


def apply_script(script, vector):
    "Apply a product of placed operators (rightmost factor first)."
    for placed in reversed(script):
        vector = apply_to_vector(placed.op, placed.legs, vector)
        if not vector:
            return vector
    return vector


def materialize_script(script, leg_dims):
    "Full product of the placed factors; for small spaces and tests."
    acc = None
    for placed in script:
        placement = LegPlacement(tuple(leg_dims), placed.legs)
        mat = place_on_legs(placed.op, placement)
        acc = mat if acc is None else acc.compose(mat)
    return acc


def _difference_witness(basis, lhs_vec, rhs_vec):
    keys = sorted(set(lhs_vec) | set(rhs_vec))
    lhs, rhs = [], []
    for key in keys:
        a = lhs_vec.get(key)
        b = rhs_vec.get(key)
        if a != b:
            zero_field = a if a is not None else b
            zero = zero_field - zero_field
            lhs.append((key, a if a is not None else zero))
            rhs.append((key, b if b is not None else zero))
    return Witness(basis=tuple(basis), lhs=tuple(lhs), rhs=tuple(rhs))


def check_script_identity(relation, lhs, rhs, leg_dims):
    """Verify lhs == rhs as operators by sweeping all basis vectors."""
    leg_dims = tuple(leg_dims)
    _check_script_legs(lhs, leg_dims)
    _check_script_legs(rhs, leg_dims)
    fields = {placed.op.field.tag for placed in lhs + rhs}
    if len(fields) != 1:
        raise FieldMismatchError("scripts mix fields %s" % sorted(fields))
    one = lhs[0].op.field.one
    watch = Stopwatch()
    space_dim = 1
    for d in leg_dims:
        space_dim *= d
    for idx in iter_product(*(range(d) for d in leg_dims)):
        start = {idx: one}
        lhs_vec = apply_script(lhs, start)
        rhs_vec = apply_script(rhs, start)
        if lhs_vec != rhs_vec:
            witness = _difference_witness(idx, lhs_vec, rhs_vec)
            return watch.report(relation, False, witness, space_dim)
    return watch.report(relation, True, None, space_dim)


def _square_side(op, name="S"):
    if len(op.row_dims) != 2 or op.row_dims != op.col_dims \
            or op.row_dims[0] != op.row_dims[1]:
        raise DimensionMismatchError(
            "%s must be a square two-leg operator with equal leg"
            " dimensions, got %r -> %r" % (name, op.col_dims, op.row_dims))
    return op.row_dims[0]


def check_pentagon(s):
    "S12 S13 S23 = S23 S12 on three legs."
    d = _square_side(s)
    dims = (d, d, d)
    lhs = [Placed(s, (0, 1)), Placed(s, (0, 2)), Placed(s, (1, 2))]
    rhs = [Placed(s, (1, 2)), Placed(s, (0, 1))]
    return check_script_identity(RelationId.PENTAGON, lhs, rhs, dims)


def check_reversed_pentagon(s_tilde):
    "S~12 S~23 = S~23 S~13 S~12 on three legs."
    d = _square_side(s_tilde, "S~")
    dims = (d, d, d)
    lhs = [Placed(s_tilde, (0, 1)), Placed(s_tilde, (1, 2))]
    rhs = [Placed(s_tilde, (1, 2)), Placed(s_tilde, (0, 2)),
           Placed(s_tilde, (0, 1))]
    return check_script_identity(RelationId.REVERSED_PENTAGON, lhs, rhs, dims)


def mixed_pentagon_scripts(s, s_tilde, s_prime, s_dprime):
    """The six mixed identities, in reading order.

    1) S'12 S'13 S23  = S23  S'12        2) S~12 S'23 = S'23 S'13 S~12
    3) S12  S''13 S''23 = S''23 S12      4) S''12 S~23 = S~23 S''13 S''12
    5) S'12 S~13 S''23 = S''23 S'12      6) S''12 S'23 = S'23 S13 S''12
    """
    return [
        ([Placed(s_prime, (0, 1)), Placed(s_prime, (0, 2)),
          Placed(s, (1, 2))],
         [Placed(s, (1, 2)), Placed(s_prime, (0, 1))]),
        ([Placed(s_tilde, (0, 1)), Placed(s_prime, (1, 2))],
         [Placed(s_prime, (1, 2)), Placed(s_prime, (0, 2)),
          Placed(s_tilde, (0, 1))]),
        ([Placed(s, (0, 1)), Placed(s_dprime, (0, 2)),
          Placed(s_dprime, (1, 2))],
         [Placed(s_dprime, (1, 2)), Placed(s, (0, 1))]),
        ([Placed(s_dprime, (0, 1)), Placed(s_tilde, (1, 2))],
         [Placed(s_tilde, (1, 2)), Placed(s_dprime, (0, 2)),
          Placed(s_dprime, (0, 1))]),
        ([Placed(s_prime, (0, 1)), Placed(s_tilde, (0, 2)),
          Placed(s_dprime, (1, 2))],
         [Placed(s_dprime, (1, 2)), Placed(s_prime, (0, 1))]),
        ([Placed(s_dprime, (0, 1)), Placed(s_prime, (1, 2))],
         [Placed(s_prime, (1, 2)), Placed(s, (0, 2)),
          Placed(s_dprime, (0, 1))]),
    ]


_MIXED_IDS = [RelationId.MIXED_PENTAGON_1, RelationId.MIXED_PENTAGON_2,
              RelationId.MIXED_PENTAGON_3, RelationId.MIXED_PENTAGON_4,
              RelationId.MIXED_PENTAGON_5, RelationId.MIXED_PENTAGON_6]


def check_mixed_pentagons(s, s_tilde, s_prime, s_dprime):
    "All six mixed pentagon identities; returns one report per identity."
    d = _square_side(s)
    for name, op in (("S~", s_tilde), ("S'", s_prime), ("S''", s_dprime)):
        if _square_side(op, name) != d:
            raise DimensionMismatchError("family members differ in dimension")
    dims = (d, d, d)
    scripts = mixed_pentagon_scripts(s, s_tilde, s_prime, s_dprime)
    return [check_script_identity(rid, lhs, rhs, dims)
            for rid, (lhs, rhs) in zip(_MIXED_IDS, scripts)]


def check_yang_baxter(r):
    """R12 R13 R23 = R23 R13 R12 where each index is a pair-leg.

    r must have an even number of legs; the first half forms the first
    pair-leg and the second half the second, and both halves must carry
    the same dimensions.
    """
    nlegs = len(r.row_dims)
    if nlegs % 2 or r.row_dims != r.col_dims:
        raise DimensionMismatchError(
            "R must be square with an even number of legs")
    k = nlegs // 2
    if r.row_dims[:k] != r.row_dims[k:]:
        raise DimensionMismatchError(
            "the two pair-legs of R must have equal dimensions")
    block = r.row_dims[:k]
    dims = block * 3
    leg1 = tuple(range(0, k))
    leg2 = tuple(range(k, 2 * k))
    leg3 = tuple(range(2 * k, 3 * k))
    r12 = Placed(r, leg1 + leg2)
    r13 = Placed(r, leg1 + leg3)
    r23 = Placed(r, leg2 + leg3)
    return check_script_identity(RelationId.YANG_BAXTER,
                                 [r12, r13, r23], [r23, r13, r12], dims)


def check_mixed_permutation(s):
    "G1 S12 F2 = F2 G1 with F = S(0,i), G = S(i,0) on three legs."
    d = _square_side(s)
    dims = (d, d, d)
    lhs = [Placed(s, (1, 0)), Placed(s, (1, 2)), Placed(s, (0, 2))]
    rhs = [Placed(s, (0, 2)), Placed(s, (1, 0))]
    return check_script_identity(RelationId.MIXED_PERMUTATION, lhs, rhs, dims)


def check_fg_relations(s):
    """F1 F2 S12 = S12 F1 and S12 G1 G2 = G2 S12.

    Each family is verified on its own three-leg space with leg 0 the
    representation leg.  The witness basis is prefixed with the family
    number (0 for F, 1 for G).
    """
    d = _square_side(s)
    dims = (d, d, d)
    watch = Stopwatch()
    families = [
        ([Placed(s, (0, 1)), Placed(s, (0, 2)), Placed(s, (1, 2))],
         [Placed(s, (1, 2)), Placed(s, (0, 1))]),
        ([Placed(s, (1, 2)), Placed(s, (1, 0)), Placed(s, (2, 0))],
         [Placed(s, (2, 0)), Placed(s, (1, 2))]),
    ]
    space_dim = d ** 3
    for family, (lhs, rhs) in enumerate(families):
        sub = check_script_identity(RelationId.FG_RELATIONS, lhs, rhs, dims)
        if not sub.holds:
            witness = Witness(basis=(family,) + sub.witness.basis,
                              lhs=sub.witness.lhs, rhs=sub.witness.rhs)
            return watch.report(RelationId.FG_RELATIONS, False, witness,
                                space_dim)
    return watch.report(RelationId.FG_RELATIONS, True, None, space_dim)


def operators_equal_report(relation, lhs_op, rhs_op):
    "Report exact equality of two operators, with an entrywise witness."
    watch = Stopwatch()
    space_dim = lhs_op.row_dim
    if lhs_op == rhs_op:
        return watch.report(relation, True, None, space_dim)
    keys = sorted(set(lhs_op.entries) | set(rhs_op.entries))
    zero = lhs_op.field.zero
    for key in keys:
        a = lhs_op.entries.get(key, zero)
        b = rhs_op.entries.get(key, zero)
        if a != b:
            row, col = key
            witness = Witness(basis=tuple(col),
                              lhs=((tuple(row), a),),
                              rhs=((tuple(row), b),))
            return watch.report(relation, False, witness, space_dim)
    return watch.report(relation, True, None, space_dim)


def check_drinfeld_relations(sc, e_ops, e_dual_ops):
    """Multiplication, comultiplication-product and cross relations of
    the double generators, as exact matrix identities on the pair space.

    e_ops[a] and e_dual_ops[a] represent E_a and E^a.  The witness basis
    is (family, alpha, beta) with families numbered 0 (E E), 1 (E^ E^),
    2 (cross).
    """
    watch = Stopwatch()
    d = sc.dim
    shape = e_ops[0].row_dims
    space_dim = 1
    for x in shape:
        space_dim *= x
    zero_op = Operator.zero(shape, shape, e_ops[0].field)

    def combo(ops, coeffs):
        acc = zero_op
        for idx, coeff in coeffs:
            acc = acc + ops[idx].scale(coeff)
        return acc

    for alpha in range(d):
        for beta in range(d):
            lhs = e_ops[alpha].compose(e_ops[beta])
            rhs = combo(e_ops, [(gamma, v) for (a, b, gamma), v
                                in sc.m.items() if a == alpha and b == beta])
            if lhs != rhs:
                rep = operators_equal_report("", lhs, rhs)
                witness = Witness(basis=(0, alpha, beta) + rep.witness.basis,
                                  lhs=rep.witness.lhs, rhs=rep.witness.rhs)
                return watch.report(RelationId.DRINFELD_RELATIONS, False,
                                    witness, space_dim)
    for alpha in range(d):
        for beta in range(d):
            lhs = e_dual_ops[alpha].compose(e_dual_ops[beta])
            rhs = combo(e_dual_ops,
                        [(gamma, v) for (gamma, a, b), v in sc.mu.items()
                         if a == alpha and b == beta])
            if lhs != rhs:
                rep = operators_equal_report("", lhs, rhs)
                witness = Witness(basis=(1, alpha, beta) + rep.witness.basis,
                                  lhs=rep.witness.lhs, rhs=rep.witness.rhs)
                return watch.report(RelationId.DRINFELD_RELATIONS, False,
                                    witness, space_dim)
    # mu_alpha^{sigma gamma} m_{gamma rho}^beta E_sigma E^rho
    #   = m_{rho gamma}^beta mu_alpha^{gamma sigma} E^rho E_sigma
    for alpha in range(d):
        for beta in range(d):
            lhs = zero_op
            for (a, sigma, gamma), u in sc.mu.items():
                if a != alpha:
                    continue
                for (g, rho, b), w in sc.m.items():
                    if g == gamma and b == beta:
                        lhs = lhs + e_ops[sigma].compose(
                            e_dual_ops[rho]).scale(u * w)
            rhs = zero_op
            for (a, gamma, sigma), u in sc.mu.items():
                if a != alpha:
                    continue
                for (rho, g, b), w in sc.m.items():
                    if g == gamma and b == beta:
                        rhs = rhs + e_dual_ops[rho].compose(
                            e_ops[sigma]).scale(u * w)
            if lhs != rhs:
                rep = operators_equal_report("", lhs, rhs)
                witness = Witness(basis=(2, alpha, beta) + rep.witness.basis,
                                  lhs=rep.witness.lhs, rhs=rep.witness.rhs)
                return watch.report(RelationId.DRINFELD_RELATIONS, False,
                                    witness, space_dim)
    return watch.report(RelationId.DRINFELD_RELATIONS, True, None, space_dim)
