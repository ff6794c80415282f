"""The tilde family of canonical elements and the factorized R-matrix.

From an invertible S with invertible partial transpose, the family

    S~ = S^t      S' = (S^{-1})^{t1}      S'' = (S^{t2})^{-1}

satisfies six mixed pentagon relations together with S.  When Hopf data
is available the same family arises from the transpose realization of
the tilde generators, and the product

    R = S''_{14} S_{13} S~_{24} S'_{23}

is the canonical element of a Drinfeld double embedded in the tensor
square, satisfying the Yang-Baxter relation on pair-legs.
"""

from dataclasses import dataclass

from .bialgebra import (adjoint_rep, canonical_element, check_tilde_relations,
                        tilde_rep)
from .errors import CrossInvertibilityError, SingularMatrixError
from .relations import (Placed, check_drinfeld_relations,
                        check_mixed_pentagons, check_reversed_pentagon,
                        materialize_script, operators_equal_report)
from .tensor import Operator, invert


@dataclass(frozen=True)
class SMatrixFamily:
    "S together with its transposed and partially inverted companions."

    s: Operator
    s_tilde: Operator
    s_prime: Operator
    s_double_prime: Operator

    @property
    def leg_dim(self):
        return self.s.row_dims[0]


def s_family(s):
    """Build (S, S~, S', S'') by transposition and inversion alone.

    Raises SingularMatrixError when S is singular and
    CrossInvertibilityError when the partial transpose S^{t2} is."""
    s_tilde = s.transpose()
    try:
        s_prime = invert(s).partial_transpose(0)
    except SingularMatrixError as exc:
        raise SingularMatrixError("S is singular", rank=exc.rank) from None
    cross = s.partial_transpose(1)
    try:
        s_double_prime = invert(cross)
    except SingularMatrixError as exc:
        raise CrossInvertibilityError(
            "the partial transpose S^t2 is singular", rank=exc.rank) from None
    return SMatrixFamily(s=s, s_tilde=s_tilde, s_prime=s_prime,
                         s_double_prime=s_double_prime)


def s_primes_from_reps(sc, rep=None, tilde=None):
    """The same family from the generator sums

        S' = e~_a x e^a    S'' = e_a x e~^a    S~ = e~_a x e~^a

    in the adjoint and transpose realizations; each member is asserted
    equal to its transposition-and-inversion formula."""
    if rep is None:
        rep = adjoint_rep(sc)
    if tilde is None:
        tilde = tilde_rep(sc, rep)
    d, field = sc.dim, sc.field
    zero = Operator.zero((d, d), (d, d), field)
    s_prime = zero
    s_double_prime = zero
    s_tilde = zero
    for a in range(d):
        s_prime = s_prime + tilde.e[a].tensor(rep.e_dual[a])
        s_double_prime = s_double_prime + rep.e[a].tensor(tilde.e_dual[a])
        s_tilde = s_tilde + tilde.e[a].tensor(tilde.e_dual[a])
    s = canonical_element(sc, rep)
    family = s_family(s)
    if (s_prime != family.s_prime or s_double_prime != family.s_double_prime
            or s_tilde != family.s_tilde):
        raise ArithmeticError(
            "generator sums disagree with the transposition formulas")
    return SMatrixFamily(s=s, s_tilde=s_tilde, s_prime=s_prime,
                         s_double_prime=s_double_prime)


@dataclass(frozen=True)
class DoubleGenerators:
    "Generators of the double inside the tensor square of realizations."

    e: tuple
    e_dual: tuple


def drinfeld_generators(sc, rep=None, tilde=None):
    """E_a = mu[a,b,c] e_b x e~_c and E^a = m[c,b,a] e^b x e~^c on the
    pair space."""
    if rep is None:
        rep = adjoint_rep(sc)
    if tilde is None:
        tilde = tilde_rep(sc, rep)
    d, field = sc.dim, sc.field
    zero = Operator.zero((d, d), (d, d), field)
    e = [zero] * d
    for (a, b, c), v in sc.mu.items():
        e[a] = e[a] + rep.e[b].tensor(tilde.e[c]).scale(v)
    e_dual = [zero] * d
    for (c, b, a), v in sc.m.items():
        e_dual[a] = e_dual[a] + rep.e_dual[b].tensor(tilde.e_dual[c]).scale(v)
    return DoubleGenerators(e=tuple(e), e_dual=tuple(e_dual))


def r_matrix(family):
    """R = S''_{14} S_{13} S~_{24} S'_{23} on four legs, grouped as
    pair-legs (0,1) and (2,3)."""
    script = [Placed(family.s_double_prime, (0, 3)),
              Placed(family.s, (0, 2)),
              Placed(family.s_tilde, (1, 3)),
              Placed(family.s_prime, (1, 2))]
    d = family.leg_dim
    return materialize_script(script, (d, d, d, d))


def r_matrix_from_generators(gens):
    "The canonical element sum E_a x E^a of the double generators."
    first = gens.e[0]
    shape = first.row_dims
    acc = Operator.zero(shape + shape, shape + shape, first.field)
    for e, e_dual in zip(gens.e, gens.e_dual):
        acc = acc + e.tensor(e_dual)
    return acc


def check_double_consistency(sc):
    """Hopf-case battery: tilde relations in the transpose realization,
    reversed pentagon for S~, the six mixed pentagons, the double
    relations for the assembled generators, and agreement of the two R
    constructions."""
    rep = adjoint_rep(sc)
    tilde = tilde_rep(sc, rep)
    family = s_primes_from_reps(sc, rep, tilde)
    reports = [check_tilde_relations(sc, tilde)]
    reports.append(check_reversed_pentagon(family.s_tilde))
    reports.extend(check_mixed_pentagons(family.s, family.s_tilde,
                                         family.s_prime,
                                         family.s_double_prime))
    gens = drinfeld_generators(sc, rep, tilde)
    reports.append(check_drinfeld_relations(sc, gens.e, gens.e_dual))
    reports.append(operators_equal_report(
        "r_matrix_agreement", r_matrix(family),
        r_matrix_from_generators(gens)))
    return reports
