"""Infinite-dimensional checks done with exact finite data.

Two settings:

  * the algebra generated by U and V with UV = qVU + W and W central,
    truncated by total degree with deg V = deg U = 1, deg W = 2, where
    the generalized dilogarithm identity

        E(U) E((UV - VU)/(1-q)) E(V) = E(V) E(U)

    is checked coefficientwise in the normal-ordered basis V^a W^b U^c,
    with E the Euler-series q-Pochhammer;

  * the Weyl algebra x xbar - xbar x = 1 acting on occupation states,
    where exp(x_i xbar_j) terminates on every vector and the pentagon
    relation is checked exhaustively.
"""

from fractions import Fraction
from itertools import product
from math import comb

from .errors import FieldMismatchError
from .report import Stopwatch, Witness
from .scalars import FIELD_Q, FIELD_QQ, QVAR


def degree(key):
    a, b, c = key
    return a + 2 * b + c


def q_factorial(n, q=QVAR):
    "(q)_n = (1-q)(1-q^2)...(1-q^n)."
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    total = q ** 0
    power = q ** 0
    for _ in range(n):
        power = power * q
        total = total * (1 - power)
    return total


class NormalOrderedElement:
    "Sparse sum of normal-ordered monomials V^a W^b U^c."

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field):
        clean = {}
        for key, value in coeffs.items():
            a, b, c = key
            if a < 0 or b < 0 or c < 0:
                raise ValueError("negative exponent in %r" % (key,))
            if not field.contains(value):
                raise FieldMismatchError(
                    "coefficient at %r is not in field %s" % (key, field.tag))
            if value:
                clean[(a, b, c)] = value
        self.coeffs = clean
        self.field = field

    def _check(self, other):
        if self.field is not other.field:
            raise FieldMismatchError("elements live over different fields")

    def __add__(self, other):
        self._check(other)
        coeffs = dict(self.coeffs)
        for key, value in other.coeffs.items():
            total = coeffs.get(key, self.field.zero) + value
            if total:
                coeffs[key] = total
            else:
                coeffs.pop(key, None)
        return NormalOrderedElement(coeffs, self.field)

    def __neg__(self):
        return NormalOrderedElement(
            {k: -v for k, v in self.coeffs.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        if not scalar:
            return NormalOrderedElement({}, self.field)
        return NormalOrderedElement(
            {k: v * scalar for k, v in self.coeffs.items()}, self.field)

    def project_w_zero(self):
        "Image in the quotient W = 0: keep only b = 0 monomials."
        return NormalOrderedElement(
            {k: v for k, v in self.coeffs.items() if k[1] == 0}, self.field)

    def min_degree(self):
        return min(degree(k) for k in self.coeffs) if self.coeffs else None

    def coefficient(self, key):
        return self.coeffs.get(key, self.field.zero)

    def __eq__(self, other):
        return (isinstance(other, NormalOrderedElement)
                and self.field is other.field and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        terms = ", ".join("%r: %s" % (k, v)
                          for k, v in sorted(self.coeffs.items()))
        return "NormalOrderedElement({%s})" % terms


class NormalOrderedAlgebra:
    """Multiplication context: the field, the q scalar, and the swap
    rule giving the normal-ordered form of the single product U V.

    The default rule is UV = qVU + W; a different rule may be injected
    to probe the checks themselves.
    """

    def __init__(self, field, q=None, swap_terms=None):
        if q is None:
            if field is not FIELD_QQ:
                raise ValueError("numeric fields need an explicit q value")
            q = QVAR
        if not field.contains(q):
            raise FieldMismatchError("q is not in field %s" % field.tag)
        self.field = field
        self.q = q
        if swap_terms is None:
            swap_terms = {(1, 0, 1): q, (0, 1, 0): field.one}
        self.swap_terms = dict(swap_terms)
        self._uv_cache = {}
        self._reorder_cache = {}

    def element(self, coeffs):
        return NormalOrderedElement(coeffs, self.field)

    def zero(self):
        return self.element({})

    def one(self):
        return self.element({(0, 0, 0): self.field.one})

    def v(self):
        return self.element({(1, 0, 0): self.field.one})

    def w(self):
        return self.element({(0, 1, 0): self.field.one})

    def u(self):
        return self.element({(0, 0, 1): self.field.one})

    def _move_u_once(self, a):
        "Normal-ordered form of U V^a as a coefficient map."
        if a == 0:
            return {(0, 0, 1): self.field.one}
        cached = self._uv_cache.get(a)
        if cached is not None:
            return cached
        # U V^a = (U V) V^{a-1}
        result = {}
        for (a1, b1, c1), coeff in self.swap_terms.items():
            for (am, bm, cm), w in self._reorder(c1, a - 1).items():
                key = (a1 + am, b1 + bm, cm)
                total = result.get(key, self.field.zero) + coeff * w
                if total:
                    result[key] = total
                else:
                    result.pop(key, None)
        self._uv_cache[a] = result
        return result

    def _reorder(self, c, a):
        "Normal-ordered form of U^c V^a as a coefficient map."
        if c == 0:
            return {(a, 0, 0): self.field.one}
        if a == 0:
            return {(0, 0, c): self.field.one}
        key = (c, a)
        cached = self._reorder_cache.get(key)
        if cached is not None:
            return cached
        # U^c V^a = U^{c-1} (U V^a)
        result = {}
        for (a2, b2, c2), coeff in self._move_u_once(a).items():
            for (am, bm, cm), w in self._reorder(c - 1, a2).items():
                out = (am, bm + b2, cm + c2)
                total = result.get(out, self.field.zero) + coeff * w
                if total:
                    result[out] = total
                else:
                    result.pop(out, None)
        self._reorder_cache[key] = result
        return result

    def multiply(self, x, y, bound):
        "Normal-ordered product, dropping terms above total degree bound."
        if x.field is not self.field or y.field is not self.field:
            raise FieldMismatchError("elements do not belong to this algebra")
        zero = self.field.zero
        out = {}
        for (a1, b1, c1), u in x.coeffs.items():
            for (a2, b2, c2), v in y.coeffs.items():
                uv = u * v
                for (am, bm, cm), w in self._reorder(c1, a2).items():
                    key = (a1 + am, b1 + b2 + bm, cm + c2)
                    if degree(key) > bound:
                        continue
                    total = out.get(key, zero) + uv * w
                    if total:
                        out[key] = total
                    else:
                        out.pop(key, None)
        return NormalOrderedElement(out, self.field)

    def power(self, x, n, bound):
        acc = self.one()
        for _ in range(n):
            acc = self.multiply(acc, x, bound)
        return acc

    def pochhammer_series(self, x, bound):
        """Euler series sum_n (-1)^n q^{n(n-1)/2} x^n / (q)_n truncated
        at total degree bound; x must have no degree-0 term."""
        if any(degree(k) == 0 for k in x.coeffs):
            raise ValueError(
                "pochhammer series needs an argument without constant term")
        mindeg = x.min_degree()
        acc = self.one()
        if mindeg is None:
            return acc
        power = self.one()
        n = 0
        while (n + 1) * mindeg <= bound:
            n += 1
            power = self.multiply(power, x, bound)
            coeff = (self.q ** (n * (n - 1) // 2)) / q_factorial(n, self.q)
            if n % 2:
                coeff = -coeff
            acc = acc + power.scale(coeff)
        return acc


def _count_monomials(bound):
    total = 0
    for b in range(bound // 2 + 1):
        rest = bound - 2 * b
        total += (rest + 1) * (rest + 2) // 2
    return total


def _element_witness(tag, diff_key, lhs, rhs):
    return Witness(basis=tag + diff_key,
                   lhs=(((), lhs.coefficient(diff_key)),),
                   rhs=(((), rhs.coefficient(diff_key)),))


def _compare_elements(relation, lhs, rhs, watch, space_dim, tag=()):
    diff = sorted(k for k in set(lhs.coeffs) | set(rhs.coeffs)
                  if lhs.coefficient(k) != rhs.coefficient(k))
    if not diff:
        return None
    witness = _element_witness(tag, diff[0], lhs, rhs)
    return watch.report(relation, False, witness, space_dim)


def _dilog_field(numeric_q):
    if numeric_q is None:
        return FIELD_QQ, QVAR
    q = Fraction(numeric_q)
    if q == 1 or q == -1:
        raise ValueError("numeric q must not be a root of unity")
    return FIELD_Q, q


def verify_dilog_identity(bound, set_w_zero=False, numeric_q=None):
    """E(U) E(M) E(V) = E(V) E(U) with M = (UV - VU)/(1-q), checked on
    all normal-ordered coefficients of total degree <= bound.

    With set_w_zero both sides are projected to the quotient W = 0
    first, which is the classical five-term identity.  numeric_q runs
    the whole computation over plain rationals at that q."""
    if bound < 2:
        raise ValueError("the identity needs bound >= 2")
    field, q = _dilog_field(numeric_q)
    watch = Stopwatch()
    alg = NormalOrderedAlgebra(field, q)
    u, v = alg.u(), alg.v()
    inv_1mq = field.one / (field.one - q)
    # (UV - VU)/(1-q) = W/(1-q) - VU in the normal-ordered basis
    middle = alg.element({(0, 1, 0): inv_1mq, (1, 0, 1): -field.one})
    lhs = alg.multiply(
        alg.multiply(alg.pochhammer_series(u, bound),
                     alg.pochhammer_series(middle, bound), bound),
        alg.pochhammer_series(v, bound), bound)
    rhs = alg.multiply(alg.pochhammer_series(v, bound),
                       alg.pochhammer_series(u, bound), bound)
    if set_w_zero:
        lhs = lhs.project_w_zero()
        rhs = rhs.project_w_zero()
    space = _count_monomials(bound)
    failure = _compare_elements("dilog_identity", lhs, rhs, watch, space)
    if failure is not None:
        return failure
    return watch.report("dilog_identity", True, None, space)


def center_check(bound, swap_terms=None, numeric_q=None):
    """W defined as UV - qVU commutes with U and V under the active
    multiplication rule, up to total degree bound.

    Injecting a perturbed swap rule must make this fail; the witness
    basis starts with 0 for the U commutator, 1 for the V one."""
    field, q = _dilog_field(numeric_q)
    watch = Stopwatch()
    alg = NormalOrderedAlgebra(field, q, swap_terms)
    u, v = alg.u(), alg.v()
    w_def = alg.multiply(u, v, bound) - alg.multiply(v, u, bound).scale(q)
    space = _count_monomials(bound)
    for tag, gen in ((0, u), (1, v)):
        lhs = alg.multiply(gen, w_def, bound)
        rhs = alg.multiply(w_def, gen, bound)
        failure = _compare_elements("center_check", lhs, rhs, watch, space,
                                    tag=(tag,))
        if failure is not None:
            return failure
    return watch.report("center_check", True, None, space)


# ------------------------------------------------------------- Fock vectors

class FockVector:
    "Finite rational combination of occupation-number states."

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        clean = {}
        for occ, value in coeffs.items():
            if any(n < 0 or n != int(n) for n in occ):
                raise ValueError("occupations must be nonnegative integers")
            if value:
                clean[tuple(occ)] = value
        self.coeffs = clean

    @classmethod
    def basis(cls, occ):
        return cls({tuple(occ): Fraction(1)})

    def __add__(self, other):
        coeffs = dict(self.coeffs)
        for occ, value in other.coeffs.items():
            total = coeffs.get(occ, 0) + value
            if total:
                coeffs[occ] = total
            else:
                coeffs.pop(occ, None)
        return FockVector(coeffs)

    def __sub__(self, other):
        return self + other.scale(Fraction(-1))

    def scale(self, scalar):
        if not scalar:
            return FockVector({})
        return FockVector({k: v * scalar for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, FockVector) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self):
        terms = ", ".join("%r: %s" % (k, v)
                          for k, v in sorted(self.coeffs.items()))
        return "FockVector({%s})" % terms


def apply_exp_pair(vec, lower, upper):
    """exp(a_i x adag_j) with a|n> = n|n-1> and adag|n> = |n+1>.

    The series terminates on every state; the t-th term contributes the
    binomial coefficient C(n_i, t)."""
    if lower == upper:
        raise ValueError("the two slots must differ")
    out = {}
    for occ, coeff in vec.coeffs.items():
        m = occ[lower]
        for t in range(m + 1):
            new = list(occ)
            new[lower] -= t
            new[upper] += t
            key = tuple(new)
            total = out.get(key, 0) + coeff * comb(m, t)
            if total:
                out[key] = total
            else:
                out.pop(key, None)
    return FockVector(out)


def weyl_pentagon_check(max_occupation):
    """S12 S13 S23 = S23 S12 for S_ij = exp(a_i x adag_j), applied to
    every occupation triple with entries up to max_occupation."""
    if max_occupation < 1:
        raise ValueError("max_occupation must be at least 1")
    watch = Stopwatch()
    side = max_occupation + 1
    for occ in product(range(side), repeat=3):
        start = FockVector.basis(occ)
        lhs = apply_exp_pair(
            apply_exp_pair(apply_exp_pair(start, 1, 2), 0, 2), 0, 1)
        rhs = apply_exp_pair(apply_exp_pair(start, 0, 1), 1, 2)
        if lhs != rhs:
            diff = sorted(k for k in set(lhs.coeffs) | set(rhs.coeffs)
                          if lhs.coeffs.get(k, 0) != rhs.coeffs.get(k, 0))
            key = diff[0]
            witness = Witness(
                basis=occ,
                lhs=((key, Fraction(lhs.coeffs.get(key, 0))),),
                rhs=((key, Fraction(rhs.coeffs.get(key, 0))),))
            return watch.report("weyl_pentagon", False, witness, side ** 3)
    return watch.report("weyl_pentagon", True, None, side ** 3)
