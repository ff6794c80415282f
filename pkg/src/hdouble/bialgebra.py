"""Bialgebra structure constants and their adjoint realization.

Conventions: e_a e_b = m[a,b,c] e_c and coproduct e_a -> mu[a,b,c]
e_b x e_c, both stored sparsely with index triples as keys.  The adjoint
realization acts on a d-dimensional space with matrix elements

    <a| e_b |c>  = m[a,b,c]        <a| e^b |c> = mu[a,b,c]

(rows a, columns c), which turns the canonical element sum e_a x e^a
into an honest operator on two legs.
"""

from dataclasses import dataclass
from itertools import permutations

from .errors import DimensionMismatchError, FieldMismatchError
from .report import RelationId, Stopwatch, Witness
from .tensor import Operator
from .scalars import ScalarField


def _validate_coeffs(table, dim, width, field, what):
    clean = {}
    for key, value in table.items():
        if len(key) != width or any(not 0 <= i < dim for i in key):
            raise DimensionMismatchError(
                "%s index %r out of range for dimension %d"
                % (what, key, dim))
        if not field.contains(value):
            raise FieldMismatchError(
                "%s value at %r is not in field %s" % (what, key, field.tag))
        if value:
            clean[tuple(key)] = value
    return clean


def _validate_vector(vec, dim, field, what):
    if len(vec) != dim:
        raise DimensionMismatchError("%s must have %d components" % (what, dim))
    for value in vec:
        if not field.contains(value):
            raise FieldMismatchError("%s is not over field %s" % (what, field.tag))
    return tuple(vec)


class StructureConstants:
    """A bialgebra presented by structure constants, optionally with
    unit, counit and (for Hopf data) antipode and its inverse.

    The optional data is validated on construction: unit and counit must
    satisfy their laws, and antipode times antipode inverse must be the
    identity matrix.
    """

    __slots__ = ("dim", "field", "m", "mu", "unit", "counit",
                 "antipode", "antipode_inv")

    def __init__(self, dim, field, m, mu, unit=None, counit=None,
                 antipode=None, antipode_inv=None):
        if not isinstance(field, ScalarField):
            raise TypeError("field must be a ScalarField")
        if dim < 1:
            raise DimensionMismatchError("dimension must be at least 1")
        self_dict = object.__setattr__
        self_dict(self, "dim", int(dim))
        self_dict(self, "field", field)
        self_dict(self, "m", _validate_coeffs(m, dim, 3, field, "m"))
        self_dict(self, "mu", _validate_coeffs(mu, dim, 3, field, "mu"))
        self_dict(self, "unit",
                  None if unit is None
                  else _validate_vector(unit, dim, field, "unit"))
        self_dict(self, "counit",
                  None if counit is None
                  else _validate_vector(counit, dim, field, "counit"))
        self_dict(self, "antipode",
                  None if antipode is None
                  else _validate_coeffs(antipode, dim, 2, field, "antipode"))
        self_dict(self, "antipode_inv",
                  None if antipode_inv is None
                  else _validate_coeffs(antipode_inv, dim, 2, field,
                                        "antipode_inv"))
        if self.unit is not None:
            self._check_unit()
        if self.counit is not None:
            self._check_counit()
        if self.antipode is not None and self.antipode_inv is not None:
            self._check_antipode_pair()

    def __setattr__(self, name, value):
        raise AttributeError("StructureConstants is immutable")

    def _check_unit(self):
        d, zero = self.dim, self.field.zero
        left = {}
        right = {}
        for (a, b, c), v in self.m.items():
            if self.unit[a]:
                key = (b, c)
                left[key] = left.get(key, zero) + self.unit[a] * v
            if self.unit[b]:
                key = (a, c)
                right[key] = right.get(key, zero) + self.unit[b] * v
        for table, side in ((left, "left"), (right, "right")):
            for b in range(d):
                for c in range(d):
                    want = self.field.one if b == c else zero
                    if table.get((b, c), zero) != want:
                        raise ValueError(
                            "unit fails the %s unit law at (%d, %d)"
                            % (side, b, c))

    def _check_counit(self):
        d, zero = self.dim, self.field.zero
        left = {}
        right = {}
        for (a, b, c), v in self.mu.items():
            if self.counit[b]:
                key = (a, c)
                left[key] = left.get(key, zero) + self.counit[b] * v
            if self.counit[c]:
                key = (a, b)
                right[key] = right.get(key, zero) + self.counit[c] * v
        for table, side in ((left, "left"), (right, "right")):
            for a in range(d):
                for c in range(d):
                    want = self.field.one if a == c else zero
                    if table.get((a, c), zero) != want:
                        raise ValueError(
                            "counit fails the %s counit law at (%d, %d)"
                            % (side, a, c))

    def _check_antipode_pair(self):
        d, zero, one = self.dim, self.field.zero, self.field.one
        prod = {}
        for (a, g), v in self.antipode.items():
            for (g2, b), w in self.antipode_inv.items():
                if g2 == g:
                    key = (a, b)
                    prod[key] = prod.get(key, zero) + v * w
        for a in range(d):
            for b in range(d):
                want = one if a == b else zero
                if prod.get((a, b), zero) != want:
                    raise ValueError(
                        "antipode times antipode inverse is not the identity"
                        " (fails at (%d, %d))" % (a, b))

    def has_hopf_data(self):
        return self.antipode is not None and self.antipode_inv is not None

    def __repr__(self):
        return "StructureConstants(dim=%d, field=%s)" % (self.dim,
                                                         self.field.tag)


# -------------------------------------------------------------- axiom checks

def check_associativity(sc):
    "sum_s m[a,b,s] m[s,c,t] = sum_s m[b,c,s] m[a,s,t] for all a,b,c,t."
    watch = Stopwatch()
    zero = sc.field.zero
    lhs, rhs = {}, {}
    by_first = {}
    for (a, b, c), v in sc.m.items():
        by_first.setdefault(a, []).append((b, c, v))
    by_middle = {}
    for (a, s, t), v in sc.m.items():
        by_middle.setdefault(s, []).append((a, t, v))
    for (a, b, s), v in sc.m.items():
        for (c, t, w) in by_first.get(s, ()):
            key = (a, b, c, t)
            lhs[key] = lhs.get(key, zero) + v * w
    for (b, c, s), v in sc.m.items():
        for (a, t, w) in by_middle.get(s, ()):
            key = (a, b, c, t)
            rhs[key] = rhs.get(key, zero) + v * w
    return _compare_tables("associativity", lhs, rhs, zero, watch, sc.dim)


def check_coassociativity(sc):
    "sum_s mu[a,s,d] mu[s,b,c] = sum_s mu[a,b,s] mu[s,c,d] for all a,b,c,d."
    watch = Stopwatch()
    zero = sc.field.zero
    lhs, rhs = {}, {}
    by_lower = {}
    for (s, b, c), v in sc.mu.items():
        by_lower.setdefault(s, []).append((b, c, v))
    for (a, s, dd), v in sc.mu.items():
        for (b, c, w) in by_lower.get(s, ()):
            key = (a, b, c, dd)
            lhs[key] = lhs.get(key, zero) + v * w
    for (a, b, s), v in sc.mu.items():
        for (c, dd, w) in by_lower.get(s, ()):
            key = (a, b, c, dd)
            rhs[key] = rhs.get(key, zero) + v * w
    return _compare_tables("coassociativity", lhs, rhs, zero, watch, sc.dim)


def check_compatibility(sc):
    """Coproduct of a product equals product of coproducts:

    sum_g m[a,b,g] mu[g,r,s]
      = sum mu[a,r1,s1] mu[b,r2,s2] m[r1,r2,r] m[s1,s2,s].
    """
    watch = Stopwatch()
    zero = sc.field.zero
    lhs, rhs = {}, {}
    mu_by_lower = {}
    for (g, r, s), v in sc.mu.items():
        mu_by_lower.setdefault(g, []).append((r, s, v))
    for (a, b, g), v in sc.m.items():
        for (r, s, w) in mu_by_lower.get(g, ()):
            key = (a, b, r, s)
            lhs[key] = lhs.get(key, zero) + v * w
    m_by_pair = {}
    for (x, y, z), v in sc.m.items():
        m_by_pair.setdefault((x, y), []).append((z, v))
    for (a, r1, s1), u in sc.mu.items():
        for (b, r2, s2), v in sc.mu.items():
            uv = u * v
            for (r, w1) in m_by_pair.get((r1, r2), ()):
                uvw = uv * w1
                for (s, w2) in m_by_pair.get((s1, s2), ()):
                    key = (a, b, r, s)
                    rhs[key] = rhs.get(key, zero) + uvw * w2
    return _compare_tables("compatibility", lhs, rhs, zero, watch, sc.dim)


def _compare_tables(relation, lhs, rhs, zero, watch, dim):
    keys = sorted(k for k in set(lhs) | set(rhs)
                  if lhs.get(k, zero) != rhs.get(k, zero))
    if not keys:
        return watch.report(relation, True, None, dim)
    key = keys[0]
    witness = Witness(basis=key,
                      lhs=(((), lhs.get(key, zero)),),
                      rhs=(((), rhs.get(key, zero)),))
    return watch.report(relation, False, witness, dim)


# ------------------------------------------------------------- adjoint forms

@dataclass(frozen=True)
class AdjointRep:
    "Matrices of the generators e_a and e^a in the adjoint realization."

    e: tuple
    e_dual: tuple

    @property
    def dim(self):
        return self.e[0].row_dims[0]

    @property
    def field(self):
        return self.e[0].field


def adjoint_rep(sc):
    "Adjoint realization of (m, mu) as d x d operators."
    d, field = sc.dim, sc.field
    e_entries = [dict() for _ in range(d)]
    for (a, b, c), v in sc.m.items():
        e_entries[b][((a,), (c,))] = v
    dual_entries = [dict() for _ in range(d)]
    for (a, b, c), v in sc.mu.items():
        dual_entries[b][((a,), (c,))] = v
    e = tuple(Operator((d,), (d,), ent, field) for ent in e_entries)
    e_dual = tuple(Operator((d,), (d,), ent, field) for ent in dual_entries)
    return AdjointRep(e=e, e_dual=e_dual)


def tilde_rep(sc, rep=None):
    """Adjoint realization of the tilde generators via transposition:

    rep(e~_a) = antipode[a,b] rep(e_b)^T
    rep(e~^a) = antipode_inv[b,a] rep(e^b)^T
    """
    if not sc.has_hopf_data():
        raise ValueError("tilde realization needs antipode and its inverse")
    if rep is None:
        rep = adjoint_rep(sc)
    d, field = sc.dim, sc.field
    e_t = [op.transpose() for op in rep.e]
    e_dual_t = [op.transpose() for op in rep.e_dual]
    zero = Operator.zero((d,), (d,), field)
    e = [zero] * d
    for (a, b), v in sc.antipode.items():
        e[a] = e[a] + e_t[b].scale(v)
    e_dual = [zero] * d
    for (b, a), v in sc.antipode_inv.items():
        e_dual[a] = e_dual[a] + e_dual_t[b].scale(v)
    return AdjointRep(e=tuple(e), e_dual=tuple(e_dual))


def canonical_element(sc, rep=None):
    "S = sum_a e_a x e^a in the adjoint realization."
    if rep is None:
        rep = adjoint_rep(sc)
    d, field = sc.dim, sc.field
    acc = Operator.zero((d, d), (d, d), field)
    for a in range(d):
        acc = acc + rep.e[a].tensor(rep.e_dual[a])
    return acc


def check_heisenberg_relations(sc, rep=None):
    """The two multiplication families and the cross relation of the
    double, as exact matrix identities in the adjoint realization:

      e_a e_b   = m[a,b,c] e_c
      e^a e^b   = mu[c,a,b] e^c
      e_a e^b   = m[r,g,b] mu[a,g,s] e^r e_s

    The witness basis is (family, a, b) plus the differing column index.
    """
    from .relations import operators_equal_report

    if rep is None:
        rep = adjoint_rep(sc)
    watch = Stopwatch()
    d, field = sc.dim, sc.field
    zero_op = Operator.zero((d,), (d,), field)

    def fail(family, a, b, lhs, rhs):
        sub = operators_equal_report("", lhs, rhs)
        witness = Witness(basis=(family, a, b) + sub.witness.basis,
                          lhs=sub.witness.lhs, rhs=sub.witness.rhs)
        return watch.report(RelationId.HEISENBERG_RELATIONS, False, witness, d)

    m_by_pair = {}
    for (a, b, c), v in sc.m.items():
        m_by_pair.setdefault((a, b), []).append((c, v))
    mu_by_pair = {}
    for (c, a, b), v in sc.mu.items():
        mu_by_pair.setdefault((a, b), []).append((c, v))

    for a in range(d):
        for b in range(d):
            lhs = rep.e[a].compose(rep.e[b])
            rhs = zero_op
            for c, v in m_by_pair.get((a, b), ()):
                rhs = rhs + rep.e[c].scale(v)
            if lhs != rhs:
                return fail(0, a, b, lhs, rhs)
    for a in range(d):
        for b in range(d):
            lhs = rep.e_dual[a].compose(rep.e_dual[b])
            rhs = zero_op
            for c, v in mu_by_pair.get((a, b), ()):
                rhs = rhs + rep.e_dual[c].scale(v)
            if lhs != rhs:
                return fail(1, a, b, lhs, rhs)
    mu_by_first = {}
    for (a, g, s), v in sc.mu.items():
        mu_by_first.setdefault(a, []).append((g, s, v))
    m_by_last = {}
    for (r, g, b), v in sc.m.items():
        m_by_last.setdefault(b, []).append((r, g, v))
    for a in range(d):
        for b in range(d):
            lhs = rep.e[a].compose(rep.e_dual[b])
            rhs = zero_op
            for (g1, s, v) in mu_by_first.get(a, ()):
                for (r, g2, w) in m_by_last.get(b, ()):
                    if g1 == g2:
                        rhs = rhs + rep.e_dual[r].compose(
                            rep.e[s]).scale(v * w)
            if lhs != rhs:
                return fail(2, a, b, lhs, rhs)
    return watch.report(RelationId.HEISENBERG_RELATIONS, True, None, d)


def check_tilde_relations(sc, tilde):
    """Defining relations of the tilded double, whose cross relation
    puts the dual generator first:

      e~_a e~_b  = m[a,b,c] e~_c
      e~^a e~^b  = mu[c,a,b] e~^c
      e~^b e~_a  = mu[a,s,g] m[g,r,b] e~_s e~^r
    """
    from .relations import operators_equal_report

    watch = Stopwatch()
    d, field = sc.dim, sc.field
    zero_op = Operator.zero((d,), (d,), field)

    def fail(family, a, b, lhs, rhs):
        sub = operators_equal_report("", lhs, rhs)
        witness = Witness(basis=(family, a, b) + sub.witness.basis,
                          lhs=sub.witness.lhs, rhs=sub.witness.rhs)
        return watch.report("tilde_relations", False, witness, d)

    m_by_pair = {}
    for (a, b, c), v in sc.m.items():
        m_by_pair.setdefault((a, b), []).append((c, v))
    mu_by_pair = {}
    for (c, a, b), v in sc.mu.items():
        mu_by_pair.setdefault((a, b), []).append((c, v))
    for a in range(d):
        for b in range(d):
            lhs = tilde.e[a].compose(tilde.e[b])
            rhs = zero_op
            for c, v in m_by_pair.get((a, b), ()):
                rhs = rhs + tilde.e[c].scale(v)
            if lhs != rhs:
                return fail(0, a, b, lhs, rhs)
    for a in range(d):
        for b in range(d):
            lhs = tilde.e_dual[a].compose(tilde.e_dual[b])
            rhs = zero_op
            for c, v in mu_by_pair.get((a, b), ()):
                rhs = rhs + tilde.e_dual[c].scale(v)
            if lhs != rhs:
                return fail(1, a, b, lhs, rhs)
    mu_by_first = {}
    for (a, s, g), v in sc.mu.items():
        mu_by_first.setdefault(a, []).append((s, g, v))
    m_by_last = {}
    for (g, r, b), v in sc.m.items():
        m_by_last.setdefault(b, []).append((g, r, v))
    for a in range(d):
        for b in range(d):
            lhs = tilde.e_dual[b].compose(tilde.e[a])
            rhs = zero_op
            for (s, g1, v) in mu_by_first.get(a, ()):
                for (g2, r, w) in m_by_last.get(b, ()):
                    if g1 == g2:
                        rhs = rhs + tilde.e[s].compose(
                            tilde.e_dual[r]).scale(v * w)
            if lhs != rhs:
                return fail(2, a, b, lhs, rhs)
    return watch.report("tilde_relations", True, None, d)


# ------------------------------------------------------------ group algebras

def assert_cayley_table(table):
    "Verify a multiplication table presents a group; returns (identity, inverses)."
    n = len(table)
    if n < 1 or any(len(row) != n for row in table):
        raise ValueError("Cayley table must be square")
    for row in table:
        for x in row:
            if not 0 <= x < n:
                raise ValueError("Cayley table entries must index elements")
    identity = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise ValueError("Cayley table has no identity element")
    inverses = [None] * n
    for x in range(n):
        for y in range(n):
            if table[x][y] == identity and table[y][x] == identity:
                inverses[x] = y
                break
        if inverses[x] is None:
            raise ValueError("element %d has no inverse" % x)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise ValueError(
                        "Cayley table is not associative at (%d, %d, %d)"
                        % (a, b, c))
    return identity, inverses


def group_algebra(table, field):
    """Group bialgebra of a finite group given by its Cayley table.

    e_g e_h = e_{gh} and the coproduct is diagonal; unit, counit and the
    antipode g -> g^{-1} are included.
    """
    identity, inverses = assert_cayley_table(table)
    n = len(table)
    one = field.one
    m = {(a, b, table[a][b]): one for a in range(n) for b in range(n)}
    mu = {(g, g, g): one for g in range(n)}
    unit = [one if g == identity else field.zero for g in range(n)]
    counit = [one] * n
    antipode = {(g, inverses[g]): one for g in range(n)}
    antipode_inv = {(g, inverses[g]): one for g in range(n)}
    return StructureConstants(n, field, m, mu, unit=unit, counit=counit,
                              antipode=antipode, antipode_inv=antipode_inv)


def cyclic_table(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric3_table():
    "S3 as permutations of {0,1,2} in lexicographic order; composition (pq)(i) = p[q[i]]."
    perms = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = []
    for p in perms:
        row = []
        for q in perms:
            row.append(index[tuple(p[q[i]] for i in range(3))])
        table.append(row)
    return table


def builtin_constants(name, field):
    """Built-in examples: 'zn:<n>' for cyclic groups (n <= 12), 's3',
    and 'trivial' (the one-dimensional bialgebra)."""
    if name == "trivial":
        return group_algebra(cyclic_table(1), field)
    if name == "s3":
        return group_algebra(symmetric3_table(), field)
    if name.startswith("zn:"):
        try:
            n = int(name[3:])
        except ValueError:
            raise ValueError("malformed example name %r" % name) from None
        if not 1 <= n <= 12:
            raise ValueError("zn:<n> supports 1 <= n <= 12, got %d" % n)
        return group_algebra(cyclic_table(n), field)
    raise ValueError("unknown example %r (try zn:<n>, s3, trivial)" % name)
