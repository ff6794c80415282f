"""Recover dual bialgebras from an invertible pentagon solution.

Given S on a d x d tensor square, expand S = sum_a G_a x F^a by exact
rank factorization of the reshuffled matrix, introduce trace-dual
matrices, and read off structure constants

    m[a,b,c]  = tr(G_a G_b G^c)        mu[c,a,b] = tr(F^a F^b F_c)

after asserting that the G and F spans are closed under products.  The
result is validated by rerunning the bialgebra axioms, their duals,
the pairing identity and a pentagon round trip.
"""

from dataclasses import dataclass, replace

from .bialgebra import (StructureConstants, adjoint_rep, canonical_element,
                        check_associativity, check_coassociativity,
                        check_compatibility)
from .errors import InconsistentSystemError, ReconstructionError
from . import linalg
from .relations import check_pentagon, operators_equal_report
from .tensor import (Operator, rank_factorize, reshuffle, swap_operator)


def _require_two_legs(op):
    if (len(op.row_dims) != 2 or op.row_dims != op.col_dims
            or op.row_dims[0] != op.row_dims[1]):
        raise ReconstructionError(
            "expected an operator on two equal square legs")


def _unvec(vec, d, field):
    entries = {}
    for i in range(d):
        for j in range(d):
            v = vec[i * d + j]
            if v:
                entries[((i,), (j,))] = v
    return Operator((d,), (d,), entries, field)


def _trace(op):
    total = op.field.zero
    for (r, c), v in op.entries.items():
        if r == c:
            total = total + v
    return total


def dimension(s):
    """Rank of the partially transposed permuted matrix, cross-checked
    against the factorization rank of the reshuffled matrix."""
    _require_two_legs(s)
    d = s.row_dims[0]
    p = swap_operator(d, s.field)
    literal = p.compose(s).partial_transpose(0)
    r_literal = linalg.rank(literal.to_matrix(), s.field)
    r_shuffle = linalg.rank(reshuffle(s).to_matrix(), s.field)
    if r_literal != r_shuffle:
        raise ReconstructionError(
            "rank cross-check failed: %d vs %d" % (r_literal, r_shuffle))
    return r_literal


def factorize(s):
    """Expand S = sum_a G_a x F^a; returns (G, F) as lists of d x d
    operators, deterministic under the first-nonzero-pivot rule."""
    _require_two_legs(s)
    d = s.row_dims[0]
    columns, rows, _ = rank_factorize(reshuffle(s))
    g = [_unvec(col, d, s.field) for col in columns]
    f = [_unvec(row, d, s.field) for row in rows]
    return g, f


def dual_matrices(mats):
    """Solve tr(X_a M_b) = delta for the given independent matrices;
    free variables are set to zero, so the solution is the deterministic
    minimum-support one."""
    r = len(mats)
    d = mats[0].row_dims[0]
    field = mats[0].field
    system = []
    for op in mats:
        dense = op.to_matrix()
        system.append([dense[j][i] for i in range(d) for j in range(d)])
    rhs = [[field.one if i == j else field.zero for j in range(r)]
           for i in range(r)]
    solution = linalg.solve(system, rhs, field)
    duals = []
    for a in range(r):
        duals.append(_unvec([solution[i][a] for i in range(d * d)], d, field))
    return duals


def structure_constants(g, g_dual, f, f_dual):
    """Trace formulas for (m, mu); asserts that both spans close under
    multiplication, which also certifies the expansion coefficients."""
    r = len(g)
    d = g[0].row_dims[0]
    field = g[0].field
    zero_op = Operator.zero((d,), (d,), field)
    m = {}
    for a in range(r):
        for b in range(r):
            prod = g[a].compose(g[b])
            rebuilt = zero_op
            for c in range(r):
                coeff = _trace(prod.compose(g_dual[c]))
                if coeff:
                    m[(a, b, c)] = coeff
                    rebuilt = rebuilt + g[c].scale(coeff)
            if rebuilt != prod:
                raise ReconstructionError(
                    "G_%d G_%d leaves the span of the G matrices"
                    " (input is not an invertible pentagon solution)"
                    % (a, b))
    mu = {}
    for a in range(r):
        for b in range(r):
            prod = f[a].compose(f[b])
            rebuilt = zero_op
            for c in range(r):
                coeff = _trace(prod.compose(f_dual[c]))
                if coeff:
                    mu[(c, a, b)] = coeff
                    rebuilt = rebuilt + f[c].scale(coeff)
            if rebuilt != prod:
                raise ReconstructionError(
                    "F^%d F^%d leaves the span of the F matrices"
                    " (input is not an invertible pentagon solution)"
                    % (a, b))
    return m, mu


def find_unit(m, dim, field):
    "Two-sided unit coefficients for the product m, or None."
    pairs = [(b, c) for b in range(dim) for c in range(dim)]
    row_of = {bc: i for i, bc in enumerate(pairs)}
    n = len(pairs)
    left = [[field.zero] * dim for _ in range(n)]
    right = [[field.zero] * dim for _ in range(n)]
    for (a, b, c), v in m.items():
        left[row_of[(b, c)]][a] = left[row_of[(b, c)]][a] + v
        right[row_of[(a, c)]][b] = right[row_of[(a, c)]][b] + v
    target = [[field.one if b == c else field.zero] for (b, c) in pairs]
    try:
        x = linalg.solve(left + right, target + target, field)
    except InconsistentSystemError:
        return None
    return tuple(x[a][0] for a in range(dim))


def find_counit(mu, dim, field):
    "Two-sided counit coefficients for the coproduct mu, or None."
    pairs = [(a, c) for a in range(dim) for c in range(dim)]
    row_of = {ac: i for i, ac in enumerate(pairs)}
    n = len(pairs)
    left = [[field.zero] * dim for _ in range(n)]
    right = [[field.zero] * dim for _ in range(n)]
    for (a, b, c), v in mu.items():
        left[row_of[(a, c)]][b] = left[row_of[(a, c)]][b] + v
        right[row_of[(a, b)]][c] = right[row_of[(a, b)]][c] + v
    target = [[field.one if a == c else field.zero] for (a, c) in pairs]
    try:
        x = linalg.solve(left + right, target + target, field)
    except InconsistentSystemError:
        return None
    return tuple(x[a][0] for a in range(dim))


@dataclass(frozen=True)
class ReconstructionResult:
    "Everything extracted from one pentagon solution."

    dim: int
    f: list
    g: list
    f_dual: list
    g_dual: list
    m: dict
    mu: dict
    diagnostics: list
    unit: tuple
    counit: tuple
    source: Operator

    def constants(self):
        return StructureConstants(self.dim, self.source.field, self.m,
                                  self.mu)

    def all_hold(self):
        return all(rep.holds for rep in self.diagnostics)


def _renamed(report, name):
    return replace(report, relation=name)


def validate(result):
    """Axioms on the reconstructed constants, their duals with the roles
    of product and coproduct swapped, the pairing identity
    sum_a G_a x F^a = S, and a pentagon round trip through the adjoint
    realization."""
    sc = result.constants()
    dual_sc = StructureConstants(
        result.dim, result.source.field,
        {(a, b, c): v for (c, a, b), v in result.mu.items()},
        {(a, b, c): v for (b, c, a), v in result.m.items()})
    reports = [
        check_associativity(sc),
        check_coassociativity(sc),
        check_compatibility(sc),
        _renamed(check_associativity(dual_sc), "dual_associativity"),
        _renamed(check_coassociativity(dual_sc), "dual_coassociativity"),
    ]
    d = result.source.row_dims[0]
    rebuilt = Operator.zero((d, d), (d, d), result.source.field)
    for a in range(result.dim):
        rebuilt = rebuilt + result.g[a].tensor(result.f[a])
    reports.append(operators_equal_report("pairing", rebuilt, result.source))
    roundtrip = canonical_element(sc, adjoint_rep(sc))
    reports.append(_renamed(check_pentagon(roundtrip), "pentagon_roundtrip"))
    return reports


def reconstruct(s):
    """Full pipeline: dimension, factorization, duals, structure
    constants, unit and counit search, and validation diagnostics."""
    _require_two_legs(s)
    r = dimension(s)
    if r == 0:
        raise ReconstructionError("the zero operator has no factorization")
    g, f = factorize(s)
    f_dual = dual_matrices(f)
    g_dual = dual_matrices(g)
    m, mu = structure_constants(g, g_dual, f, f_dual)
    field = s.field
    result = ReconstructionResult(
        dim=r, f=f, g=g, f_dual=f_dual, g_dual=g_dual, m=m, mu=mu,
        diagnostics=[], unit=find_unit(m, r, field),
        counit=find_counit(mu, r, field), source=s)
    return replace(result, diagnostics=validate(result))
