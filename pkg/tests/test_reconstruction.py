import random
from fractions import Fraction

import pytest

from hdouble.bialgebra import (adjoint_rep, builtin_constants,
                               canonical_element)
from hdouble.errors import ReconstructionError
from hdouble.reconstruction import (dimension, dual_matrices, factorize,
                                    find_counit, find_unit, reconstruct,
                                    structure_constants)
from hdouble.scalars import FIELD_Q
from hdouble.tensor import Operator, invert, reshuffle, swap_operator


def rand_matrix_op(rng, d, density=0.7):
    entries = {}
    for i in range(d):
        for j in range(d):
            if rng.random() < density:
                entries[((i,), (j,))] = Fraction(rng.randint(-3, 3))
    return Operator((d,), (d,), entries, FIELD_Q)


def rand_tensor_sum(rng, d, r):
    s = Operator.zero((d, d), (d, d), FIELD_Q)
    for _ in range(r):
        s = s + rand_matrix_op(rng, d).tensor(rand_matrix_op(rng, d))
    return s


def solution(name):
    return canonical_element(builtin_constants(name, FIELD_Q))


class TestDimension:
    def test_group_solutions(self):
        assert dimension(solution("zn:2")) == 2
        assert dimension(solution("zn:5")) == 5
        assert dimension(solution("s3")) == 6

    def test_identity_is_a_pure_tensor(self):
        assert dimension(Operator.identity((4, 4), FIELD_Q)) == 1

    def test_zero(self):
        assert dimension(Operator.zero((3, 3), (3, 3), FIELD_Q)) == 0

    def test_two_routes_agree_on_random_input(self):
        rng = random.Random(30)
        for _ in range(20):
            d = rng.randint(2, 4)
            s = rand_tensor_sum(rng, d, rng.randint(0, d))
            assert dimension(s) <= d
            # the cross-check inside dimension() already compares the
            # literal route with the reshuffle route; also pin the value
            from hdouble.linalg import rank
            assert dimension(s) == rank(reshuffle(s).to_matrix(), FIELD_Q)

    def test_rejects_rectangular(self):
        with pytest.raises(ReconstructionError):
            dimension(Operator.identity((2, 3), FIELD_Q))


class TestFactorize:
    def test_reproduces_source(self):
        rng = random.Random(31)
        for _ in range(10):
            d = rng.randint(2, 4)
            s = rand_tensor_sum(rng, d, 2)
            g, f = factorize(s)
            rebuilt = Operator.zero((d, d), (d, d), FIELD_Q)
            for ga, fa in zip(g, f):
                rebuilt = rebuilt + ga.tensor(fa)
            assert rebuilt == s

    def test_group_solution_factors_diagonally(self):
        # S = sum_a X_a x E_aa for a group: F components are the E_aa
        g, f = factorize(solution("zn:3"))
        assert len(g) == 3
        for fa in f:
            assert len(fa.entries) == 1

    def test_independence(self):
        from hdouble.linalg import rank
        g, f = factorize(solution("s3"))
        for mats in (g, f):
            rows = [[op.to_matrix()[i][j] for i in range(6)
                     for j in range(6)] for op in mats]
            assert rank(rows, FIELD_Q) == 6


class TestDuals:
    def test_trace_pairing(self):
        rng = random.Random(32)
        g, f = factorize(solution("s3"))
        for mats in (g, f):
            duals = dual_matrices(mats)
            for a, xa in enumerate(duals):
                for b, mb in enumerate(mats):
                    prod = xa.compose(mb)
                    tr = sum((v for (r, c), v in prod.entries.items()
                              if r == c), Fraction(0))
                    assert tr == Fraction(a == b)

    def test_minimum_support_choice_is_deterministic(self):
        g, f = factorize(solution("zn:4"))
        assert dual_matrices(f) == dual_matrices(f)


class TestStructureConstants:
    def test_group_tables_recovered(self):
        sc = builtin_constants("zn:3", FIELD_Q)
        s = canonical_element(sc)
        g, f = factorize(s)
        m, mu = structure_constants(g, dual_matrices(g), f, dual_matrices(f))
        # same algebra up to relabeling; for the canonical basis the
        # labels line up exactly
        assert m == sc.m
        assert mu == sc.mu

    def test_closure_failure_detected(self):
        # E01 x E00 + E10 x E11 reshuffles to rank 2 but the G span
        # {E01, E10} is not closed under multiplication
        e01 = Operator((2,), (2,), {((0,), (1,)): Fraction(1)}, FIELD_Q)
        e10 = Operator((2,), (2,), {((1,), (0,)): Fraction(1)}, FIELD_Q)
        e00 = Operator((2,), (2,), {((0,), (0,)): Fraction(1)}, FIELD_Q)
        e11 = Operator((2,), (2,), {((1,), (1,)): Fraction(1)}, FIELD_Q)
        s = e01.tensor(e00) + e10.tensor(e11)
        g, f = factorize(s)
        with pytest.raises(ReconstructionError):
            structure_constants(g, dual_matrices(g), f, dual_matrices(f))


class TestUnitCounit:
    def test_group_algebra_values(self):
        sc = builtin_constants("zn:4", FIELD_Q)
        assert find_unit(sc.m, 4, FIELD_Q) == sc.unit
        assert find_counit(sc.mu, 4, FIELD_Q) == sc.counit

    def test_absent_unit(self):
        # one-dimensional algebra with x*x = 0 has no unit
        m = {(0, 0, 0): Fraction(0)}
        assert find_unit(m, 1, FIELD_Q) is None


class TestPipeline:
    def test_group_examples_validate(self):
        for name in ("zn:2", "zn:3", "s3"):
            result = reconstruct(solution(name))
            assert result.all_hold(), name
            assert result.unit is not None and result.counit is not None
            names = [r.relation for r in result.diagnostics]
            assert names == ["associativity", "coassociativity",
                             "compatibility", "dual_associativity",
                             "dual_coassociativity", "pairing",
                             "pentagon_roundtrip"]

    def test_abelian_gives_symmetric_product(self):
        result = reconstruct(solution("zn:3"))
        for (a, b, c), v in result.m.items():
            assert result.m.get((b, a, c)) == v

    def test_nonabelian_product_is_not_symmetric(self):
        result = reconstruct(solution("s3"))
        flips = [(a, b) for (a, b, c), v in result.m.items()
                 if result.m.get((b, a, c)) != v]
        assert flips

    def test_identity_reconstructs_to_point(self):
        # the identity is the pure tensor I x I: a one-dimensional
        # bialgebra with trivial tables
        result = reconstruct(Operator.identity((3, 3), FIELD_Q))
        assert result.dim == 1
        assert result.all_hold()
        assert result.m == {(0, 0, 0): Fraction(1)}
        assert result.mu == {(0, 0, 0): Fraction(1)}

    def test_zero_rejected(self):
        with pytest.raises(ReconstructionError):
            reconstruct(Operator.zero((2, 2), (2, 2), FIELD_Q))

    def test_basis_change_covariance(self):
        # conjugating S by T x T on both tensor factors preserves the
        # pentagon and must reconstruct a bialgebra of the same
        # dimension with all diagnostics passing
        rng = random.Random(33)
        s = solution("zn:3")
        from hdouble.linalg import rank
        while True:
            t = rand_matrix_op(rng, 3)
            if rank(t.to_matrix(), FIELD_Q) == 3:
                break
        tt = t.tensor(t)
        conj = tt.compose(s).compose(invert(tt))
        from hdouble.relations import check_pentagon
        assert check_pentagon(conj).holds
        result = reconstruct(conj)
        assert result.dim == 3
        assert result.all_hold()

    def test_swap_is_not_reconstructible(self):
        # reshuffled swap has full rank d^2 but the component span is
        # all of End(V); closure holds, yet the pairing cannot both be
        # diagonal and reproduce a bialgebra: the pipeline either raises
        # or reports a failing diagnostic
        s = swap_operator(2, FIELD_Q)
        try:
            result = reconstruct(s)
        except ReconstructionError:
            return
        assert not result.all_hold()
