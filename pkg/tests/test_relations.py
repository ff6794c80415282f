import random
from fractions import Fraction

import pytest

from hdouble.bialgebra import builtin_constants, canonical_element
from hdouble.errors import DimensionMismatchError, FieldMismatchError
from hdouble.relations import (Placed, apply_script, check_fg_relations,
                               check_mixed_pentagons,
                               check_mixed_permutation, check_pentagon,
                               check_reversed_pentagon, check_script_identity,
                               check_yang_baxter, materialize_script,
                               mixed_pentagon_scripts, operators_equal_report)
from hdouble.scalars import FIELD_Q, FIELD_QQ
from hdouble.tensor import Operator, invert, swap_operator


def rand_operator(rng, row_dims, col_dims, density=0.5):
    entries = {}
    for r in _indices(row_dims):
        for c in _indices(col_dims):
            if rng.random() < density:
                entries[(r, c)] = Fraction(rng.randint(-3, 3))
    return Operator(row_dims, col_dims, entries, FIELD_Q)


def _indices(dims):
    if not dims:
        yield ()
        return
    for head in range(dims[0]):
        for tail in _indices(dims[1:]):
            yield (head,) + tail


def pentagon_solution(name):
    return canonical_element(builtin_constants(name, FIELD_Q))


def prime_family(s):
    "S~, S', S'' from transposition formulas."
    s_tilde = s.transpose()
    s_prime = invert(s).partial_transpose(0)
    s_dprime = invert(s.partial_transpose(1))
    return s_tilde, s_prime, s_dprime


class TestScripts:
    def test_application_order_is_right_to_left(self):
        rng = random.Random(1)
        a = rand_operator(rng, (3,), (3,))
        b = rand_operator(rng, (3,), (3,))
        script = [Placed(a, (0,)), Placed(b, (0,))]
        vec = {(2,): Fraction(1)}
        out = apply_script(script, vec)
        expected = a.compose(b)
        assert out == {r: v for (r, c), v in expected.entries.items()
                       if c == (2,)}

    def test_sweep_matches_materialized(self):
        # the two evaluation strategies must agree on random scripts
        rng = random.Random(2)
        dims = (2, 3, 2)
        for _ in range(10):
            script = []
            for _ in range(rng.randint(1, 4)):
                legs = tuple(rng.sample(range(3), rng.randint(1, 2)))
                sub = tuple(dims[l] for l in legs)
                script.append(Placed(rand_operator(rng, sub, sub), legs))
            full = materialize_script(script, dims)
            for idx in _indices(dims):
                swept = apply_script(script, {idx: Fraction(1)})
                column = {r: v for (r, c), v in full.entries.items()
                          if c == idx}
                assert swept == column

    def test_identity_scripts_report_holds(self):
        eye = Operator.identity((2,), FIELD_Q)
        report = check_script_identity(
            "noop", [Placed(eye, (0,))], [Placed(eye, (1,))], (2, 2))
        assert report.holds and report.space_dim == 4
        assert report.witness is None
        assert report.elapsed >= 0

    def test_rejects_misfit_operators(self):
        eye = Operator.identity((2,), FIELD_Q)
        with pytest.raises(DimensionMismatchError):
            check_script_identity("bad", [Placed(eye, (0,))],
                                  [Placed(eye, (0,))], (3,))

    def test_rejects_mixed_fields(self):
        a = Operator.identity((2,), FIELD_Q)
        b = Operator.identity((2,), FIELD_QQ)
        with pytest.raises(FieldMismatchError):
            check_script_identity("bad", [Placed(a, (0,))],
                                  [Placed(b, (0,))], (2,))


class TestPentagon:
    def test_identity_solves(self):
        s = Operator.identity((3, 3), FIELD_Q)
        assert check_pentagon(s).holds

    def test_group_solutions(self):
        for name in ("zn:2", "zn:4", "s3"):
            report = check_pentagon(pentagon_solution(name))
            assert report.holds, name

    def test_swap_is_not_a_solution(self):
        assert not check_pentagon(swap_operator(2, FIELD_Q)).holds

    def test_scaling_breaks_it(self):
        # lhs scales as c^3, rhs as c^2
        rng = random.Random(3)
        s = pentagon_solution("zn:3")
        c = Fraction(rng.randint(2, 7))
        report = check_pentagon(s.scale(c))
        assert not report.holds
        assert report.witness is not None

    def test_witness_reproduces_failure(self):
        s = pentagon_solution("zn:2").scale(Fraction(2))
        report = check_pentagon(s)
        w = report.witness
        lhs = [Placed(s, (0, 1)), Placed(s, (0, 2)), Placed(s, (1, 2))]
        rhs = [Placed(s, (1, 2)), Placed(s, (0, 1))]
        start = {w.basis: Fraction(1)}
        lhs_vec = apply_script(lhs, start)
        rhs_vec = apply_script(rhs, start)
        for key, value in w.lhs:
            assert lhs_vec.get(key, Fraction(0)) == value
        for key, value in w.rhs:
            assert rhs_vec.get(key, Fraction(0)) == value
        assert dict(w.lhs) != dict(w.rhs)

    def test_rejects_unbalanced_legs(self):
        with pytest.raises(DimensionMismatchError):
            check_pentagon(Operator.identity((2, 3), FIELD_Q))
        with pytest.raises(DimensionMismatchError):
            check_pentagon(Operator.identity((2,), FIELD_Q))


class TestReversedPentagon:
    def test_transpose_of_solution_solves(self):
        for name in ("zn:3", "s3"):
            s = pentagon_solution(name)
            assert check_reversed_pentagon(s.transpose()).holds

    def test_scaling_breaks_it(self):
        s = pentagon_solution("zn:2").transpose().scale(Fraction(3))
        assert not check_reversed_pentagon(s).holds


class TestMixedPentagons:
    def test_family_of_group_solution(self):
        s = pentagon_solution("zn:3")
        reports = check_mixed_pentagons(s, *prime_family(s))
        assert len(reports) == 6
        assert all(r.holds for r in reports)
        assert len({r.relation for r in reports}) == 6

    def test_wrong_member_fails_somewhere(self):
        # the fifth identity carries S~ on one side only, so rescaling
        # S~ cannot cancel out
        s = pentagon_solution("zn:3")
        s_tilde, s_prime, s_dprime = prime_family(s)
        reports = check_mixed_pentagons(s, s_tilde.scale(Fraction(2)),
                                        s_prime, s_dprime)
        assert not reports[4].holds
        assert reports[4].witness is not None

    def test_scripts_shape(self):
        s = pentagon_solution("zn:2")
        scripts = mixed_pentagon_scripts(s, *prime_family(s))
        assert [len(lhs) for lhs, _ in scripts] == [3, 2, 3, 2, 3, 2]
        assert [len(rhs) for _, rhs in scripts] == [2, 3, 2, 3, 2, 3]

    def test_dimension_mismatch(self):
        s2 = pentagon_solution("zn:2")
        s3 = pentagon_solution("zn:3")
        with pytest.raises(DimensionMismatchError):
            check_mixed_pentagons(s2, s2.transpose(), s3, s2)


class TestYangBaxter:
    def test_swap_solves(self):
        assert check_yang_baxter(swap_operator(3, FIELD_Q)).holds

    def test_identity_solves(self):
        assert check_yang_baxter(Operator.identity((2, 2), FIELD_Q)).holds

    def test_diagonal_solves(self):
        rng = random.Random(4)
        entries = {}
        for i in range(2):
            for j in range(2):
                entries[((i, j), (i, j))] = Fraction(rng.randint(1, 9))
        r = Operator((2, 2), (2, 2), entries, FIELD_Q)
        assert check_yang_baxter(r).holds

    def test_perturbed_swap_fails(self):
        p = swap_operator(2, FIELD_Q)
        bump = Operator((2, 2), (2, 2), {((0, 0), (1, 1)): Fraction(1)},
                        FIELD_Q)
        report = check_yang_baxter(p + bump)
        assert not report.holds and report.witness is not None

    def test_pair_legs(self):
        # four legs grouped in twos: identity still solves, and the
        # ambient space is (2*3)^3
        r = Operator.identity((2, 3, 2, 3), FIELD_Q)
        report = check_yang_baxter(r)
        assert report.holds and report.space_dim == 216

    def test_leg_validation(self):
        with pytest.raises(DimensionMismatchError):
            check_yang_baxter(Operator.identity((2, 2, 2), FIELD_Q))
        with pytest.raises(DimensionMismatchError):
            check_yang_baxter(Operator.identity((2, 3), FIELD_Q))


class TestOneSpaceRelations:
    def test_mixed_permutation_holds(self):
        for name in ("zn:3", "s3"):
            assert check_mixed_permutation(pentagon_solution(name)).holds

    def test_fg_relations_hold(self):
        for name in ("zn:3", "s3"):
            assert check_fg_relations(pentagon_solution(name)).holds

    def test_fg_witness_names_family(self):
        s = pentagon_solution("zn:2").scale(Fraction(2))
        report = check_fg_relations(s)
        assert not report.holds
        assert report.witness.basis[0] in (0, 1)
        assert len(report.witness.basis) == 4

    def test_scaled_mixed_permutation_fails(self):
        s = pentagon_solution("zn:2").scale(Fraction(5))
        assert not check_mixed_permutation(s).holds


class TestOperatorsEqualReport:
    def test_equal(self):
        a = Operator.identity((2, 2), FIELD_Q)
        report = operators_equal_report("same", a, a)
        assert report.holds and report.witness is None
        assert report.space_dim == 4

    def test_unequal_names_first_entry(self):
        a = Operator.identity((2,), FIELD_Q)
        b = Operator((2,), (2,), {((0,), (0,)): Fraction(1),
                                  ((1,), (0,)): Fraction(4)}, FIELD_Q)
        report = operators_equal_report("same", a, b)
        assert not report.holds
        w = report.witness
        assert w.basis == (0,)
        assert w.lhs == (((1,), Fraction(0)),)
        assert w.rhs == (((1,), Fraction(4)),)
