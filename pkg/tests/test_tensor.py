import random
from fractions import Fraction

import pytest

from hdouble.errors import (DimensionMismatchError, FieldMismatchError,
                            SingularMatrixError)
from hdouble.linalg import rank
from hdouble.scalars import FIELD_Q, FIELD_QQ, QVAR
from hdouble.tensor import (LegPlacement, Operator, apply_to_vector,
                            flatten_index, invert, place_on_legs,
                            rank_factorize, reshuffle, swap_operator,
                            unflatten_index)


def mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


def kron(a, b):
    "Dense Kronecker product oracle."
    p, q = len(b), len(b[0])
    return [[a[i // p][j // q] * b[i % p][j % q]
             for j in range(len(a[0]) * q)]
            for i in range(len(a) * p)]


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


class TestIndexing:
    def test_flatten_roundtrip(self):
        dims = (2, 3, 4)
        for k in range(24):
            assert flatten_index(unflatten_index(k, dims), dims) == k

    def test_row_major_order(self):
        assert flatten_index((1, 2), (2, 3)) == 5
        assert unflatten_index(5, (2, 3)) == (1, 2)


class TestOperatorBasics:
    def test_rejects_bad_entries(self):
        with pytest.raises(DimensionMismatchError):
            Operator((2,), (2,), {((0, 0), (0,)): 1}, FIELD_Q)
        with pytest.raises(DimensionMismatchError):
            Operator((2,), (2,), {((2,), (0,)): 1}, FIELD_Q)
        with pytest.raises(FieldMismatchError):
            Operator((2,), (2,), {((0,), (0,)): 0.5}, FIELD_Q)
        with pytest.raises(DimensionMismatchError):
            Operator((), (2,), {}, FIELD_Q)

    def test_zero_values_dropped(self):
        op = Operator((2,), (2,), {((0,), (0,)): 0}, FIELD_Q)
        assert op.entries == {}

    def test_immutable(self):
        op = Operator.identity((2,), FIELD_Q)
        with pytest.raises(AttributeError):
            op.entries = {}

    def test_matrix_roundtrip(self):
        rng = random.Random(1)
        op = rand_operator(rng, (2, 3), (3, 2))
        back = Operator.from_matrix(op.to_matrix(), FIELD_Q)
        assert back.to_matrix() == op.to_matrix()
        assert back.row_dim == 6 and back.col_dim == 6

    def test_arithmetic_matches_dense(self):
        rng = random.Random(2)
        a = rand_operator(rng, (2, 2), (3,))
        b = rand_operator(rng, (2, 2), (3,))
        assert (a + b).to_matrix() == [
            [x + y for x, y in zip(ra, rb)]
            for ra, rb in zip(a.to_matrix(), b.to_matrix())]
        assert (a - b) + b == a
        assert (-a) + a == Operator.zero((2, 2), (3,), FIELD_Q)
        assert a.scale(Fraction(3)) == a + a + a
        assert Fraction(2) * a == a + a

    def test_shape_mismatch(self):
        a = Operator.identity((2,), FIELD_Q)
        b = Operator.identity((3,), FIELD_Q)
        with pytest.raises(DimensionMismatchError):
            a + b
        with pytest.raises(FieldMismatchError):
            a + Operator.identity((2,), FIELD_QQ)

    def test_hash_consistent(self):
        a = Operator((2,), (2,), {((0,), (1,)): Fraction(7)}, FIELD_Q)
        b = Operator((2,), (2,), {((0,), (1,)): Fraction(7),
                                  ((1,), (1,)): Fraction(0)}, FIELD_Q)
        assert a == b and hash(a) == hash(b)


class TestCompose:
    def test_against_dense(self):
        rng = random.Random(3)
        for _ in range(20):
            a = rand_operator(rng, (2, 2), (3,))
            b = rand_operator(rng, (3,), (2, 2))
            assert a.compose(b).to_matrix() == mat_mul(a.to_matrix(),
                                                       b.to_matrix())

    def test_identity_neutral(self):
        rng = random.Random(4)
        a = rand_operator(rng, (2, 3), (2, 3))
        eye = Operator.identity((2, 3), FIELD_Q)
        assert eye.compose(a) == a and a.compose(eye) == a
        assert eye * a == a

    def test_dim_mismatch(self):
        a = Operator.identity((2,), FIELD_Q)
        b = Operator.identity((3,), FIELD_Q)
        with pytest.raises(DimensionMismatchError):
            a.compose(b)


class TestTensorProduct:
    def test_against_kron(self):
        rng = random.Random(5)
        for _ in range(15):
            a = rand_operator(rng, (2,), (3,))
            b = rand_operator(rng, (3,), (2,))
            t = a.tensor(b)
            assert t.row_dims == (2, 3) and t.col_dims == (3, 2)
            assert t.to_matrix() == kron(a.to_matrix(), b.to_matrix())

    def test_mixed_product_rule(self):
        rng = random.Random(6)
        a = rand_operator(rng, (2,), (2,))
        b = rand_operator(rng, (3,), (3,))
        c = rand_operator(rng, (2,), (2,))
        d = rand_operator(rng, (3,), (3,))
        assert a.tensor(b).compose(c.tensor(d)) == \
            a.compose(c).tensor(b.compose(d))


class TestTranspose:
    def test_full(self):
        rng = random.Random(7)
        a = rand_operator(rng, (2, 3), (4,))
        t = a.transpose()
        assert t.row_dims == (4,) and t.col_dims == (2, 3)
        dense = a.to_matrix()
        assert t.to_matrix() == [[dense[i][j] for i in range(len(dense))]
                                 for j in range(len(dense[0]))]

    def test_partial_on_pure_tensor(self):
        rng = random.Random(8)
        a = rand_operator(rng, (2,), (2,))
        b = rand_operator(rng, (3,), (3,))
        assert a.tensor(b).partial_transpose(0) == a.transpose().tensor(b)
        assert a.tensor(b).partial_transpose(1) == a.tensor(b.transpose())

    def test_involution(self):
        rng = random.Random(9)
        s = rand_operator(rng, (2, 3), (2, 3))
        assert s.partial_transpose(0).partial_transpose(0) == s
        assert s.partial_transpose(0).partial_transpose(1) == s.transpose()


class TestSwap:
    def test_squares_to_identity(self):
        p = swap_operator(3, FIELD_Q)
        assert p.compose(p) == Operator.identity((3, 3), FIELD_Q)

    def test_conjugation_exchanges_factors(self):
        rng = random.Random(10)
        a = rand_operator(rng, (3,), (3,))
        b = rand_operator(rng, (3,), (3,))
        p = swap_operator(3, FIELD_Q)
        assert p.compose(a.tensor(b)).compose(p) == b.tensor(a)


class TestPlacement:
    def test_matches_kron_on_ordered_legs(self):
        rng = random.Random(11)
        a = rand_operator(rng, (2,), (2,))
        b = rand_operator(rng, (3,), (3,))
        placed = place_on_legs(a.tensor(b), LegPlacement((2, 4, 3), (0, 2)))
        eye4 = [[Fraction(i == j) for j in range(4)] for i in range(4)]
        assert placed.to_matrix() == kron(kron(a.to_matrix(), eye4),
                                          b.to_matrix())

    def test_reordered_legs(self):
        # placing (a x b) on legs (1, 0) equals placing (b x a) on (0, 1)
        rng = random.Random(12)
        a = rand_operator(rng, (2,), (2,))
        b = rand_operator(rng, (3,), (3,))
        ab = a.tensor(b)
        ba = b.tensor(a)
        assert place_on_legs(ab, LegPlacement((3, 2), (1, 0))) == \
            place_on_legs(ba, LegPlacement((3, 2), (0, 1)))

    def test_disjoint_legs_commute(self):
        rng = random.Random(13)
        for _ in range(10):
            a = rand_operator(rng, (2,), (2,))
            b = rand_operator(rng, (2, 2), (2, 2))
            pa = place_on_legs(a, LegPlacement((2, 2, 2, 2), (1,)))
            pb = place_on_legs(b, LegPlacement((2, 2, 2, 2), (3, 0)))
            assert pa.compose(pb) == pb.compose(pa)

    def test_wrong_dims_rejected(self):
        a = Operator.identity((2,), FIELD_Q)
        with pytest.raises(DimensionMismatchError):
            place_on_legs(a, LegPlacement((3, 3), (0,)))
        with pytest.raises(DimensionMismatchError):
            LegPlacement((2, 2), (0, 0))
        with pytest.raises(DimensionMismatchError):
            LegPlacement((2, 2), (2,))


class TestApplyToVector:
    def test_matches_materialized(self):
        rng = random.Random(14)
        dims = (2, 3, 2)
        op = rand_operator(rng, (2, 2), (2, 2))
        placed = place_on_legs(op, LegPlacement(dims, (2, 0)))
        for _ in range(10):
            vec = {idx: Fraction(rng.randint(-2, 2))
                   for idx in _indices(dims) if rng.random() < 0.4}
            vec = {k: v for k, v in vec.items() if v}
            direct = apply_to_vector(op, (2, 0), vec)
            expected = {}
            for (r, c), v in placed.entries.items():
                if c in vec:
                    expected[r] = expected.get(r, Fraction(0)) + v * vec[c]
            expected = {k: v for k, v in expected.items() if v}
            assert direct == expected

    def test_cancellation_removes_keys(self):
        op = Operator((2,), (2,), {((0,), (0,)): Fraction(1),
                                   ((0,), (1,)): Fraction(-1)}, FIELD_Q)
        out = apply_to_vector(op, (0,), {(0,): Fraction(1), (1,): Fraction(1)})
        assert out == {}


class TestInvert:
    def test_roundtrip(self):
        rng = random.Random(15)
        done = 0
        while done < 8:
            op = rand_operator(rng, (2, 2), (2, 2), density=0.7)
            if rank(op.to_matrix(), FIELD_Q) < 4:
                continue
            eye = Operator.identity((2, 2), FIELD_Q)
            assert invert(op).compose(op) == eye
            assert op.compose(invert(op)) == eye
            done += 1

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            invert(Operator.zero((2,), (2,), FIELD_Q))

    def test_non_square(self):
        op = Operator.zero((2,), (3,), FIELD_Q)
        with pytest.raises(DimensionMismatchError):
            invert(op)

    def test_rational_function_entries(self):
        q = QVAR
        one = FIELD_QQ.one
        op = Operator((2,), (2,), {((0,), (0,)): one, ((0,), (1,)): q,
                                   ((1,), (1,)): one - q}, FIELD_QQ)
        assert invert(op).compose(op) == Operator.identity((2,), FIELD_QQ)


class TestReshuffle:
    def test_entry_relabeling(self):
        rng = random.Random(16)
        s = rand_operator(rng, (2, 3), (2, 3))
        m = reshuffle(s)
        assert m.row_dims == (2, 2) and m.col_dims == (3, 3)
        for (r, c), v in s.entries.items():
            assert m.entries[((r[0], c[0]), (r[1], c[1]))] == v

    def test_involution(self):
        rng = random.Random(17)
        s = rand_operator(rng, (2, 3), (2, 3))
        assert reshuffle(reshuffle(s)) == s

    def test_pure_tensor_is_rank_one(self):
        rng = random.Random(18)
        a = rand_operator(rng, (3,), (3,), density=0.8)
        b = rand_operator(rng, (3,), (3,), density=0.8)
        m = reshuffle(a.tensor(b))
        assert rank(m.to_matrix(), FIELD_Q) == 1

    def test_identity_is_rank_one(self):
        m = reshuffle(Operator.identity((3, 3), FIELD_Q))
        assert rank(m.to_matrix(), FIELD_Q) == 1

    def test_swap_is_full_rank(self):
        m = reshuffle(swap_operator(3, FIELD_Q))
        assert rank(m.to_matrix(), FIELD_Q) == 9

    def test_rank_bounded_by_tensor_terms(self):
        rng = random.Random(19)
        for r in (1, 2, 3):
            s = Operator.zero((3, 3), (3, 3), FIELD_Q)
            for _ in range(r):
                s = s + rand_operator(rng, (3,), (3,)).tensor(
                    rand_operator(rng, (3,), (3,)))
            assert rank(reshuffle(s).to_matrix(), FIELD_Q) <= r

    def test_needs_two_legs(self):
        with pytest.raises(DimensionMismatchError):
            reshuffle(Operator.identity((2,), FIELD_Q))


class TestRankFactorizeOperator:
    def test_reproduces_entries(self):
        rng = random.Random(20)
        s = rand_operator(rng, (2, 2), (2, 2))
        left, right, r = rank_factorize(s)
        dense = s.to_matrix()
        for i in range(4):
            for j in range(4):
                total = sum(left[a][i] * right[a][j] for a in range(r))
                assert total == dense[i][j]
