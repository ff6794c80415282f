"""Sparse exact operators on tensor products of finite-dimensional legs.

An Operator maps the column space (legs of col_dims) to the row space
(legs of row_dims).  Entries live in a single scalar field (Q or Q(q)),
are stored sparsely keyed by (row multi-index, col multi-index), and
zero values are never kept, so equality is structural.
"""

from dataclasses import dataclass

from . import linalg
from .errors import (DimensionMismatchError, FieldMismatchError)
from .scalars import ScalarField


def flatten_index(idx, dims):
    k = 0
    for i, d in zip(idx, dims):
        k = k * d + i
    return k


def unflatten_index(k, dims):
    out = []
    for d in reversed(dims):
        out.append(k % d)
        k //= d
    return tuple(reversed(out))


def _prod(dims):
    n = 1
    for d in dims:
        n *= d
    return n


class Operator:

    __slots__ = ("row_dims", "col_dims", "field", "entries", "_by_column")

    def __init__(self, row_dims, col_dims, entries, field):
        row_dims = tuple(int(d) for d in row_dims)
        col_dims = tuple(int(d) for d in col_dims)
        if not row_dims or not col_dims:
            raise DimensionMismatchError("operator needs at least one leg")
        if any(d < 1 for d in row_dims + col_dims):
            raise DimensionMismatchError("leg dimensions must be positive")
        if not isinstance(field, ScalarField):
            raise TypeError("field must be a ScalarField")
        clean = {}
        for (row, col), value in entries.items():
            if not value:
                continue
            if len(row) != len(row_dims) or len(col) != len(col_dims):
                raise DimensionMismatchError(
                    "entry index %r has wrong leg count" % ((row, col),))
            if any(not 0 <= i < d for i, d in zip(row, row_dims)) or \
               any(not 0 <= j < d for j, d in zip(col, col_dims)):
                raise DimensionMismatchError(
                    "entry index %r out of range" % ((row, col),))
            if not field.contains(value):
                raise FieldMismatchError(
                    "entry %r does not belong to field %s"
                    % (value, field.tag))
            clean[(tuple(row), tuple(col))] = value
        object.__setattr__(self, "row_dims", row_dims)
        object.__setattr__(self, "col_dims", col_dims)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "_by_column", None)

    def __setattr__(self, name, value):
        raise AttributeError("Operator is immutable")

    # ---------------------------------------------------------- constructors

    @classmethod
    def identity(cls, dims, field):
        out = cls.__new__(cls)
        dims = tuple(dims)
        entries = {}
        one = field.one
        for idx in _index_space(dims):
            entries[(idx, idx)] = one
        object.__setattr__(out, "row_dims", dims)
        object.__setattr__(out, "col_dims", dims)
        object.__setattr__(out, "field", field)
        object.__setattr__(out, "entries", entries)
        object.__setattr__(out, "_by_column", None)
        return out

    @classmethod
    def zero(cls, row_dims, col_dims, field):
        return cls(row_dims, col_dims, {}, field)

    @classmethod
    def from_matrix(cls, rows, field):
        "Single-leg operator from a dense list of rows."
        m, n = len(rows), len(rows[0])
        entries = {}
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                if value:
                    entries[((i,), (j,))] = value
        return cls((m,), (n,), entries, field)

    # --------------------------------------------------------------- queries

    @property
    def row_dim(self):
        return _prod(self.row_dims)

    @property
    def col_dim(self):
        return _prod(self.col_dims)

    def is_square(self):
        return self.row_dims == self.col_dims

    def to_matrix(self):
        "Dense row-major matrix of the flattened operator."
        zero = self.field.zero
        n = self.col_dim
        rows = [[zero] * n for _ in range(self.row_dim)]
        for (r, c), v in self.entries.items():
            rows[flatten_index(r, self.row_dims)][
                flatten_index(c, self.col_dims)] = v
        return rows

    def column_index(self):
        "entries grouped by column multi-index (cached)."
        if self._by_column is None:
            by_col = {}
            for (r, c), v in self.entries.items():
                by_col.setdefault(c, []).append((r, v))
            object.__setattr__(self, "_by_column", by_col)
        return self._by_column

    # ------------------------------------------------------------ arithmetic

    def _require_same_shape(self, other):
        if self.field != other.field:
            raise FieldMismatchError("operands over different fields")
        if self.row_dims != other.row_dims or self.col_dims != other.col_dims:
            raise DimensionMismatchError("operand shapes differ")

    def __add__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        self._require_same_shape(other)
        entries = dict(self.entries)
        for key, v in other.entries.items():
            prev = entries.get(key)
            total = v if prev is None else prev + v
            if total:
                entries[key] = total
            elif prev is not None:
                del entries[key]
        return _raw_operator(self.row_dims, self.col_dims, entries, self.field)

    def __sub__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        entries = {k: -v for k, v in self.entries.items()}
        return _raw_operator(self.row_dims, self.col_dims, entries, self.field)

    def scale(self, scalar):
        entries = {}
        for key, v in self.entries.items():
            value = scalar * v
            if value:
                entries[key] = value
        return _raw_operator(self.row_dims, self.col_dims, entries, self.field)

    def __mul__(self, other):
        if isinstance(other, Operator):
            return self.compose(other)
        return self.scale(other)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def compose(self, other):
        "Matrix product self . other (self applied after other)."
        if self.field != other.field:
            raise FieldMismatchError("operands over different fields")
        if self.col_dims != other.row_dims:
            raise DimensionMismatchError(
                "cannot compose %r with %r" % (self.col_dims, other.row_dims))
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        acc = {}
        for (r, c), v in self.entries.items():
            for c2, v2 in by_row.get(c, ()):
                key = (r, c2)
                prev = acc.get(key)
                acc[key] = v * v2 if prev is None else prev + v * v2
        acc = {k: v for k, v in acc.items() if v}
        return _raw_operator(self.row_dims, other.col_dims, acc, self.field)

    def tensor(self, other):
        "Kronecker product; legs of other are appended after self's."
        if self.field != other.field:
            raise FieldMismatchError("operands over different fields")
        entries = {}
        for (r1, c1), v1 in self.entries.items():
            for (r2, c2), v2 in other.entries.items():
                entries[(r1 + r2, c1 + c2)] = v1 * v2
        return _raw_operator(self.row_dims + other.row_dims,
                             self.col_dims + other.col_dims,
                             entries, self.field)

    def transpose(self):
        entries = {(c, r): v for (r, c), v in self.entries.items()}
        return _raw_operator(self.col_dims, self.row_dims, entries, self.field)

    def partial_transpose(self, leg):
        "Exchange row and column indices on one leg only."
        nlegs = len(self.row_dims)
        if len(self.col_dims) != nlegs:
            raise DimensionMismatchError(
                "partial transpose needs equal leg counts")
        if not 0 <= leg < nlegs:
            raise DimensionMismatchError("leg %d out of range" % leg)
        row_dims = list(self.row_dims)
        col_dims = list(self.col_dims)
        row_dims[leg], col_dims[leg] = col_dims[leg], row_dims[leg]
        entries = {}
        for (r, c), v in self.entries.items():
            nr, nc = list(r), list(c)
            nr[leg], nc[leg] = c[leg], r[leg]
            entries[(tuple(nr), tuple(nc))] = v
        return _raw_operator(tuple(row_dims), tuple(col_dims), entries,
                             self.field)

    # ------------------------------------------------------------ comparison

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return (self.row_dims == other.row_dims
                and self.col_dims == other.col_dims
                and self.field == other.field
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.row_dims, self.col_dims, self.field.tag,
                     frozenset(self.entries.items())))

    def __repr__(self):
        return "Operator(%s -> %s over %s, %d entries)" % (
            list(self.col_dims), list(self.row_dims), self.field.tag,
            len(self.entries))


def _raw_operator(row_dims, col_dims, entries, field):
    "Internal fast path: trusted canonical entries, no validation."
    out = Operator.__new__(Operator)
    object.__setattr__(out, "row_dims", row_dims)
    object.__setattr__(out, "col_dims", col_dims)
    object.__setattr__(out, "field", field)
    object.__setattr__(out, "entries", entries)
    object.__setattr__(out, "_by_column", None)
    return out


def _index_space(dims):
    if not dims:
        yield ()
        return
    for head in range(dims[0]):
        for tail in _index_space(dims[1:]):
            yield (head,) + tail


def swap_operator(d, field):
    "The permutation P on two legs of dimension d: P|i,j> = |j,i>."
    one = field.one
    entries = {((i, j), (j, i)): one for i in range(d) for j in range(d)}
    return Operator((d, d), (d, d), entries, field)


@dataclass(frozen=True)
class LegPlacement:
    """Where an operator sits inside a larger tensor product.

    leg_dims lists the dimensions of every leg of the ambient space;
    target_legs names the legs (in order) the operator acts on.
    """

    leg_dims: tuple
    target_legs: tuple

    def __post_init__(self):
        object.__setattr__(self, "leg_dims", tuple(self.leg_dims))
        object.__setattr__(self, "target_legs", tuple(self.target_legs))
        if len(set(self.target_legs)) != len(self.target_legs):
            raise DimensionMismatchError("target legs must be distinct")
        for leg in self.target_legs:
            if not 0 <= leg < len(self.leg_dims):
                raise DimensionMismatchError("target leg %d out of range" % leg)


def place_on_legs(op, placement):
    """Materialize op x identity as an operator on the full space.

    The operator's legs are matched, in order, to placement.target_legs;
    all remaining legs carry the identity.
    """
    selected = tuple(placement.leg_dims[l] for l in placement.target_legs)
    if op.row_dims != selected or op.col_dims != selected:
        raise DimensionMismatchError(
            "operator dims %r do not fit legs %r of %r"
            % (op.row_dims, placement.target_legs, placement.leg_dims))
    spectators = [l for l in range(len(placement.leg_dims))
                  if l not in placement.target_legs]
    spect_dims = [placement.leg_dims[l] for l in spectators]
    entries = {}
    for (r, c), v in op.entries.items():
        for rest in _index_space(tuple(spect_dims)):
            row = [0] * len(placement.leg_dims)
            col = [0] * len(placement.leg_dims)
            for pos, leg in enumerate(placement.target_legs):
                row[leg] = r[pos]
                col[leg] = c[pos]
            for pos, leg in enumerate(spectators):
                row[leg] = rest[pos]
                col[leg] = rest[pos]
            entries[(tuple(row), tuple(col))] = v
    full_dims = placement.leg_dims
    return _raw_operator(full_dims, full_dims, entries, op.field)


def apply_to_vector(op, target_legs, vector):
    """Apply op (placed on target_legs) to a sparse vector.

    The vector maps full multi-indices to scalars; the identity on the
    spectator legs is never materialized.
    """
    by_col = op.column_index()
    out = {}
    for full, coeff in vector.items():
        sub = tuple(full[l] for l in target_legs)
        hits = by_col.get(sub)
        if not hits:
            continue
        for row_sub, value in hits:
            key = list(full)
            for pos, leg in enumerate(target_legs):
                key[leg] = row_sub[pos]
            key = tuple(key)
            term = value * coeff
            prev = out.get(key)
            total = term if prev is None else prev + term
            if total:
                out[key] = total
            elif prev is not None:
                del out[key]
    return out


def invert(op):
    "Exact inverse of a square operator; raises SingularMatrixError."
    if op.row_dims != op.col_dims:
        raise DimensionMismatchError("only square operators can be inverted")
    inv_rows = linalg.inverse(op.to_matrix(), op.field)
    entries = {}
    for i, row in enumerate(inv_rows):
        ridx = unflatten_index(i, op.row_dims)
        for j, v in enumerate(row):
            if v:
                entries[(ridx, unflatten_index(j, op.col_dims))] = v
    return _raw_operator(op.row_dims, op.col_dims, entries, op.field)


RESHUFFLE_GROUPING = ((0, 2), (1, 3))


def reshuffle(op, grouping=RESHUFFLE_GROUPING):
    """Regroup a two-leg operator into the factorization matrix.

    Index slots are numbered (row leg 1, row leg 2, col leg 1, col leg 2)
    = (0, 1, 2, 3).  With the default grouping the result M satisfies
    M[(i1,j1), (i2,j2)] = op[(i1,i2), (j1,j2)], so a pure tensor A x B
    reshuffles to the rank-one matrix vec(A) vec(B)^T.
    """
    if len(op.row_dims) != 2 or len(op.col_dims) != 2:
        raise DimensionMismatchError("reshuffle expects a two-leg operator")
    row_slots, col_slots = grouping
    if sorted(row_slots + col_slots) != [0, 1, 2, 3]:
        raise DimensionMismatchError("grouping must partition the 4 slots")
    slot_dims = (op.row_dims[0], op.row_dims[1],
                 op.col_dims[0], op.col_dims[1])
    entries = {}
    for (r, c), v in op.entries.items():
        slots = (r[0], r[1], c[0], c[1])
        new_row = tuple(slots[s] for s in row_slots)
        new_col = tuple(slots[s] for s in col_slots)
        entries[(new_row, new_col)] = v
    return _raw_operator(tuple(slot_dims[s] for s in row_slots),
                         tuple(slot_dims[s] for s in col_slots),
                         entries, op.field)


def rank_factorize(mat):
    """Exact rank factorization of an operator viewed as a matrix.

    Returns (left, right, rank) with left a list of flattened columns,
    right a list of flattened rows, so that
    mat[i, j] = sum_a left[a][i] * right[a][j].
    """
    columns, rows, r = linalg.rank_factorize(mat.to_matrix(), mat.field)
    return columns, rows, r
