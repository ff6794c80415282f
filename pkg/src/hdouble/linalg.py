"""Exact dense linear algebra over Q and Q(q).

Rows are first cleared of denominators (into Z or Z[q]) and the forward
elimination is fraction-free in the Bareiss one-step style, so every
intermediate entry stays in the integral domain with controlled growth.
Pivoting is deterministic: first column with a nonzero entry, lowest row
index.
"""

from fractions import Fraction
from math import gcd

from .errors import InconsistentSystemError, SingularMatrixError
from .scalars import (RationalFunction, poly_div_exact, poly_gcd, poly_mul)


class _IntDomain:
    one = 1

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def div(a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division in elimination")
        return q

    @staticmethod
    def to_field(a):
        return Fraction(a)

    @staticmethod
    def clear_row(row):
        lcm = 1
        for x in row:
            d = x.denominator
            lcm = lcm // gcd(lcm, d) * d
        return [int(x * lcm) for x in row]


class _PolyDomain:
    one = (1,)
    mul = staticmethod(poly_mul)

    @staticmethod
    def sub(a, b):
        n = max(len(a), len(b))
        out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
               for i in range(n)]
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    div = staticmethod(poly_div_exact)

    @staticmethod
    def to_field(a):
        return RationalFunction(a)

    @staticmethod
    def clear_row(row):
        lcm = (1,)
        for x in row:
            g = poly_gcd(lcm, x.den)
            lcm = poly_mul(poly_div_exact(lcm, g), x.den)
        return [poly_mul(x.num, poly_div_exact(lcm, x.den)) for x in row]


def _domain(field):
    return _IntDomain if field.tag == "Q" else _PolyDomain


def _forward(rows, ncols, dom):
    "In-place fraction-free echelon reduction; returns pivot columns."
    m = len(rows)
    pivot_cols = []
    zero = 0 if dom is _IntDomain else ()
    prev = dom.one
    r = 0
    for col in range(ncols):
        sel = None
        for i in range(r, m):
            if rows[i][col]:
                sel = i
                break
        if sel is None:
            continue
        if sel != r:
            rows[r], rows[sel] = rows[sel], rows[r]
        pivot = rows[r][col]
        top = rows[r]
        for i in range(r + 1, m):
            ri = rows[i]
            xi = ri[col]
            for j in range(col + 1, ncols):
                ri[j] = dom.div(dom.sub(dom.mul(pivot, ri[j]),
                                        dom.mul(xi, top[j])), prev)
            ri[col] = zero
        prev = pivot
        pivot_cols.append(col)
        r += 1
        if r == m:
            break
    return pivot_cols


def rref(matrix, field):
    """Reduced row echelon form over the field.

    Returns (rows, pivot_cols); only the nonzero rows are returned, with
    unit pivots and zeros above them.
    """
    if not matrix:
        return [], []
    ncols = len(matrix[0])
    dom = _domain(field)
    rows = [dom.clear_row(row) for row in matrix]
    pivot_cols = _forward(rows, ncols, dom)
    out = []
    for i, col in enumerate(pivot_cols):
        pivot = dom.to_field(rows[i][col])
        out.append([dom.to_field(x) / pivot for x in rows[i]])
    for i in range(len(pivot_cols) - 1, -1, -1):
        col = pivot_cols[i]
        for k in range(i):
            f = out[k][col]
            if f:
                out[k] = [a - f * b for a, b in zip(out[k], out[i])]
    return out, pivot_cols


def rank(matrix, field):
    if not matrix:
        return 0
    dom = _domain(field)
    rows = [dom.clear_row(row) for row in matrix]
    return len(_forward(rows, len(matrix[0]), dom))


def inverse(matrix, field):
    "Exact inverse of a square matrix; raises SingularMatrixError with rank."
    n = len(matrix)
    aug = [list(row) + [field.one if i == j else field.zero
                        for j in range(n)]
           for i, row in enumerate(matrix)]
    rows, pivot_cols = rref(aug, field)
    lead = [c for c in pivot_cols if c < n]
    if len(lead) < n:
        raise SingularMatrixError("matrix is singular", rank=len(lead))
    return [row[n:] for row in rows]


def solve(a, b, field):
    """Solve a X = b exactly; free variables are set to zero.

    a is m x n, b is m x k; returns the n x k solution matrix.  Raises
    InconsistentSystemError when no exact solution exists.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    k = len(b[0]) if b else 0
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    rows, pivot_cols = rref(aug, field)
    for col in pivot_cols:
        if col >= n:
            raise InconsistentSystemError("linear system has no solution")
    x = [[field.zero] * k for _ in range(n)]
    for i, col in enumerate(pivot_cols):
        x[col] = rows[i][n:]
    return x


def rank_factorize(matrix, field):
    """Exact rank factorization matrix = C . R.

    C's columns are the pivot columns of the input (in pivot order) and R
    is the nonzero part of the reduced row echelon form, so the product
    reproduces the input exactly.  Returns (columns, rows, rank).
    """
    rows, pivot_cols = rref(matrix, field)
    columns = [[matrix[i][c] for i in range(len(matrix))] for c in pivot_cols]
    return columns, rows, len(pivot_cols)
