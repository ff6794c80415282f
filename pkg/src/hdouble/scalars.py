"""Exact scalars over Q and Q(q).

Rationals are stdlib ``fractions.Fraction``.  Elements of Q(q) are kept as
reduced ratios of integer-coefficient polynomials in q (the lowest
nonzero denominator coefficient is positive), so equal values have equal
representations and string output is canonical.

Polynomials are tuples of ints indexed by exponent, with no trailing
zeros; the zero polynomial is the empty tuple.
"""

from fractions import Fraction
from math import gcd

from .errors import ScalarParseError

Rational = Fraction


# ---------------------------------------------------------------- polynomials

def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_degree(f):
    "Degree, with -1 for the zero polynomial."
    return len(_trim(f)) - 1


def poly_add(f, g):
    n = max(len(f), len(g))
    return _trim((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)
                 for i in range(n))


def poly_neg(f):
    return tuple(-c for c in f)


def poly_sub(f, g):
    return poly_add(f, poly_neg(g))


def poly_mul(f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim(out)


def poly_scale(f, k):
    if k == 0:
        return ()
    return tuple(c * k for c in f)


def poly_content(f):
    c = 0
    for a in f:
        c = gcd(c, a)
    return c


def _primitive(f):
    c = poly_content(f)
    if c in (0, 1):
        return f
    return tuple(a // c for a in f)


def _negative_lowest(f):
    "True when the lowest-degree nonzero coefficient is negative."
    for c in f:
        if c:
            return c < 0
    return False


def _positive_leading(f):
    if f and f[-1] < 0:
        return poly_neg(f)
    return f


def _prem(f, g):
    # pseudo-remainder; scaled by powers of lc(g), which the primitive
    # PRS strips again
    dg = len(g) - 1
    lg = g[-1]
    r = f
    while r and len(r) - 1 >= dg:
        shift = len(r) - 1 - dg
        scaled_g = [0] * shift + [c * r[-1] for c in g]
        r = _trim([a * lg - (scaled_g[i] if i < len(scaled_g) else 0)
                   for i, a in enumerate([c for c in r])])
    return r


def poly_gcd(f, g):
    "gcd in Z[q] including integer content, leading coefficient > 0."
    f, g = _trim(f), _trim(g)
    if not f:
        return _positive_leading(g)
    if not g:
        return _positive_leading(f)
    c = gcd(poly_content(f), poly_content(g))
    a, b = _primitive(f), _primitive(g)
    while b:
        a, b = b, _primitive(_prem(a, b))
    return poly_scale(_positive_leading(a), c)


def poly_div_exact(f, g):
    "Quotient f/g in Z[q]; raises if the division is not exact."
    f, g = _trim(f), _trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return ()
    if len(f) < len(g):
        raise ArithmeticError("inexact polynomial division")
    quot = [0] * (len(f) - len(g) + 1)
    rem = list(f)
    for k in range(len(f) - len(g), -1, -1):
        c = rem[len(g) - 1 + k]
        if c == 0:
            continue
        qc, leftover = divmod(c, g[-1])
        if leftover:
            raise ArithmeticError("inexact polynomial division")
        quot[k] = qc
        for i, gi in enumerate(g):
            rem[i + k] -= qc * gi
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return _trim(quot)


def poly_eval(f, x):
    "Evaluate at a Fraction (or int) by Horner's rule."
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _poly_from_int(n):
    return (n,) if n else ()


# ---------------------------------------------------------- rational functions

class RationalFunction:
    """An element of Q(q) in canonical reduced form.

    num/den are coprime integer polynomials (content included) and the
    lowest nonzero coefficient of den is positive, keeping 1 - q in its
    conventional orientation.  Arithmetic mixes with ints but
    deliberately not with Fraction: Q embeds into Q(q) only through
    :meth:`from_fraction`.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=(), den=(1,)):
        if isinstance(num, int):
            num = _poly_from_int(num)
        if isinstance(den, int):
            den = _poly_from_int(den)
        num, den = _trim(num), _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator in Q(q)")
        if not num:
            den = (1,)
        else:
            g = poly_gcd(num, den)
            if g != (1,):
                num = poly_div_exact(num, g)
                den = poly_div_exact(den, g)
            if _negative_lowest(den):
                num, den = poly_neg(num), poly_neg(den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def from_fraction(cls, fr):
        "Explicit promotion Q -> Q(q)."
        return cls((fr.numerator,), (fr.denominator,))

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, int):
            return RationalFunction(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        g0 = poly_gcd(b, d)
        if g0 == (1,):
            return RationalFunction(poly_add(poly_mul(a, d), poly_mul(c, b)),
                                    poly_mul(b, d))
        b1, d1 = poly_div_exact(b, g0), poly_div_exact(d, g0)
        t = poly_add(poly_mul(a, d1), poly_mul(c, b1))
        g1 = poly_gcd(t, g0)
        if g1 != (1,):
            t = poly_div_exact(t, g1)
            g0 = poly_div_exact(g0, g1)
        out = RationalFunction.__new__(RationalFunction)
        num, den = t, poly_mul(poly_mul(b1, d1), g0)
        if not num:
            den = (1,)
        elif _negative_lowest(den):
            num, den = poly_neg(num), poly_neg(den)
        object.__setattr__(out, "num", num)
        object.__setattr__(out, "den", den)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = RationalFunction.__new__(RationalFunction)
        object.__setattr__(out, "num", poly_neg(self.num))
        object.__setattr__(out, "den", self.den)
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if not a or not c:
            return _RF_ZERO
        # cross-cancel; products of reduced pairs stay reduced
        g1 = poly_gcd(a, d)
        if g1 != (1,):
            a, d = poly_div_exact(a, g1), poly_div_exact(d, g1)
        g2 = poly_gcd(c, b)
        if g2 != (1,):
            c, b = poly_div_exact(c, g2), poly_div_exact(b, g2)
        num, den = poly_mul(a, c), poly_mul(b, d)
        if _negative_lowest(den):
            num, den = poly_neg(num), poly_neg(den)
        out = RationalFunction.__new__(RationalFunction)
        object.__setattr__(out, "num", num)
        object.__setattr__(out, "den", den)
        return out

    __rmul__ = __mul__

    def reciprocal(self):
        if not self.num:
            raise ZeroDivisionError("division by zero in Q(q)")
        num, den = self.den, self.num
        if _negative_lowest(den):
            num, den = poly_neg(num), poly_neg(den)
        out = RationalFunction.__new__(RationalFunction)
        object.__setattr__(out, "num", num)
        object.__setattr__(out, "den", den)
        return out

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.reciprocal()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.reciprocal() ** (-n)
        acc, base = _RF_ONE, self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base if n > 1 else base
            n >>= 1
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def evaluate(self, point):
        "Value at q = point (a Fraction or int); point must miss the poles."
        den = poly_eval(self.den, point)
        if den == 0:
            raise ZeroDivisionError(
                "evaluation at a root of the denominator (q = %s)" % point)
        return poly_eval(self.num, point) / den

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return format_scalar(self)


_RF_ZERO = RationalFunction(0)
_RF_ONE = RationalFunction(1)
QVAR = RationalFunction((0, 1))


# -------------------------------------------------------------------- fields

class ScalarField:
    "Field tag (Q or Qq) bundled with parse/format and basic constants."

    __slots__ = ("tag",)

    def __init__(self, tag):
        object.__setattr__(self, "tag", tag)

    def __setattr__(self, name, value):
        raise AttributeError("ScalarField is immutable")

    @property
    def zero(self):
        return Fraction(0) if self.tag == "Q" else _RF_ZERO

    @property
    def one(self):
        return Fraction(1) if self.tag == "Q" else _RF_ONE

    def from_int(self, n):
        return Fraction(n) if self.tag == "Q" else RationalFunction(n)

    def promote(self, fr):
        "Embed a Fraction into this field."
        if self.tag == "Q":
            return fr
        return RationalFunction.from_fraction(fr)

    def contains(self, x):
        if self.tag == "Q":
            return isinstance(x, Fraction)
        return isinstance(x, RationalFunction)

    def parse(self, text):
        return parse_scalar(text, self)

    def format(self, x):
        return format_scalar(x)

    def __repr__(self):
        return "ScalarField(%s)" % self.tag

    def __eq__(self, other):
        return isinstance(other, ScalarField) and self.tag == other.tag

    def __hash__(self):
        return hash(("ScalarField", self.tag))


FIELD_Q = ScalarField("Q")
FIELD_QQ = ScalarField("Qq")


def field_by_tag(tag):
    if tag == "Q":
        return FIELD_Q
    if tag == "Qq":
        return FIELD_QQ
    raise ValueError("unknown field tag %r (expected 'Q' or 'Qq')" % (tag,))


# -------------------------------------------------------------------- parsing

_UNICODE_MINUS = "−"


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.items = []          # (kind, value, position)
        self._scan()
        self.index = 0

    def _scan(self):
        text, i = self.text, 0
        while i < len(text):
            ch = text[i]
            if ch in " \t":
                i += 1
                continue
            if ch == _UNICODE_MINUS:
                raise ScalarParseError(
                    "unicode minus sign; use ASCII '-'", i)
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.items.append(("int", int(text[i:j]), i))
                i = j
                continue
            if ch == "q":
                self.items.append(("q", None, i))
                i += 1
                continue
            if ch in "+-*/^()":
                self.items.append((ch, None, i))
                i += 1
                continue
            raise ScalarParseError("unexpected character %r" % ch, i)
        self.items.append(("end", None, len(text)))

    def peek(self):
        return self.items[self.index]

    def take(self):
        tok = self.items[self.index]
        self.index += 1
        return tok


def _parse_factor(toks, field):
    kind, value, pos = toks.take()
    if kind == "int":
        return field.from_int(value)
    if kind == "q":
        if field.tag != "Qq":
            raise ScalarParseError("q is not a scalar of field Q", pos)
        if toks.peek()[0] == "^":
            toks.take()
            ekind, evalue, epos = toks.take()
            if ekind != "int":
                raise ScalarParseError("expected integer exponent", epos)
            return QVAR ** evalue
        return QVAR
    if kind == "(":
        value = _parse_expr(toks, field)
        kind, _, pos = toks.take()
        if kind != ")":
            raise ScalarParseError("expected ')'", pos)
        return value
    raise ScalarParseError("expected integer, q or '('", pos)


def _parse_term(toks, field):
    value = _parse_factor(toks, field)
    while True:
        kind = toks.peek()[0]
        if kind == "*":
            toks.take()
            value = value * _parse_factor(toks, field)
        elif kind in ("int", "q", "("):
            value = value * _parse_factor(toks, field)
        else:
            return value


def _parse_expr(toks, field):
    negate = False
    if toks.peek()[0] == "-":
        toks.take()
        negate = True
    value = _parse_term(toks, field)
    if negate:
        value = -value
    while True:
        kind = toks.peek()[0]
        if kind == "+":
            toks.take()
            value = value + _parse_term(toks, field)
        elif kind == "-":
            toks.take()
            value = value - _parse_term(toks, field)
        else:
            return value


def parse_scalar(text, field):
    """Parse a scalar string over the given field.

    Grammar: scalar := expr ('/' expr)?; expr := '-'? term (('+'|'-') term)*;
    term := factor ('*'? factor)*; factor := INT | 'q' ('^' UINT)? | '(' expr ')'.
    Only ASCII '-' is accepted.
    """
    toks = _Tokens(text)
    value = _parse_expr(toks, field)
    kind, _, pos = toks.peek()
    if kind == "/":
        toks.take()
        den = _parse_expr(toks, field)
        if not den:
            raise ScalarParseError("division by zero", pos)
        value = value / den
    kind, _, pos = toks.peek()
    if kind != "end":
        raise ScalarParseError("unexpected trailing input", pos)
    return value


# ----------------------------------------------------------------- formatting

def _monomial_string(coeff, exponent):
    if exponent == 0:
        return str(coeff)
    if exponent == 1:
        qpart = "q"
    else:
        qpart = "q^%d" % exponent
    if coeff == 1:
        return qpart
    return "%d%s" % (coeff, qpart)


def poly_string(f):
    "Canonical ascending-exponent polynomial string."
    if not f:
        return "0"
    parts = []
    for exponent, coeff in enumerate(f):
        if coeff == 0:
            continue
        if not parts:
            if coeff < 0:
                parts.append("-" + _monomial_string(-coeff, exponent))
            else:
                parts.append(_monomial_string(coeff, exponent))
        elif coeff < 0:
            parts.append("-" + _monomial_string(-coeff, exponent))
        else:
            parts.append("+" + _monomial_string(coeff, exponent))
    return "".join(parts)


def _term_count(f):
    return sum(1 for c in f if c)


def format_scalar(x):
    "Canonical string; parse(format(x)) == x and format is idempotent."
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, RationalFunction):
        if x.den == (1,):
            return poly_string(x.num)
        ns = poly_string(x.num)
        if _term_count(x.num) > 1:
            ns = "(%s)" % ns
        ds = poly_string(x.den)
        if _term_count(x.den) > 1:
            ds = "(%s)" % ds
        return "%s/%s" % (ns, ds)
    raise TypeError("not a scalar: %r" % (x,))
