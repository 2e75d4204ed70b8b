"""Exact scalar arithmetic: rationals and polynomials in a central-charge symbol.

Every coefficient in the library is either a ``fractions.Fraction`` or a
``CPoly`` (a sparse polynomial in one formal symbol ``c`` with rational
coefficients).  No floating point is used anywhere.

``CPoly`` exists so that a module can carry its central charge symbolically:
repeated brackets can raise the degree in ``c`` (e.g. two central terms
multiply), so the ring is all of Q[c], not just degree-one polynomials.
Mixed arithmetic with ``int``/``Fraction`` works in both directions.
"""

from __future__ import annotations

from fractions import Fraction

Q0 = Fraction(0)
Q1 = Fraction(1)


def rat(p, q=1):
    """Shorthand Fraction constructor."""
    return Fraction(p, q)


class CPoly:
    """Sparse polynomial in the symbol ``c`` over Q.

    Stored as ``{degree: Fraction}`` with no zero coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        self.coeffs = {d: Fraction(v) for d, v in coeffs.items() if v != 0}

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(value):
        return CPoly({0: Fraction(value)})

    @staticmethod
    def sym():
        """The polynomial ``c`` itself."""
        return CPoly({1: Q1})

    @staticmethod
    def lift(value):
        """Coerce an int/Fraction/CPoly to CPoly."""
        if isinstance(value, CPoly):
            return value
        return CPoly({0: Fraction(value)})

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = CPoly.lift(other)
        out = dict(self.coeffs)
        for d, v in other.coeffs.items():
            w = out.get(d, Q0) + v
            if w:
                out[d] = w
            else:
                out.pop(d, None)
        res = CPoly.__new__(CPoly)
        res.coeffs = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = CPoly.__new__(CPoly)
        res.coeffs = {d: -v for d, v in self.coeffs.items()}
        return res

    def __sub__(self, other):
        return self + (-CPoly.lift(other))

    def __rsub__(self, other):
        return CPoly.lift(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return CPoly()
            res = CPoly.__new__(CPoly)
            res.coeffs = {d: v * other for d, v in self.coeffs.items()}
            return res
        other = CPoly.lift(other)
        out = {}
        for d1, v1 in self.coeffs.items():
            for d2, v2 in other.coeffs.items():
                d = d1 + d2
                w = out.get(d, Q0) + v1 * v2
                if w:
                    out[d] = w
                else:
                    out.pop(d, None)
        res = CPoly.__new__(CPoly)
        res.coeffs = out
        return res

    __rmul__ = __mul__

    def __truediv__(self, other):
        # division by a nonzero rational only
        if isinstance(other, (int, Fraction)):
            return self * (Q1 / Fraction(other))
        raise TypeError("CPoly division only by rationals")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CPoly.lift(other)
        if not isinstance(other, CPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    # -- queries --------------------------------------------------------

    def degree(self):
        return max(self.coeffs) if self.coeffs else -1

    def eval(self, cval):
        """Evaluate at a rational value of c."""
        cval = Fraction(cval)
        return sum((v * cval ** d for d, v in self.coeffs.items()), Q0)

    def divisible_by_linear(self, root):
        """True iff (c - root) divides this polynomial (root rational)."""
        return self.eval(root) == 0

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs, reverse=True):
            v = self.coeffs[d]
            if d == 0:
                parts.append(f"{v}")
            elif d == 1:
                parts.append(f"{v}*c")
            else:
                parts.append(f"{v}*c^{d}")
        return " + ".join(parts)


def smul(a, b):
    """Product of mixed scalars (Fraction/int/CPoly)."""
    if isinstance(a, CPoly) or isinstance(b, CPoly):
        return CPoly.lift(a) * CPoly.lift(b)
    return a * b


def is_zero(a):
    return not a


def as_fraction(a):
    """Collapse a scalar known to be constant to a Fraction."""
    if isinstance(a, CPoly):
        if a.degree() > 0:
            raise ValueError(f"scalar {a!r} is not constant")
        return a.coeffs.get(0, Q0)
    return Fraction(a)


def parse_rational(text):
    """Parse an exact rational from 'p/q' or 'p' string form."""
    text = text.strip()
    if "/" in text:
        p, q = text.split("/")
        return Fraction(int(p), int(q))
    return Fraction(int(text))


def format_rational(value):
    """Serialize a Fraction as 'p/q' (or 'p' when integral)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
