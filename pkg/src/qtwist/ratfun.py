"""Normalized rational functions in v, the scalar field of every computation."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .laurent import LaurentPoly, poly_divmod, poly_gcd

_ONE = LaurentPoly.const(1)


class RatFun:
    """num/den with den monic, lowest exponent 0, and gcd(num, den) = 1.

    The canonical form is a normal form, so equality is structural.
    Polynomial values (den == 1) take a fast path that never touches a gcd.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        if den is None:
            self.num, self.den = num, _ONE
            return
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("RatFun with zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num, den):
        r = cls.__new__(cls)
        r.num, r.den = num, den
        return r

    @classmethod
    def coerce(cls, x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        return cls(x)

    def is_poly(self) -> bool:
        return self.den is _ONE or self.den == _ONE

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def as_poly(self) -> LaurentPoly:
        if not self.is_poly():
            raise ValueError("%s is not a Laurent polynomial" % self)
        return self.num

    def is_monomial(self) -> bool:
        return self.is_poly() and self.num.is_monomial()

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RatFun):
            if isinstance(other, (int, Rational, LaurentPoly)):
                other = RatFun(other)
            else:
                return NotImplemented
        if self.den is _ONE and other.den is _ONE:
            return RatFun._raw(self.num + other.num, _ONE)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFun):
            if isinstance(other, (int, Rational, LaurentPoly)):
                other = RatFun(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFun):
            if isinstance(other, (int, Rational)):
                return RatFun._raw(self.num * other, self.den) if other else RatFun._raw(LaurentPoly(), _ONE)
            if isinstance(other, LaurentPoly):
                other = RatFun(other)
            else:
                return NotImplemented
        if self.den is _ONE and other.den is _ONE:
            return RatFun._raw(self.num * other.num, _ONE)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero RatFun")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                raise ZeroDivisionError("RatFun division by zero")
            return RatFun._raw(self.num * (Fraction(1) / Fraction(other)), self.den)
        other = RatFun.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFun.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if self.den is _ONE:
            return RatFun._raw(self.num ** n, _ONE)
        return RatFun(self.num ** n, self.den ** n)

    def scale_var(self, c) -> "RatFun":
        return RatFun(self.num.scale_var(c), self.den.scale_var(c))

    # -- comparison / display -----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            if isinstance(other, (int, Rational, LaurentPoly)):
                other = RatFun(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.is_poly():
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    def __repr__(self):
        return "RatFun(%s)" % self


def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, RatFun):
        return x.as_poly()
    return LaurentPoly.const(x)


def _normalize(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return num, _ONE
    # move all v-power content of den into num
    s = den.min_exp()
    if s:
        den = den.shift(-s)
        num = num.shift(-s)
    if den.max_exp() > 0:
        t = num.min_exp()
        g = poly_gcd(num.shift(-t), den)
        if g.max_exp() > 0:
            num, r1 = poly_divmod(num.shift(-t), g)
            den, r2 = poly_divmod(den, g)
            assert r1.is_zero() and r2.is_zero()
            num = num.shift(t)
    lead = den[den.max_exp()]
    if lead != 1:
        inv = Fraction(1) / Fraction(lead)
        num, den = num * inv, den * inv
    if den == _ONE:
        den = _ONE
    return num, den
