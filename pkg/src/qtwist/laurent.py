"""Sparse Laurent polynomials in v over the rationals (q = v**2)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

BigRational = Fraction


def _norm(c):
    # Fractions with denominator 1 are stored as int: int arithmetic is much faster.
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """A finite sum of c_e v**e with rational c_e; zero coefficients are never stored."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, x in dict(coeffs).items():
                if x:
                    c[int(e)] = _norm(Fraction(x)) if not isinstance(x, int) else x
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c):
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def const(cls, x) -> "LaurentPoly":
        return cls({0: x}) if x else cls._raw({})

    @classmethod
    def monomial(cls, e: int, c=1) -> "LaurentPoly":
        return cls({e: c})

    # -- inspection ---------------------------------------------------------

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __getitem__(self, e: int):
        return self._c.get(e, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant: %s" % self)
        return self._c.get(0, 0)

    def is_even(self) -> bool:
        """True when the polynomial only involves integer powers of q = v**2."""
        return all(e % 2 == 0 for e in self._c)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Rational)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, x in other._c.items():
            y = c.get(e)
            if y is None:
                c[e] = x
            else:
                y = _norm(y + x)
                if y:
                    c[e] = y
                else:
                    del c[e]
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -x for e, x in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            a, b = self._c, other._c
            if not a or not b:
                return LaurentPoly._raw({})
            if len(a) < len(b):
                a, b = b, a
            if len(b) == 1:
                (f, y), = b.items()
                if y == 1:
                    return LaurentPoly._raw({e + f: x for e, x in a.items()})
                return LaurentPoly._raw({e + f: _norm(x * y) for e, x in a.items()})
            c = {}
            get = c.get
            for f, y in b.items():
                for e, x in a.items():
                    k = e + f
                    c[k] = get(k, 0) + x * y
            return LaurentPoly._raw({k: _norm(x) for k, x in c.items() if x})
        if isinstance(other, (int, Rational)):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: _norm(x * other) for e, x in self._c.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self.is_monomial():
                (e, x), = self._c.items()
                return LaurentPoly({e * n: Fraction(1) / Fraction(x) ** (-n)})
            raise ValueError("negative power of a non-monomial LaurentPoly")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v**k."""
        return LaurentPoly._raw({e + k: x for e, x in self._c.items()})

    def scale_var(self, c) -> "LaurentPoly":
        """Substitute v -> c*v for a rational c."""
        return LaurentPoly({e: x * Fraction(c) ** e for e, x in self._c.items()})

    def evaluate(self, v0) -> Fraction:
        v0 = Fraction(v0)
        total = Fraction(0)
        for e, x in self._c.items():
            total += x * v0 ** e
        return total

    # -- comparison / display -----------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            x = self._c[e]
            if e == 0:
                s = str(x)
            else:
                mono = "v" if e == 1 else "v^%d" % e
                if x == 1:
                    s = mono
                elif x == -1:
                    s = "-" + mono
                else:
                    s = "%s*%s" % (x, mono)
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    def __repr__(self):
        return "LaurentPoly(%s)" % self


v = LaurentPoly.monomial(1)
q = LaurentPoly.monomial(2)


# -- dense integer polynomial helpers (lists, lowest degree first) -----------

def _content(p):
    from math import gcd
    g = 0
    for x in p:
        g = gcd(g, x)
    return g


def _primitive(p):
    g = _content(p)
    if p[-1] < 0:
        g = -g
    return [x // g for x in p]


def _pseudo_rem(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for k, y in enumerate(b):
            a[k + shift] -= la * y
        a.pop()
        while a and a[-1] == 0:
            a.pop()
        if a:
            a = _primitive(a)
    return a


def int_poly_gcd(a, b):
    """Primitive gcd of two integer polynomials (lists, constant term first)."""
    a = _primitive(a)
    b = _primitive(b)
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, r
    return a


def to_dense_int(p: LaurentPoly):
    """Return (shift, integer coefficient list, scale) with p = scale * v**shift * poly."""
    from math import lcm
    lo, hi = p.min_exp(), p.max_exp()
    den = 1
    for x in p._c.values():
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    dense = [0] * (hi - lo + 1)
    for e, x in p._c.items():
        dense[e - lo] = int(x * den)
    return lo, dense, Fraction(1, den)


def poly_divmod(a: LaurentPoly, b: LaurentPoly):
    """Exact-style long division of ordinary polynomials (nonnegative exponents)."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = dict(a._c)
    quot = {}
    db = b.max_exp()
    lb = b[db]
    while rem:
        dr = max(rem)
        if dr < db:
            break
        c = _norm(Fraction(rem[dr]) / lb)
        k = dr - db
        quot[k] = c
        for e, x in b._c.items():
            y = _norm(rem.get(e + k, 0) - c * x)
            if y:
                rem[e + k] = y
            else:
                rem.pop(e + k, None)
    return LaurentPoly._raw(quot), LaurentPoly._raw(rem)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd of two Laurent polynomials, viewed as polynomials after removing v-powers."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    _, da, _ = to_dense_int(a)
    _, db, _ = to_dense_int(b)
    g = int_poly_gcd(da, db)
    lead = Fraction(g[-1])
    return LaurentPoly({k: Fraction(x) / lead for k, x in enumerate(g) if x})
