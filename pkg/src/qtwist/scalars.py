"""q-numbers, exact evaluation and the two scalar modes (symbolic / rational specialization)."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .laurent import BigRational, LaurentPoly, q, v
from .ratfun import RatFun

__all__ = [
    "BigRational", "LaurentPoly", "RatFun", "q", "v",
    "qint", "qfactorial", "ratfun_arith", "evaluate_at", "ExcludedPointError",
    "Domain", "SymbolicDomain", "RationalDomain", "parse_rational", "random_points",
]


class ExcludedPointError(ValueError):
    """Specialization at v0 in {0, 1, -1}, where q is not generic."""


@lru_cache(maxsize=None)
def qint(n: int) -> LaurentPoly:
    """[n] = q^{n-1} + q^{n-3} + ... + q^{1-n}, with [-n] = -[n]."""
    if n < 0:
        return -qint(-n)
    return LaurentPoly({2 * k: 1 for k in range(-(n - 1), n, 2)})


@lru_cache(maxsize=None)
def qfactorial(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("qfactorial of negative integer %d" % n)
    out = LaurentPoly.const(1)
    for k in range(1, n + 1):
        out = out * qint(k)
    return out


def ratfun_arith(a, b, op: str) -> RatFun:
    a, b = RatFun.coerce(a), RatFun.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)


def evaluate_at(x, v0) -> Fraction:
    """Exact value of x at v = v0 (so q = v0**2)."""
    v0 = Fraction(v0)
    if v0 in (0, 1, -1):
        raise ExcludedPointError("v0 = %s is excluded (q must be generic)" % v0)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, LaurentPoly):
        return x.evaluate(v0)
    x = RatFun.coerce(x)
    d = x.den.evaluate(v0)
    if d == 0:
        raise ZeroDivisionError("pole of %s at v0 = %s" % (x, v0))
    return x.num.evaluate(v0) / d


def parse_rational(s) -> Fraction:
    return Fraction(str(s))


class Domain:
    """Scalar mode: where the engine's coefficients live."""

    name = "abstract"

    def convert(self, x):
        raise NotImplementedError

    def vpow(self, e: int):
        raise NotImplementedError

    def zero(self):
        return self.convert(0)

    def one(self):
        return self.convert(1)

    def qint(self, n: int):
        return self.convert(qint(n))

    def describe(self):
        return self.name


class SymbolicDomain(Domain):
    """Exact computation in Q(v)."""

    name = "symbolic"

    def convert(self, x):
        return RatFun.coerce(x)

    def vpow(self, e: int):
        return RatFun(LaurentPoly.monomial(e))

    def __eq__(self, other):
        return isinstance(other, SymbolicDomain)

    def __hash__(self):
        return hash("symbolic")


class RationalDomain(Domain):
    """Exact computation after specializing v to a rational v0 not in {0, 1, -1}."""

    def __init__(self, v0):
        v0 = Fraction(v0)
        if v0 in (0, 1, -1):
            raise ExcludedPointError("v0 = %s is excluded (q must be generic)" % v0)
        self.v0 = v0
        self.name = "rational(v0=%s)" % v0

    def convert(self, x):
        return evaluate_at(x, self.v0)

    def vpow(self, e: int):
        return self.v0 ** e

    def __eq__(self, other):
        return isinstance(other, RationalDomain) and other.v0 == self.v0

    def __hash__(self):
        return hash(("rational", self.v0))


def random_points(k: int, seed: int = 0):
    """k distinct admissible rational specialization points, deterministic in seed."""
    rng = random.Random(seed)
    out = []
    while len(out) < k:
        x = Fraction(rng.randint(2, 9), rng.randint(1, 7)) * rng.choice((1, -1))
        if x not in (0, 1, -1) and x not in out:
            out.append(x)
    return out
