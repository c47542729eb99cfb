from fractions import Fraction

from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def v(e, c=1):
    from qtwist.scalars import LaurentPoly
    return LaurentPoly.monomial(e, c)


def brute_qint(n):
    """[n] as a dict of v-exponents, straight from (q^n - q^-n)/(q - q^-1) = sum q^{n-1-2k}."""
    if n == 0:
        return {}
    sign = 1 if n > 0 else -1
    m = abs(n)
    return {2 * (m - 1 - 2 * k): sign for k in range(m)}


def frac_eval(d, v0):
    return sum(Fraction(c) * Fraction(v0) ** e for e, c in d.items())
