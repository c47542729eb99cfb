from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qtwist.scalars import (ExcludedPointError, LaurentPoly, RatFun, RationalDomain, SymbolicDomain, evaluate_at,
                            qfactorial, qint, random_points)
from qtwist.series import TruncSeries, TruncationError

from conftest import brute_qint


@pytest.mark.parametrize("n", range(-6, 7))
def test_qint_matches_geometric_sum(n):
    assert qint(n) == LaurentPoly(brute_qint(n))


def test_qint_small_values():
    assert qint(1) == LaurentPoly({0: 1})
    assert qint(2) == LaurentPoly({-2: 1, 2: 1})
    assert qint(0) == LaurentPoly()


def test_qint_times_q_difference():
    # [n](q - q^-1) = q^n - q^-n
    for n in range(1, 8):
        assert qint(n) * LaurentPoly({2: 1, -2: -1}) == LaurentPoly({2 * n: 1, -2 * n: -1})


def test_qfactorial():
    assert qfactorial(3) == qint(1) * qint(2) * qint(3)
    assert qfactorial(0) == LaurentPoly({0: 1})


@pytest.mark.parametrize("v0", [0, 1, -1])
def test_excluded_points(v0):
    with pytest.raises(ExcludedPointError):
        RationalDomain(v0)
    with pytest.raises(ExcludedPointError):
        evaluate_at(RatFun(1), v0)


def test_domains():
    s = SymbolicDomain()
    r = RationalDomain(Fraction(2))
    assert s.vpow(3) == RatFun(LaurentPoly.monomial(3))
    assert r.vpow(3) == 8
    assert r.qint(2) == Fraction(1, 4) + 4
    assert r.convert(RatFun(LaurentPoly({1: 1}), LaurentPoly({0: 1, 2: 1}))) == Fraction(2, 5)
    assert s.describe() == "symbolic" and r.describe() == "rational(v0=2)"


def test_random_points_deterministic_and_admissible():
    a = random_points(5)
    assert a == random_points(5)
    assert len(set(a)) == 5
    assert not set(a) & {0, 1, -1}


coefs = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=1, max_size=6)


@given(coefs, coefs)
def test_series_product_is_cauchy(a, b):
    N = 5
    sa, sb = TruncSeries(a, 0, N), TruncSeries(b, 0, N)
    p = sa * sb
    for k in range(N + 1):
        want = sum(sa[i] * sb[k - i] for i in range(k + 1))
        assert p[k] == want


@given(coefs)
def test_series_inverse(a):
    if not a[0]:
        return
    s = TruncSeries(a, 0, 6)
    one = TruncSeries([Fraction(1)], 0, 6)
    assert s * s.invert() == one


@given(coefs)
def test_exp_log_roundtrip(a):
    s = TruncSeries([Fraction(0)] + a, 0, 6)
    assert s.exp_of().log_of() == s


def test_truncation_guard():
    s = TruncSeries([1, 2], 0, 3)
    assert s[3] == 0
    with pytest.raises(TruncationError):
        s[4]
    with pytest.raises(TruncationError):
        s.truncate(5)


def test_compose_scale():
    s = TruncSeries([Fraction(1), Fraction(1), Fraction(1)], 0, 2).compose_scale(-1)
    assert [s[k] for k in range(3)] == [1, -1, 1]
