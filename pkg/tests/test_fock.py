from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qtwist.fock import (INHOMOGENEOUS, FockConfig, FockState, FockVector, HeisenbergGenerator, basis,
                         colored_odd_partitions, degree, dimension_series, heis_apply, heisenberg_contraction,
                         odd_partitions, vacuum)
from qtwist.lattice import Lattice
from qtwist.relcheck import check_heisenberg, expected_bracket
from qtwist.report import CapOverflow
from qtwist.scalars import LaurentPoly, RatFun, qint

A1 = FockConfig(Lattice.builtin("A1"))
A2 = FockConfig(Lattice.builtin("A2"))


def a(cfg, i, m, x):
    return heis_apply(cfg, HeisenbergGenerator(i, m), x)


def euler_counts(rank, D):
    """Coefficients of prod_{n odd} (1 - x^n)^{-rank}, by repeated convolution."""
    c = [1] + [0] * D
    for n in range(1, D + 1, 2):
        for _ in range(rank):
            for k in range(n, D + 1):
                c[k] += c[k - n]
    return c


def test_vacuum_and_degree():
    vac = vacuum(A1)
    assert vac == FockVector({FockState(((),), (0,)): 1})
    assert degree(vac) == 0
    x = a(A1, 0, -1, a(A1, 0, -3, vac))
    assert degree(x) == 4
    assert degree(vac + a(A1, 0, -1, vac)) == INHOMOGENEOUS


def test_heisenberg_examples():
    vac = vacuum(A1)
    assert a(A1, 0, 3, vac).is_zero()
    assert a(A1, 0, -1, vac) == FockVector({FockState(((1,),), (0,)): 1})
    q = LaurentPoly({2: 1, -2: 1})
    assert a(A1, 0, 1, a(A1, 0, -1, vac)) == vac * RatFun(q * Fraction(1, 2))
    assert a(A2, 0, 1, a(A2, 1, -1, vacuum(A2))) == vacuum(A2) * Fraction(-1, 2)


def test_even_modes_rejected():
    with pytest.raises(ValueError):
        HeisenbergGenerator(0, 2)


def test_contraction_formula():
    # [a m][m] / (2m)
    for gram in (2, -1, -3, 0):
        for m in (1, 3, 5):
            assert heisenberg_contraction(gram, m) == qint(gram * m) * qint(m) * Fraction(1, 2 * m)
    assert heisenberg_contraction(2, 1, twisted=False, factor=1) == qint(2)


def test_basis_examples():
    assert len(basis(A1, 0)) == 1
    assert [s.parts for s in basis(A1, 2)] == [((1, 1),)]
    assert {s.parts for s in basis(A1, 4)} == {((3, 1),), ((1, 1, 1, 1),)}
    assert len(basis(A2, 2)) == 3
    assert all(s.degree == 5 for s in basis(A2, 5))
    assert basis(A1, 3, (2,))[0].beta == (2,)


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_dimensions_match_euler_product(rank):
    want = euler_counts(rank, 10)
    assert dimension_series(rank, 10) == want
    cfg = FockConfig(Lattice.builtin({1: "A1", 2: "A2", 3: "A3"}[rank]))
    assert [len(basis(cfg, d)) for d in range(11)] == want


def test_odd_partitions():
    assert odd_partitions(5) == ((5,), (3, 1, 1), (1, 1, 1, 1, 1))
    assert len(colored_odd_partitions(2, 3)) == 6


def test_degree_cap():
    cfg = FockConfig(Lattice.builtin("A1"), degree_cap=2)
    x = a(cfg, 0, -1, vacuum(cfg))
    with pytest.raises(CapOverflow):
        a(cfg, 0, -3, x)


states = st.sampled_from([s for d in range(5) for s in basis(A2, d)])
odd = st.sampled_from([-5, -3, -1, 1, 3, 5])


@given(states, st.integers(0, 1), st.integers(0, 1), odd, odd)
def test_heisenberg_commutator_property(s, i, j, m, n):
    x = FockVector({s: 1})
    lhs = a(A2, i, m, a(A2, j, n, x)) - a(A2, j, n, a(A2, i, m, x))
    rhs = x * expected_bracket(A2.lattice[i, j], m) if m == -n else FockVector()
    assert lhs == rhs


def test_bracket_values():
    # [a_i(1), a_i(-1)] = [2][1]/2 = (q + q^-1)/2
    assert expected_bracket(2, 1) == LaurentPoly({2: 1, -2: 1}) * Fraction(1, 2)
    assert expected_bracket(-1, 3) == qint(-3) * qint(3) * Fraction(1, 6)


@pytest.mark.parametrize("name", ["A1", "A2"])
def test_heisenberg_suite(name):
    rep = check_heisenberg(FockConfig(Lattice.builtin(name)), 6, 7)
    assert rep.passed, rep.line()
    assert rep.counts["compared"] > 0


def test_heisenberg_suite_detects_wrong_factor():
    rep = check_heisenberg(FockConfig(Lattice.builtin("A1"), heis_factor=Fraction(1)), 2, 3)
    assert not rep.passed
    assert rep.witness["lhs"] != rep.witness["rhs"]


def test_vector_algebra():
    vac = vacuum(A1)
    x = a(A1, 0, -1, vac)
    assert (x + vac) - x == vac
    assert (x * 0).is_zero()
    assert x.coefficient(FockState(((1,),), (0,))) == RatFun(1)
    assert x.coefficient(FockState(((3,),), (0,))) == RatFun(0)
