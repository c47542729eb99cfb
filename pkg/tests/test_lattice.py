import itertools

import pytest
from hypothesis import given, strategies as st

from qtwist.lattice import (BUILTIN_GRAMS, Cocycle, Lattice, LatticeError, cocycle_sign, pairing, t_action,
                            validate_gram)


def test_builtins_and_pairing():
    a1, a2 = Lattice.builtin("A1"), Lattice.builtin("A2")
    assert pairing(a1, (1,), (1,)) == 2
    assert pairing(a2, (1, 0), (0, 1)) == -1
    assert pairing(a2, (0, 0), (3, -2)) == 0
    assert Lattice.builtin("KM2_a2").gram == ((2, -2), (-2, 2))
    assert Lattice.builtin("KM2_a3").gram == ((2, -3), (-3, 2))
    assert Lattice.rank2(2) == Lattice.builtin("KM2_a2")
    for name in ("A1", "A2", "A3", "D4", "KM2_a2", "KM2_a3"):
        assert name in BUILTIN_GRAMS


@pytest.mark.parametrize("gram, cell", [
    ([[2, -1], [-2, 2]], "(0, 1)"),
    ([[2, 0], [0, 3]], "(1, 1)"),
    ([[4]], "(0, 0)"),
])
def test_validation_names_cell(gram, cell):
    with pytest.raises(LatticeError, match=cell.replace("(", r"\(").replace(")", r"\)")):
        validate_gram(gram)


def test_validation_shape_and_unknown():
    with pytest.raises(LatticeError):
        Lattice(((2, -1),))
    with pytest.raises(LatticeError):
        Lattice.builtin("E8")


def _cocycle_oracle(lat, a, b):
    # bimultiplicative extension of eps(a_i, a_j) = (-1)^{a_ij} for i > j
    e = 0
    for i, j in itertools.product(range(lat.rank), repeat=2):
        if i > j:
            e += a[i] * b[j] * lat[i, j]
    return -1 if e % 2 else 1


vecs2 = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


@given(vecs2, vecs2)
def test_cocycle_matches_bimultiplicative_oracle(a, b):
    lat = Lattice.builtin("A2")
    assert Cocycle(lat).sign(a, b) == _cocycle_oracle(lat, a, b)


@given(vecs2, vecs2)
def test_commutator_property(a, b):
    lat = Lattice.builtin("A2")
    c = Cocycle(lat)
    assert c.sign(a, b) * c.sign(b, a) == (-1) ** (pairing(lat, a, b) % 2)


@given(vecs2, vecs2, vecs2)
def test_bimultiplicative(a, b, d):
    c = Cocycle(Lattice.builtin("KM2_a3"))
    ab = tuple(x + y for x, y in zip(a, b))
    assert c.sign(ab, d) == c.sign(a, d) * c.sign(b, d)


def test_cocycle_examples():
    lat = Lattice.builtin("A2")
    c = Cocycle(lat)
    assert cocycle_sign(c, (1, 0), (0, 1)) * cocycle_sign(c, (0, 1), (1, 0)) == -1
    assert c.sign((0, 0), (1, 1)) == 1
    assert c.sign((1, 1), (1, 0)) == -1


def test_t_action_examples():
    lat = Lattice.builtin("A2")
    c = Cocycle(lat)
    assert t_action(c, 0, (0, 0)) == (1, (1, 0))
    s1, b1 = t_action(c, 1, (0, 0))
    s2, b2 = t_action(c, 0, b1)
    r1, d1 = t_action(c, 0, (0, 0))
    r2, d2 = t_action(c, 1, d1)
    assert b2 == d2 == (1, 1)
    assert s1 * s2 == -(r1 * r2)


@given(vecs2, st.integers(0, 1))
def test_t_action_inverse(beta, i):
    c = Cocycle(Lattice.builtin("A2"))
    s, b = t_action(c, i, beta, 1)
    s2, b2 = t_action(c, i, b, -1)
    assert b2 == beta and s * s2 == 1
    s, b = t_action(c, i, beta, -1)
    s2, b2 = t_action(c, i, b, 1)
    assert b2 == beta and s * s2 == 1


def test_trivial_cocycle_breaks_commutator_property():
    lat = Lattice.builtin("A2")
    c = Cocycle(lat, trivial=True)
    assert c.sign((1, 0), (0, 1)) * c.sign((0, 1), (1, 0)) == 1
