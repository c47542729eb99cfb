"""Integral lattices, the sign cocycle of the central extension, and its twisted group algebra."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


class LatticeError(ValueError):
    pass


BUILTIN_GRAMS = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "D4": [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
    "KM2_a1": [[2, -1], [-1, 2]],
    "KM2_a2": [[2, -2], [-2, 2]],
    "KM2_a3": [[2, -3], [-3, 2]],
}


@dataclass(frozen=True)
class Lattice:
    """Lattice with basis alpha_1..alpha_l and symmetric Gram matrix with 2 on the diagonal."""

    gram: tuple
    name: str = ""

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        validate_gram(g)

    @classmethod
    def builtin(cls, name: str) -> "Lattice":
        try:
            return cls(BUILTIN_GRAMS[name], name)
        except KeyError:
            raise LatticeError("unknown lattice %r (built-ins: %s)" % (name, ", ".join(BUILTIN_GRAMS))) from None

    @classmethod
    def rank2(cls, a: int) -> "Lattice":
        return cls(((2, -a), (-a, 2)), "KM2_a%d" % a)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def __getitem__(self, ij):
        i, j = ij
        return self.gram[i][j]

    def label(self) -> str:
        return self.name or str([list(r) for r in self.gram])

    def simple_root(self, i: int) -> tuple:
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def pairing(self, alpha, beta) -> int:
        if len(alpha) != self.rank or len(beta) != self.rank:
            raise LatticeError("dimension mismatch: rank %d, got %d and %d" % (self.rank, len(alpha), len(beta)))
        g = self.gram
        return sum(alpha[i] * g[i][j] * beta[j] for i in range(self.rank) for j in range(self.rank) if alpha[i] and beta[j])


def validate_gram(g) -> None:
    n = len(g)
    if n == 0:
        raise LatticeError("gram matrix must be nonempty")
    for i, row in enumerate(g):
        if len(row) != n:
            raise LatticeError("gram row %d has length %d, expected %d" % (i, len(row), n))
    for i in range(n):
        if g[i][i] != 2:
            raise LatticeError("gram cell (%d, %d) = %d, diagonal entries must be 2" % (i, i, g[i][i]))
        for j in range(i + 1, n):
            if g[i][j] != g[j][i]:
                raise LatticeError("gram not symmetric at cell (%d, %d): %d != %d" % (i, j, g[i][j], g[j][i]))


def pairing(lat: Lattice, alpha, beta) -> int:
    return lat.pairing(alpha, beta)


@dataclass(frozen=True)
class Cocycle:
    """Bimultiplicative sign eps with eps(a_i, a_j) = (-1)^{(a_i|a_j)} for i > j, else +1.

    `trivial=True` gives eps = 1 (an untwisted group algebra); it violates the
    commutator property whenever some (a_i|a_j) is odd and exists for mutation tests.
    """

    lattice: Lattice
    trivial: bool = False

    @cached_property
    def _table(self):
        g = self.lattice.gram
        l = self.lattice.rank
        if self.trivial:
            return tuple(tuple(0 for _ in range(l)) for _ in range(l))
        return tuple(tuple(g[i][j] % 2 if i > j else 0 for j in range(l)) for i in range(l))

    def exponent(self, alpha, beta) -> int:
        t = self._table
        e = 0
        for i, a in enumerate(alpha):
            if a % 2:
                for j, b in enumerate(beta):
                    if b % 2 and t[i][j]:
                        e += 1
        return e % 2

    def sign(self, alpha, beta) -> int:
        return -1 if self.exponent(alpha, beta) else 1


def cocycle_sign(c: Cocycle, alpha, beta) -> int:
    return c.sign(alpha, beta)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def t_action(c: Cocycle, i: int, beta, power: int = 1):
    """a_i^{power} e_beta = sign * e_{beta + power*alpha_i} for power = +1 or -1.

    a_i e_b = eps(a_i, b) e_{b+a_i};  a_i^{-1} e_b = eps(a_i, b-a_i)^{-1} e_{b-a_i}.
    """
    ai = c.lattice.simple_root(i)
    beta = tuple(beta)
    if power == 1:
        return c.sign(ai, beta), _add(beta, ai)
    if power == -1:
        target = _sub(beta, ai)
        return c.sign(ai, target), target
    raise ValueError("power must be +1 or -1")
