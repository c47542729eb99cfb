"""The level-one Fock space S(h^-) (x) T with its twisted q-Heisenberg action (gamma = q)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .lattice import Cocycle, Lattice
from .report import CapOverflow
from .scalars import LaurentPoly, RatFun, qint


class FockState(NamedTuple):
    """One colored partition into odd parts per simple root, plus the group-algebra label beta."""

    parts: tuple  # parts[i] = descending tuple of odd positive modes of a_i(-n)
    beta: tuple

    @property
    def degree(self) -> int:
        return sum(sum(p) for p in self.parts)

    def __str__(self):
        mono = " ".join("a%d(-%d)" % (i + 1, n) for i, p in enumerate(self.parts) for n in p)
        return "%s|e%s" % (mono or "1", list(self.beta))


@lru_cache(maxsize=None)
def heisenberg_contraction(gram_entry: int, m: int, twisted: bool = True, factor=Fraction(1, 2)) -> LaurentPoly:
    """[a_i(m), a_j(-m)] at gamma = q, for m > 0.

    Twisted (odd m): [a m] [m] * factor / m with factor = 1/2.  The untwisted
    relation of the integer-mode algebra has factor 1 and is kept for contrast.
    """
    f = factor if twisted else 1
    return qint(gram_entry * m) * qint(m) * (Fraction(f) / m)


@dataclass(frozen=True)
class FockConfig:
    """Lattice, cocycle and level (fixed at one) plus an optional hard degree cap.

    `heis_factor` is the rational factor in the twisted Heisenberg bracket (1/2 at
    face value); it is a field only so mutation tests can perturb it.
    """

    lattice: Lattice
    cocycle: Cocycle | None = None
    degree_cap: int | None = None
    heis_factor: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if self.cocycle is None:
            object.__setattr__(self, "cocycle", Cocycle(self.lattice))

    @property
    def rank(self):
        return self.lattice.rank

    def contraction(self, i: int, j: int, m: int) -> LaurentPoly:
        return heisenberg_contraction(self.lattice[i, j], m, True, self.heis_factor)


@dataclass(frozen=True)
class HeisenbergGenerator:
    color: int
    mode: int

    def __post_init__(self):
        if self.mode % 2 == 0:
            raise ValueError("twisted Heisenberg modes are odd, got %d" % self.mode)


# -- monomials --------------------------------------------------------------

def mono_insert(parts: tuple, i: int, n: int) -> tuple:
    p = parts[i]
    k = 0
    while k < len(p) and p[k] > n:
        k += 1
    return parts[:i] + (p[:k] + (n,) + p[k:],) + parts[i + 1:]


def mono_remove(parts: tuple, i: int, n: int):
    """Remove one part n from color i; returns (multiplicity before removal, new parts)."""
    p = parts[i]
    c = p.count(n)
    if not c:
        return 0, parts
    k = p.index(n)
    return c, parts[:i] + (p[:k] + p[k + 1:],) + parts[i + 1:]


def mono_merge(a: tuple, b: tuple) -> tuple:
    return tuple(tuple(sorted(x + y, reverse=True)) if y else x for x, y in zip(a, b))


def empty_parts(rank: int) -> tuple:
    return tuple(() for _ in range(rank))


# -- vectors ----------------------------------------------------------------

class FockVector:
    """Finite RatFun-linear combination of FockStates (coefficients w.r.t. the monomials a_i(-n))."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for s, c in (terms or {}).items():
            c = RatFun.coerce(c)
            if c:
                self.terms[FockState(*s)] = c

    def __add__(self, other):
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out[s] + c if s in out else c
        return FockVector(out)

    def __neg__(self):
        return FockVector({s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return FockVector({s: x * c for s, x in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, FockVector) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def coefficient(self, state) -> RatFun:
        return self.terms.get(FockState(*state), RatFun(0))

    def __repr__(self):
        return "FockVector({%s})" % ", ".join("%s: %s" % (s, c) for s, c in sorted(self.terms.items()))


INHOMOGENEOUS = "inhomogeneous"


def degree(x: FockVector):
    degs = {s.degree for s in x.terms}
    if not degs:
        return 0
    if len(degs) > 1:
        return INHOMOGENEOUS
    return degs.pop()


def vacuum(cfg: FockConfig, beta=None) -> FockVector:
    beta = tuple(beta) if beta is not None else (0,) * cfg.rank
    return FockVector({FockState(empty_parts(cfg.rank), beta): 1})


def heis_apply(cfg: FockConfig, g: HeisenbergGenerator, x: FockVector) -> FockVector:
    """a_i(m) x: multiplication for m < 0, the contraction derivation for m > 0."""
    i, m = g.color, g.mode
    if m % 2 == 0:
        raise ValueError("twisted Heisenberg modes are odd, got %d" % m)
    out = {}
    if m < 0:
        for s, c in x.terms.items():
            ns = FockState(mono_insert(s.parts, i, -m), s.beta)
            if cfg.degree_cap is not None and ns.degree > cfg.degree_cap:
                raise CapOverflow("a_%d(%d) exceeds degree cap %d" % (i + 1, m, cfg.degree_cap))
            out[ns] = out[ns] + c if ns in out else c
    else:
        for s, c in x.terms.items():
            for j in range(cfg.rank):
                mult, parts = mono_remove(s.parts, j, m)
                if not mult:
                    continue
                k = cfg.contraction(i, j, m)
                if not k:
                    continue
                ns = FockState(parts, s.beta)
                t = c * (k * mult)
                out[ns] = out[ns] + t if ns in out else t
    return FockVector(out)


# -- bases ------------------------------------------------------------------

@lru_cache(maxsize=None)
def odd_partitions(d: int, largest: int | None = None) -> tuple:
    """Partitions of d into odd parts, each descending, in reverse-lexicographic order."""
    if largest is None:
        largest = d if d % 2 else d - 1
    if d == 0:
        return ((),)
    out = []
    for p in range(min(largest, d), 0, -1):
        if p % 2 == 0:
            continue
        for rest in odd_partitions(d - p, p):
            out.append((p,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def colored_odd_partitions(rank: int, d: int) -> tuple:
    if rank == 1:
        return tuple((p,) for p in odd_partitions(d))
    out = []
    for d0 in range(d, -1, -1):
        for p in odd_partitions(d0):
            for rest in colored_odd_partitions(rank - 1, d - d0):
                out.append((p,) + rest)
    return tuple(out)


def basis(cfg: FockConfig, d: int, beta=None) -> list:
    if d < 0:
        raise ValueError("degree must be >= 0")
    beta = tuple(beta) if beta is not None else (0,) * cfg.rank
    return [FockState(parts, beta) for parts in colored_odd_partitions(cfg.rank, d)]


def dimension_series(rank: int, D: int) -> list:
    """Coefficients of prod_{n odd} (1 - t^n)^{-rank} up to t^D."""
    c = [1] + [0] * D
    for n in range(1, D + 1, 2):
        for _ in range(rank):
            for k in range(n, D + 1):
                c[k] += c[k - n]
    return c
