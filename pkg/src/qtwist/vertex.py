"""Twisted vertex operators X_i^{+-}(z), Phi_i(z), Psi_i(z) acting exactly on the Fock space.

Internally the Fock space uses the rescaled generators x_{i,n} = a_i(-n)/[n].
In that basis every coefficient of E_-, E_+, Phi and Psi is a Laurent
polynomial, so the hot path never needs a gcd:

  E^s_-(a_i, z) = exp( s * sum_n c(s,n)[n] x_{i,n} z^n )      (c = 2 q^{-s n/2}/[n])
  E^s_+(a_i, z) : x_{j,n} -> x_{j,n} - s c(s,n) k_ij(n) z^{-n}   (k_ij(n) = [a_i(n), x_{j,n}])

E_+ is the exponential of a derivation with constant values on the generators,
hence a translation (substitution) automorphism.  Words of at most two
operators are evaluated as generating functions in (z, w) whose exact region
is tracked explicitly; asking for a coefficient outside it raises CapOverflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .fock import (FockConfig, FockState, FockVector, INHOMOGENEOUS, degree,
                   mono_merge)
from .lattice import t_action
from .report import CapOverflow
from .scalars import Domain, LaurentPoly, RatFun, SymbolicDomain, qint

SYMBOLIC = SymbolicDomain()

XPLUS, XMINUS, PHI, PSI = "Xplus", "Xminus", "Phi", "Psi"
KINDS = (XPLUS, XMINUS, PHI, PSI)
_SIGN = {XPLUS: 1, XMINUS: -1}

# Phi/Psi exponent prefactor.  The normal-ordered products :X+(zq^-1)X-(z): and
# :X+(zq)X-(z): produce 2(q^-1 - q) and 2(q - q^-1); the bare display has 1.
PHI_FACTOR = 2
PHI_FACTOR_DISPLAYED = 1

VERTEX_STANDARD = "standard"   # 2 q^{-+n/2} / [n]
VERTEX_UNIT = "unit"           # 1/[n], used as a mutation


def vertex_coefficient(sign: int, n: int, mode: str = VERTEX_STANDARD) -> RatFun:
    """The a-basis coefficient c(s, n) in E^s_{+-}."""
    if mode == VERTEX_STANDARD:
        return RatFun(LaurentPoly.monomial(-sign * n, 2), qint(n))
    if mode == VERTEX_UNIT:
        return RatFun(1, qint(n))
    raise ValueError("unknown vertex coefficient mode %r" % mode)


# -- realization ------------------------------------------------------------

@dataclass(eq=False)
class Realization:
    """A FockConfig plus scalar domain and the operator normalizations.

    `vertex_coeff` and `phi_factor` exist so tests can perturb them.
    """

    cfg: FockConfig
    domain: Domain = SYMBOLIC
    vertex_coeff: str = VERTEX_STANDARD
    phi_factor: int = PHI_FACTOR
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self):
        return self.cfg.rank

    def _memo(self, key, build):
        try:
            return self._cache[key]
        except KeyError:
            val = self._cache[key] = build()
            return val

    def kappa(self, i: int, j: int, n: int) -> RatFun:
        """[a_i(n), x_{j,n}] = contraction / [n]."""
        return RatFun(self.cfg.contraction(i, j, n)) / RatFun(qint(n))

    def create_coef(self, kind: str, i: int, n: int):
        """Coefficient of x_{i,n} z^n in the exponent of the creation part."""
        def build():
            if kind == PHI:
                c = RatFun(LaurentPoly({-2: 1, 2: -1}) * qint(n)) * self.phi_factor
            else:
                s = _SIGN[kind]
                c = vertex_coefficient(s, n, self.vertex_coeff) * RatFun(qint(n)) * s
            return self.domain.convert(c)
        return self._memo(("cc", kind, i, n), build)

    def sub_coef(self, kind: str, i: int, j: int, n: int):
        """Shift of x_{j,n} (times z^{-n}) produced by the annihilation part of color i."""
        def build():
            if kind == PSI:
                c = RatFun(LaurentPoly({2: 1, -2: -1})) * self.phi_factor * self.kappa(i, j, n)
            else:
                s = _SIGN[kind]
                c = vertex_coefficient(s, n, self.vertex_coeff) * self.kappa(i, j, n) * (-s)
            return self.domain.convert(c)
        return self._memo(("sc", kind, i, j, n), build)

    def creation_table(self, kind: str, i: int, K: int):
        """Entries (k, parts_added, coefficient) of exp(sum c_n x_{i,n} z^n) with k <= K, sorted by k."""
        def build():
            coefs = {n: self.create_coef(kind, i, n) for n in range(1, K + 1, 2)}
            rows = []
            for k, part, c in _exp_rows(coefs, K, self.domain):
                add = tuple(part if j == i else () for j in range(self.rank))
                rows.append((k, add, c))
            return rows
        return self._memo(("ct", kind, i, K), build)

    def sub_table(self, kind: str, i: int):
        def build():
            return lambda j, n: self.sub_coef(kind, i, j, n)
        return self._memo(("st", kind, i), build)


def _exp_rows(coefs: dict, K: int, domain: Domain):
    """Expand exp(sum_n coefs[n] y_n t^n) up to t^K: rows (k, descending parts, coefficient)."""
    one = domain.one()
    rows = [(0, (), one)]
    for n in sorted(coefs, reverse=True):
        c = coefs[n]
        new = []
        for k, part, val in rows:
            p = one
            m = 0
            while k + m * n <= K:
                new.append((k + m * n, part + (n,) * m, val * p))
                m += 1
                p = p * c * Fraction(1, m)
        rows = new
    rows = [(k, tuple(sorted(p, reverse=True)), c) for k, p, c in rows if c]
    rows.sort(key=lambda r: (r[0], tuple(-x for x in r[1])))
    return rows


# -- internal vectors ---------------------------------------------------------
# A generating function is a dict  (parts, beta, exps) -> scalar, where exps is a
# tuple with one exponent per formal variable.

def _acc(out, key, c):
    if key in out:
        s = out[key] + c
        if s:
            out[key] = s
        else:
            del out[key]
    elif c:
        out[key] = c


def apply_group(real: Realization, gf: dict, i: int, power: int) -> dict:
    out = {}
    for (parts, beta, e), c in gf.items():
        sgn, nb = t_action(real.cfg.cocycle, i, beta, power)
        _acc(out, (parts, nb, e), c if sgn == 1 else -c)
    return out


@lru_cache(maxsize=200000)
def _distinct(parts):
    """((j, n, multiplicity), ...) for a parts tuple."""
    out = []
    for j, p in enumerate(parts):
        k = 0
        while k < len(p):
            n = p[k]
            m = 1
            while k + m < len(p) and p[k + m] == n:
                m += 1
            out.append((j, n, m))
            k += m
    return tuple(out)


def _parts_from_counts(rank, counts):
    cols = [[] for _ in range(rank)]
    for (j, n), m in counts:
        cols[j].extend([n] * m)
    return tuple(tuple(sorted(c, reverse=True)) for c in cols)


def apply_substitution(real: Realization, gf: dict, kind: str, i: int, var: int) -> dict:
    """Annihilation part of (kind, i) in variable `var`: x_{j,n} -> x_{j,n} + s_{ijn} z^{-n}."""
    coef = real.sub_table(kind, i)
    rank = real.rank
    one = real.domain.one()
    out = {}
    for (parts, beta, e), c in gf.items():
        # expand prod over distinct variables of (x + s t^n)^m
        branches = [((), 0, c)]
        for j, n, m in _distinct(parts):
            s = coef(j, n)
            if not s:
                branches = [(kept + (((j, n), m),), shift, val) for kept, shift, val in branches]
                continue
            new = []
            p = one
            pows = []
            for t in range(m + 1):
                pows.append(p * comb(m, t))
                p = p * s
            for kept, shift, val in branches:
                for t in range(m + 1):
                    nk = kept + (((j, n), m - t),) if m - t else kept
                    new.append((nk, shift + n * t, val * pows[t]))
            branches = new
        for kept, shift, val in branches:
            np_ = _parts_from_counts(rank, kept)
            ne = e[:var] + (e[var] - shift,) + e[var + 1:]
            _acc(out, (np_, beta, ne), val)
    return out


@lru_cache(maxsize=500000)
def _merge(parts, add):
    return mono_merge(parts, add)


def apply_creation(real: Realization, gf: dict, kind: str, i: int, var: int,
                   vmax: int, totmax: int | None = None) -> dict:
    """Creation part of (kind, i) in variable `var`, keeping exponents e[var] <= vmax
    and (when given) sum(e) <= totmax.  Sound only if no later step lowers exponents."""
    if not gf:
        return {}
    lo = min(e[var] for (_, _, e) in gf)
    K = max(0, vmax - lo)
    table = real.creation_table(kind, i, K)
    out = {}
    for (parts, beta, e), c in gf.items():
        room = vmax - e[var]
        if totmax is not None:
            room = min(room, totmax - sum(e))
        if room < 0:
            continue
        for k, add, t in table:
            if k > room:
                break
            np_ = _merge(parts, add) if k else parts
            ne = e[:var] + (e[var] + k,) + e[var + 1:] if k else e
            _acc(out, (np_, beta, ne), c * t)
    return out


def apply_scale(real: Realization, gf: dict, var: int, scale) -> dict:
    """Substitute z -> alpha z in variable var; scale = (sign, v-exponent) for alpha = sign*v^e."""
    sign, ve = scale
    if sign == 1 and ve == 0:
        return gf
    out = {}
    for (parts, beta, e), c in gf.items():
        p = e[var]
        f = real.domain.vpow(ve * p)
        if sign == -1 and p % 2:
            f = -f
        out[(parts, beta, e)] = c * f
    return out


# -- symbols, words and generating functions ----------------------------------

@dataclass(frozen=True)
class VertexOpSymbol:
    """kind in {Xplus, Xminus, Phi, Psi}, color i, argument scale alpha = sign * v^vexp."""

    kind: str
    color: int
    sign: int = 1
    vexp: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError("unknown operator kind %r" % self.kind)
        if self.sign not in (1, -1):
            raise ValueError("argument scale must be a nonzero monomial +-v^e")

    @property
    def scale(self):
        return (self.sign, self.vexp)

    def __str__(self):
        arg = "z" if (self.sign, self.vexp) == (1, 0) else "%sv^%d z" % ("-" if self.sign < 0 else "", self.vexp)
        return "%s_%d(%s)" % (self.kind, self.color + 1, arg)


@dataclass(frozen=True)
class OperatorWord:
    """Product factors[0](z) factors[1](w) ..., at most two formal variables."""

    factors: tuple
    normal_ordered: bool = False

    def __post_init__(self):
        if not 1 <= len(self.factors) <= 2:
            raise ValueError("operator words have one or two factors")


@dataclass
class WordGF:
    """Generating function of a word applied to one source vector.

    terms: exps -> {(parts, beta): scalar}.  Coefficients are exact whenever
    exps[k] <= maxes[k] for every variable and sum(exps) <= totmax.
    """

    terms: dict
    maxes: tuple
    totmax: int | None
    source_degree: int

    def exact_at(self, exps) -> bool:
        if any(e > m for e, m in zip(exps, self.maxes)):
            return False
        return self.totmax is None or sum(exps) <= self.totmax

    def coeff(self, exps) -> dict:
        exps = tuple(exps)
        if not self.exact_at(exps):
            raise CapOverflow("coefficient %s outside the exact region (maxes %s, total %s)"
                              % (exps, self.maxes, self.totmax))
        return self.terms.get(exps, {})

    def exps(self):
        return sorted(self.terms)


def _regroup(gf: dict) -> dict:
    out = {}
    for (parts, beta, e), c in gf.items():
        out.setdefault(e, {})[(parts, beta)] = c
    return out


def _apply_full(real, gf, sym: VertexOpSymbol, var, vmax, totmax):
    kind, i = sym.kind, sym.color
    if kind in (XPLUS, XMINUS):
        gf = apply_group(real, gf, i, _SIGN[kind])
    if kind != PHI:
        gf = apply_substitution(real, gf, kind, i, var)
    if kind != PSI:
        gf = apply_creation(real, gf, kind, i, var, vmax, totmax)
    return gf


def word_gf(real: Realization, word: OperatorWord, source: dict, maxes, totmax=None) -> WordGF:
    """Evaluate word on a source vector given as {(parts, beta): scalar} (scaled basis).

    maxes are upper bounds on the exponents of the (unscaled) formal variables.
    """
    nv = len(word.factors)
    maxes = tuple(maxes)
    if len(maxes) != nv:
        raise ValueError("need one exponent bound per variable")
    degs = {sum(sum(p) for p in parts) for parts, _ in source}
    if len(degs) > 1:
        raise ValueError("source vector must be homogeneous")
    d = degs.pop() if degs else 0
    zero_e = (0,) * nv
    gf = {(parts, beta, zero_e): c for (parts, beta), c in source.items() if c}
    syms = word.factors
    if word.normal_ordered:
        for var in reversed(range(nv)):
            s = syms[var]
            if s.kind in (XPLUS, XMINUS):
                gf = apply_group(real, gf, s.color, _SIGN[s.kind])
        for var in range(nv):
            if syms[var].kind != PHI:
                gf = apply_substitution(real, gf, syms[var].kind, syms[var].color, var)
        for var in range(nv):
            if syms[var].kind != PSI:
                gf = apply_creation(real, gf, syms[var].kind, syms[var].color, var, maxes[var], totmax)
    else:
        for var in reversed(range(nv)):
            t = totmax if var == 0 else None
            gf = _apply_full(real, gf, syms[var], var, maxes[var], t)
    for var in range(nv):
        gf = apply_scale(real, gf, var, syms[var].scale)
    return WordGF(_regroup(gf), maxes, totmax, d)


# -- public operator tables -----------------------------------------------------

def _parse_sign(sign) -> int:
    if sign in (1, "+", XPLUS):
        return 1
    if sign in (-1, "-", XMINUS):
        return -1
    raise ValueError("sign must be + or -")


def e_minus_expand(i: int, sign, D: int, rank: int | None = None, mode: str = VERTEX_STANDARD) -> dict:
    """z^k coefficients (k <= D) of E^{+-}_-(a_i, z) as {k: {parts of a_i(-n): RatFun}}."""
    s = _parse_sign(sign)
    if D < 0:
        raise CapOverflow("degree cap must be >= 0")
    coefs = {n: vertex_coefficient(s, n, mode) * s for n in range(1, D + 1, 2)}
    out = {}
    for k, part, c in _exp_rows(coefs, D, SYMBOLIC):
        out.setdefault(k, {})[part] = c
    return out


def e_plus_expand(i: int, sign, D: int, rank: int | None = None, mode: str = VERTEX_STANDARD) -> dict:
    """z^{-k} coefficients (k <= D) of E^{+-}_+(a_i, z) as {k: {parts of a_i(n): RatFun}}."""
    s = _parse_sign(sign)
    if D < 0:
        raise CapOverflow("degree cap must be >= 0")
    coefs = {n: vertex_coefficient(s, n, mode) * (-s) for n in range(1, D + 1, 2)}
    out = {}
    for k, part, c in _exp_rows(coefs, D, SYMBOLIC):
        out.setdefault(k, {})[part] = c
    return out


# -- conversions between the a-basis and the scaled basis ---------------------------

@lru_cache(maxsize=None)
def _qint_product(parts) -> LaurentPoly:
    p = LaurentPoly.const(1)
    for col in parts:
        for n in col:
            p = p * qint(n)
    return p


def to_scaled(real: Realization, x: FockVector) -> dict:
    dom = real.domain
    return {(s.parts, s.beta): dom.convert(c * _qint_product(s.parts)) for s, c in x.terms.items()}


def from_scaled(real: Realization, vec: dict) -> FockVector:
    """Back to the a-basis; in rational mode the coefficients stay Fractions."""
    out = {}
    for (parts, beta), c in vec.items():
        p = _qint_product(parts)
        if isinstance(c, RatFun):
            out[FockState(parts, beta)] = c / RatFun(p)
        else:
            out[FockState(parts, beta)] = c / real.domain.convert(p)
    if isinstance(real.domain, SymbolicDomain):
        return FockVector(out)
    v = FockVector()
    v.terms = {k: c for k, c in out.items() if c}
    return v


def _default_real(cfg, real):
    if real is None:
        return Realization(cfg)
    if real.cfg is not cfg and real.cfg != cfg:
        raise ValueError("realization belongs to a different configuration")
    return real


def _cap_check(cfg, target, D):
    cap = D if D is not None else cfg.degree_cap
    if target < 0:
        return False
    if cap is not None and target > cap:
        raise CapOverflow("result degree %d exceeds degree cap %d" % (target, cap))
    return True


def x_mode(cfg: FockConfig, i: int, sign, n: int, x: FockVector, D: int | None = None,
           real: Realization | None = None) -> FockVector:
    """X_i^{+-}(n) x, the coefficient of z^{-n} in X_i^{+-}(z) x."""
    real = _default_real(cfg, real)
    d = degree(x)
    if d == INHOMOGENEOUS:
        raise ValueError("x_mode needs a homogeneous vector")
    if x.is_zero() or not _cap_check(cfg, d - n, D):
        return FockVector()
    kind = XPLUS if _parse_sign(sign) == 1 else XMINUS
    word = OperatorWord((VertexOpSymbol(kind, i),))
    gf = word_gf(real, word, to_scaled(real, x), (-n,))
    return from_scaled(real, gf.coeff((-n,)))


class ModeSupportNote(FockVector):
    """Zero vector returned for a Phi/Psi mode outside the series support."""

    outside_support = True


def phi_psi_mode(cfg: FockConfig, i: int, kind: str, n: int, x: FockVector, D: int | None = None,
                 real: Realization | None = None) -> FockVector:
    """Phi_i(n) (n <= 0, coefficient of z^{-n}) or Psi_i(n) (n >= 0, coefficient of z^{-n})."""
    real = _default_real(cfg, real)
    if kind not in (PHI, PSI):
        raise ValueError("kind must be Phi or Psi")
    if (kind == PHI and n > 0) or (kind == PSI and n < 0):
        return ModeSupportNote()
    d = degree(x)
    if d == INHOMOGENEOUS:
        raise ValueError("phi_psi_mode needs a homogeneous vector")
    if x.is_zero() or not _cap_check(cfg, d - n, D):
        return FockVector()
    word = OperatorWord((VertexOpSymbol(kind, i),))
    gf = word_gf(real, word, to_scaled(real, x), (-n,))
    return from_scaled(real, gf.coeff((-n,)))


@dataclass
class ModeMatrix:
    word: OperatorWord
    modes: tuple
    source_degree: int
    target_degree: int
    entries: dict  # (target FockState, source FockState) -> scalar

    def column(self, src) -> dict:
        return {t: c for (t, s), c in self.entries.items() if s == src}


def word_mode_matrix(cfg: FockConfig, word: OperatorWord, modes, source_basis, D: int | None = None,
                     real: Realization | None = None) -> ModeMatrix:
    """Matrix of the mode (m, n, ...) of word between a homogeneous source basis and its target degree."""
    real = _default_real(cfg, real)
    modes = tuple(modes)
    if len(modes) != len(word.factors):
        raise ValueError("one mode per factor")
    src = list(source_basis)
    degs = {s.degree for s in src}
    if len(degs) > 1:
        raise ValueError("source basis must be homogeneous")
    d = degs.pop() if degs else 0
    target = d - sum(modes)
    entries = {}
    if src and _cap_check(cfg, target, D):
        exps = tuple(-m for m in modes)
        for s in src:
            v = to_scaled(real, FockVector({s: 1}))
            gf = word_gf(real, word, v, exps, sum(exps))
            col = from_scaled(real, gf.coeff(exps))
            for t, c in col.terms.items():
                entries[(t, s)] = c
    return ModeMatrix(word, modes, d, target, entries)
