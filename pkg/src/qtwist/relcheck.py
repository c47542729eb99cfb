"""Exact verification of the vertex-operator relations on Fock-space matrix elements.

Every check compares two generating functions coefficient by coefficient on
all source basis states of degree <= D_src and all exponent pairs (p_z, p_w)
with |p_z|, |p_w| <= M (mode m = -p_z).  Each needed coefficient is looked up
in a WordGF whose exact region was sized for the check; a lookup outside it
raises CapOverflow rather than silently reading a truncated value.

Source states and compared coefficients are taken in the rescaled monomial
basis x_{i,n} = a_i(-n)/[n]; operator identities do not depend on the basis.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .fock import FockConfig, FockState, FockVector, HeisenbergGenerator, basis, heis_apply, vacuum
from .lattice import Lattice
from .qseries import (SYMBOLIC, Kernel, RouteMismatch, check_delta_identity, g_series, lin, qdiff_delta,
                      qminus, qplus, qpow, region_expand, square_window, twisted_qpow)
from .report import CapOverflow, RelationReport
from .scalars import LaurentPoly, RatFun, qint
from .series import TruncSeries
from .vertex import (PHI, PHI_FACTOR_DISPLAYED, PSI, XMINUS, XPLUS, OperatorWord, Realization,
                     VertexOpSymbol, WordGF, phi_psi_mode, word_gf, x_mode)

REL_IDS = ("OPE_PP", "OPE_PM", "PHI_PSI_NORMAL", "PHI_PSI_EXCHANGE", "PHI_PHI", "PHI_X", "PSI_X", "ORTHO",
           "XPXM_ADJ", "XPXM_DIAG", "XX_OFFDIAG", "XX_DIAG", "KM_ADJ_REG", "KM_OFFDIAG_REG",
           "KM_REMARK", "DELTA_ID")


@dataclass(frozen=True)
class CheckWindow:
    """Source degree <= D_src, exponents |p| <= M, intermediate degree cap D >= D_src + 2M."""

    D_src: int
    M: int
    D: int | None = None
    betas: tuple | None = None

    def __post_init__(self):
        if self.D_src < 0 or self.M < 0:
            raise ValueError("window sizes must be >= 0")
        if self.D is None:
            object.__setattr__(self, "D", self.D_src + 2 * self.M)
        if self.D < self.D_src + 2 * self.M:
            raise ValueError("degree cap D=%d below D_src + 2M = %d" % (self.D, self.D_src + 2 * self.M))

    def as_dict(self):
        d = {"D_src": self.D_src, "M": self.M, "D": self.D}
        if self.betas is not None:
            d["betas"] = [list(b) for b in self.betas]
        return d

    def points(self):
        M = self.M
        return [(a, b) for a in range(-M, M + 1) for b in range(-M, M + 1)]


def as_realization(x, domain=None) -> Realization:
    if isinstance(x, Realization):
        if domain is not None and domain != x.domain:
            return Realization(x.cfg, domain, x.vertex_coeff, x.phi_factor)
        return x
    if isinstance(x, FockConfig):
        return Realization(x, domain or SYMBOLIC)
    if isinstance(x, Lattice):
        return Realization(FockConfig(x), domain or SYMBOLIC)
    raise TypeError("expected Realization, FockConfig or Lattice")


def source_states(real: Realization, window: CheckWindow):
    rank = real.rank
    betas = window.betas or ((0,) * rank,)
    out = []
    for beta in betas:
        for d in range(window.D_src + 1):
            for s in basis(real.cfg, d, beta):
                out.append(s)
    return out


# -- generating-function views and lookups --------------------------------------

class GFView:
    """A WordGF read in coordinates (z, w), possibly with its variables swapped.

    lo/hi are per-variable exponent bounds (view coordinates) outside of which the
    coefficient is known to vanish; None means no bound beyond the total degree.
    """

    def __init__(self, gf: WordGF, swap: bool = False, normal: bool = False, kinds=()):
        self.gf = gf
        self.swap = swap
        self.d = d = gf.source_degree
        nv = len(gf.maxes)
        lo = [-d] * nv if normal or nv == 1 else [None, -d]
        hi = [None] * nv
        for k, kind in enumerate(kinds):
            if kind == PHI:
                lo[k] = 0
            elif kind == PSI:
                hi[k] = 0
        if swap:
            lo.reverse()
            hi.reverse()
        self.lo, self.hi = tuple(lo), tuple(hi)

    def swapped(self) -> "GFView":
        v = GFView.__new__(GFView)
        v.gf, v.swap, v.d = self.gf, not self.swap, self.d
        v.lo, v.hi = self.lo[::-1], self.hi[::-1]
        return v

    def below(self, exps, k) -> bool:
        return self.lo[k] is not None and exps[k] < self.lo[k]

    def above(self, exps, k) -> bool:
        return self.hi[k] is not None and exps[k] > self.hi[k]

    def known_zero(self, exps) -> bool:
        if sum(exps) < -self.d:
            return True
        return any(self.below(exps, k) or self.above(exps, k) for k in range(len(exps)))

    def coeff(self, exps) -> dict:
        if self.known_zero(exps):
            return {}
        return self.gf.coeff((exps[1], exps[0]) if self.swap else tuple(exps))


class GFCache:
    """WordGFs per (word, source state, exact region), computed once per run."""

    def __init__(self, real: Realization):
        self.real = real
        self.store = {}

    def get(self, word: OperatorWord, state: FockState, maxes, totmax=None, swap=False) -> GFView:
        key = (word, state, tuple(maxes), totmax)
        gf = self.store.get(key)
        if gf is None:
            src = {(state.parts, state.beta): self.real.domain.one()}
            gf = self.store[key] = word_gf(self.real, word, src, maxes, totmax)
        return GFView(gf, swap, word.normal_ordered, [f.kind for f in word.factors])


def _acc(out, k, c):
    if k in out:
        s = out[k] + c
        if s:
            out[k] = s
        else:
            del out[k]
    elif c:
        out[k] = c


def conv(view: GFView, exps, offsets, factor=None) -> dict:
    """sum over ((a, b), c) of c * view(p_z - a, p_w - b)."""
    out = {}
    for (a, b), c in offsets:
        if factor is not None:
            c = c * factor
        for k, x in view.coeff((exps[0] - a, exps[1] - b)).items():
            _acc(out, k, x * c)
    return out


def series_offsets(view: GFView, exps, series: TruncSeries, direction: str):
    """Offsets of a series in t = w/z or t = z/w, stopping once the view is known to vanish."""
    up, down = (0, 1) if direction == "w/z" else (1, 0)
    out = []
    k = 0
    while True:
        off = (-k, k) if direction == "w/z" else (k, -k)
        pt = (exps[0] - off[0], exps[1] - off[1])
        if view.below(pt, down) or view.above(pt, up) or sum(pt) < -view.d:
            break
        if k > series.prec:
            raise CapOverflow("series order %d too small at %s" % (series.prec, tuple(exps)))
        if not view.known_zero(pt):
            c = series[k]
            if c:
                out.append((off, c))
        k += 1
    return out


def delta_offsets(view: GFView, exps, alpha_sign: int, z_shift: int):
    """z^{z_shift} delta(alpha w/z), alpha = +-1: offsets (z_shift - p, p) with coefficient alpha^p."""
    if view.lo[0] is None or view.lo[1] is None:
        raise CapOverflow("delta convolution needs a view bounded below in both variables")
    out = []
    for p in range(view.lo[0] - exps[0] + z_shift, exps[1] - view.lo[1] + 1):
        c = 1 if (alpha_sign == 1 or p % 2 == 0) else -1
        out.append(((z_shift - p, p), c))
    return out


def swap_offsets(offs):
    return [((b, a), c) for (a, b), c in offs]


def poly_offsets(kernel: Kernel, real: Realization, size: int = 64):
    """Coefficients of a polynomial kernel; both region expansions must agree (finite)."""
    dom = real.domain
    win = square_window(size)
    a = region_expand(kernel, "z_dominant", win, dom)
    b = region_expand(kernel, "w_dominant", win, dom)
    if a.first_mismatch(b) is not None:
        raise ValueError("kernel %r is not a polynomial" % (kernel,))
    return sorted(a.coeffs.items())


def _vsub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        _acc(out, k, -c)
    return out


def _first_diff(a: dict, b: dict):
    for k in sorted(set(a) | set(b)):
        x = a.get(k, 0)
        y = b.get(k, 0)
        if x != y:
            return k, x, y
    return None


def _state_str(key):
    parts, beta = key
    return str(FockState(parts, beta))


class _Runner:
    """Accumulates comparisons for one relation report."""

    def __init__(self, relation, real, window, params, notes=None):
        self.rep = RelationReport(relation, dict(params), window.as_dict() if window else {})
        self.rep.params["domain"] = real.domain.describe()
        self.rep.notes = dict(notes or {})
        self.t0 = time.perf_counter()
        self.compared = 0
        self.nonzero = 0

    def compare(self, state, exps, lhs: dict, rhs: dict) -> bool:
        self.compared += 1
        if lhs or rhs:
            self.nonzero += 1
        d = _first_diff(lhs, rhs)
        if d is None:
            return True
        k, x, y = d
        self.rep.fail(state=str(state), modes=(-exps[0], -exps[1]) if len(exps) == 2 else (-exps[0],),
                      exponents=tuple(exps), target=_state_str(k), lhs=x, rhs=y)
        return False

    def done(self, **counts):
        self.rep.counts = {"compared": self.compared, "nonzero": self.nonzero, **counts}
        self.rep.elapsed = time.perf_counter() - self.t0
        return self.rep


def _sym(kind, i, sign=1, vexp=0):
    return VertexOpSymbol(kind, i, sign, vexp)


def _xkind(s):
    return XPLUS if s == 1 else XMINUS


def _sgn(s):
    if s in ("+", 1):
        return 1
    if s in ("-", -1):
        return -1
    raise ValueError("sign must be + or -")


# -- operator product expansions ---------------------------------------------------

def ope_series(a: int, s: int, t: int, N: int, domain=SYMBOLIC) -> TruncSeries:
    """f(w/z) with X^s_i(z)X^t_j(w) = :X^s_i(z)X^t_j(w): f, region |z| > |w|."""
    if s == t:
        return twisted_qpow(a, N, domain).compose_scale(domain.vpow(-2 * s))
    return twisted_qpow(-a, N, domain)


def literal_ope_kernel(a: int, s: int, t: int) -> Kernel:
    """The simply-laced three-case table as printed (with q^{+-2} in the i = j same-sign entry)."""
    q = lambda e: RatFun(LaurentPoly.monomial(2 * e))
    if a == 0:
        return Kernel()
    if s == t:
        if a == 2:
            return lin(1) * lin(q(2 * s)) * lin(-1, -1) * lin(-q(2 * s), -1)
        if a == -1:
            return lin(-q(-s)) * lin(q(-s), -1)
    else:
        if a == 2:
            return lin(-q(1)) * lin(-q(-1)) * lin(q(1), -1) * lin(q(-1), -1)
        if a == -1:
            return lin(1) * lin(-1, -1)
    raise ValueError("the printed table covers (a_i|a_j) in {0, -1, 2} only")


def _kernel_series(kernel: Kernel, N: int, real) -> TruncSeries:
    dist = region_expand(kernel, "z_dominant", ((-N, 0), (0, N)), real.domain)
    return TruncSeries([dist.coeffs.get((-k, k), real.domain.zero()) for k in range(N + 1)], 0, N)


def check_ope(cfg, i: int, j: int, signs, window: CheckWindow, literal: bool = False,
              cache: GFCache | None = None) -> RelationReport:
    """X^s_i(z)X^t_j(w) == :X^s_i(z)X^t_j(w): * i_{z,w} f(z, w) coefficientwise."""
    real = as_realization(cfg)
    cache = cache or GFCache(real)
    s, t = _sgn(signs[0]), _sgn(signs[1])
    a = real.cfg.lattice[i, j]
    M, d = window.M, window.D_src
    N = 2 * M + 2 * d + 2
    rel = "OPE_PP" if s == t else "OPE_PM"
    if literal:
        f = _kernel_series(literal_ope_kernel(a, s, t), N, real)
        rel += "_LITERAL"
    else:
        f = ope_series(a, s, t, N, real.domain)
    run = _Runner(rel, real, window, {"i": i + 1, "j": j + 1, "signs": "%s%s" % ("+-"[s < 0], "+-"[t < 0]),
                                       "pairing": a},
                  {"expansion": "series in w/z"})
    prod = OperatorWord((_sym(_xkind(s), i), _sym(_xkind(t), j)))
    normal = OperatorWord(prod.factors, True)
    for st in source_states(real, window):
        L = cache.get(prod, st, (M, M), 2 * M)
        R = cache.get(normal, st, (2 * M + d, M), 2 * M)
        for e in window.points():
            lhs = L.coeff(e)
            rhs = conv(R, e, series_offsets(R, e, f, "w/z"))
            if not run.compare(st, e, lhs, rhs):
                return run.done()
    return run.done()


# -- Phi and Psi as normal-ordered products of X+ and X- ---------------------------

def check_normal_product(cfg, i: int, window: CheckWindow, which: str = "Phi", cache: GFCache | None = None,
                  displayed: bool = False) -> RelationReport:
    """:X+_i(q^-1 z)X-_i(z): == Phi_i(q^-1/2 z)  and  :X+_i(q z)X-_i(z): == Psi_i(q^1/2 z).

    displayed=True compares against the exponential with the bare prefactor (q^-1 - q).
    """
    real = as_realization(cfg)
    rhs_real = real
    if displayed:
        rhs_real = Realization(real.cfg, real.domain, real.vertex_coeff, PHI_FACTOR_DISPLAYED)
    cache = cache or GFCache(real)
    rhs_cache = cache if rhs_real is real else GFCache(rhs_real)
    M, d = window.M, window.D_src
    if which == PHI:
        word = OperatorWord((_sym(XPLUS, i, 1, -2), _sym(XMINUS, i)), True)
        target = OperatorWord((_sym(PHI, i, 1, -1),))
    else:
        word = OperatorWord((_sym(XPLUS, i, 1, 2), _sym(XMINUS, i)), True)
        target = OperatorWord((_sym(PSI, i, 1, 1),))
    run = _Runner("PHI_PSI_NORMAL" + ("_DISPLAYED" if displayed else ""), real, window,
                  {"i": i + 1, "operator": which})
    for st in source_states(real, window):
        N = cache.get(word, st, (M + d, M + d), M)
        R = rhs_cache.get(target, st, (M,))
        for p in range(-M, M + 1):
            lhs = {}
            for a in range(-d, p + d + 1):
                for k, c in N.coeff((a, p - a)).items():
                    _acc(lhs, k, c)
            if not run.compare(st, (p,), lhs, R.coeff((p,))):
                return run.done()
    return run.done()


def check_phi_psi_support(cfg, i: int, window: CheckWindow, cache: GFCache | None = None) -> RelationReport:
    """Phi_i has only z^{n}, n >= 0, Psi_i only z^{-n}; both have constant term 1."""
    real = as_realization(cfg)
    cache = cache or GFCache(real)
    M = window.M
    run = _Runner("PHI_PSI_SUPPORT", real, window, {"i": i + 1})
    one = real.domain.one()
    for st in source_states(real, window):
        key = (st.parts, st.beta)
        for kind in (PHI, PSI):
            G = cache.get(OperatorWord((_sym(kind, i),)), st, (M,))
            for p in range(-M, M + 1):
                got = G.coeff((p,))
                if p == 0:
                    want = {key: one}
                elif (kind == PHI and p < 0) or (kind == PSI and p > 0):
                    want = {}
                else:
                    continue
                if not run.compare(st, (p,), got, want):
                    return run.done()
    return run.done()


# -- Phi/Psi exchange and its equivalence with the Heisenberg relations --------------

def exchange_series(a: int, N: int, domain=SYMBOLIC) -> TruncSeries:
    """G(x/q)/G(qx) as a series in x = z/w."""
    g = g_series(a, N, domain).coefficients
    return (g.compose_scale(domain.vpow(-2)) * g.compose_scale(domain.vpow(2)).invert()).truncate(N)


def check_phi_psi_exchange(cfg, i: int, j: int, window: CheckWindow, cache: GFCache | None = None) -> RelationReport:
    """Phi_i(z)Psi_j(w) == Psi_j(w)Phi_i(z) G_ij(z/(qw))/G_ij(qz/w), series in z/w."""
    real = as_realization(cfg)
    cache = cache or GFCache(real)
    M, d = window.M, window.D_src
    a = real.cfg.lattice[i, j]
    h = exchange_series(a, 2 * M + d + 2, real.domain)
    run = _Runner("PHI_PSI_EXCHANGE", real, window, {"i": i + 1, "j": j + 1, "pairing": a},
                  {"expansion": "series in z/w"})
    lw = OperatorWord((_sym(PHI, i), _sym(PSI, j)))
    rw = OperatorWord((_sym(PSI, j), _sym(PHI, i)))   # variables (w, z)
    for st in source_states(real, window):
        L = cache.get(lw, st, (M, M), 2 * M)
        R = cache.get(rw, st, (2 * M + d, M), 2 * M, swap=True)
        for e in window.points():
            rhs = conv(R, e, series_offsets(R, e, h, "z/w"))
            if not run.compare(st, e, L.coeff(e), rhs):
                return run.done()
    return run.done()


def _heis_exp(cfg, color: int, coef, sign: int, x: FockVector, K: int, creation: bool) -> dict:
    """exp(coef * sum_{n odd} a_color(+-n) t^{+-n}) x via heis_apply only; returns {t-exponent: FockVector}."""
    out = {0: x}
    # apply the factors exp(coef a(n) t^n) one mode at a time
    for n in range(1, K + 1, 2):
        gen = HeisenbergGenerator(color, -n if creation else n)
        new = {}
        for e, vec in out.items():
            term = vec
            m = 0
            while True:
                ee = e + (n * m if creation else -n * m)
                if abs(ee) > K:
                    break
                new[ee] = new[ee] + term if ee in new else term
                m += 1
                term = heis_apply(cfg, gen, term) * (coef * Fraction(1, m))
                if term.is_zero():
                    break
        out = new
    return out


def check_exchange_heisenberg(cfg: FockConfig, i: int, j: int, window: CheckWindow) -> RelationReport:
    """The exchange identity with Phi and Psi built from heis_apply alone (a-basis, symbolic)."""
    if isinstance(cfg, Realization):
        cfg = cfg.cfg
    M, d = window.M, window.D_src
    a = cfg.lattice[i, j]
    cphi = RatFun(LaurentPoly({-2: 2, 2: -2}))
    cpsi = -cphi
    h = exchange_series(a, 2 * M + d + 2)
    rep = RelationReport("PHI_PSI_EXCHANGE_HEIS", {"i": i + 1, "j": j + 1, "pairing": a, "domain": "symbolic"},
                         window.as_dict(), notes={"route": "heis_apply exponentials, a-basis"})
    t0 = time.perf_counter()
    compared = 0
    K = M + d
    for st in source_states(Realization(cfg), window):
        v = FockVector({st: 1})
        # Phi(z) Psi(w) v
        lhs = {}
        for ew, u in _heis_exp(cfg, j, cpsi, 1, v, K, False).items():
            for ez, y in _heis_exp(cfg, i, cphi, 1, u, K, True).items():
                lhs[(ez, ew)] = y
        # Psi(w) Phi(z) v
        rhs0 = {}
        for ez, u in _heis_exp(cfg, i, cphi, 1, v, K, True).items():
            for ew, y in _heis_exp(cfg, j, cpsi, 1, u, K, False).items():
                rhs0[(ez, ew)] = y
        for e in window.points():
            if e[0] < 0 or e[1] > 0:
                continue
            r = FockVector()
            for k in range(0, e[0] + 1):
                c = h[k]
                if c and (e[0] - k, e[1] + k) in rhs0:
                    r = r + rhs0[(e[0] - k, e[1] + k)] * c
            l = lhs.get(e, FockVector())
            compared += 1
            if l != r:
                diff = l - r
                t = sorted(diff.terms)[0]
                rep.fail(state=str(st), exponents=e, target=str(t), lhs=l.coefficient(t), rhs=r.coefficient(t))
                rep.elapsed = time.perf_counter() - t0
                return rep
    rep.counts = {"compared": compared}
    rep.elapsed = time.perf_counter() - t0
    return rep


def bracket_from_exchange(a: int, N: int) -> dict:
    """[a_j(n), a_i(-n)] recovered from log(G(x/q)/G(qx)) for odd n <= N (exchange => Heisenberg).

    Phi Psi = Psi Phi exp(-[A, B]) with A = 2(q-q^-1) sum a_j(n) w^-n, B = 2(q^-1-q) sum a_i(-n) z^n,
    so the x^n coefficient of the log equals 4(q-q^-1)^2 [a_j(n), a_i(-n)].
    Even n must have vanishing log coefficient; they are returned too.
    """
    lg = exchange_series(a, N).log_of()
    c = RatFun(LaurentPoly({2: 1, -2: -1})) ** 2 * 4
    return {n: lg[n] / c for n in range(1, N + 1)}


def check_heisenberg_from_exchange(cfg: FockConfig, N: int = 7) -> RelationReport:
    """Read the brackets off the exchange factor and compare with heis_apply on vacuum."""
    if isinstance(cfg, Realization):
        cfg = cfg.cfg
    rep = RelationReport("HEIS_FROM_EXCHANGE", {"N": N, "domain": "symbolic"})
    t0 = time.perf_counter()
    vac = vacuum(cfg)
    for i in range(cfg.rank):
        for j in range(cfg.rank):
            got = bracket_from_exchange(cfg.lattice[i, j], N)
            for n in range(1, N + 1):
                if n % 2 == 0:
                    if got[n]:
                        rep.fail(i=i + 1, j=j + 1, n=n, lhs=got[n], rhs=0)
                        return rep
                    continue
                # heis_apply: a_j(n) a_i(-n) vac (the other order kills the vacuum)
                y = heis_apply(cfg, HeisenbergGenerator(j, n),
                               heis_apply(cfg, HeisenbergGenerator(i, -n), vac))
                val = y.coefficient(FockState(tuple(() for _ in range(cfg.rank)), (0,) * cfg.rank))
                if val != got[n]:
                    rep.fail(i=i + 1, j=j + 1, n=n, lhs=got[n], rhs=val)
                    rep.elapsed = time.perf_counter() - t0
                    return rep
    rep.elapsed = time.perf_counter() - t0
    return rep


# -- Heisenberg relations ------------------------------------------------------------

def expected_bracket(a: int, m: int) -> LaurentPoly:
    """[a_i(m), a_j(-m)] at gamma = q: [a m][m]/(2m), from the pairing a alone."""
    return qint(a * m) * qint(m) * Fraction(1, 2 * m)


def check_heisenberg(cfg: FockConfig, D: int = 6, mmax: int = 7) -> RelationReport:
    """[a_i(m), a_j(n)] v == delta_{m,-n} [a m][m]/(2m) v on all basis states of degree <= D."""
    if isinstance(cfg, Realization):
        cfg = cfg.cfg
    rep = RelationReport("HEISENBERG", {"lattice": cfg.lattice.label(), "domain": "symbolic"},
                         {"D": D, "mmax": mmax})
    t0 = time.perf_counter()
    modes = [m for m in range(-mmax, mmax + 1) if m % 2]
    compared = 0
    for d in range(D + 1):
        for st in basis(cfg, d):
            v = FockVector({st: 1})
            for i in range(cfg.rank):
                for j in range(cfg.rank):
                    for m in modes:
                        gi = HeisenbergGenerator(i, m)
                        for n in modes:
                            gj = HeisenbergGenerator(j, n)
                            lhs = heis_apply(cfg, gi, heis_apply(cfg, gj, v)) - \
                                heis_apply(cfg, gj, heis_apply(cfg, gi, v))
                            rhs = v * expected_bracket(cfg.lattice[i, j], m) if m == -n else FockVector()
                            compared += 1
                            if lhs != rhs:
                                t = sorted((lhs - rhs).terms)[0]
                                rep.fail(state=str(st), i=i + 1, j=j + 1, m=m, n=n, target=str(t),
                                         lhs=lhs.coefficient(t), rhs=rhs.coefficient(t))
                                rep.elapsed = time.perf_counter() - t0
                                return rep
    rep.counts = {"compared": compared}
    rep.elapsed = time.perf_counter() - t0
    return rep


# -- current algebra relations (simply laced) ---------------------------------------

def check_phi_phi(cfg, i: int, j: int, window: CheckWindow, kind: str = PHI,
                  cache: GFCache | None = None) -> RelationReport:
    real = as_realization(cfg)
    cache = cache or GFCache(real)
    M = window.M
    run = _Runner("PHI_PHI", real, window, {"i": i + 1, "j": j + 1, "operator": kind})
    a = OperatorWord((_sym(kind, i), _sym(kind, j)))
    b = OperatorWord((_sym(kind, j), _sym(kind, i)))
    for st in source_states(real, window):
        L = cache.get(a, st, (M, M), 2 * M)
        R = cache.get(b, st, (M, M), 2 * M, swap=True)
        for e in window.points():
            if not run.compare(st, e, L.coeff(e), R.coeff(e)):
                return run.done()
    return run.done()


def conjugation_series(a: int, s: int, which: str, N: int, domain, literal: bool = False) -> TruncSeries:
    """Factor in Phi_i(z)X^s_j(w) = X^s_j(w)Phi_i(z) * factor (series in z/w), resp. Psi (series in w/z).

    Phi: G(q^{-s/2} z/w)^{s}.  Psi: G(q^{-s/2} w/z)^{-s}; literal=True uses the printed ^{s}.
    """
    g = g_series(a, N, domain).coefficients.compose_scale(domain.vpow(-s))
    power = s if which == PHI or literal else -s
    return g if power == 1 else g.invert()


def check_conjugation(cfg, i: int, j: int, sign, which: str, window: CheckWindow, literal: bool = False,
                      cache: GFCache | None = None) -> RelationReport:
    real = as_realization(cfg)
    cache = cache or GFCache(real)
    s = _sgn(sign)
    M, d = window.M, window.D_src
    a = real.cfg.lattice[i, j]
    rel = ("PHI_X" if which == PHI else "PSI_X") + ("_LITERAL" if literal else "")
    f = conjugation_series(a, s, which, 2 * M + d + 2, real.domain, literal)
    direction = "z/w" if which == PHI else "w/z"
    run = _Runner(rel, real, window, {"i": i + 1, "j": j + 1, "sign": "+-"[s < 0], "pairing": a},
                  {"expansion": "series in " + direction})
    xs = _sym(_xkind(s), j)
    ps = _sym(which, i)
    lw = OperatorWord((ps, xs))
    rw = OperatorWord((xs, ps))   # variables (w, z)
    for st in source_states(real, window):
        L = cache.get(lw, st, (M, M), 2 * M)
        R = cache.get(rw, st, (2 * M + d, 2 * M + d), 2 * M, swap=True)
        for e in window.points():
            rhs = conv(R, e, series_offsets(R, e, f, direction))
            if not run.compare(st, e, L.coeff(e), rhs):
                return run.done()
    return run.done()


def check_commute(cfg, i: int, j: int, s, t, window: CheckWindow, cache: GFCache | None = None,
                  rel: str = "ORTHO") -> RelationReport:
    """[X^s_i(z), X^t_j(w)] == 0."""
    real = as_realization(cfg)
    cache = cache or GFCache(real)
    s, t = _sgn(s), _sgn(t)
    M = window.M
    run = _Runner(rel, real, window, {"i": i + 1, "j": j + 1, "signs": "%s%s" % ("+-"[s < 0], "+-"[t < 0]),
                                       "pairing": real.cfg.lattice[i, j]})
    a = OperatorWord((_sym(_xkind(s), i), _sym(_xkind(t), j)))
    b = OperatorWord((_sym(_xkind(t), j), _sym(_xkind(s), i)))
    for st in source_states(real, window):
        L = cache.get(a, st, (M, M), 2 * M)
        R = cache.get(b, st, (M, M), 2 * M, swap=True)
        for e in window.points():
            if not run.compare(st, e, L.coeff(e), R.coeff(e)):
                return run.done()
    return run.done()


def check_xpxm_adj(cfg, i: int, j: int, window: CheckWindow, literal: bool = False,
                   cache: GFCache | None = None) -> RelationReport:
    """(a_i|a_j) = -1:  [X+_i(z), X-_j(w)] == 2 :X+_i(z)X-_j(w): delta(-w/z).

    literal=True uses the printed 2z :X+_i(z)X-_j(-z): delta(-w/z).
    """
    real = as_realization(cfg)
    cache = cache or GFCache(real)
    M, d = window.M, window.D_src
    run = _Runner("XPXM_ADJ" + ("_LITERAL" if literal else ""), real, window,
                  {"i": i + 1, "j": j + 1, "pairing": real.cfg.lattice[i, j]})
    two = real.domain.convert(2)
    zshift = 1 if literal else 0
    a = OperatorWord((_sym(XPLUS, i), _sym(XMINUS, j)))
    b = OperatorWord((_sym(XMINUS, j), _sym(XPLUS, i)))
    n = OperatorWord(a.factors, True)
    big = 2 * M + 2 * d + 2
    for st in source_states(real, window):
        A = cache.get(a, st, (M, M), 2 * M)
        B = cache.get(b, st, (M, M), 2 * M, swap=True)
        N = cache.get(n, st, (big, big), 2 * M)
        for e in window.points():
            lhs = _vsub(A.coeff(e), B.coeff(e))
            rhs = conv(N, e, delta_offsets(N, e, -1, zshift), factor=two)
            if not run.compare(st, e, lhs, rhs):
                return run.done()
    return run.done()


def diag_constant(domain):
    q = LaurentPoly.monomial(2)
    qi = LaurentPoly.monomial(-2)
    return domain.convert(RatFun((q + qi) * 2, q - qi))


def check_xpxm_diag(cfg, i: int, window: CheckWindow, literal: bool = False,
                    cache: GFCache | None = None) -> RelationReport:
    """[X+_i(z), X-_i(w)] == K (Psi_i(q^-1/2 z) delta(q w/z) - Phi_i(q^1/2 z) delta(q^-1 w/z)).

    K = 2(q+q^-1)/(q-q^-1).  literal=True swaps the two delta shifts (the proof's last line).
    """
    real = as_realization(cfg)
    cache = cache or GFCache(real)
    dom = real.domain
    M = window.M
    run = _Runner("XPXM_DIAG" + ("_PROOF_LINE" if literal else ""), real, window, {"i": i + 1})
    K = diag_constant(dom)
    a = OperatorWord((_sym(XPLUS, i), _sym(XMINUS, i)))
    b = OperatorWord((_sym(XMINUS, i), _sym(XPLUS, i)))
    psi = OperatorWord((_sym(PSI, i, 1, -1),))
    phi = OperatorWord((_sym(PHI, i, 1, 1),))
    for st in source_states(real, window):
        A = cache.get(a, st, (M, M), 2 * M)
        B = cache.get(b, st, (M, M), 2 * M, swap=True)
        P = cache.get(psi, st, (2 * M,))
        F = cache.get(phi, st, (2 * M,))
        for e in window.points():
            lhs = _vsub(A.coeff(e), B.coeff(e))
            p = e[0] + e[1]
            pw = e[1]
            qp = dom.vpow(2 * pw)
            qm = dom.vpow(-2 * pw)
            c_psi, c_phi = (qm, qp) if literal else (qp, qm)
            rhs = {}
            for k, x in P.coeff((p,)).items():
                _acc(rhs, k, x * c_psi * K)
            for k, x in F.coeff((p,)).items():
                _acc(rhs, k, -(x * c_phi * K))
            if not run.compare(st, e, lhs, rhs):
                return run.done()
    return run.done()


def _qmono(e):
    return RatFun(LaurentPoly.monomial(2 * e))


def exchange_kernels(a: int, s: int):
    """(P, Q) with P(z,w) X^s_i(z)X^s_j(w) = Q(z,w) X^s_j(w)X^s_i(z) (+ delta terms when a >= 2).

    P = (z - q^{s a} w)(z + q^{-s a} w), Q = (q^{s a} z - w)(q^{-s a} z + w); for a = 2 these are
    the diagonal factors, for a = -1 the adjacent ones.
    """
    P = lin(_qmono(s * a)) * lin(-_qmono(-s * a))
    # (q^{sa} z - w)(q^{-sa} z + w) = (z - q^{-sa} w)(z + q^{sa} w)
    Q = lin(_qmono(-s * a)) * lin(-_qmono(s * a))
    return P, Q


def check_exchange(cfg, i: int, j: int, sign, window: CheckWindow, prefactor: Kernel | None = None,
                   rel: str = "XX_OFFDIAG", cache: GFCache | None = None,
                   rhs_fn=None, swap_roles: bool = False) -> RelationReport:
    """pre P(z,w) X_i(z)X_j(w) == pre Q(z,w) X_j(w)X_i(z) + rhs_fn(state)(exponents).

    swap_roles=True checks the identity with z and w renamed (for i = j).
    """
    real = as_realization(cfg)
    cache = cache or GFCache(real)
    s = _sgn(sign)
    M = window.M
    a = real.cfg.lattice[i, j]
    P, Q = exchange_kernels(a, s)
    if prefactor is not None:
        P, Q = prefactor * P, prefactor * Q
    Po, Qo = poly_offsets(P, real), poly_offsets(Q, real)
    params = {"i": i + 1, "j": j + 1, "sign": "+-"[s < 0], "pairing": a}
    if swap_roles:
        if i != j:
            raise ValueError("swap_roles applies to i = j")
        params["swap"] = True
        Po, Qo = swap_offsets(Po), swap_offsets(Qo)
    run = _Runner(rel, real, window, params)
    x = _xkind(s)
    aw = OperatorWord((_sym(x, i), _sym(x, j)))
    bw = OperatorWord((_sym(x, j), _sym(x, i)))
    for st in source_states(real, window):
        A = cache.get(aw, st, (M, M), 2 * M)
        B = cache.get(bw, st, (M, M), 2 * M, swap=True)
        if swap_roles:
            # X_i(w)X_i(z) is B and X_i(z)X_i(w) is A in (z, w) coordinates
            A, B = B, A
        extra = rhs_fn(st) if rhs_fn else None
        for e in window.points():
            lhs = conv(A, e, Po)
            rhs = conv(B, e, Qo)
            if extra:
                for k, c in extra(e).items():
                    _acc(rhs, k, c)
            if not run.compare(st, e, lhs, rhs):
                return run.done()
    return run.done()


def check_xx_diag(cfg, i: int, sign, window: CheckWindow, literal: bool = False, swap_roles: bool = False,
                  cache: GFCache | None = None) -> RelationReport:
    """P X_i(z)X_i(w) - Q X_i(w)X_i(z) == 2(q+q^-1)^2 z^2 delta(-w/z) :X_i(z)X_i(w):.

    literal=True drops the normal-ordered operator (scalar times identity).
    swap_roles=True checks the same identity with z and w renamed.
    """
    real = as_realization(cfg)
    cache = cache or GFCache(real)
    s = _sgn(sign)
    M, d = window.M, window.D_src
    q = LaurentPoly.monomial(2)
    qi = LaurentPoly.monomial(-2)
    c = real.domain.convert(RatFun((q + qi) * (q + qi) * 2))
    x = _xkind(s)
    nw = OperatorWord((_sym(x, i), _sym(x, i)), True)
    big = 2 * M + 2 * d + 2

    def rhs_fn(st):
        if literal:
            key = (st.parts, st.beta)

            def f(e):
                ee = (e[1], e[0]) if swap_roles else e
                # z^2 delta(-w/z) = sum_p (-1)^p z^{2-p} w^p
                if ee[0] + ee[1] != 2:
                    return {}
                return {key: c if ee[1] % 2 == 0 else -c}
            return f
        N = cache.get(nw, st, (big, big), 2 * M)
        if swap_roles:
            Ns = N.swapped()
            return lambda e: conv(Ns, e, swap_offsets(delta_offsets(N, (e[1], e[0]), -1, 2)), factor=c)
        return lambda e: conv(N, e, delta_offsets(N, e, -1, 2), factor=c)

    rel = "XX_DIAG" + ("_LITERAL" if literal else "")
    return check_exchange(real, i, i, s, window, rel=rel, cache=cache, rhs_fn=rhs_fn, swap_roles=swap_roles)


# -- Kac-Moody relations and the delta form -----------------------------------------

def check_km_adj(cfg, i: int, j: int, window: CheckWindow, cache: GFCache | None = None) -> RelationReport:
    """(z+w)^r_{q^2} [X+_i(z), X-_j(w)] == 0 for r = -(a_i|a_j) > 0 (region-expanded both sides)."""
    real = as_realization(cfg)
    cache = cache or GFCache(real)
    M = window.M
    a = real.cfg.lattice[i, j]
    r = -a
    if r <= 0:
        raise ValueError("KM_ADJ_REG needs (a_i|a_j) < 0")
    k = qplus(r)
    zo = region_expand(k, "z_dominant", square_window(4 * M + 16), real.domain)
    wo = region_expand(k, "w_dominant", square_window(4 * M + 16), real.domain)
    run = _Runner("KM_ADJ_REG", real, window, {"i": i + 1, "j": j + 1, "pairing": a},
                  {"factor": "(z+w)^%d_{q^2}" % r})
    zo, wo = sorted(zo.coeffs.items()), sorted(wo.coeffs.items())
    aw = OperatorWord((_sym(XPLUS, i), _sym(XMINUS, j)))
    bw = OperatorWord((_sym(XMINUS, j), _sym(XPLUS, i)))
    for st in source_states(real, window):
        A = cache.get(aw, st, (M, M), 2 * M)
        B = cache.get(bw, st, (M, M), 2 * M, swap=True)
        for e in window.points():
            lhs = conv(A, e, zo)
            rhs = conv(B, e, wo)
            if not run.compare(st, e, lhs, rhs):
                return run.done()
    return run.done()


def check_km_offdiag(cfg, i: int, j: int, sign, window: CheckWindow,
                     cache: GFCache | None = None) -> RelationReport:
    """(z-w)^{r-1}_{q^2}(z - q^{sa}w)(z + q^{-sa}w) X_i X_j == (z-w)^{r-1}_{q^2}(q^{sa}z - w)(q^{-sa}z + w) X_j X_i."""
    real = as_realization(cfg)
    a = real.cfg.lattice[i, j]
    r = -a
    if r <= 0:
        raise ValueError("KM_OFFDIAG_REG needs (a_i|a_j) < 0")
    return check_exchange(real, i, j, sign, window, prefactor=qminus(r - 1), rel="KM_OFFDIAG_REG", cache=cache)


def check_km_remark(cfg, i: int, j: int, sign, window: CheckWindow, literal: bool = False,
                    cache: GFCache | None = None) -> RelationReport:
    """P X_i(z)X_j(w) - Q X_j(w)X_i(z) == :X_i(z)X_j(w): (z+w)^{r+1}_{q^2} d_{q,w}^{(r-2)} delta(z-w).

    r = -(a_i|a_j) >= 1; for r = 1 the right side is 0.  literal=True uses the printed
    (z+w)^{r-1}_{q^2} d^{(r)} delta(z-w).
    """
    real = as_realization(cfg)
    cache = cache or GFCache(real)
    s = _sgn(sign)
    a = real.cfg.lattice[i, j]
    r = -a
    if r <= 0:
        raise ValueError("KM_REMARK needs (a_i|a_j) < 0")
    M, d = window.M, window.D_src
    if literal:
        n, pw = r, r - 1
    else:
        n, pw = r - 2, r + 1
    x = _xkind(s)
    nw = OperatorWord((_sym(x, i), _sym(x, j)), True)
    if n < 0:
        rhs_fn = None
    else:
        W = 4 * M + 2 * d + 2 * r + 8
        dist = qdiff_delta(n, square_window(W), real.domain)
        poly = poly_offsets(qplus(pw), real)
        # product of the polynomial and the delta derivative, as offsets
        prod = {}
        for (a1, b1), c1 in poly:
            for (a2, b2), c2 in dist.coeffs.items():
                _acc(prod, (a1 + a2, b1 + b2), c1 * c2)
        big = 2 * M + d + n + 2 + r

        def rhs_fn(st):
            N = cache.get(nw, st, (big, big), 2 * M)

            def f(e):
                offs = [(o, c) for o, c in prod.items() if e[0] - o[0] >= -d and e[1] - o[1] >= -d]
                return conv(N, e, offs)
            return f
    rel = "KM_REMARK" + ("_LITERAL" if literal else "")
    return check_exchange(real, i, j, s, window, rel=rel, cache=cache, rhs_fn=rhs_fn)


# -- single-coefficient checks --------------------------------------------------------

def check_phi_psi_modes(cfg, i: int, window: CheckWindow) -> RelationReport:
    """Modes of Phi_i, Psi_i from the engine against exponentials built with heis_apply (symbolic)."""
    real = as_realization(cfg, SYMBOLIC)
    fc = real.cfg
    cphi = RatFun(LaurentPoly({-2: 1, 2: -1})) * real.phi_factor
    rep = RelationReport("PHI_PSI_MODES", {"i": i + 1, "domain": "symbolic"}, window.as_dict())
    t0 = time.perf_counter()
    M = window.M
    compared = 0
    for st in source_states(real, window):
        v = FockVector({st: 1})
        for kind, coef, creation in ((PHI, cphi, True), (PSI, -cphi, False)):
            ref = _heis_exp(fc, i, coef, 1, v, M, creation)
            for p in (range(0, M + 1) if creation else range(-M, 1)):
                got = phi_psi_mode(fc, i, kind, -p, v, real=real)
                want = ref.get(p, FockVector())
                compared += 1
                if got != want:
                    t = sorted((got - want).terms)[0]
                    rep.fail(state=str(st), operator=kind, mode=-p, target=str(t),
                             lhs=got.coefficient(t), rhs=want.coefficient(t))
                    rep.elapsed = time.perf_counter() - t0
                    return rep
    rep.counts = {"compared": compared}
    rep.elapsed = time.perf_counter() - t0
    return rep


def check_scalar_commutator(cfg, i: int = 0) -> RelationReport:
    """[X+_i(1), X-_i(-1)] vacuum == 2(q+q^-1) vacuum."""
    real = as_realization(cfg)
    fc = real.cfg
    rep = RelationReport("XPXM_SCALAR", {"i": i + 1, "domain": real.domain.describe()})
    t0 = time.perf_counter()
    vac = vacuum(fc)
    lhs = x_mode(fc, i, "+", 1, x_mode(fc, i, "-", -1, vac, real=real), real=real) - \
        x_mode(fc, i, "-", -1, x_mode(fc, i, "+", 1, vac, real=real), real=real)
    rhs = vac * real.domain.convert(RatFun(LaurentPoly({-2: 2, 2: 2})))
    if lhs != rhs:
        t = sorted((lhs - rhs).terms)[0]
        rep.fail(target=str(t), lhs=lhs.coefficient(t), rhs=rhs.coefficient(t))
    rep.counts = {"compared": 1}
    rep.elapsed = time.perf_counter() - t0
    return rep


# -- suites ---------------------------------------------------------------------------

SUITES = ("heisenberg", "ope", "phipsi", "thm24", "thm44", "delta", "series", "literal")
SIGN_PAIRS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def _pairs(lat, pred):
    return [(i, j) for i in range(lat.rank) for j in range(lat.rank) if pred(i, j, lat[i, j])]


def suite_checks(real: Realization, suite: str, window: CheckWindow, cache: GFCache | None = None):
    """Yield (check id, thunk) pairs for one suite; thunks return RelationReports."""
    cache = cache or GFCache(real)
    lat = real.cfg.lattice
    n = lat.rank
    rng = range(n)
    out = []
    add = lambda name, f: out.append((name, f))
    if suite == "heisenberg":
        add("HEISENBERG", lambda: check_heisenberg(real.cfg, 6, 7))
    elif suite == "ope":
        for i, j in _pairs(lat, lambda i, j, a: True):
            for s, t in SIGN_PAIRS:
                add("OPE", lambda i=i, j=j, s=s, t=t: check_ope(real, i, j, (s, t), window, cache=cache))
    elif suite == "phipsi":
        for i in rng:
            add("PHI_PSI_MODES", lambda i=i: check_phi_psi_modes(real, i, window))
            add("PHI_PSI_SUPPORT", lambda i=i: check_phi_psi_support(real, i, window, cache))
            for kind in (PHI, PSI):
                add("PHI_PSI_NORMAL", lambda i=i, k=kind: check_normal_product(real, i, window, k, cache))
        for i, j in _pairs(lat, lambda i, j, a: True):
            add("PHI_PSI_EXCHANGE", lambda i=i, j=j: check_phi_psi_exchange(real, i, j, window, cache))
            add("PHI_PSI_EXCHANGE_HEIS", lambda i=i, j=j: check_exchange_heisenberg(real.cfg, i, j, window))
        add("HEIS_FROM_EXCHANGE", lambda: check_heisenberg_from_exchange(real.cfg))
    elif suite in ("thm24", "thm44"):
        if suite == "thm44":
            for i, j in _pairs(lat, lambda i, j, a: True):
                for s, t in SIGN_PAIRS:
                    add("OPE", lambda i=i, j=j, s=s, t=t: check_ope(real, i, j, (s, t), window, cache=cache))
        for i, j in _pairs(lat, lambda i, j, a: True):
            for kind in (PHI, PSI):
                add("PHI_PHI", lambda i=i, j=j, k=kind: check_phi_phi(real, i, j, window, k, cache))
            add("PHI_PSI_EXCHANGE", lambda i=i, j=j: check_phi_psi_exchange(real, i, j, window, cache))
            for s in (1, -1):
                for kind in (PHI, PSI):
                    add("CONJ", lambda i=i, j=j, s=s, k=kind: check_conjugation(real, i, j, s, k, window,
                                                                                cache=cache))
        for i, j in _pairs(lat, lambda i, j, a: i != j and a == 0):
            for s, t in SIGN_PAIRS:
                add("ORTHO", lambda i=i, j=j, s=s, t=t: check_commute(real, i, j, s, t, window, cache))
        for i in rng:
            add("XPXM_DIAG", lambda i=i: check_xpxm_diag(real, i, window, cache=cache))
            for s in (1, -1):
                for sw in (False, True):
                    add("XX_DIAG", lambda i=i, s=s, sw=sw: check_xx_diag(real, i, s, window, swap_roles=sw,
                                                                          cache=cache))
        if suite == "thm24":
            if lat[0, 0] == 2:
                add("XPXM_SCALAR", lambda: check_scalar_commutator(real, 0))
            for i, j in _pairs(lat, lambda i, j, a: i != j and a == -1):
                add("XPXM_ADJ", lambda i=i, j=j: check_xpxm_adj(real, i, j, window, cache=cache))
                for s in (1, -1):
                    add("XX_OFFDIAG", lambda i=i, j=j, s=s: check_exchange(real, i, j, s, window, cache=cache))
        else:
            for i, j in _pairs(lat, lambda i, j, a: i != j and a < 0):
                add("KM_ADJ_REG", lambda i=i, j=j: check_km_adj(real, i, j, window, cache))
                for s in (1, -1):
                    add("KM_OFFDIAG_REG", lambda i=i, j=j, s=s: check_km_offdiag(real, i, j, s, window, cache))
                    add("KM_REMARK", lambda i=i, j=j, s=s: check_km_remark(real, i, j, s, window, cache=cache))
    elif suite == "delta":
        for k in range(4):
            add("DELTA_ID", lambda k=k: check_delta_identity(k, square_window(12), real.domain))
    elif suite == "series":
        add("SERIES_ROUTES", lambda: check_series_routes(16, 4, real.domain))
    elif suite == "literal":
        for i in rng:
            if lat[i, i] == 2:
                add("OPE_LITERAL", lambda i=i: check_ope(real, i, i, (1, 1), window, literal=True, cache=cache))
            add("PHI_PSI_NORMAL_DISPLAYED", lambda i=i: check_normal_product(real, i, window, PHI, cache, displayed=True))
            add("PSI_X_LITERAL", lambda i=i: check_conjugation(real, i, i, 1, PSI, window, literal=True,
                                                               cache=cache))
            add("XPXM_DIAG_SWAPPED", lambda i=i: check_xpxm_diag(real, i, window, literal=True, cache=cache))
            add("XX_DIAG_LITERAL", lambda i=i: check_xx_diag(real, i, 1, window, literal=True, cache=cache))
        for i, j in _pairs(lat, lambda i, j, a: i != j and a == -1):
            add("XPXM_ADJ_LITERAL", lambda i=i, j=j: check_xpxm_adj(real, i, j, window, literal=True,
                                                                     cache=cache))
        for i, j in _pairs(lat, lambda i, j, a: i != j and a <= -2):
            add("KM_REMARK_LITERAL", lambda i=i, j=j: check_km_remark(real, i, j, 1, window, literal=True,
                                                                       cache=cache))
    else:
        raise ValueError("unknown suite %r (known: %s)" % (suite, ", ".join(SUITES)))
    return out


class SuiteOverflow(CapOverflow):
    def __init__(self, check, message):
        super().__init__("%s: %s" % (check, message))
        self.check = check


def run_suite(real, suite: str, window: CheckWindow, cache: GFCache | None = None) -> list:
    """Run every check of a suite; CapOverflow is re-raised naming the check."""
    real = as_realization(real)
    cache = cache or GFCache(real)
    reports = []
    for name, thunk in suite_checks(real, suite, window, cache):
        try:
            reports.append(thunk())
        except CapOverflow as e:
            raise SuiteOverflow(name, str(e)) from e
    return reports


def check_series_routes(N: int = 16, R: int = 4, domain=SYMBOLIC) -> RelationReport:
    """G (division vs exponential) and qpow (Pochhammer vs exponential) agree to order N for
    a, r in [-R, R]; twisted_qpow(r) times its z -> -z image is 1."""
    rep = RelationReport("SERIES_ROUTES", {"order": N, "range": R, "domain": domain.describe()})
    t0 = time.perf_counter()
    one = TruncSeries([domain.one()], 0, N)
    for a in range(-R, R + 1):
        try:
            g_series(a, N, domain)
            qpow(a, N, domain)
        except RouteMismatch as e:
            rep.fail(parameter=a, message=str(e))
            break
        t = twisted_qpow(a, N, domain)
        prod = (t * t.compose_scale(-1)).truncate(N)
        if prod != one:
            rep.fail(parameter=a, message="twisted_qpow(%d) * twisted_qpow(%d)(-z) != 1" % (a, a))
            break
    rep.counts = {"parameters": 2 * R + 1}
    rep.elapsed = time.perf_counter() - t0
    return rep
