"""Formal expansions: G-series, q-analog powers, region expansions, delta distributions.

All one-variable objects are TruncSeries; two-variable objects are TwoVarDist
tables carrying an explicit exponent window inside which every coefficient is exact.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .report import CapOverflow, RelationReport
from .scalars import Domain, SymbolicDomain
from .series import TruncSeries

SYMBOLIC = SymbolicDomain()


class RouteMismatch(AssertionError):
    """Two independent computations of the same expansion disagree."""


def _poly_series(coeffs, prec, domain):
    return TruncSeries([domain.convert(c) for c in coeffs], 0, prec)


def _first_difference(a: TruncSeries, b: TruncSeries):
    for k in range(min(a.base, b.base), min(a.prec, b.prec) + 1):
        if a[k] != b[k]:
            return k
    return None


# -- G_ij(z) ---------------------------------------------------------------

@dataclass
class PairingSeries:
    """Taylor series at z=0 of (q^a z-1)/(q^a z+1) * (z+q^a)/(z-q^a); depends only on a."""

    a: int
    coefficients: TruncSeries

    def __getitem__(self, k):
        return self.coefficients[k]

    @property
    def order(self):
        return self.coefficients.prec


def g_series_division(a: int, N: int, domain: Domain = SYMBOLIC) -> TruncSeries:
    qa = domain.vpow(2 * a)
    num = TruncSeries([-qa, qa * qa - 1, qa], 0, N)
    den = TruncSeries([-qa, 1 - qa * qa, qa], 0, N)
    return (num * den.invert()).truncate(N)


def g_series_exponential(a: int, N: int, domain: Domain = SYMBOLIC) -> TruncSeries:
    zero = domain.zero()
    exponent = [zero] * (N + 1)
    for n in range(1, N + 1, 2):
        exponent[n] = (domain.vpow(2 * a * n) - domain.vpow(-2 * a * n)) * Fraction(-2, n)
    return TruncSeries(exponent, 0, N).exp_of()


def g_series(a: int, N: int, domain: Domain = SYMBOLIC) -> PairingSeries:
    if N < 0:
        raise ValueError("order must be >= 0")
    by_division = g_series_division(a, N, domain)
    by_exp = g_series_exponential(a, N, domain)
    k = _first_difference(by_division, by_exp)
    if k is not None:
        raise RouteMismatch("G series routes disagree at z^%d for a=%d" % (k, a))
    return PairingSeries(a, by_division)


# -- q-analog powers -------------------------------------------------------

def _qint_ratio(r: int, n: int, domain: Domain):
    # [rn]/[n] is a Laurent polynomial ([r] in base q^n)
    return domain.qint(r * n) / domain.qint(n)


def qpow_exponential(r: int, N: int, domain: Domain = SYMBOLIC) -> TruncSeries:
    """(1-z)^r_{q^2} = exp(-sum_n [rn]/(n[n]) z^n)."""
    zero = domain.zero()
    exponent = [zero] * (N + 1)
    for n in range(1, N + 1):
        exponent[n] = _qint_ratio(r, n, domain) * Fraction(-1, n)
    return TruncSeries(exponent, 0, N).exp_of()


def pochhammer_quotient(top: int, bottom: int, N: int, domain: Domain = SYMBOLIC) -> TruncSeries:
    """(q^top z; q^2)_inf / (q^bottom z; q^2)_inf for top = bottom mod 2, telescoped to finitely many factors."""
    if (top - bottom) % 2:
        raise ValueError("exponents must agree mod 2 for the quotient to telescope")
    one = domain.one()
    out = TruncSeries([one], 0, N)
    if bottom > top:
        for e in range(top, bottom, 2):
            out = out * TruncSeries([one, -domain.vpow(2 * e)], 0, N)
    elif top > bottom:
        den = TruncSeries([one], 0, N)
        for e in range(bottom, top, 2):
            den = den * TruncSeries([one, -domain.vpow(2 * e)], 0, N)
        out = den.invert()
    return out.truncate(N)


def qpow_pochhammer(r: int, N: int, domain: Domain = SYMBOLIC) -> TruncSeries:
    return pochhammer_quotient(-r + 1, r + 1, N, domain)


def qpow(r: int, N: int, domain: Domain = SYMBOLIC) -> TruncSeries:
    """Truncated (1-z)^r_{q^2}, cross-checked between its two defining formulas."""
    if N < 0:
        raise ValueError("order must be >= 0")
    a = qpow_pochhammer(r, N, domain)
    b = qpow_exponential(r, N, domain)
    k = _first_difference(a, b)
    if k is not None:
        raise RouteMismatch("qpow routes disagree at z^%d for r=%d" % (k, r))
    return a


def twisted_qpow(r: int, N: int, domain: Domain = SYMBOLIC) -> TruncSeries:
    """((1-z)/(1+z))^r_{q^2} = exp(-sum_{n odd} 2[rn]/(n[n]) z^n)."""
    if N < 0:
        raise ValueError("order must be >= 0")
    zero = domain.zero()
    exponent = [zero] * (N + 1)
    for n in range(1, N + 1, 2):
        exponent[n] = _qint_ratio(r, n, domain) * Fraction(-2, n)
    return TruncSeries(exponent, 0, N).exp_of()


# -- two-variable distributions ---------------------------------------------

Window = tuple  # ((zlo, zhi), (wlo, whi))


def _in_window(window, m, n):
    (zlo, zhi), (wlo, whi) = window
    return zlo <= m <= zhi and wlo <= n <= whi


def _intersect(a, b):
    (a0, a1), (a2, a3) = a
    (b0, b1), (b2, b3) = b
    return ((max(a0, b0), min(a1, b1)), (max(a2, b2), min(a3, b3)))


def square_window(size: int) -> Window:
    return ((-size, size), (-size, size))


@dataclass
class TwoVarDist:
    """Sparse coefficient table sum c_{m,n} z^m w^n, exact inside `window`."""

    window: Window
    coeffs: dict = field(default_factory=dict)
    homogeneity_degree: int | None = None

    def __post_init__(self):
        self.coeffs = {k: c for k, c in self.coeffs.items() if c and _in_window(self.window, *k)}

    def get(self, m: int, n: int, zero=0):
        if not _in_window(self.window, m, n):
            raise CapOverflow("coefficient (%d, %d) outside window %s" % (m, n, self.window))
        return self.coeffs.get((m, n), zero)

    def items(self):
        return sorted(self.coeffs.items())

    def __add__(self, other):
        w = _intersect(self.window, other.window)
        out = {}
        for k, c in list(self.coeffs.items()) + list(other.coeffs.items()):
            if _in_window(w, *k):
                out[k] = out[k] + c if k in out else c
        return TwoVarDist(w, out)

    def __neg__(self):
        return TwoVarDist(self.window, {k: -c for k, c in self.coeffs.items()}, self.homogeneity_degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return TwoVarDist(self.window, {k: x * c for k, x in self.coeffs.items()}, self.homogeneity_degree)

    def first_mismatch(self, other):
        w = _intersect(self.window, other.window)
        keys = sorted(k for k in set(self.coeffs) | set(other.coeffs) if _in_window(w, *k))
        for k in keys:
            a = self.coeffs.get(k, 0)
            b = other.coeffs.get(k, 0)
            if a != b:
                return k, a, b
        return None


# -- rational kernels and their region expansions -----------------------------

@dataclass(frozen=True)
class Kernel:
    """Product of catalogued homogeneous factors in (z, w).

    Factor tuples:
      ("mono", a, b)   z^a w^b
      ("lin", s, e)    (z - s w)^e           s a nonzero monomial scalar
      ("qm", s, r)     (z - s w)^r_{q^2} := z^r (1 - s w/z)^r_{q^2}
      ("qp", s, r)     (z + s w)^r_{q^2} := z^r (1 + s w/z)^r_{q^2}
    """

    factors: tuple = ()

    def __mul__(self, other):
        return Kernel(self.factors + other.factors)

    @property
    def degree(self):
        d = 0
        for f in self.factors:
            d += f[1] + f[2] if f[0] == "mono" else f[2]
        return d


def mono(a: int, b: int) -> Kernel:
    return Kernel((("mono", a, b),))


def lin(s, e: int = 1) -> Kernel:
    """(z - s w)^e."""
    return Kernel((("lin", s, e),))


def qminus(r: int, s=1) -> Kernel:
    return Kernel((("qm", s, r),))


def qplus(r: int, s=1) -> Kernel:
    return Kernel((("qp", s, r),))


class KernelError(ValueError):
    pass


def _binomial_series(c, e: int, N: int, domain: Domain) -> TruncSeries:
    """(1 - c t)^e truncated at t^N."""
    one = domain.one()
    base = TruncSeries([one, -c], 0, N)
    if e >= 0:
        out = TruncSeries([one], 0, N)
        for _ in range(e):
            out = out * base
        return out
    inv = base.invert()
    out = TruncSeries([one], 0, N)
    for _ in range(-e):
        out = out * inv
    return out


def _factor_expansion(f, region: str, N: int, domain: Domain):
    """Return (z offset, w offset, series in t) where t = w/z (z_dominant) or z/w (w_dominant)."""
    one = domain.one()
    kind = f[0]
    if kind == "mono":
        return f[1], f[2], TruncSeries([one], 0, N)
    s = domain.convert(f[1])
    if not s:
        raise KernelError("zero scale in kernel factor %r" % (f,))
    e = f[2]
    if kind == "lin":
        if region == "z_dominant":
            return e, 0, _binomial_series(s, e, N, domain)
        return 0, e, _binomial_series(1 / s, e, N, domain) * ((-s) ** e)
    if kind == "qm":
        if region == "z_dominant":
            return e, 0, qpow(e, N, domain).compose_scale(s)
        return 0, e, qpow(e, N, domain).compose_scale(1 / s) * ((-s) ** e)
    if kind == "qp":
        if region == "z_dominant":
            return e, 0, qpow(e, N, domain).compose_scale(-s)
        return 0, e, qpow(e, N, domain).compose_scale(-1 / s) * (s ** e)
    raise KernelError("kernel factor outside catalogue: %r" % (f,))


def region_expand(kernel: Kernel, region: str, window: Window, domain: Domain = SYMBOLIC) -> TwoVarDist:
    """i_{z,w} (region='z_dominant') or i_{w,z} (region='w_dominant') expansion inside window."""
    if region not in ("z_dominant", "w_dominant"):
        raise ValueError("region must be z_dominant or w_dominant")
    if isinstance(kernel, tuple):
        kernel = Kernel(kernel)
    (zlo, zhi), (wlo, whi) = window
    dz = dw = 0
    for f in kernel.factors:
        if f[0] not in ("mono", "lin", "qm", "qp"):
            raise KernelError("kernel factor outside catalogue: %r" % (f,))
    # offsets first, to size the series
    for f in kernel.factors:
        if f[0] == "mono":
            dz += f[1]
            dw += f[2]
        elif region == "z_dominant":
            dz += f[2]
        else:
            dw += f[2]
    if region == "z_dominant":
        N = min(whi - dw, dz - zlo)
    else:
        N = min(zhi - dz, dw - wlo)
    if N < 0:
        return TwoVarDist(window, {}, kernel.degree)
    total = TruncSeries([domain.one()], 0, N)
    for f in kernel.factors:
        _, _, s = _factor_expansion(f, region, N, domain)
        total = total * s
    out = {}
    for k, c in total.items():
        key = (dz - k, dw + k) if region == "z_dominant" else (dz + k, dw - k)
        out[key] = c
    return TwoVarDist(window, out, kernel.degree)


# -- delta functions and q-differences ---------------------------------------

def delta(alpha, window: Window, domain: Domain = SYMBOLIC) -> TwoVarDist:
    """delta(alpha w / z) = sum_n alpha^n z^{-n} w^n."""
    a = domain.convert(alpha)
    if not a:
        raise ValueError("delta shift must be nonzero")
    (zlo, zhi), (wlo, whi) = window
    out = {}
    for n in range(max(wlo, -zhi), min(whi, -zlo) + 1):
        out[(-n, n)] = a ** n if n >= 0 else (1 / a) ** (-n)
    return TwoVarDist(window, out, 0)


def delta_z_minus_w(window: Window, domain: Domain = SYMBOLIC) -> TwoVarDist:
    """delta(z - w) = sum_m z^m w^{-m-1}."""
    (zlo, zhi), (wlo, whi) = window
    one = domain.one()
    out = {(m, -m - 1): one for m in range(max(zlo, -whi - 1), min(zhi, -wlo - 1) + 1)}
    return TwoVarDist(window, out, -1)


@dataclass
class QDifference:
    """Divided power of the q-difference in w: normalization * d_q^order, default 1/[order]!."""

    order: int
    normalization: object = None

    def norm(self, domain: Domain):
        if self.normalization is None:
            return 1 / domain.convert(qfactorial_scalar(self.order))
        return domain.convert(self.normalization)

    def apply(self, dist: TwoVarDist, domain: Domain = SYMBOLIC) -> TwoVarDist:
        if self.order < 0:
            raise ValueError("q-difference order must be >= 0")
        cur = dist
        for _ in range(self.order):
            (zr, (wlo, whi)) = cur.window
            out = {}
            for (m, k), c in cur.coeffs.items():
                # d_q w^k = [k] w^{k-1}
                if k:
                    out[(m, k - 1)] = c * domain.qint(k)
            h = None if cur.homogeneity_degree is None else cur.homogeneity_degree - 1
            cur = TwoVarDist((zr, (wlo - 1, whi - 1)), out, h)
        c = self.norm(domain)
        return TwoVarDist(cur.window, {k: x * c for k, x in cur.coeffs.items()}, cur.homogeneity_degree)


def qfactorial_scalar(n):
    from .scalars import qfactorial
    return qfactorial(n)


def qdiff_delta(n: int, window: Window, domain: Domain = SYMBOLIC, normalization=None) -> TwoVarDist:
    """d_{q,w}^{(n)} delta(z - w), exact inside window."""
    if n < 0:
        raise ValueError("order must be >= 0")
    (zr, (wlo, whi)) = window
    base = delta_z_minus_w((zr, (wlo + n, whi + n)), domain)
    return QDifference(n, normalization).apply(base, domain)


def check_delta_identity(n: int, window: Window, domain: Domain = SYMBOLIC,
                         normalization=None) -> RelationReport:
    """i_{z,w}(z-w)^{-n-1}_{q^2} - i_{w,z}(z-w)^{-n-1}_{q^2} == d_{q,w}^{(n)} delta(z-w) on window."""
    t0 = time.perf_counter()
    rep = RelationReport("DELTA_ID", params={"n": n, "domain": domain.describe()},
                         window={"z": window[0], "w": window[1]})
    if normalization is not None:
        rep.params["normalization"] = normalization
    k = qminus(-n - 1)
    lhs = region_expand(k, "z_dominant", window, domain) - region_expand(k, "w_dominant", window, domain)
    rhs = qdiff_delta(n, window, domain, normalization)
    bad = lhs.first_mismatch(rhs)
    rep.counts = {"lhs_terms": len(lhs.coeffs), "rhs_terms": len(rhs.coeffs)}
    if bad is not None:
        (m, j), a, b = bad
        rep.fail(slot=(m, j), lhs=a, rhs=b)
    rep.elapsed = time.perf_counter() - t0
    return rep
