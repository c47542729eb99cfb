"""Truncated one-variable Laurent series with exact coefficients."""

from __future__ import annotations

from fractions import Fraction

from .ratfun import RatFun


class TruncationError(ValueError):
    pass


class TruncSeries:
    """sum_{k=base}^{prec} c_k z^k, known exactly up to and including z^prec.

    Coefficients may be RatFun or any exact field element (Fraction).
    """

    __slots__ = ("base", "coeffs", "prec")

    def __init__(self, coeffs, base: int = 0, prec: int | None = None):
        coeffs = list(coeffs)
        self.base = base
        self.prec = base + len(coeffs) - 1 if prec is None else prec
        n = self.prec - base + 1
        if n < 0:
            n = 0
        zero = _zero_like(coeffs)
        coeffs = coeffs[:n] + [zero] * (n - len(coeffs))
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        return self.prec

    def __getitem__(self, k: int):
        if k > self.prec:
            raise TruncationError("coefficient z^%d beyond precision z^%d" % (k, self.prec))
        if k < self.base:
            return _zero_like(self.coeffs)
        return self.coeffs[k - self.base]

    def items(self):
        for k, c in enumerate(self.coeffs):
            if c:
                yield self.base + k, c

    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if c:
                return self.base + k
        return None

    def truncate(self, prec: int) -> "TruncSeries":
        if prec > self.prec:
            raise TruncationError("cannot extend precision from %d to %d" % (self.prec, prec))
        return TruncSeries(self.coeffs, self.base, prec)

    def map(self, f) -> "TruncSeries":
        return TruncSeries([f(c) for c in self.coeffs], self.base, self.prec)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        prec = min(self.prec, other.prec)
        base = min(self.base, other.base)
        return TruncSeries([self[k] + other[k] for k in range(base, prec + 1)], base, prec)

    def __neg__(self):
        return self.map(lambda c: -c)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.map(lambda c: c * other)
        a, b = self, other
        va, vb = a.valuation(), b.valuation()
        if va is None:
            va = a.base
        if vb is None:
            vb = b.base
        prec = min(a.prec + vb, b.prec + va)
        base = a.base + b.base
        out = [_zero_like(a.coeffs + b.coeffs)] * (prec - base + 1 if prec >= base else 0)
        for i, x in a.items():
            for j, y in b.items():
                k = i + j
                if k <= prec:
                    out[k - base] = out[k - base] + x * y
        return TruncSeries(out, base, prec)

    __rmul__ = __mul__

    def _lift(self, other):
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries([other], 0, self.prec)

    def invert(self) -> "TruncSeries":
        """1/s for s with nonzero leading coefficient (at z^base)."""
        lead = self.coeffs[0] if self.coeffs else 0
        if not lead:
            raise ZeroDivisionError("invert: leading coefficient at z^%d is zero" % self.base)
        b = self.base
        n = self.prec - b  # relative precision
        inv_lead = Fraction(1, lead) if isinstance(lead, int) else 1 / lead
        out = [inv_lead]
        for k in range(1, n + 1):
            acc = _zero_like(self.coeffs)
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out.append(-acc * inv_lead)
        return TruncSeries(out, -b, n - b)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.invert()
        return self.map(lambda c: c / other)

    def compose_scale(self, alpha) -> "TruncSeries":
        """Substitute z -> alpha*z (alpha a monomial scalar such as q or -1)."""
        if isinstance(alpha, int):
            alpha = Fraction(alpha)
        out = []
        p = alpha ** self.base if self.base >= 0 else (1 / alpha) ** (-self.base)
        for c in self.coeffs:
            out.append(c * p)
            p = p * alpha
        return TruncSeries(out, self.base, self.prec)

    def exp_of(self) -> "TruncSeries":
        """exp(s) for s without constant term."""
        if any(c for k, c in self.items() if k <= 0):
            raise ValueError("exp_of requires a series with no constant or negative terms")
        n = self.prec
        one = _one_like(self.coeffs)
        zero = _zero_like(self.coeffs)
        a = [self[k] if k >= self.base else zero for k in range(0, n + 1)]
        # e' = s' e  =>  k e_k = sum_{j=1}^k j s_j e_{k-j}
        e = [one]
        for k in range(1, n + 1):
            acc = zero
            for j in range(1, k + 1):
                if a[j]:
                    acc = acc + a[j] * e[k - j] * j
            e.append(acc * Fraction(1, k))
        return TruncSeries(e, 0, n)

    def log_of(self) -> "TruncSeries":
        """log(s) for s with constant term 1."""
        if self.base > 0 or self[0] != 1:
            raise ValueError("log_of requires constant term 1")
        n = self.prec
        zero = _zero_like(self.coeffs)
        s = [self[k] for k in range(0, n + 1)]
        # k l_k = k s_k - sum_{j=1}^{k-1} j l_j s_{k-j}
        l = [zero]
        for k in range(1, n + 1):
            acc = s[k] * k
            for j in range(1, k):
                if l[j]:
                    acc = acc - l[j] * s[k - j] * j
            l.append(acc * Fraction(1, k))
        return TruncSeries(l, 0, n)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        prec = min(self.prec, other.prec)
        base = min(self.base, other.base)
        return all(self[k] == other[k] for k in range(base, prec + 1))

    def __repr__(self):
        terms = ", ".join("z^%d: %s" % (k, c) for k, c in self.items())
        return "TruncSeries({%s}, prec=%d)" % (terms, self.prec)


def _zero_like(coeffs):
    for c in coeffs:
        if isinstance(c, RatFun):
            return RatFun(0)
    return Fraction(0)


def _one_like(coeffs):
    z = _zero_like(coeffs)
    return z + 1


def series_arith(a: TruncSeries, b=None, op: str = "add", alpha=None) -> TruncSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "invert":
        return a.invert()
    if op == "compose_scale":
        return a.compose_scale(alpha)
    if op == "exp_of":
        return a.exp_of()
    raise ValueError("unknown op %r" % op)
