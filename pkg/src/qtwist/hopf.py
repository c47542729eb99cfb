"""Coproduct, counit and antipode of the current generators, with the coassociativity and counit checks.

Arguments are z scaled by v^{e0 + sum_k e_k c_k}, where c_k is the central element of
tensor slot k; since q = v^2, q^{c_k/2} is e_k = 1 and q^{c_k} is e_k = 2.
Applying the coproduct to slot k replaces c_k by c_k + c_{k+1} in every argument.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .report import FAIL, PASS

XPLUS, XMINUS, PHI, PSI, CENTRAL, ONE = "xplus", "xminus", "phi", "psi", "c", "one"
GEN_KINDS = (XPLUS, XMINUS, PHI, PSI, CENTRAL)
_NO_ARG = (CENTRAL, ONE)


@dataclass(frozen=True, order=True)
class GenSymbol:
    """A generator at argument v^{e0 + sum_k cs[k] c_k} z (or c, or 1); inverse marks phi(.)^{-1}."""

    kind: str
    color: int = 0
    e0: int = 0
    cs: tuple = ()
    inverse: bool = False

    def __post_init__(self):
        if self.kind not in GEN_KINDS + (ONE,):
            raise ValueError("unknown generator kind %r" % self.kind)
        if self.kind in _NO_ARG and (self.e0 or any(self.cs)):
            raise ValueError("%s carries no argument" % self.kind)

    def with_arg(self, e0, cs):
        return GenSymbol(self.kind, self.color, e0, tuple(cs), self.inverse)

    def arg_str(self):
        terms = []
        if self.e0:
            terms.append(_half(self.e0, ""))
        single = len(self.cs) == 1
        for k, e in enumerate(self.cs):
            if e:
                terms.append(_half(e, "c" if single else "c%d" % (k + 1)))
        if not terms:
            return "z"
        s = terms[0]
        for t in terms[1:]:
            s += t if t.startswith("-") else "+" + t
        return "q^{%s}z" % s

    def __str__(self):
        if self.kind == CENTRAL:
            return "c"
        if self.kind == ONE:
            return "1"
        s = "%s_%d(%s)" % (self.kind, self.color + 1, self.arg_str())
        return s + "^{-1}" if self.inverse else s


def _half(e, name):
    """e/2 times name as text: 1 -> 'c1/2', 2 -> 'c1', -1 -> '-c1/2'."""
    x = Fraction(e, 2)
    if not name:
        return str(x)
    if x == 1:
        return name
    if x == -1:
        return "-" + name
    if x.denominator == 1:
        return "%d%s" % (x.numerator, name)
    num = "" if x.numerator == 1 else "-" if x.numerator == -1 else str(x.numerator)
    return "%s%s/%d" % (num, name, x.denominator)


def generator(kind: str, color: int = 0, arity: int = 1) -> GenSymbol:
    """The generator at the unscaled argument z in an arity-`arity` tensor."""
    if kind in _NO_ARG:
        return GenSymbol(kind, color, 0, (0,) * arity)
    return GenSymbol(kind, color, 0, (0,) * arity)


def _canon_slot(product: tuple) -> tuple:
    """Sort runs of phi factors and runs of psi factors (each family commutes); keep everything else in order."""
    out = []
    run = []
    for g in product:
        if g.kind == ONE:
            continue
        if run and (g.kind != run[0].kind or g.kind not in (PHI, PSI)):
            out.extend(sorted(run))
            run = []
        run.append(g)
    out.extend(sorted(run))
    return tuple(out)


@dataclass(frozen=True, order=True)
class TensorTerm:
    """coefficient * slot_1 (x) ... (x) slot_n, each slot a product of GenSymbols (empty = 1)."""

    slots: tuple
    coefficient: int = 1

    @property
    def arity(self):
        return len(self.slots)

    def key(self):
        return tuple(_canon_slot(s) for s in self.slots)

    def __str__(self):
        body = " (x) ".join(" ".join(str(g) for g in s) if s else "1" for s in self.slots)
        sign = "-" if self.coefficient < 0 else ""
        mag = abs(self.coefficient)
        return "%s%s%s" % (sign, "" if mag == 1 else "%d*" % mag, body)


def canonical(terms) -> list:
    """Merge equal terms (after slot normalization) and drop zeros; deterministic order."""
    acc = {}
    for t in terms:
        k = t.key()
        acc[k] = acc.get(k, 0) + t.coefficient
    return [TensorTerm(k, c) for k, c in sorted(acc.items(), key=lambda kv: str(kv[0])) if c]


def _expand_cs(cs: tuple, k: int) -> tuple:
    # c_k -> c_k + c_{k+1}
    return cs[:k] + (cs[k], cs[k]) + cs[k + 1:]


def _scaled(g: GenSymbol, cs: tuple, **shift) -> GenSymbol:
    """g with argument coefficients cs plus shifts on named slots (slot index -> amount)."""
    cs = list(cs)
    for k, e in shift.get("by", {}).items():
        cs[k] += e
    return g.with_arg(g.e0, cs)


def _delta_factor(g: GenSymbol, k: int, literal: bool):
    """Coproduct of one factor sitting in slot k; returns [(coeff, left product, right product)].

    The factor's own argument is first expanded (c_k -> c_k + c_{k+1}); the new left and right
    slots are k and k+1.
    """
    if g.kind == ONE:
        return [(1, (), ())]
    if g.kind == CENTRAL:
        return [(1, (g.with_arg(0, (0,) * (len(g.cs) + 1)),), ()),
                (1, (), (g.with_arg(0, (0,) * (len(g.cs) + 1)),))]
    if g.inverse:
        raise ValueError("the coproduct is not applied to inverse symbols")
    cs = _expand_cs(g.cs, k)
    l, r = k, k + 1
    same = g.with_arg(g.e0, cs)
    if g.kind == XPLUS:
        # x+(z) (x) 1 + phi(q^{c_1/2} z) (x) x+(q^{c_1} z)
        return [(1, (same,), ()),
                (1, (_scaled(GenSymbol(PHI, g.color, g.e0), cs, by={l: 1}),),
                    (_scaled(same, cs, by={l: 2}),))]
    if g.kind == XMINUS:
        # 1 (x) x-(z) + x-(q^{c_2} z) (x) psi(q^{c_2/2} z); the printed form has phi in the last slot
        partner = PHI if literal else PSI
        return [(1, (), (same,)),
                (1, (_scaled(same, cs, by={r: 2}),),
                    (_scaled(GenSymbol(partner, g.color, g.e0), cs, by={r: 1}),))]
    if g.kind == PHI:
        # phi(q^{-c_2/2} z) (x) phi(q^{c_1/2} z)
        return [(1, (_scaled(same, cs, by={r: -1}),), (_scaled(same, cs, by={l: 1}),))]
    if g.kind == PSI:
        # psi(q^{c_2/2} z) (x) psi(q^{-c_1/2} z)
        return [(1, (_scaled(same, cs, by={r: 1}),), (_scaled(same, cs, by={l: -1}),))]
    raise ValueError(g.kind)


def apply_delta(term: TensorTerm, k: int, literal: bool = False) -> list:
    """(id^{k} (x) Delta (x) id) applied to slot k of a term."""
    n = term.arity
    if not 0 <= k < n:
        raise ValueError("slot %d out of range for arity %d" % (k, n))

    def expand(product):
        return tuple(g if g.kind in _NO_ARG else g.with_arg(g.e0, _expand_cs(g.cs, k)) for g in product)

    # cs of central symbols only record arity
    def grow(product):
        return tuple(g.with_arg(0, (0,) * (n + 1)) if g.kind in _NO_ARG else g for g in product)

    before = [grow(expand(s)) for s in term.slots[:k]]
    after = [grow(expand(s)) for s in term.slots[k + 1:]]
    # the product in slot k maps to the product of the factor coproducts
    partial = [(term.coefficient, (), ())]
    for g in term.slots[k]:
        nxt = []
        for c, left, right in partial:
            for c2, l2, r2 in _delta_factor(g, k, literal):
                nxt.append((c * c2, left + l2, right + r2))
        partial = nxt
    return [TensorTerm(tuple(before) + (grow(left), grow(right)) + tuple(after), c) for c, left, right in partial]


def coproduct(g: GenSymbol, literal: bool = False) -> list:
    """Delta(g) for a generator at argument z (arity 1 input, arity 2 output)."""
    if len(g.cs) != 1:
        g = g.with_arg(g.e0, (0,)) if g.kind not in _NO_ARG else g.with_arg(0, (0,))
    return canonical(apply_delta(TensorTerm(((g,),)), 0, literal))


def _counit_factor(g: GenSymbol) -> int:
    if g.kind in (XPLUS, XMINUS, CENTRAL):
        return 0
    return 1   # phi, psi, one


def apply_counit(term: TensorTerm, k: int):
    """(id (x) eps (x) id) on slot k; c_k is set to 0 in every remaining argument."""
    c = term.coefficient
    for g in term.slots[k]:
        c *= _counit_factor(g)
    if not c:
        return None
    n = term.arity

    def drop(product):
        out = []
        for g in product:
            cs = g.cs[:k] + g.cs[k + 1:]
            out.append(g.with_arg(0, (0,) * (n - 1)) if g.kind in _NO_ARG else g.with_arg(g.e0, cs))
        return tuple(out)

    return TensorTerm(tuple(drop(s) for i, s in enumerate(term.slots) if i != k), c)


@dataclass
class HopfReport:
    axiom: str
    generator: str
    status: str = PASS
    mismatch: dict | None = None
    params: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self):
        return self.status == PASS

    @property
    def relation(self):
        return self.axiom

    def to_dict(self, timing: bool = True) -> dict:
        d = {"relation": self.axiom, "params": dict(self.params, generator=self.generator),
             "window": {}, "status": self.status, "witness": self.mismatch, "counts": {}, "notes": {}}
        if timing:
            d["elapsed_s"] = round(self.elapsed, 4)
        return d

    def line(self) -> str:
        s = "%s %s(generator=%s)" % (self.status, self.axiom, self.generator)
        if self.mismatch:
            s += " witness=%s" % self.mismatch
        return s


def _first_mismatch(a: list, b: list):
    da = {t.key(): t.coefficient for t in a}
    db = {t.key(): t.coefficient for t in b}
    for k in sorted(set(da) | set(db), key=str):
        if da.get(k, 0) != db.get(k, 0):
            return {"term": str(TensorTerm(k)), "lhs": da.get(k, 0), "rhs": db.get(k, 0)}
    return None


def coassoc_terms(g: GenSymbol, literal: bool = False):
    """((Delta (x) id) Delta g, (id (x) Delta) Delta g) as canonical arity-3 sums."""
    d = coproduct(g, literal)
    left = canonical(t for x in d for t in apply_delta(x, 0, literal))
    right = canonical(t for x in d for t in apply_delta(x, 1, literal))
    return left, right


def coassoc_check(g: GenSymbol, literal: bool = False) -> HopfReport:
    left, right = coassoc_terms(g, literal)
    rep = HopfReport("COASSOC" + ("_LITERAL" if literal else ""), str(g), params={"terms": len(left)})
    bad = _first_mismatch(left, right)
    if bad:
        rep.status = FAIL
        rep.mismatch = bad
    return rep


def counit_check(g: GenSymbol, literal: bool = False) -> HopfReport:
    """(eps (x) id) Delta g == g == (id (x) eps) Delta g."""
    g1 = g.with_arg(g.e0, (0,)) if g.kind not in _NO_ARG else g.with_arg(0, (0,))
    target = canonical([TensorTerm(((g1,),))])
    rep = HopfReport("COUNIT" + ("_LITERAL" if literal else ""), str(g))
    d = coproduct(g, literal)
    for k in (0, 1):
        got = canonical(t for t in (apply_counit(x, k) for x in d) if t is not None)
        bad = _first_mismatch(got, target)
        if bad:
            rep.status = FAIL
            rep.mismatch = dict(bad, slot=k + 1)
            break
    return rep


def antipode_table(g: GenSymbol) -> list:
    """S(g) as data: list of TensorTerms of arity 1 (products kept in the printed order)."""
    i = g.color
    if g.kind == CENTRAL:
        return [TensorTerm(((GenSymbol(CENTRAL, 0, 0, (0,)),),), -1)]
    if g.kind == PHI or g.kind == PSI:
        return [TensorTerm(((GenSymbol(g.kind, i, 0, (0,), True),),))]
    if g.kind == XPLUS:
        # -phi(q^{-c/2} z) x+(q^{-c} z)
        return [TensorTerm(((GenSymbol(PHI, i, 0, (-1,)), GenSymbol(XPLUS, i, 0, (-2,))),), -1)]
    if g.kind == XMINUS:
        # -x-(q^{-c} z) psi(q^{-c/2} z)^{-1}
        return [TensorTerm(((GenSymbol(XMINUS, i, 0, (-2,)), GenSymbol(PSI, i, 0, (-1,), True)),), -1)]
    if g.kind == ONE:
        return [TensorTerm(((),))]
    raise ValueError(g.kind)


def run_hopf(rank: int, literal: bool = False) -> list:
    """coassoc_check and counit_check for every generator kind and color."""
    out = []
    gens = [generator(CENTRAL)] + [generator(k, i) for i in range(rank) for k in (XPLUS, XMINUS, PHI, PSI)]
    for g in gens:
        out.append(coassoc_check(g, literal))
        out.append(counit_check(g, literal))
    return out
