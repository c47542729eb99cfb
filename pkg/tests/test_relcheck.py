from fractions import Fraction

import pytest

from qtwist.fock import FockConfig
from qtwist.lattice import Cocycle, Lattice
from qtwist.qseries import SYMBOLIC, g_series, twisted_qpow
from qtwist.relcheck import (CheckWindow, GFCache, SuiteOverflow, bracket_from_exchange, check_commute,
                             check_conjugation, check_exchange, check_heisenberg_from_exchange, check_km_adj,
                             check_km_offdiag, check_km_remark, check_normal_product, check_phi_psi_exchange,
                             check_exchange_heisenberg, check_ope, check_phi_phi, check_phi_psi_modes,
                             check_phi_psi_support, check_scalar_commutator, check_series_routes, check_xpxm_adj,
                             check_xpxm_diag, check_xx_diag, exchange_series, expected_bracket, ope_series,
                             run_suite, suite_checks)
from qtwist.report import CapOverflow
from qtwist.scalars import LaurentPoly, RatFun, RationalDomain, random_points
from qtwist.series import TruncSeries
from qtwist.vertex import PHI, PSI, Realization

W = CheckWindow(2, 2)


def real(name, **kw):
    dom = kw.pop("domain", SYMBOLIC)
    vc = kw.pop("vertex_coeff", "standard")
    lat = Lattice.builtin(name)
    return Realization(FockConfig(lat, **kw), dom, vc)


@pytest.fixture(scope="module")
def a1():
    r = real("A1")
    return r, GFCache(r)


@pytest.fixture(scope="module")
def a2():
    r = real("A2")
    return r, GFCache(r)


def ok(rep):
    assert rep.passed, rep.line()
    return rep


def bad(rep):
    assert not rep.passed, rep.line()
    assert rep.witness and "lhs" in rep.witness and rep.witness["lhs"] != rep.witness["rhs"]
    return rep


def test_window_validation():
    assert CheckWindow(3, 2).D == 7
    with pytest.raises(ValueError):
        CheckWindow(3, 2, 6)
    with pytest.raises(ValueError):
        CheckWindow(-1, 2)
    assert len(CheckWindow(0, 1).points()) == 9


@pytest.mark.parametrize("signs", ["++", "+-", "-+", "--"])
def test_ope_a1(a1, signs):
    r, c = a1
    rep = ok(check_ope(r, 0, 0, signs, W, cache=c))
    assert rep.counts["nonzero"] > 0


@pytest.mark.parametrize("i,j", [(0, 1), (1, 0), (1, 1)])
def test_ope_a2(a2, i, j):
    r, c = a2
    for signs in ("++", "+-", "-+", "--"):
        ok(check_ope(r, i, j, signs, W, cache=c))


def test_ope_series_cases():
    # mixed sign, a = 2: (1+qx)(1+q^-1x)/((1-qx)(1-q^-1x)); first coefficient 2(q + q^-1)
    f = ope_series(2, 1, -1, 3)
    assert f[1] == RatFun(LaurentPoly({2: 2, -2: 2}))
    # same sign is the twisted power at q^{-+1} x
    assert ope_series(-1, 1, 1, 5) == twisted_qpow(-1, 5).compose_scale(RatFun(LaurentPoly.monomial(-2)))


def test_ope_literal_same_sign_diagonal_fails(a1):
    r, c = a1
    bad(check_ope(r, 0, 0, "++", W, literal=True, cache=c))
    ok(check_ope(r, 0, 0, "+-", W, literal=True, cache=c))


def test_ope_literal_offdiagonal_passes(a2):
    r, c = a2
    ok(check_ope(r, 0, 1, "++", W, literal=True, cache=c))
    ok(check_ope(r, 0, 1, "+-", W, literal=True, cache=c))


def test_normal_product(a1):
    r, c = a1
    ok(check_normal_product(r, 0, W, PHI, c))
    ok(check_normal_product(r, 0, W, PSI, c))
    bad(check_normal_product(r, 0, W, PHI, c, displayed=True))


def test_phi_psi(a2):
    r, c = a2
    for i in range(2):
        ok(check_phi_psi_support(r, i, W, c))
        ok(check_phi_psi_modes(r, i, W))


def test_phi_psi_exchange_routes(a2):
    r, c = a2
    for i in range(2):
        for j in range(2):
            ok(check_phi_psi_exchange(r, i, j, W, c))
            ok(check_exchange_heisenberg(r.cfg, i, j, W))


def test_exchange_series_is_g_ratio():
    # G(x/q)/G(qx) times G(qx) is G(x/q)
    dom = SYMBOLIC
    h = exchange_series(2, 6)
    g = g_series(2, 6).coefficients
    assert (h * g.compose_scale(dom.vpow(2))).truncate(6) == g.compose_scale(dom.vpow(-2))


@pytest.mark.parametrize("a", [2, -1, -2, -3, 0])
def test_brackets_from_exchange(a):
    got = bracket_from_exchange(a, 7)
    for n in range(1, 8):
        want = RatFun(expected_bracket(a, n)) if n % 2 else RatFun(0)
        assert got[n] == want


def test_heisenberg_from_exchange():
    ok(check_heisenberg_from_exchange(real("A2").cfg))
    bad(check_heisenberg_from_exchange(FockConfig(Lattice.builtin("A1"), heis_factor=Fraction(1))))


def test_main_relations_a1(a1):
    r, c = a1
    for kind in (PHI, PSI):
        ok(check_phi_phi(r, 0, 0, W, kind, c))
        for s in (1, -1):
            ok(check_conjugation(r, 0, 0, s, kind, W, cache=c))
    ok(check_xpxm_diag(r, 0, W, cache=c))
    for s in (1, -1):
        ok(check_xx_diag(r, 0, s, W, cache=c))
        ok(check_xx_diag(r, 0, s, W, swap_roles=True, cache=c))
    ok(check_scalar_commutator(r))


def test_main_relations_a2_offdiagonal(a2):
    r, c = a2
    for i, j in ((0, 1), (1, 0)):
        rep = ok(check_xpxm_adj(r, i, j, W, cache=c))
        assert rep.counts["nonzero"] > 0
        for s in (1, -1):
            rep = ok(check_exchange(r, i, j, s, W, cache=c))
            assert rep.counts["nonzero"] > 0
            for kind in (PHI, PSI):
                ok(check_conjugation(r, i, j, s, kind, W, cache=c))


def test_literal_readings_fail(a1, a2):
    r, c = a1
    bad(check_conjugation(r, 0, 0, 1, PSI, W, literal=True, cache=c))
    bad(check_xpxm_diag(r, 0, W, literal=True, cache=c))
    bad(check_xx_diag(r, 0, 1, W, literal=True, cache=c))
    r2, c2 = a2
    bad(check_xpxm_adj(r2, 0, 1, W, literal=True, cache=c2))


def test_ortho_rank3():
    r = real("A3")
    for s, t in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        rep = ok(check_commute(r, 0, 2, s, t, CheckWindow(1, 2)))
        assert rep.counts["nonzero"] > 0
    # adjacent roots do not commute
    assert not check_commute(r, 0, 1, 1, 1, CheckWindow(1, 2)).passed


@pytest.mark.parametrize("name", ["KM2_a2", "KM2_a3"])
def test_km_relations(name):
    r = real(name)
    c = GFCache(r)
    ok(check_km_adj(r, 0, 1, W, c))
    for s in (1, -1):
        ok(check_km_offdiag(r, 0, 1, s, W, c))
        rep = ok(check_km_remark(r, 1, 0, s, W, cache=c))
        assert rep.counts["nonzero"] > 0
    bad(check_km_remark(r, 0, 1, 1, W, literal=True, cache=c))
    # without the regularizing prefactor the exchange relation fails
    assert not check_exchange(r, 0, 1, 1, W, cache=c).passed


def test_km_delta_form_at_r1(a2):
    r, c = a2
    ok(check_km_remark(r, 0, 1, 1, W, cache=c))
    bad(check_km_remark(r, 0, 1, 1, W, literal=True, cache=c))
    with pytest.raises(ValueError):
        check_km_remark(real("A3"), 0, 2, 1, W)


def test_series_routes():
    ok(check_series_routes(16, 4))


def test_symbolic_and_rational_agree():
    for v0 in random_points(3):
        r = real("A2", domain=RationalDomain(v0))
        for suite in ("ope", "thm24"):
            for rep in run_suite(r, suite, CheckWindow(1, 2)):
                ok(rep)


@pytest.mark.parametrize("mut, suite", [
    ({"vertex_coeff": "unit"}, "ope"),
    ({"heis_factor": Fraction(1)}, "heisenberg"),
    ({"heis_factor": Fraction(1)}, "ope"),
])
def test_mutations_fail(mut, suite):
    reps = run_suite(real("A2", **mut), suite, CheckWindow(1, 2))
    assert any(not r.passed for r in reps)
    bad(next(r for r in reps if not r.passed))


def test_cocycle_mutation_fails():
    lat = Lattice.builtin("A2")
    r = Realization(FockConfig(lat, Cocycle(lat, trivial=True)))
    bad(check_exchange(r, 0, 1, 1, W))
    bad(check_xpxm_adj(r, 0, 1, W))


def test_suite_catalogue():
    r = real("A2")
    names = {n for n, _ in suite_checks(r, "thm24", W)}
    assert {"XX_OFFDIAG", "XPXM_ADJ", "XPXM_DIAG", "XX_DIAG", "PHI_PHI", "CONJ", "PHI_PSI_EXCHANGE"} <= names
    assert "ORTHO" not in names
    assert "ORTHO" in {n for n, _ in suite_checks(real("A3"), "thm24", W)}
    with pytest.raises(ValueError):
        suite_checks(r, "nope", W)


def test_overflow_names_check(monkeypatch):
    import qtwist.relcheck as rc

    def boom(*a, **k):
        raise CapOverflow("coefficient outside window")
    monkeypatch.setattr(rc, "check_heisenberg", boom)
    with pytest.raises(SuiteOverflow) as e:
        run_suite(real("A1"), "heisenberg", W)
    assert e.value.check == "HEISENBERG"


def test_series_offsets_overflow():
    from qtwist.relcheck import series_offsets
    r = real("A1")
    c = GFCache(r)
    from qtwist.relcheck import OperatorWord, _sym
    view = c.get(OperatorWord((_sym("Xplus", 0), _sym("Xplus", 0)), True), next(iter(
        __import__("qtwist.relcheck", fromlist=["source_states"]).source_states(r, W))), (6, 2), 4)
    short = TruncSeries([RatFun(1)], 0, 0)
    with pytest.raises(CapOverflow):
        series_offsets(view, (0, 2), short, "w/z")
