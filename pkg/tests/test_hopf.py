import pytest

from qtwist.hopf import (CENTRAL, GEN_KINDS, ONE, PHI, PSI, XMINUS, XPLUS, GenSymbol, TensorTerm, antipode_table,
                         apply_counit, apply_delta, canonical, coassoc_check, coassoc_terms, coproduct, counit_check,
                         generator, run_hopf)


def strs(terms):
    return sorted(str(t) for t in terms)


def test_coproduct_displays():
    assert strs(coproduct(generator(XPLUS))) == ["phi_1(q^{c1/2}z) (x) xplus_1(q^{c1}z)", "xplus_1(z) (x) 1"]
    assert strs(coproduct(generator(XMINUS))) == ["1 (x) xminus_1(z)", "xminus_1(q^{c2}z) (x) psi_1(q^{c2/2}z)"]
    assert strs(coproduct(generator(PHI))) == ["phi_1(q^{-c2/2}z) (x) phi_1(q^{c1/2}z)"]
    assert strs(coproduct(generator(PSI))) == ["psi_1(q^{c2/2}z) (x) psi_1(q^{-c1/2}z)"]
    assert strs(coproduct(generator(CENTRAL))) == ["1 (x) c", "c (x) 1"]


def test_coassoc_phi_expansion():
    left, right = coassoc_terms(generator(PHI))
    assert left == right
    assert strs(left) == ["phi_1(q^{-c2/2-c3/2}z) (x) phi_1(q^{c1/2-c3/2}z) (x) phi_1(q^{c1/2+c2/2}z)"]


@pytest.mark.parametrize("kind", GEN_KINDS)
@pytest.mark.parametrize("color", [0, 1])
def test_axioms(kind, color):
    g = generator(kind, color)
    assert coassoc_check(g).passed
    assert counit_check(g).passed


def test_run_hopf_ranks():
    for rank in (1, 2):
        reps = run_hopf(rank)
        assert len(reps) == 2 * (1 + 4 * rank)
        assert all(r.passed for r in reps)


def test_literal_xminus_fails_with_witness():
    rep = coassoc_check(generator(XMINUS), literal=True)
    assert not rep.passed
    assert rep.mismatch["lhs"] != rep.mismatch["rhs"]
    assert "phi" in rep.mismatch["term"]
    assert [r.generator for r in run_hopf(1, literal=True) if not r.passed] == ["xminus_1(z)"]


def test_antipode_displays():
    got = {k: " + ".join(str(t) for t in antipode_table(generator(k))) for k in GEN_KINDS}
    assert got[XPLUS] == "-phi_1(q^{-c/2}z) xplus_1(q^{-c}z)"
    assert got[XMINUS] == "-xminus_1(q^{-c}z) psi_1(q^{-c/2}z)^{-1}"
    assert got[PHI] == "phi_1(z)^{-1}"
    assert got[PSI] == "psi_1(z)^{-1}"
    assert got[CENTRAL] == "-c"
    assert str(antipode_table(generator(ONE))[0]) == "1"


def test_counit_kills_generators():
    t = coproduct(generator(XPLUS))
    got = canonical(x for x in (apply_counit(s, 0) for s in t) if x is not None)
    assert strs(got) == ["xplus_1(z)"]
    # eps(c) = 0 so the c (x) 1 term drops
    got = [apply_counit(s, 0) for s in coproduct(generator(CENTRAL))]
    assert strs(x for x in got if x is not None) == ["c"]


def test_canonical_merges_and_cancels():
    g = generator(PHI)
    a = TensorTerm(((g,), ()), 2)
    b = TensorTerm(((g,), ()), -2)
    assert canonical([a, b]) == []
    assert canonical(canonical([a, a])) == canonical([a, a]) == [TensorTerm(((g,), ()), 4)]


def test_apply_delta_shapes():
    t = coproduct(generator(XPLUS))
    for k in (0, 1):
        for s in (x for u in t for x in apply_delta(u, k)):
            assert s.arity == 3


def test_symbol_strings():
    assert str(GenSymbol(PHI, 2, 0, (-1,), True)) == "phi_3(q^{-c/2}z)^{-1}"
    with pytest.raises(ValueError):
        generator("nope")
