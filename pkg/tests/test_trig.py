import pytest

from covlie import trig
from covlie.checks import check_antisymmetry, check_jacobi, unordered_triples
from covlie.core import A, CENTRAL, Element, gen, power_map, qvir, row_reduce
from covlie.fields import QQ_q
from covlie.groups import CyclicGroup, FreeZ


def _a(n):
    return trig.build_AS(CyclicGroup(n))


def test_tau_examples():
    a = _a(5)
    assert trig.tau_X("B", a).on_basis(A(1, 2)) == Element.basis(A(4, 2), -1)
    for m in (-2, 0, 1):
        assert trig.tau_X("D", a).on_basis(A(0, m)) == Element.basis(A(0, m), -1)
    sig, _ = trig.sigma_tau_auts(a)
    assert sig.on_basis(A(0, 3)) == Element.basis(A(0, 3))
    for kind in "BCD":
        assert trig.tau_X(kind, a).on_basis(CENTRAL) == Element.basis(CENTRAL)


@pytest.mark.parametrize("n", [5, 6])
def test_conjugation_identities(n):
    a = _a(n)
    sig, tau = trig.sigma_tau_auts(a)
    sig_inv = trig.sigma(a, -1)
    w = a.window(2)
    tB, tC, tD = (trig.tau_X(k, a) for k in "BCD")
    conjB = sig_inv.then(tC).then(sig)
    conjD = sig.then(tau).then(sig_inv)
    for b in w:
        x = Element.basis(b)
        assert conjB(x) == tB(x)
        assert conjD(x) == tD(x)
        assert power_map(tC, 2)(x) == x


def test_sigma_order_matches_character():
    a = _a(6)
    s6 = power_map(trig.sigma(a), 6)
    s3 = power_map(trig.sigma(a), 3)
    x = Element.basis(A(1, 0))
    assert s6(x) == x and s3(x) != x


def test_B_zero_generators():
    B = trig.build_XS("B", _a(5))
    assert B.element(gen("B", 0, 2)) == Element()
    assert B.element(gen("B", 0, 1)) != Element()


def test_D_vanishes_on_Z2():
    D = trig.build_XS("D", _a(2))
    for al in (0, 1):
        for m in range(-2, 3):
            assert D.element(gen("D", al, m)) == Element()
    assert D.canonical_labels(2) == []


def test_B_bracket_matches_closed_form():
    B = trig.build_XS("B", _a(5))
    lhs = B.bracket(B.element(gen("B", 1, 1)), B.element(gen("B", 1, -1)))
    assert lhs == trig.relation_closed_form(B, 1, 1, 1, -1)
    # via A_hat: [A(1,1), A(4,-1)] + [A(4,1), A(1,-1)] = c + c
    assert lhs.terms.get(CENTRAL) == 2


def test_canonical_generators_independent():
    for n in (4, 5, 6):
        a = _a(n)
        for kind in "BCD":
            X = trig.build_XS(kind, a)
            labels = X.canonical_labels(2)
            assert row_reduce([X.embed_label(b) for b in labels])[1] == len(labels)


@pytest.mark.parametrize("n", [3, 4])
def test_jacobi_small(n):
    a = _a(n)
    for g in (a, trig.build_XS("B", a), trig.build_XS("D", a)):
        w = g.window(1)
        assert check_antisymmetry(g, w).passed
        assert check_jacobi(g, unordered_triples(w)).passed


def test_qvir_examples():
    D = trig.build_XS("D", trig.build_AS(FreeZ()))
    Q = trig.build_qvir()
    f = trig.d_to_qvir_map(D, Q)
    assert D.element(gen("D", 0, 1)) == Element()
    assert Q.element(qvir(0, 1)) == Element()
    x, y = D.element(gen("D", 1, 1)), D.element(gen("D", 1, -1))
    assert f(D.bracket(x, y)) == Q.bracket(f(x), f(y))
    assert f(Element.basis(CENTRAL)).terms == {("QK",): QQ_q(1) / 2}


def test_qvir_jacobi_sample():
    Q = trig.build_qvir()
    w = Q.window(1, 2)
    assert check_jacobi(Q, unordered_triples(w[:6])).passed


def test_record_functions_pass():
    S = CyclicGroup(4)
    for recs in (trig.automorphism_records(S), trig.relation_records(S)):
        assert recs and all(r.passed for r in recs)


def test_free_group_supported():
    recs = trig.automorphism_records(FreeZ(), 1, alpha_max=1)
    assert all(r.passed for r in recs)
