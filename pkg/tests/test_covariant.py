from fractions import Fraction

import pytest

from covlie import covariant as cov, trig
from covlie.checks import check_antisymmetry, check_associativity, check_jacobi, unordered_triples
from covlie.core import A, CENTRAL, K, Element, L, Lt, WindowOverflowError, gen, loop
from covlie.fields import zeta_power
from covlie.groups import CyclicGroup, FreeZ


@pytest.fixture(scope="module")
def ls5():
    return cov.build_LS(CyclicGroup(5))


def test_ls_product_and_form(ls5):
    assert ls5.product_basis(L(0, 0), L(0, 0)) == Element.basis(L(0, 0))
    assert ls5.product_basis(L(1, 3), L(1, 1)) == Element.basis(L(2, 2))
    assert ls5.form(Element.basis(L(1, 2)), Element.basis(L(4, 2))) == 1
    assert ls5.form(Element.basis(L(1, 2)), Element.basis(L(4, 3))) == 0


def test_ls_associative():
    ls = cov.build_LS(CyclicGroup(4))
    assert check_associativity(ls, ls.window()).passed


def test_canonical_reduction(ls5):
    Q = cov.build_covariant(ls5)
    s, lab = Q.canonical(loop(L(2, 3), 1))
    assert lab == loop(L(2, 0), 1) and s == zeta_power(5, -3)


def test_closed_and_orbit_canonicalizers_agree():
    for n in (3, 4, 6):
        ls = cov.build_LS(CyclicGroup(n))
        for extra in (None, "tau", "tau_chi"):
            closed = cov.build_covariant(ls, extra)
            orbit = cov.build_covariant(ls, extra, mode="orbit")
            for a in ls.window():
                for m in (-1, 0, 2):
                    assert closed.canonical(loop(a, m)) == orbit.canonical(loop(a, m))


def test_covariant_bracket_closed_form(ls5):
    Q = cov.build_covariant(ls5)
    chi = ls5.chi
    for al in range(5):
        for be in range(5):
            for m in (-1, 0, 1):
                for n in (-1, 0, 1):
                    got = Q.bracket(Q.element(loop(L(al, 0), m)), Q.element(loop(L(be, 0), n)))
                    want = Q.element(loop(L(al + be, 0), m + n), chi(m * be - n * al) - chi(n * al - m * be))
                    if (al + be) % 5 == 0 and m + n == 0 and m:
                        want = want + Element.basis(K, m)
                    assert got == want
    assert Q.bracket(Element.basis(K), Q.element(loop(L(1, 0), 1))) == Element()


def test_covariant_is_lie():
    ls = cov.build_LS(CyclicGroup(3))
    Q = cov.build_covariant(ls, "tau")
    w = Q.canonical_window(cov.AffineOracle(ls).window(ls.window(), 1))
    assert check_antisymmetry(Q, w).passed
    assert check_jacobi(Q, unordered_triples(w[:8])).passed


def test_psi_A_pair(ls5):
    a = trig.build_AS(CyclicGroup(5))
    Q = cov.build_covariant(ls5)
    f = cov.psi_A_map(a, Q)
    x, y = a.element(A(1, 1)), a.element(A(2, 0))
    lhs = f(a.bracket(x, y))
    assert lhs == Q.bracket(f(x), f(y))
    assert lhs == Q.element(loop(L(3, 0), 1), zeta_power(5, 2) - zeta_power(5, 3))
    assert f(Element.basis(CENTRAL)) == Element.basis(K)


def test_theta_kills_B02(ls5):
    a = trig.build_AS(CyclicGroup(5))
    B = trig.build_XS("B", a)
    Q = cov.build_covariant(ls5, "tau")
    f = cov.theta_B_map(B, Q)
    assert B.element(gen("B", 0, 2)) == Element()
    assert f(Element.basis(gen("B", 0, 2))) == Element()
    assert f(Element.basis(CENTRAL)) == Element.basis(K, Fraction(1, 2))


def test_psi_D_two_torsion_vanishes():
    S = CyclicGroup(6)
    D = trig.build_XS("D", trig.build_AS(S))
    tau = cov.LSTauAlgebra(cov.build_LS(S))
    assert D.element(gen("D", 3, 1)) == Element()
    assert tau.element(Lt(3, 0)) == Element()


@pytest.mark.parametrize("n", [3, 4])
def test_witness_records_small(n):
    S = CyclicGroup(n)
    for fn in (cov.psi_A_records, cov.theta_records, cov.psi_D_records):
        recs = fn(S, 1, audit=True)
        assert recs and all(r.passed for r in recs), [r.name for r in recs if not r.passed]


def test_averaging_expansion():
    ls = cov.build_LS(CyclicGroup(3))
    P = cov.averaging_map(cov.build_covariant(ls))
    chi = ls.chi
    want = Element({loop(L(1, g), 1): chi(g) for g in range(3)})
    assert P.on_basis(loop(L(1, 0), 1)) == want
    assert P.on_basis(K) == Element.basis(K, 3)


def test_averaging_rejects_infinite_group():
    with pytest.raises(cov.UnsupportedInputError):
        cov.averaging_map(cov.build_covariant(cov.build_LS(FreeZ())))


def test_invariant_and_factorization_records():
    S = CyclicGroup(3)
    recs = cov.invariant_records(S, 1) + cov.invariant_records(S, 1, "tau") + cov.factorization_records(S, 1)
    assert all(r.passed for r in recs), [r.name for r in recs if not r.passed]


def test_rep_criterion_negative_control():
    recs = {r.name: r for r in cov.rep_records(2, 1)}
    assert recs["evaluation.commutators"].passed
    assert recs["zero-table.relations"].passed
    assert recs["corrupted-table-detected"].passed


def test_rep_table_overflow():
    rho = cov.evaluation_table(2, 1)
    with pytest.raises(WindowOverflowError):
        rho(L(0, 0), 2)
