import numpy as np
import pytest

from covlie import covariant as cov, matrices as mat
from covlie.core import E, Element, L, fixed_point_span
from covlie.groups import CyclicGroup
from oracles import matrix_to_numpy, numeric_rank


def _recs_pass(recs):
    bad = [r.name for r in recs if not r.passed]
    assert recs and not bad, bad


def test_pi_examples():
    ls = cov.build_LS(CyclicGroup(5))
    gl = mat.GlAlgebra(5, ls.field, "E")
    pi = mat.pi_map(ls, gl)
    assert pi.on_basis(L(1, 2)) == Element.basis(E(3, 1))
    prod = ls.product(Element.basis(L(1, 3)), Element.basis(L(1, 1)))
    assert pi(prod) == gl.product(pi.on_basis(L(1, 3)), pi.on_basis(L(1, 1))) == Element.basis(E(4, 0))


def test_pi_kernel_on_Z6():
    ls = cov.build_LS(CyclicGroup(6))
    pi = mat.pi_map(ls, mat.GlAlgebra(6, ls.field, "E"))
    assert pi(Element.basis(L(1, 2)) - Element.basis(L(4, 5))) == Element()


@pytest.mark.parametrize("n", [3, 4])
def test_pi_records(n):
    _recs_pass(mat.pi_records(CyclicGroup(n)))


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_pq_relations(l):
    tb = mat.TrigBasis(l)
    I = mat.Matrix.identity(l, tb.field)
    assert tb.P ** l == I and tb.Q ** l == I
    assert tb.P @ tb.Q == (tb.Q @ tb.P).scale(tb.chi(2))
    assert tb.a(0, 0) == I


def test_pq_l2_sign():
    tb = mat.TrigBasis(2)
    assert tb.chi(2) == -1
    assert tb.P @ tb.Q == -(tb.Q @ tb.P)


def test_a_periodicity_and_small_values():
    tb = mat.TrigBasis(3)
    assert tb.a(1, 4) == -tb.a(1, 1)
    assert tb.d(0, 2) == mat.Matrix.zero(3, tb.field)
    tb4 = mat.TrigBasis(4)
    assert tb4.c(0, 2) == mat.Matrix.zero(4, tb4.field)


def test_a_commutator_example():
    tb = mat.TrigBasis(2)
    lhs = tb.a(1, 1).commutator(tb.a(0, 1))
    assert lhs == tb.a(1, 2).scale(tb.chi(-1) - tb.chi(1))
    assert tb.a(0, 1).commutator(tb.a(0, 2)) == mat.Matrix.zero(2, tb.field)


@pytest.mark.parametrize("l,kind,expected", [(4, "c", 10), (4, "d", 6), (5, "d", 10), (2, "c", 3), (3, "d", 3)])
def test_ranks_against_numeric_oracle(l, kind, expected):
    tb = mat.TrigBasis(l)
    mats = [getattr(tb, kind)(r, m) for r, m in tb.index_range()]
    assert tb.span_rank(mats) == expected
    assert numeric_rank(mats) == expected


@pytest.mark.parametrize("l", [2, 3, 4])
def test_a_basis_full_rank(l):
    tb = mat.TrigBasis(l)
    mats = [tb.a(r, m) for r in range(l) for m in range(l)]
    assert tb.span_rank(mats) == l * l == numeric_rank(mats)


def test_tau_d_fixed_space_dimension():
    tb = mat.TrigBasis(4)
    f = mat.matrix_map(tb.gl, tb.tau_d, "tau_d")
    assert len(fixed_point_span(f, tb.gl.window())) == 6


def test_tau_c_rejects_odd_l():
    tb = mat.TrigBasis(3)
    with pytest.raises(cov.UnsupportedInputError):
        tb.tau_c(tb.P)


def test_theta_anti_numeric():
    tb = mat.TrigBasis(3)
    X, Y = tb.a(1, 2) + tb.a(2, 0), tb.a(1, 1)
    lhs = matrix_to_numpy(tb.theta(X @ Y))
    rhs = matrix_to_numpy(tb.theta(Y) @ tb.theta(X))
    assert np.allclose(lhs, rhs)


def test_tau_cd_records_l4():
    recs = mat.tau_cd_records(4)
    _recs_pass(recs)
    ranks = {r.name: r.params["rank"] for r in recs if "rank" in r.params}
    assert ranks == {"rank{c_rm}": 10, "rank{d_rm}": 6}


def test_theta_A_kernel_dimension():
    recs = {r.name: r for r in mat.theta_epi_records("A", 3, 2)}
    k = recs["theta_A.kernel"]
    assert k.passed and k.params["kernel_dim"] == 16
    assert k.params["kernel_dim"] + k.params["image_rank"] == k.params["window"]


def test_theta_D_trivial_domain():
    recs = mat.theta_epi_records("D", 1, 1)
    assert [r.name for r in recs] == ["theta_D.domain-zero"] and recs[0].passed


def test_theta_C_even_l():
    _recs_pass(mat.theta_epi_records("C", 2, 1))


def test_odd_identifications_small():
    _recs_pass(mat.odd_ident_records(3, 1))
    dims = {r.params["N"]: r.params["dim"] for r in mat.dim_tau_records()}
    assert dims == {3: 3, 5: 10, 7: 21}


def test_degenerate_form_control():
    (rec,) = mat.degenerate_form_records(4)
    assert rec.passed and rec.params["rank"] < rec.params["size"]
