import pytest
from hypothesis import given, settings, strategies as st

from covlie import covariant as cov, matrices as mat, trig
from covlie.checks import (check_antisymmetry, check_automorphism_order, check_form, check_jacobi,
                           check_kernel, check_linear_map, unordered_triples)
from covlie.core import (A, CENTRAL, Element, Echelon, LinearMap, NotInvolutiveError, WindowOverflowError,
                         fixed_point_span, identity_map, kernel_on_window, label_str, row_reduce,
                         span_equal)
from covlie.fields import CyclotomicField, zeta_power
from covlie.groups import CyclicGroup
from covlie.report import REPORT_SCHEMA, Report


class SignFlipped(trig.ASAlgebra):
    """A_hat with one bracket sign deliberately wrong."""

    def _bracket(self, x, y):
        out = super()._bracket(x, y)
        return -out if (x, y) == (A(1, 1), A(2, 0)) else out


@pytest.fixture(scope="module")
def a5():
    return trig.build_AS(CyclicGroup(5))


def test_element_arithmetic():
    x = Element.basis(A(1, 0), 2)
    assert x - x == Element()
    assert not (x - x)
    assert (x + x).scale(0) == Element()
    assert x.scale(3) == Element.basis(A(1, 0), 6)
    assert label_str(A(1, -2)) == "A(1,-2)"


def test_bracket_examples(a5):
    z = lambda k: zeta_power(5, k)
    assert a5.bracket_basis(A(1, 1), A(2, 0)) == Element.basis(A(3, 1), z(2) - z(3))
    assert a5.bracket_basis(A(0, 1), A(0, -1)) == Element.basis(CENTRAL, 1)
    assert a5.bracket(Element(), a5.element(A(1, 1))) == Element()
    assert a5.bracket_basis(A(2, 0), A(3, 0)) == Element()
    assert a5.bracket_basis(A(0, 2), A(0, -2)) == Element.basis(CENTRAL, 2)


def test_bracket_numeric_oracle(a5):
    from oracles import close, to_complex, zeta
    for a in range(5):
        for b in range(5):
            for m in (-1, 0, 2):
                for n in (-2, 1):
                    got = a5.bracket_basis(A(a, m), A(b, n)).terms.get(A((a + b) % 5, m + n), 0)
                    want = zeta(5, m * b - n * a) - zeta(5, n * a - m * b)
                    assert close(to_complex(got), want)


def test_antisymmetry_and_jacobi_pass(a5):
    w = a5.window(2)
    assert check_antisymmetry(a5, w).passed
    w1 = a5.window(1)
    assert check_jacobi(a5, unordered_triples(w1)).passed
    assert check_jacobi(a5, [(CENTRAL, A(1, 1), A(4, -1))]).passed


def test_corrupted_oracle_fails_with_witness():
    bad = SignFlipped(CyclicGroup(5))
    rec = check_antisymmetry(bad, bad.window(1))
    assert not rec.passed
    assert rec.witness["failures"] >= 1
    assert "a" in rec.witness and "sum" in rec.witness


def test_row_reduce_examples(a5):
    x = a5.element(A(1, 0))
    assert row_reduce([x, x.scale(2)])[1] == 1
    y = a5.element(A(4, 0))
    assert row_reduce([x, y, x + y])[1] == 2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=6))
def test_row_reduce_idempotent_and_span(rows):
    elems = [Element({A(i, 0): c for i, c in enumerate(r) if c}) for r in rows]
    basis, rank = row_reduce(elems)
    again, rank2 = row_reduce(basis)
    assert again == basis and rank2 == rank
    assert span_equal(basis, elems)
    e = Echelon()
    for x in elems:
        e.add(x)
    assert all(e.contains(x) for x in elems)


def test_kernel_examples(a5):
    w = a5.window(1)
    ker, rank = kernel_on_window(identity_map(a5), w)
    assert ker == [] and rank == len(w)
    zero = LinearMap(lambda b: Element(), a5, a5, "zero")
    ker, rank = kernel_on_window(zero, w)
    assert len(ker) == len(w) and rank == 0


def test_kernel_window_overflow(a5):
    shift = LinearMap(lambda b: Element.basis(A(b[1], b[2] + 1)) if b[0] == "A" else Element(), a5, a5)
    with pytest.raises(WindowOverflowError):
        kernel_on_window(shift, a5.window(1, central=False), a5.window(1, central=False))


def test_fixed_point_span(a5):
    w = a5.window(1, central=False)
    assert len(fixed_point_span(identity_map(a5), w)) == len(w)
    neg = LinearMap(lambda b: Element.basis(b, -1), a5, a5, "neg")
    assert fixed_point_span(neg, w) == []
    shift = LinearMap(lambda b: Element.basis(A(b[1] + 1, b[2])), a5, a5, "shift")
    with pytest.raises(NotInvolutiveError):
        fixed_point_span(shift, w)


def test_forms():
    ls = cov.build_LS(CyclicGroup(3))
    recs = check_form(ls, ls.window(), expected_rank=9)
    assert all(r.passed for r in recs)
    gl = mat.GlAlgebra(3, CyclotomicField(3), tag="E")
    recs = check_form(gl, gl.window(), expected_rank=9)
    assert all(r.passed for r in recs)
    assert check_antisymmetry(ls, ls.window()).passed


def test_automorphism_orders(a5):
    assert check_automorphism_order(trig.tau_X("B", a5), 2, a5.window(2)).passed
    assert not check_automorphism_order(trig.tau_X("B", a5), 3, a5.window(2)).passed
    ls = cov.build_LS(CyclicGroup(5))
    assert check_automorphism_order(cov.sigma_gamma(ls, 1), 5, ls.window()).passed


def test_identity_is_homomorphism(a5):
    pairs = [(x, y) for x in a5.window(1) for y in a5.window(1)]
    assert check_linear_map(identity_map(a5), pairs).passed


def test_check_kernel_rank_nullity(a5):
    # projection killing A(0, m): kernel is spanned by those labels
    proj = LinearMap(lambda b: Element() if b[0] == "A" and b[1] == 0 else Element.basis(b), a5, a5)
    w = a5.window(1)
    rec, ker, rank = check_kernel(proj, w, [Element.basis(A(0, m)) for m in (-1, 0, 1)], "proj")
    assert rec.passed and len(ker) == 3 and rank == len(w) - 3


def test_report_schema(a5):
    jsonschema = pytest.importorskip("jsonschema")
    rep = Report("demo", [check_antisymmetry(SignFlipped(CyclicGroup(5)), a5.window(1))])
    jsonschema.validate(rep.to_dict(), REPORT_SCHEMA)
    assert rep.to_json() == rep.to_json()
