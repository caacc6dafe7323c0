"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

from fractions import Fraction

from covlie import covariant as cov, matrices as mat, trig
from covlie.core import CENTRAL, K, Element
from covlie.groups import CyclicGroup

RESULTS: list = []


def verdict(number: int, title: str, records, extra_ok: bool = True, detail: str = "") -> None:
    bad = [r.name for r in records if not r.passed]
    ok = bool(records) and not bad and extra_ok
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
    if detail:
        line += f"  [{detail}]"
    if bad:
        line += f"  failing: {bad[:5]}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _params(records, name):
    return next(r.params for r in records if r.name == name)


def test_criterion_01_jacobi_and_antisymmetry():
    recs = []
    for n in range(2, 8):
        recs += trig.jacobi_records(CyclicGroup(n), 2, ordered=True)
    algebras = {r.name.split(".")[0] for r in recs}
    verdict(1, "A/B/D hat: antisymmetry and ordered Jacobi, Z_2..Z_7, |m| <= 2", recs,
            detail=f"{len(recs)} records over {len(algebras)} algebras")


def test_criterion_02_psi_A():
    recs, counts_ok = [], True
    for n in (5, 6):
        rs = cov.psi_A_records(CyclicGroup(n), 2)
        p = _params(rs, "psi_A.bijective-on-window")
        counts_ok &= p["source"] == p["target"] == p["rank"]
        recs += rs
    verdict(2, "psi_A bracket preservation and basis bijection on Z_5, Z_6", recs, counts_ok)


def test_criterion_03_theta_and_psi():
    recs = []
    for n in (5, 6):
        S = CyclicGroup(n)
        recs += cov.theta_records(S, 2) + cov.psi_D_records(S, 2)
    # level scalar c -> k/2 on both B and D witnesses
    S = CyclicGroup(5)
    a = trig.build_AS(S)
    ls = cov.build_LS(S)
    half = Element.basis(K, Fraction(1, 2))
    theta = cov.theta_B_map(trig.build_XS("B", a), cov.build_covariant(ls, "tau"))
    psi = cov.psi_D_map(trig.build_XS("D", a), cov.build_covariant(ls, "tau_chi"))
    level_ok = theta.on_basis(CENTRAL) == half and psi.on_basis(CENTRAL) == half
    verdict(3, "Theta and Psi bracket preservation on Z_5, Z_6 with c -> k/2", recs, level_ok)


def test_criterion_04_qvirasoro():
    recs = trig.qvir_records(3, 2)
    verdict(4, "D hat over Z onto q-Virasoro, |alpha| <= 3, |m| <= 2, exact in QQ(q)", recs)


def test_criterion_05_pi():
    recs, kernels = [], {}
    for n in (3, 4, 5, 6):
        rs = mat.pi_records(CyclicGroup(n))
        kernels[n] = _params(rs, "pi.injective-iff-no-2-torsion")["kernel_dim"]
        recs += rs
    ok = kernels[3] == kernels[5] == 0 and kernels[4] > 0 and kernels[6] > 0
    verdict(5, "pi isomorphism with form for Z_3, Z_5; nonzero kernel for Z_4, Z_6", recs, ok,
            f"kernel dims {kernels}")


def test_criterion_06_clock_shift_relations():
    recs, ranks_ok = [], True
    for l in range(2, 7):
        rs = mat.pq_records(l) + mat.a_relation_records(l) + mat.a_bracket_records(l)
        ranks_ok &= _params(rs, "rank{a_rm}=l^2")["rank"] == l * l
        recs += rs
    verdict(6, "P/Q relations, rank a_rm = l^2, a-commutator identity for l = 2..6", recs, ranks_ok)


def test_criterion_07_dimension_counts():
    recs, seen = [], {}
    for l in range(2, 7):
        rs = mat.tau_cd_records(l)
        recs += rs
        seen[l] = {r.name: r.params["rank"] for r in rs if r.name in ("rank{c_rm}", "rank{d_rm}")}
        if l % 2 == 0:
            assert any(r.name == "c^tJ=-Jc" for r in rs)
        assert any(r.name == "d^tJ=-Jd" for r in rs)
    ok = all(seen[l]["rank{c_rm}"] == l * l // 2 + l // 2 for l in (2, 4, 6))
    ok &= all(seen[l]["rank{d_rm}"] == l * l // 2 - l // 2 for l in (2, 4, 6))
    ok &= all(seen[l]["rank{d_rm}"] == l * (l - 1) // 2 for l in (3, 5))
    verdict(7, "rank c_rm, rank d_rm and T1/T form memberships", recs, ok,
            ", ".join(f"l={l}: {v}" for l, v in seen.items()))


def test_criterion_08_theta_epimorphisms():
    recs = []
    for kind in "ACD":
        recs += mat.theta_epi_records(kind, 3, 2)
    k = _params(recs, "theta_A.kernel")
    ok = k["kernel_dim"] == 16 and k["kernel_dim"] + k["image_rank"] == k["window"]
    verdict(8, "theta_A/C/D homomorphism, surjectivity, kernels at l = 3, |m| <= 2", recs, ok,
            f"ker theta_A = {k['kernel_dim']}, window {k['window']}, image {k['image_rank']}")


def test_criterion_09_covariant_machinery():
    recs = []
    for n in (3, 5):
        S = CyclicGroup(n)
        recs += cov.invariant_records(S, 2) + cov.invariant_records(S, 2, "tau")
        recs += cov.factorization_records(S, 2)
    rep = cov.rep_records(3, 2)
    recs += rep
    control = next(r for r in rep if r.name == "corrupted-table-detected")
    verdict(9, "invariantization, quotient factorization, representation criterion", recs, control.passed)


def test_criterion_10_odd_order_chain():
    recs = mat.odd_ident_records(3, 2) + mat.odd_ident_records(5, 2) + mat.dim_tau_records((3, 5, 7))
    dims = {r.params["N"]: r.params["dim"] for r in recs if r.name.startswith("dim gl[")}
    ok = dims == {3: 3, 5: 10, 7: 21}
    verdict(10, "A hat into sigma-fixed affine gl_N for N = 3, 5; dim gl^tau", recs, ok, f"dims {dims}")
