"""Named verification suites and the driver that runs them."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import covariant as cov
from . import matrices as mat
from . import trig
from .groups import CyclicGroup, parse_group
from .report import CheckRecord, Report


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suites: list = field(default_factory=list)
    group: str = "Z:5"
    l: int = 3
    window_m: int = 2
    workers: int = 1
    report: str | None = None
    audit: bool = False

    def validate(self) -> None:
        unknown = [s for s in self.suites if s not in REGISTRY]
        if unknown:
            raise ConfigError(f"unknown suite(s): {', '.join(unknown)}")
        try:
            parse_group(self.group)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        if self.window_m < 1:
            raise ConfigError("window M must be >= 1")
        if self.l < 1:
            raise ConfigError("l must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    @property
    def S(self):
        return parse_group(self.group)


def _finite(cfg: SuiteConfig):
    S = cfg.S
    if not S.finite:
        raise cov.UnsupportedInputError(f"this suite needs a finite group, got {cfg.group}")
    return S


def _odd_order(cfg: SuiteConfig) -> int:
    S = cfg.S
    if S.finite and S.order % 2 == 1:
        return S.order
    return 2 * cfg.l + 1


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    run: object


def _suite(name, description):
    def wrap(fn):
        REGISTRY[name] = Suite(name, description, fn)
        return fn
    return wrap


REGISTRY: dict = {}


@_suite("trig.jacobi", "antisymmetry and Jacobi for A_hat_S and its B/C/D fixed-point algebras")
def _trig_jacobi(cfg):
    return trig.jacobi_records(cfg.S, cfg.window_m)


@_suite("trig.aut", "involutions tau_B/tau_C/tau_D, sigma, tau and their conjugation identities")
def _trig_aut(cfg):
    return trig.automorphism_records(cfg.S, cfg.window_m)


@_suite("trig.bcd-relations", "closed-form B/D bracket relations, symmetries, basis independence, C ~ B")
def _trig_rel(cfg):
    return trig.relation_records(cfg.S, cfg.window_m)


@_suite("trig.qvir", "D_hat over Z with chi(1) = q maps onto the q-Virasoro bracket")
def _trig_qvir(cfg):
    return trig.qvir_records(3, cfg.window_m)


@_suite("cov.ls", "associative algebra L_S: associativity, form, symmetries, tau-fixed part")
def _cov_ls(cfg):
    return cov.ls_records(_finite(cfg)) + mat.degenerate_form_records(4)


@_suite("cov.bracket", "covariant brackets for Gamma = S, S~B, S~D and base L_S^tau; support audit")
def _cov_bracket(cfg):
    return cov.covariant_bracket_records(_finite(cfg), cfg.window_m, audit=True)


@_suite("cov.psiA", "psi_A: A_hat_S isomorphic to the covariant algebra of L_S over S")
def _cov_psia(cfg):
    return cov.psi_A_records(_finite(cfg), cfg.window_m, cfg.audit)


@_suite("cov.theta", "Theta: B_hat_S isomorphic to the covariant algebra over S~B (c -> k/2)")
def _cov_theta(cfg):
    return cov.theta_records(_finite(cfg), cfg.window_m, cfg.audit)


@_suite("cov.psiD", "D_hat_S as covariant algebra over S~D, and over S with base L_S^tau")
def _cov_psid(cfg):
    return cov.psi_D_records(_finite(cfg), cfg.window_m, cfg.audit)


@_suite("cov.invariant", "averaging map from covariant algebra to Gamma-invariants of the affine algebra")
def _cov_invariant(cfg):
    S = _finite(cfg)
    return cov.invariant_records(S, cfg.window_m) + cov.invariant_records(S, cfg.window_m, "tau")


@_suite("cov.factor", "quotient by Gamma equals quotient by H then by Gamma/H (Gamma = S~B)")
def _cov_factor(cfg):
    return cov.factorization_records(_finite(cfg), cfg.window_m)


@_suite("cov.rep", "representation criterion on the evaluation table of a_{r,m}, with negative control")
def _cov_rep(cfg):
    return cov.rep_records(cfg.l, min(cfg.window_m, 2))


@_suite("mat.pi", "pi: L_S -> gl_S is a homomorphism; injective iff no 2-torsion")
def _mat_pi(cfg):
    return mat.pi_records(_finite(cfg))


@_suite("mat.pq", "clock and shift matrices P, Q, periodicity of a_{r,m}, c/d relations")
def _mat_pq(cfg):
    return mat.pq_records(cfg.l) + mat.a_relation_records(cfg.l)


@_suite("mat.a-bracket", "commutators of the trigonometric basis a_{r,m}")
def _mat_abracket(cfg):
    return mat.a_bracket_records(cfg.l) + mat.a_bracket_records(cfg.l, cfg.window_m)


@_suite("mat.tau-cd", "theta, tau_c, tau_d, fixed-point dimensions and T1/T form memberships")
def _mat_taucd(cfg):
    return mat.tau_cd_records(cfg.l)


@_suite("mat.theta-epi", "loop-algebra epimorphisms from A_hat, C_hat, D_hat over Z_2l with kernels")
def _mat_thetaepi(cfg):
    return [r for kind in "ACD" for r in mat.theta_epi_records(kind, cfg.l, cfg.window_m)]


@_suite("mat.odd-ident", "odd order: A_hat_S inside sigma-fixed affine gl_N, and dim gl_S^tau")
def _mat_odd(cfg):
    return mat.odd_ident_records(_odd_order(cfg), cfg.window_m) + mat.dim_tau_records()


def run_suite(name: str, cfg: SuiteConfig) -> Report:
    rep = Report(name)
    rep.extend(REGISTRY[name].run(cfg))
    return rep


def _run_to_dict(args):
    name, cfg = args
    return run_suite(name, cfg).to_dict()


def _from_dict(d: dict) -> Report:
    return Report(d["suite"], [CheckRecord(c["name"], c["params"], c["status"], c["witness"])
                               for c in d["checks"]])


def run(cfg: SuiteConfig) -> list:
    """Run the configured suites; the result order follows cfg.suites."""
    cfg.validate()
    names = cfg.suites or list(REGISTRY)
    jobs = [(n, cfg) for n in names]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.workers, len(jobs))) as ex:
            dicts = list(ex.map(_run_to_dict, jobs))
    else:
        dicts = [_run_to_dict(j) for j in jobs]
    # round-trip through plain dicts either way so output never depends on the path taken
    return [_from_dict(d) for d in dicts]


def default_workers() -> int:
    env = os.environ.get("COVLIE_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"COVLIE_WORKERS must be an integer, got {env!r}") from None
    return 1


# ---------------------------------------------------------------------------
# entry points under the operation names used in the docs


def psi_A_check(S, M: int = 2) -> Report:
    return Report("cov.psiA", cov.psi_A_records(S, M))


def theta_B_check(S, M: int = 2) -> Report:
    return Report("cov.theta", cov.theta_records(S, M))


def psi_D_check(S, M: int = 2) -> Report:
    return Report("cov.psiD", cov.psi_D_records(S, M))


def covariant_vs_invariant(S, M: int = 2, extra=None) -> Report:
    return Report("cov.invariant", cov.invariant_records(S, M, extra))


def quotient_factorization_check(S, M: int = 2) -> Report:
    return Report("cov.factor", cov.factorization_records(S, M))


def check_qvir_iso(alpha_max: int = 3, M: int = 2) -> Report:
    return Report("trig.qvir", trig.qvir_records(alpha_max, M))


def pi_check(S) -> Report:
    return Report("mat.pi", mat.pi_records(S))


def bracket_check_a(l: int, M: int | None = None) -> Report:
    return Report("mat.a-bracket", mat.a_bracket_records(l, M))


def tau_cd_and_forms(l: int) -> Report:
    return Report("mat.tau-cd", mat.tau_cd_records(l))


def theta_epimorphisms(kind: str, l: int, M: int = 2) -> Report:
    return Report("mat.theta-epi", mat.theta_epi_records(kind, l, M))


def odd_order_identifications(N: int, M: int = 2) -> Report:
    return Report("mat.odd-ident", mat.odd_ident_records(N, M))


def build_PQ(l: int):
    tb = mat.TrigBasis(l)
    return tb.P, tb.Q


__all__ = ["REGISTRY", "SuiteConfig", "ConfigError", "run", "run_suite", "CyclicGroup"]
