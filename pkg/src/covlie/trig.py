"""The algebra A_hat_S, its involutions and the fixed-point families B, C, D.

Labels: ("c",) central, ("A", alpha, m).  Fixed-point generators are
("Gen", kind, alpha, m) and are realised inside A_hat_S as
A_{alpha,m} + tau_X(A_{alpha,m}), so their brackets are computed by the
parent oracle and re-expressed in canonical generators.
"""

from __future__ import annotations

from fractions import Fraction

from .checks import (Tally, check_antisymmetry, check_automorphism_order, check_jacobi,
                     check_linear_map, maps_agree, unordered_triples, verdict)
from .core import (CENTRAL, QVIR_K, A, Element, LieOracle, LinearMap, add_all, gen, qvir,
                   row_reduce)
from .groups import Character, FreeZ, faithful_character, is_representative, two_torsion

KINDS = ("B", "C", "D")


def _sign(m: int) -> int:
    return -1 if m % 2 else 1


class ASAlgebra(LieOracle):
    """[A_{a,m}, A_{b,n}] = (chi(mb-na) - chi(na-mb)) A_{a+b,m+n} + m d_{a+b,0} d_{m+n,0} c."""

    def __init__(self, S, chi: Character | None = None):
        chi = chi or faithful_character(S)
        super().__init__(chi.field)
        self.S = S
        self.chi = chi
        self.name = f"A[{S}]"

    def _canonical(self, b):
        if b[0] == "A":
            return (1, ("A", self.S.norm(b[1]), b[2]))
        return (1, b)

    def _bracket(self, x, y):
        if x[0] == "c" or y[0] == "c":
            return Element()
        _, a, m = x
        _, b, n = y
        chi = self.chi
        out = Element.basis(A(self.S.norm(a + b), m + n), chi(m * b - n * a) - chi(n * a - m * b))
        if m and m + n == 0 and self.S.norm(a + b) == 0:
            out = out + Element.basis(CENTRAL, self.field(m))
        return out

    def window(self, M: int, alphas=None, central: bool = True) -> list:
        alphas = self.S.elements() if alphas is None else alphas
        labels = [A(a, m) for a in alphas for m in range(-M, M + 1)]
        return ([CENTRAL] if central else []) + labels


def tau_sign(a: ASAlgebra, kind: str, alpha: int, m: int):
    """s with tau_X(A_{alpha,m}) = s * A_{-alpha,m}."""
    if kind == "B":
        return a.field(-_sign(m))
    if kind == "C":
        return -_sign(m) * a.chi(2 * alpha)
    if kind == "D":
        return -a.chi(2 * alpha)
    raise ValueError(f"unknown kind {kind!r}")


def tau_X(kind: str, a: ASAlgebra) -> LinearMap:
    def rule(b):
        if b[0] == "c":
            return Element.basis(b)
        _, al, m = b
        return Element.basis(A(-al, m), tau_sign(a, kind, al, m))
    return LinearMap(rule, a, a, f"tau_{kind}")


def sigma(a: ASAlgebra, power: int = 1) -> LinearMap:
    """A_{alpha,m} -> chi(alpha)^power A_{alpha,m}."""
    def rule(b):
        if b[0] == "c":
            return Element.basis(b)
        return Element.basis(b, a.chi(power * b[1]))
    return LinearMap(rule, a, a, "sigma" if power == 1 else f"sigma^{power}")


def tau(a: ASAlgebra) -> LinearMap:
    def rule(b):
        if b[0] == "c":
            return Element.basis(b)
        return Element.basis(A(-b[1], b[2]), -1)
    return LinearMap(rule, a, a, "tau")


def sigma_tau_auts(a: ASAlgebra) -> tuple[LinearMap, LinearMap]:
    return sigma(a), tau(a)


class XSAlgebra(LieOracle):
    """Fixed points of tau_X on A_hat_S, presented on canonical generators."""

    def __init__(self, kind: str, parent: ASAlgebra):
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        super().__init__(parent.field)
        self.kind = kind
        self.parent = parent
        self.S = parent.S
        self.chi = parent.chi
        self.name = f"{kind}[{parent.S}]"
        self._s0 = set(two_torsion(self.S))

    def sign(self, alpha: int, m: int):
        return tau_sign(self.parent, self.kind, alpha, m)

    def _canonical(self, b):
        if b[0] == "c":
            return (1, b)
        _, kind, al, m = b
        al = self.S.norm(al)
        if al in self._s0:
            s = self.sign(al, m)
            return None if s == -1 else (1, gen(kind, al, m))
        if is_representative(self.S, al):
            return (1, gen(kind, al, m))
        # X_{alpha,m} = s(alpha,m) X_{-alpha,m}
        return (self.sign(al, m), gen(kind, self.S.norm(-al), m))

    def embed_label(self, b) -> Element:
        if b[0] == "c":
            return Element.basis(CENTRAL)
        _, _, al, m = b
        return self.parent.canon(Element.basis(A(al, m)) + Element.basis(A(-al, m), self.sign(al, m)))

    def embed(self, x: Element) -> Element:
        x = self.canon(x)
        return add_all(self.embed_label(b).scale(c) for b, c in x.terms.items())

    def express(self, v: Element) -> Element:
        """Rewrite a tau_X-fixed element of A_hat_S in canonical generators."""
        out = {}
        for b, c in v.terms.items():
            if b[0] == "c":
                out[CENTRAL] = c
                continue
            _, al, m = b
            if al in self._s0:
                out[gen(self.kind, al, m)] = c * Fraction(1, 2)
            elif is_representative(self.S, al):
                out[gen(self.kind, al, m)] = c
        res = Element(out)
        if self.embed(res) != v:
            raise ValueError(f"{v!r} is not fixed by tau_{self.kind}")
        return res

    def _bracket(self, x, y):
        if x[0] == "c" or y[0] == "c":
            return Element()
        return self.express(self.parent.bracket(self.embed_label(x), self.embed_label(y)))

    def canonical_labels(self, M: int, alphas=None) -> list:
        """Canonical generators with |m| <= M (alphas: representatives for S = Z)."""
        if alphas is None:
            alphas = [a for a in self.S.elements() if is_representative(self.S, a)]
        out = []
        for al in alphas:
            for m in range(-M, M + 1):
                if self.canonical(gen(self.kind, al, m)) == (1, gen(self.kind, al, m)):
                    out.append(gen(self.kind, al, m))
        return out

    def window(self, M: int, alphas=None, central: bool = True) -> list:
        return ([CENTRAL] if central else []) + self.canonical_labels(M, alphas)


def build_AS(S, chi=None) -> ASAlgebra:
    return ASAlgebra(S, chi)


def build_XS(kind: str, a: ASAlgebra) -> XSAlgebra:
    return XSAlgebra(kind, a)


def _delta(S, x) -> int:
    return 1 if S.norm(x) == 0 else 0


def relation_closed_form(X: XSAlgebra, alpha: int, m: int, beta: int, n: int) -> Element:
    """Three-term right-hand side of the B or D bracket relations."""
    S, chi, kind = X.S, X.chi, X.kind
    k1 = chi(m * beta - n * alpha) - chi(n * alpha - m * beta)
    k2 = chi(m * beta + n * alpha) - chi(-m * beta - n * alpha)
    if kind == "B":
        k2 = k2 * _sign(n)
        central = _delta(S, alpha + beta) - _sign(m) * _delta(S, alpha - beta)
    elif kind == "D":
        k2 = k2 * chi(2 * beta)
        central = _delta(S, alpha + beta) - chi(2 * alpha) * _delta(S, alpha - beta)
    else:
        raise ValueError("closed-form relations are tabulated for B and D")
    out = (X.element(gen(kind, alpha + beta, m + n), k1)
           + X.element(gen(kind, alpha - beta, m + n), k2))
    if m + n == 0 and central:
        out = out + Element.basis(CENTRAL, X.field(2 * m) * central)
    return out


def symmetry_relation(X: XSAlgebra, alpha: int, m: int) -> tuple[Element, Element]:
    """(X_{-alpha,m}, closed-form multiple of X_{alpha,m})."""
    chi = X.chi
    if X.kind == "B":
        s = -_sign(m)
    elif X.kind == "D":
        s = -chi(-2 * alpha)
    else:
        s = -_sign(m) * chi(-2 * alpha)
    lhs = X.embed(Element.basis(gen(X.kind, -alpha, m)))
    rhs = X.embed(Element.basis(gen(X.kind, alpha, m))).scale(s)
    return lhs, rhs


def c_to_b_map(C: XSAlgebra, B: XSAlgebra) -> LinearMap:
    """C_{alpha,m} -> chi(alpha) B_{alpha,m}, c -> c (induced by sigma)."""
    def rule(b):
        if b[0] == "c":
            return Element.basis(b)
        _, _, al, m = b
        return Element.basis(gen("B", al, m), C.chi(al))
    return LinearMap(rule, C, B, "sigma:C->B")


# ---------------------------------------------------------------------------
# q-Virasoro side


class QVirAlgebra(LieOracle):
    """Labels ("QV", alpha, m) with D~^{-alpha} = -D~^{alpha}, and central ("QK",)."""

    def __init__(self, chi: Character | None = None):
        chi = chi or faithful_character(FreeZ())
        super().__init__(chi.field)
        self.chi = chi
        self.S = chi.group
        self.name = "qVir"

    def _canonical(self, b):
        if b[0] != "QV":
            return (1, b)
        _, al, m = b
        al = self.S.norm(al)
        if self.S.norm(2 * al) == 0:
            # D~^{alpha} = -D~^{-alpha} = -D~^{alpha}
            return None
        if is_representative(self.S, al):
            return (1, qvir(al, m))
        return (-1, qvir(self.S.norm(-al), m))

    def _bracket(self, x, y):
        if x[0] != "QV" or y[0] != "QV":
            return Element()
        _, a, m = x
        _, b, n = y
        chi, S = self.chi, self.S
        out = (Element.basis(qvir(a + b, m + n), chi(n * a - m * b) - chi(m * b - n * a))
               + Element.basis(qvir(a - b, m + n), chi(-n * a - m * b) - chi(m * b + n * a)))
        if m + n == 0:
            cen = 0
            if S.norm(2 * (a + b)) == 0:
                cen = chi((m + 1) * (a + b))
            if S.norm(2 * (a - b)) == 0:
                cen = cen - chi((m + 1) * (a - b))
            if cen:
                out = out + Element.basis(QVIR_K, cen * m)
        return out

    def window(self, M: int, alpha_max: int, central: bool = True) -> list:
        labels = [qvir(a, m) for a in range(1, alpha_max + 1) for m in range(-M, M + 1)]
        return ([QVIR_K] if central else []) + labels


def build_qvir(chi=None) -> QVirAlgebra:
    return QVirAlgebra(chi)


def d_to_qvir_map(D: XSAlgebra, Q: QVirAlgebra) -> LinearMap:
    """c -> k/2, D_{alpha,m} -> -chi(alpha) D~^alpha(m)."""
    def rule(b):
        if b[0] == "c":
            return Element.basis(QVIR_K, Fraction(1, 2))
        _, _, al, m = b
        return Element.basis(qvir(al, m), -D.chi(al))
    return LinearMap(rule, D, Q, "D->qVir")


# ---------------------------------------------------------------------------
# suite bodies


def group_alphas(S, alpha_max: int = 2, representatives: bool = False) -> list:
    """All of S when finite; a symmetric (or nonnegative) range for Z."""
    if S.finite:
        els = S.elements()
        return [a for a in els if is_representative(S, a)] if representatives else els
    return list(range(0 if representatives else -alpha_max, alpha_max + 1))


def jacobi_records(S, M: int = 2, ordered: bool = False, alpha_max: int = 2) -> list:
    """Antisymmetry and Jacobi for A, B, C, D on the degree window |m| <= M.

    ordered=True runs every ordered triple instead of one per multiset.
    """
    from itertools import product

    a = ASAlgebra(S)
    recs = []
    algebras = [a] + [XSAlgebra(k, a) for k in KINDS]
    for g in algebras:
        w = g.window(M, group_alphas(S, alpha_max, representatives=g is not a))
        params = {"algebra": g.name, "window": len(w), "M": M, "ordered": ordered}
        triples = product(w, repeat=3) if ordered else unordered_triples(w)
        recs.append(check_antisymmetry(g, w, f"{g.name}.antisymmetry", params))
        recs.append(check_jacobi(g, triples, f"{g.name}.jacobi", params))
    return recs


def automorphism_records(S, M: int = 2, alpha_max: int = 2) -> list:
    a = ASAlgebra(S)
    w = a.window(M, group_alphas(S, alpha_max))
    pairs = [(x, y) for x in w for y in w]
    params = {"group": str(S), "M": M}
    recs = []
    sig, ta = sigma(a), tau(a)
    sig_inv = sigma(a, -1)
    for kind in KINDS:
        t = tau_X(kind, a)
        recs.append(check_linear_map(t, pairs, params=params))
        recs.append(check_automorphism_order(t, 2, w, params=params))
    recs.append(check_linear_map(sig, pairs, params=params))
    recs.append(check_linear_map(ta, pairs, params=params))
    recs.append(check_automorphism_order(ta, 2, w, params=params))
    if S.finite:
        recs.append(check_automorphism_order(sig, a.chi.order(), w, params=params))
    recs.append(maps_agree(tau_X("B", a), sig_inv.then(tau_X("C", a)).then(sig), w,
                           "tau_B=sigma*tau_C*sigma^-1", params))
    recs.append(maps_agree(tau_X("D", a), sigma(a, 2).then(ta), w, "tau_D=tau*sigma^2", params))
    recs.append(maps_agree(tau_X("D", a), sig.then(ta).then(sig_inv), w,
                           "tau_D=sigma^-1*tau*sigma", params))
    return recs


def relation_records(S, M: int = 2, alpha_max: int = 2) -> list:
    a = ASAlgebra(S)
    params = {"group": str(S), "M": M}
    recs = []
    alphas = group_alphas(S, alpha_max)
    reps = group_alphas(S, alpha_max, representatives=True)
    for kind in ("B", "D"):
        X = XSAlgebra(kind, a)
        t = Tally(f"{kind}.bracket-closed-form", params)
        for al in alphas:
            for be in alphas:
                for m in range(-M, M + 1):
                    for n in range(-M, M + 1):
                        lhs = X.bracket(Element.basis(gen(kind, al, m)), Element.basis(gen(kind, be, n)))
                        t.equal(lhs, relation_closed_form(X, al, m, be, n), alpha=al, m=m, beta=be, n=n)
        recs.append(t.record())
    for kind in KINDS:
        X = XSAlgebra(kind, a)
        t = Tally(f"{kind}.symmetry", params)
        for al in alphas:
            for m in range(-M, M + 1):
                lhs, rhs = symmetry_relation(X, al, m)
                t.equal(lhs, rhs, alpha=al, m=m)
        recs.append(t.record())
        labels = X.window(M, reps)
        _, rank = row_reduce([X.embed_label(b) for b in labels])
        recs.append(verdict(f"{kind}.canonical-basis-independent", rank == len(labels),
                            {**params, "count": len(labels), "rank": rank}, {"rank": rank}))
    C, B = XSAlgebra("C", a), XSAlgebra("B", a)
    f = c_to_b_map(C, B)
    wc = C.window(M, reps)
    recs.append(check_linear_map(f, [(x, y) for x in wc for y in wc], params=params))
    wb = B.window(M, reps)
    images, rank = row_reduce([f(Element.basis(b)) for b in wc])
    ok = len(wc) == len(wb) == rank
    recs.append(verdict("sigma:C->B.bijective", ok, {**params, "C": len(wc), "B": len(wb), "rank": rank}))
    return recs


def qvir_records(alpha_max: int = 3, M: int = 2) -> list:
    S = FreeZ()
    a = ASAlgebra(S)
    D = XSAlgebra("D", a)
    Q = QVirAlgebra(a.chi)
    f = d_to_qvir_map(D, Q)
    params = {"alpha_max": alpha_max, "M": M}
    gens = [gen("D", al, m) for al in range(-alpha_max, alpha_max + 1) for m in range(-M, M + 1)]
    pairs = [(x, y) for x in gens for y in gens]
    recs = [check_linear_map(f, pairs, name="D->qVir.intertwining", params=params)]
    t = Tally("alpha=0-vanishes", params)
    for m in range(-M, M + 1):
        t.case(not D.element(gen("D", 0, m)) and not Q.element(qvir(0, m)), {"m": m})
    recs.append(t.record())
    qw = Q.window(M, alpha_max)
    recs.append(check_antisymmetry(Q, qw, "qVir.antisymmetry", params))
    small = Q.window(1, 2)
    recs.append(check_jacobi(Q, unordered_triples(small), "qVir.jacobi", {"alpha_max": 2, "M": 1}))
    return recs
