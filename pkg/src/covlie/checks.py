"""Reusable verification routines producing CheckRecords."""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Callable, Iterable

from .core import Element, LieOracle, LinearMap, identity_map, row_reduce, _as_element
from .report import CheckRecord, FAIL, PASS


class Tally:
    """Counts cases of one check and keeps the first failing witness."""

    def __init__(self, name: str, params: dict | None = None):
        self.name = name
        self.params = dict(params or {})
        self.cases = 0
        self.failures = 0
        self.witness = None
        self.extra: dict = {}

    def case(self, ok: bool, witness: Callable | dict | None = None) -> bool:
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = witness() if callable(witness) else (witness or {})
        return ok

    def equal(self, lhs, rhs, **case) -> bool:
        return self.case(lhs == rhs, lambda: {**case, "lhs": lhs, "rhs": rhs})

    def record(self) -> CheckRecord:
        params = dict(self.params)
        params["cases"] = self.cases
        params.update(self.extra)
        if self.failures:
            w = dict(self.witness)
            w["failures"] = self.failures
            return CheckRecord(self.name, params, FAIL, w)
        return CheckRecord(self.name, params, PASS, None)


def verdict(name: str, ok: bool, params: dict | None = None, witness: dict | None = None) -> CheckRecord:
    if ok:
        return CheckRecord(name, dict(params or {}), PASS, None)
    return CheckRecord(name, dict(params or {}), FAIL, witness or {})


def check_antisymmetry(g: LieOracle, window, name: str = "antisymmetry", params=None) -> CheckRecord:
    t = Tally(name, params)
    elems = [_as_element(w) for w in window]
    for i, x in enumerate(elems):
        for y in elems[i:]:
            s = g.bracket(x, y) + g.bracket(y, x)
            t.case(not s, lambda: {"a": x, "b": y, "sum": s})
    return t.record()


def jacobiator(g: LieOracle, x: Element, y: Element, z: Element) -> Element:
    return (g.bracket(g.bracket(x, y), z) + g.bracket(g.bracket(y, z), x)
            + g.bracket(g.bracket(z, x), y))


def unordered_triples(window) -> Iterable:
    """Triples up to permutation.

    Once antisymmetry holds the Jacobiator is alternating, so one
    representative per multiset covers every ordered triple.
    """
    return combinations_with_replacement(list(window), 3)


def check_jacobi(g: LieOracle, triples, name: str = "jacobi", params=None) -> CheckRecord:
    t = Tally(name, params)
    for a, b, c in triples:
        x, y, z = _as_element(a), _as_element(b), _as_element(c)
        j = jacobiator(g, x, y, z)
        t.case(not j, lambda: {"a": x, "b": y, "c": z, "jacobiator": j})
    return t.record()


def gram_rank(g: LieOracle, window) -> int:
    elems = [_as_element(w) for w in window]
    rows = []
    for x in elems:
        terms = {}
        for j, y in enumerate(elems):
            v = g.form(x, y)
            if v:
                terms[("col", j)] = v
        rows.append(Element(terms))
    return row_reduce(rows)[1]


def check_form(g: LieOracle, window, name: str = "form", params=None,
               expected_rank: int | None = None) -> list[CheckRecord]:
    """Symmetry, invariance and Gram rank of g's form on the window."""
    elems = [_as_element(w) for w in window]
    sym = Tally(f"{name}.symmetric", params)
    for i, x in enumerate(elems):
        for y in elems[i:]:
            sym.equal(g.form(x, y), g.form(y, x), a=x, b=y)
    inv = Tally(f"{name}.invariant", params)
    for x in elems:
        for y in elems:
            xy = g.bracket(x, y)
            for z in elems:
                inv.equal(g.form(xy, z), g.form(x, g.bracket(y, z)), a=x, b=y, c=z)
    rank = gram_rank(g, elems)
    rank_params = dict(params or {})
    rank_params.update(size=len(elems), rank=rank)
    ok = True if expected_rank is None else rank == expected_rank
    if expected_rank is not None:
        rank_params["expected"] = expected_rank
    return [sym.record(), inv.record(), verdict(f"{name}.gram-rank", ok, rank_params,
                                                 {"rank": rank, "expected": expected_rank})]


def check_associativity(alg, window, name: str = "associativity", params=None) -> CheckRecord:
    t = Tally(name, params)
    elems = [_as_element(w) for w in window]
    for x in elems:
        for y in elems:
            xy = alg.product(x, y)
            for z in elems:
                t.equal(alg.product(xy, z), alg.product(x, alg.product(y, z)), a=x, b=y, c=z)
    return t.record()


def check_associative_form(alg, window, name: str = "form.associative", params=None) -> CheckRecord:
    """<ab, c> = <a, bc>."""
    t = Tally(name, params)
    elems = [_as_element(w) for w in window]
    for x in elems:
        for y in elems:
            xy = alg.product(x, y)
            for z in elems:
                t.equal(alg.form(xy, z), alg.form(x, alg.product(y, z)), a=x, b=y, c=z)
    return t.record()


def check_linear_map(f: LinearMap, pairs, mode: str = "homomorphism", source=None, target=None,
                     name: str | None = None, params=None) -> CheckRecord:
    """f([a,b]) = [f a, f b], or f(ab) = f(b) f(a) in anti mode."""
    source = source or f.source
    target = target or f.target
    name = name or f"{f.name}.{mode}"
    t = Tally(name, params)
    for a, b in pairs:
        x, y = _as_element(a), _as_element(b)
        if mode == "homomorphism":
            lhs = f(source.bracket(x, y))
            rhs = target.bracket(f(x), f(y))
        elif mode == "anti-homomorphism":
            lhs = f(source.product(x, y))
            rhs = target.product(f(y), f(x))
        elif mode == "algebra-homomorphism":
            lhs = f(source.product(x, y))
            rhs = target.product(f(x), f(y))
        else:
            raise ValueError(f"unknown mode {mode!r}")
        t.equal(lhs, rhs, a=x, b=y)
    return t.record()


def check_preserves_form(f: LinearMap, window, source=None, target=None, name: str | None = None,
                         params=None, scale=1) -> CheckRecord:
    """<f a, f b> = scale * <a, b> on all window pairs."""
    source = source or f.source
    target = target or f.target
    t = Tally(name or f"{f.name}.form", params)
    elems = [_as_element(w) for w in window]
    for x in elems:
        for y in elems:
            t.equal(target.form(f(x), f(y)), scale * source.form(x, y), a=x, b=y)
    return t.record()


def maps_agree(f: LinearMap, g: LinearMap, window, name: str, params=None) -> CheckRecord:
    t = Tally(name, params)
    for w in window:
        x = _as_element(w)
        t.equal(f(x), g(x), a=x)
    return t.record()


def check_automorphism_order(f: LinearMap, n: int, window, name: str | None = None,
                             params=None) -> CheckRecord:
    """f^n = id on the window and f^k != id there for 0 < k < n."""
    elems = [_as_element(w) for w in window]
    params = dict(params or {})
    params["order"] = n
    current = [x for x in elems]
    first_identity = None
    for k in range(1, n + 1):
        current = [f(x) for x in current]
        if all(a == b for a, b in zip(current, elems)):
            first_identity = k
            break
    ok = first_identity == n
    return verdict(name or f"{f.name}.order", ok, params, {"first_identity_power": first_identity})


def check_kernel(f: LinearMap, window, claimed: list, name: str, params=None,
                 target_window=None) -> tuple[CheckRecord, list, int]:
    """Kernel of f on the window equals span(claimed), with rank-nullity."""
    from .core import kernel_on_window, span_equal

    ker, rank = kernel_on_window(f, window, target_window)
    params = dict(params or {})
    params.update(window=len(list(window)), kernel_dim=len(ker), image_rank=rank)
    claimed_ok = span_equal(ker, claimed)
    nullity_ok = len(ker) + rank == len(list(window))
    witness = {"kernel_dim": len(ker), "claimed_dim": row_reduce(claimed)[1], "rank_nullity": nullity_ok}
    return verdict(name, claimed_ok and nullity_ok, params, witness), ker, rank


__all__ = [
    "Tally", "verdict", "check_antisymmetry", "check_jacobi", "jacobiator", "unordered_triples",
    "gram_rank", "check_form", "check_associativity", "check_associative_form", "check_linear_map",
    "check_preserves_form", "maps_agree", "check_automorphism_order", "check_kernel", "identity_map",
]
