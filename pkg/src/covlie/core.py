"""Sparse elements, rule-based Lie oracles and linear maps.

Basis labels are tuples whose first entry is a string tag, e.g.
``("A", alpha, m)`` or ``("loop", ("L", a, b), m)``.  Python tuple
comparison gives the total order used for pivoting.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from .fields import serialize_scalar

# ---------------------------------------------------------------------------
# labels

CENTRAL = ("c",)
K = ("k",)
QVIR_K = ("QK",)


def A(a, m):
    return ("A", a, m)


def gen(kind, a, m):
    return ("Gen", kind, a, m)


def L(a, b):
    return ("L", a, b)


def Lt(a, b):
    return ("Lt", a, b)


def E(i, j):
    return ("E", i, j)


def loop(inner, m):
    return ("loop", inner, m)


def qvir(a, m):
    return ("QV", a, m)


def label_str(b) -> str:
    tag, *rest = b
    if not rest:
        return tag
    parts = [label_str(x) if isinstance(x, tuple) else str(x) for x in rest]
    return f"{tag}({','.join(parts)})"


def inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


# ---------------------------------------------------------------------------
# elements


class Element:
    """Finite linear combination of basis labels; zero coefficients are pruned."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        if terms:
            self.terms = {b: c for b, c in terms.items() if c}
        else:
            self.terms = {}

    @classmethod
    def basis(cls, label, coeff=1) -> "Element":
        e = cls()
        if coeff:
            e.terms[label] = coeff
        return e

    @classmethod
    def _raw(cls, terms: dict) -> "Element":
        # terms already pruned
        e = cls()
        e.terms = terms
        return e

    def __iter__(self):
        return iter(self.terms.items())

    def items(self):
        return self.terms.items()

    def support(self):
        return sorted(self.terms)

    def __getitem__(self, label):
        return self.terms.get(label, 0)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "Element") -> "Element":
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for b, c in other.terms.items():
            v = out.get(b)
            v = c if v is None else v + c
            if v:
                out[b] = v
            else:
                out.pop(b, None)
        return Element._raw(out)

    def __neg__(self) -> "Element":
        return Element._raw({b: -c for b, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, s) -> "Element":
        if not s:
            return Element()
        if s == 1:
            return self
        return Element({b: c * s for b, c in self.terms.items()})

    def __rmul__(self, s) -> "Element":
        return self.scale(s)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[b] for b, c in self.terms.items())

    __hash__ = None

    def map_labels(self, fn: Callable) -> "Element":
        """Relabel each term: fn(label) -> new label."""
        return add_all(Element.basis(fn(b), c) for b, c in self.terms.items())

    def to_json(self) -> dict:
        return {label_str(b): serialize_scalar(self.terms[b]) for b in sorted(self.terms)}

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[b]!r})*{label_str(b)}" for b in sorted(self.terms))


def add_all(elems: Iterable[Element]) -> Element:
    acc: dict = {}
    for e in elems:
        for b, c in e.terms.items():
            v = acc.get(b)
            acc[b] = c if v is None else v + c
    return Element(acc)


def combination(pairs: Iterable) -> Element:
    """Element from (coeff, Element) pairs."""
    acc: dict = {}
    for s, e in pairs:
        if not s:
            continue
        for b, c in e.terms.items():
            v = c * s
            w = acc.get(b)
            acc[b] = v if w is None else w + v
    return Element(acc)


# ---------------------------------------------------------------------------
# oracles


class LieOracle:
    """A Lie algebra given by rules on basis labels.

    Subclasses implement ``_bracket`` (and optionally ``_form`` and
    ``_canonical``) on canonical labels.  Outputs of ``_bracket`` are
    canonicalised here.  Antisymmetry and Jacobi are not assumed.
    """

    name = "lie"
    has_form = False

    def __init__(self, field):
        self.field = field
        self._bracket_cache: dict = {}
        self._canon_cache: dict = {}

    # -- canonical labels

    def _canonical(self, b):
        """(scalar, label) or None when the label is zero."""
        return (1, b)

    def canonical(self, b):
        r = self._canon_cache.get(b, False)
        if r is False:
            r = self._canonical(b)
            self._canon_cache[b] = r
        return r

    def canon(self, x: Element) -> Element:
        acc: dict = {}
        for b, c in x.terms.items():
            r = self.canonical(b)
            if r is None:
                continue
            s, lab = r
            v = c * s if s != 1 else c
            w = acc.get(lab)
            acc[lab] = v if w is None else w + v
        return Element(acc)

    def element(self, b, coeff=1) -> Element:
        return self.canon(Element.basis(b, coeff))

    # -- bracket

    def _bracket(self, a, b) -> Element:
        raise NotImplementedError

    def bracket_basis(self, a, b) -> Element:
        key = (a, b)
        r = self._bracket_cache.get(key)
        if r is None:
            r = self.canon(self._bracket(a, b))
            self._bracket_cache[key] = r
        return r

    def bracket(self, x: Element, y: Element) -> Element:
        x = self.canon(x)
        y = self.canon(y)
        acc: dict = {}
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                br = self.bracket_basis(a, b)
                if not br.terms:
                    continue
                s = ca * cb
                for lab, c in br.terms.items():
                    v = c * s
                    w = acc.get(lab)
                    acc[lab] = v if w is None else w + v
        return Element(acc)

    # -- form

    def _form(self, a, b):
        raise NotImplementedError(f"{self.name} carries no bilinear form")

    def form(self, x: Element, y: Element):
        x = self.canon(x)
        y = self.canon(y)
        total = self.field.zero
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                f = self._form(a, b)
                if f:
                    total = total + ca * cb * f
        return total

    def __repr__(self):
        return self.name


class AssociativeOracle(LieOracle):
    """Associative algebra on labels; its Lie bracket is the commutator."""

    def __init__(self, field):
        super().__init__(field)
        self._product_cache: dict = {}

    def _product(self, a, b) -> Element:
        raise NotImplementedError

    def product_basis(self, a, b) -> Element:
        key = (a, b)
        r = self._product_cache.get(key)
        if r is None:
            r = self.canon(self._product(a, b))
            self._product_cache[key] = r
        return r

    def product(self, x: Element, y: Element) -> Element:
        x = self.canon(x)
        y = self.canon(y)
        return combination(
            (ca * cb, self.product_basis(a, b)) for a, ca in x.terms.items() for b, cb in y.terms.items()
        )

    def _bracket(self, a, b):
        return self.product_basis(a, b) - self.product_basis(b, a)


class LinearMap:
    """Linear map given by its values on basis labels."""

    def __init__(self, rule: Callable, source: LieOracle | None = None, target: LieOracle | None = None,
                 name: str = "map"):
        self.rule = rule
        self.source = source
        self.target = target
        self.name = name
        self._cache: dict = {}

    def on_basis(self, b) -> Element:
        r = self._cache.get(b)
        if r is None:
            r = self.rule(b)
            if self.target is not None:
                r = self.target.canon(r)
            self._cache[b] = r
        return r

    def __call__(self, x: Element) -> Element:
        if self.source is not None:
            x = self.source.canon(x)
        return combination((c, self.on_basis(b)) for b, c in x.terms.items())

    def then(self, other: "LinearMap", name: str | None = None) -> "LinearMap":
        """other after self."""
        return LinearMap(lambda b: other(self.on_basis(b)), self.source, other.target,
                         name or f"{other.name}*{self.name}")

    def __repr__(self):
        return self.name


def identity_map(g: LieOracle | None = None) -> LinearMap:
    return LinearMap(lambda b: Element.basis(b), g, g, "id")


def power_map(f: LinearMap, n: int) -> LinearMap:
    if n == 0:
        return identity_map(f.source)
    out = f
    for _ in range(n - 1):
        out = out.then(f)
    return out


# ---------------------------------------------------------------------------
# exact sparse linear algebra


class WindowOverflowError(ValueError):
    def __init__(self, label):
        super().__init__(f"image escapes the target window at {label_str(label)}")
        self.label = label


class NotInvolutiveError(ValueError):
    pass


def _reduce_against(row: dict, pivots: dict) -> dict:
    for p in [p for p in row if p in pivots]:
        c = row.get(p)
        if not c:
            continue
        for b, v in pivots[p].items():
            w = row.get(b)
            nv = -c * v if w is None else w - c * v
            if nv:
                row[b] = nv
            else:
                row.pop(b, None)
    return row


class Echelon:
    """Incrementally maintained reduced row echelon form.

    The pivot of a row is its smallest label.
    """

    def __init__(self):
        self.pivots: dict = {}

    def reduce(self, x: Element) -> Element:
        return Element._raw(_reduce_against(dict(x.terms), self.pivots))

    def add(self, x: Element) -> bool:
        row = _reduce_against(dict(x.terms), self.pivots)
        if not row:
            return False
        p = min(row)
        s = inv(row[p])
        row = {b: c * s for b, c in row.items()}
        for q, other in self.pivots.items():
            c = other.get(p)
            if c:
                for b, v in row.items():
                    w = other.get(b)
                    nv = -c * v if w is None else w - c * v
                    if nv:
                        other[b] = nv
                    else:
                        other.pop(b, None)
        self.pivots[p] = row
        return True

    def contains(self, x: Element) -> bool:
        return not _reduce_against(dict(x.terms), self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def basis(self) -> list[Element]:
        return [Element._raw(dict(self.pivots[p])) for p in sorted(self.pivots)]


def row_reduce(rows: Iterable[Element]) -> tuple[list[Element], int]:
    """Reduced echelon basis of the span and its rank."""
    ech = Echelon()
    for r in rows:
        ech.add(r)
    basis = ech.basis()
    return basis, len(basis)


def span_equal(xs: Iterable[Element], ys: Iterable[Element]) -> bool:
    bx, _ = row_reduce(xs)
    by, _ = row_reduce(ys)
    return len(bx) == len(by) and all(a == b for a, b in zip(bx, by))


def _as_element(w) -> Element:
    return w if isinstance(w, Element) else Element.basis(w)


def kernel_on_window(f: LinearMap, window, target_window=None) -> tuple[list[Element], int]:
    """Echelon basis of the kernel of f on span(window), plus the image rank.

    Window entries are labels (or Elements); kernel vectors are returned as
    combinations of the window entries' labels.
    """
    allowed = None if target_window is None else set(target_window)
    pivots: dict = {}
    pivot_combo: dict = {}
    kernel = []
    for w in window:
        src = _as_element(w)
        img = f(src)
        if allowed is not None:
            for b in img.terms:
                if b not in allowed:
                    raise WindowOverflowError(b)
        row = dict(img.terms)
        combo = dict(src.terms)
        while True:
            # eliminating pivot p only introduces labels above p
            hits = [p for p in row if p in pivots]
            if not hits:
                break
            p = min(hits)
            c = row[p]
            for b, v in pivots[p].items():
                nv = row.get(b, 0) - c * v
                if nv:
                    row[b] = nv
                else:
                    row.pop(b, None)
            for b, v in pivot_combo[p].items():
                nv = combo.get(b, 0) - c * v
                if nv:
                    combo[b] = nv
                else:
                    combo.pop(b, None)
        if row:
            p = min(row)
            s = inv(row[p])
            # plain (non-reduced) echelon is enough here: keep pivot rows normalised
            pivots[p] = {b: c * s for b, c in row.items()}
            pivot_combo[p] = {b: c * s for b, c in combo.items()}
            # keep pivot rows free of later pivots is not required because
            # each new row is reduced against all existing pivots in turn
        else:
            kernel.append(Element(combo))
    basis, _ = row_reduce(kernel)
    return basis, len(pivots)


def fixed_point_span(f: LinearMap, window) -> list[Element]:
    """Echelon basis of span{u + f(u)} for an involution f."""
    rows = []
    for w in window:
        u = _as_element(w)
        fu = f(u)
        if f(fu) != u:
            raise NotInvolutiveError(f"{f.name} is not an involution at {u!r}")
        rows.append(u + fu)
    basis, _ = row_reduce(rows)
    return basis
