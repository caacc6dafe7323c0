"""Exact coefficient fields: the rationals, cyclotomic fields and Q(q).

Rationals are plain :class:`fractions.Fraction` values.  Elements of the
cyclotomic field Q(zeta_N) are stored in the power basis
1, zeta, ..., zeta^(phi(N)-1), reduced modulo the N-th cyclotomic
polynomial, as an integer numerator vector over one positive common
denominator.  Rational functions in one indeterminate ``q`` are stored as a
coprime pair of polynomials with monic denominator.

Plain ``int`` and ``Fraction`` operands coerce into every field.  Mixing two
different non-rational fields raises :class:`FieldMismatchError`.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import poly


class FieldMismatchError(TypeError):
    """Operands live in different coefficient fields."""


def _rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def format_rational(x) -> str:
    x = _rat(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


# ---------------------------------------------------------------------------
# rationals


class RationalField:
    name = "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, (Cyclotomic, RationalFunction)):
            raise FieldMismatchError(f"cannot coerce {x!r} into QQ")
        return _rat(x)

    def serialize(self, x) -> str:
        return format_rational(x)

    def deserialize(self, obj) -> Fraction:
        return parse_rational(obj)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


# ---------------------------------------------------------------------------
# cyclotomic fields


@functools.cache
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (low degree first) of the n-th cyclotomic polynomial.

    Computed as (x^n - 1) divided by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("conductor must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = poly.divmod_(num, [Fraction(c) for c in cyclotomic_polynomial(d)])
            assert not rem
    return tuple(int(c) for c in num)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _content_gcd(nums: Sequence[int], den: int) -> int:
    g = den
    for c in nums:
        if c:
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


@functools.cache
def CyclotomicField(n: int) -> "_CyclotomicField":
    """The field Q(zeta_n); instances are cached per conductor."""
    return _CyclotomicField(n)


class _CyclotomicField:
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("conductor must be positive")
        self.conductor = n
        self.modulus = cyclotomic_polynomial(n)
        self.degree = len(self.modulus) - 1
        self.name = f"QQ(zeta_{n})"
        # x^k mod Phi_n for every k we can meet: products have degree <= 2*deg - 2
        # and zeta powers are reduced mod n first.
        d = self.degree
        table = []
        cur = [1] + [0] * (d - 1) if d > 0 else []
        for _ in range(max(n, 2 * d - 1)):
            table.append(tuple(cur))
            # multiply by x and reduce
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(d):
                    cur[i] -= top * self.modulus[i]
        self._xpow = table
        self.zero = Cyclotomic(self, (0,) * d, 1)
        self.one = Cyclotomic(self, (1,) + (0,) * (d - 1), 1)

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (CyclotomicField, (self.conductor,))

    def __call__(self, x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            if x.field is not self:
                raise FieldMismatchError(f"{x.field.name} vs {self.name}")
            return x
        if isinstance(x, RationalFunction):
            raise FieldMismatchError(f"cannot coerce {x!r} into {self.name}")
        x = _rat(x)
        nums = (x.numerator,) + (0,) * (self.degree - 1)
        return Cyclotomic(self, nums, x.denominator)

    def from_coeffs(self, coeffs: Sequence) -> "Cyclotomic":
        """Element from power-basis coefficients (any length; reduced)."""
        coeffs = [_rat(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in coeffs]
        return Cyclotomic._build(self, self._reduce(ints), den)

    def _reduce(self, ints: Sequence[int]) -> list[int]:
        d = self.degree
        out = list(ints[:d]) + [0] * max(0, d - len(ints))
        for k in range(d, len(ints)):
            c = ints[k]
            if c:
                row = self._xpow[k]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return out

    @functools.lru_cache(maxsize=None)
    def zeta_power(self, k: int) -> "Cyclotomic":
        return Cyclotomic(self, self._xpow[k % self.conductor], 1)

    @property
    def zeta(self) -> "Cyclotomic":
        return self.zeta_power(1)

    def serialize(self, x) -> dict:
        x = self(x)
        return {"conductor": self.conductor, "coeffs": [format_rational(c) for c in x.coeffs]}

    def deserialize(self, obj) -> "Cyclotomic":
        if obj["conductor"] != self.conductor:
            raise FieldMismatchError(f"conductor {obj['conductor']} vs {self.conductor}")
        return self.from_coeffs([parse_rational(c) for c in obj["coeffs"]])


def zeta_power(n: int, k: int) -> "Cyclotomic":
    """Reduced representation of zeta_n ** (k mod n)."""
    return CyclotomicField(n).zeta_power(k)


class Cyclotomic:
    __slots__ = ("field", "num", "den")

    def __init__(self, field: _CyclotomicField, num: tuple, den: int):
        # trusted constructor: caller guarantees the normal form
        self.field = field
        self.num = num
        self.den = den

    @staticmethod
    def _build(field, nums, den) -> "Cyclotomic":
        if den < 0:
            nums = [-c for c in nums]
            den = -den
        g = _content_gcd(nums, den)
        if g != 1:
            nums = [c // g for c in nums]
            den //= g
        if not any(nums):
            den = 1
        return Cyclotomic(field, tuple(nums), den)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.field is not self.field:
                raise FieldMismatchError(f"{self.field.name} vs {other.field.name}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        if isinstance(other, RationalFunction):
            raise FieldMismatchError(f"{self.field.name} vs Q(q)")
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return Cyclotomic._build(self.field, [a + b for a, b in zip(self.num, other.num)], self.den)
        da, db = self.den, other.den
        return Cyclotomic._build(self.field, [a * db + b * da for a, b in zip(self.num, other.num)], da * db)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.field, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self.field.zero
            return Cyclotomic._build(self.field, [c * other for c in self.num], self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.num, other.num
        d = self.field.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic._build(self.field, self.field._reduce(prod), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self:
            raise ZeroDivisionError("inverse of zero in " + self.field.name)
        f = [Fraction(c) for c in self.num]
        m = [Fraction(c) for c in self.field.modulus]
        g, s, _ = poly.xgcd(f, m)
        # g is the monic gcd, which is 1 because Phi_N is irreducible
        assert g == [Fraction(1)]
        inv = self.field.from_coeffs(s)
        return inv * self.den

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            if other.field is not self.field:
                raise FieldMismatchError(f"{self.field.name} vs {other.field.name}")
            return self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.field.conductor, self.num, self.den))

    def __repr__(self):
        n = self.field.conductor
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (f"z{n}" if k == 1 else f"z{n}^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"({c})*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


# ---------------------------------------------------------------------------
# rational functions in q


_ONE = (Fraction(1),)


def _monomial_degree(p: tuple) -> int | None:
    """k if p == x^k (monic), else None."""
    if p[-1] == 1 and not any(p[:-1]):
        return len(p) - 1
    return None


def _normalize_rf(num: list, den: list) -> tuple[tuple, tuple]:
    num = poly.trim(num)
    den = poly.trim(den)
    if not den:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num:
        return (), _ONE
    lead = den[-1]
    if lead != 1:
        num = [c / lead for c in num]
        den = [c / lead for c in den]
    k = _monomial_degree(tuple(den))
    if k is not None:
        low = 0
        while low < k and num[low] == 0:
            low += 1
        return tuple(num[low:]), tuple(den[low:])
    g = poly.gcd(num, den)
    if len(g) > 1:
        num, _ = poly.divmod_(num, g)
        den, _ = poly.divmod_(den, g)
        lead = den[-1]
        num = [c / lead for c in num]
        den = [c / lead for c in den]
    return tuple(num), tuple(den)


class RationalFunctionField:
    name = "QQ(q)"

    def __init__(self):
        self.zero = RationalFunction((), _ONE)
        self.one = RationalFunction(_ONE, _ONE)
        self.q = RationalFunction((Fraction(0), Fraction(1)), _ONE)

    def __call__(self, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Cyclotomic):
            raise FieldMismatchError(f"cannot coerce {x!r} into Q(q)")
        x = _rat(x)
        if not x:
            return self.zero
        return RationalFunction((x,), _ONE)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField)

    def __hash__(self):
        return hash(self.name)

    def __reduce__(self):
        return (_get_qq_q, ())

    def q_power(self, k: int) -> "RationalFunction":
        if k >= 0:
            return RationalFunction((Fraction(0),) * k + _ONE, _ONE)
        return RationalFunction(_ONE, (Fraction(0),) * (-k) + _ONE)

    def from_polys(self, num: Sequence, den: Sequence = (1,)) -> "RationalFunction":
        n, d = _normalize_rf([_rat(c) for c in num], [_rat(c) for c in den])
        return RationalFunction(n, d)

    def serialize(self, x) -> dict:
        x = self(x)
        return {"num": [format_rational(c) for c in x.num], "den": [format_rational(c) for c in x.den]}

    def deserialize(self, obj) -> "RationalFunction":
        return self.from_polys([parse_rational(c) for c in obj["num"]],
                               [parse_rational(c) for c in obj["den"]])


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num: tuple, den: tuple):
        self.num = num
        self.den = den

    @property
    def field(self):
        return QQ_q

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return QQ_q(other)
        if isinstance(other, Cyclotomic):
            raise FieldMismatchError(f"Q(q) vs {other.field.name}")
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RationalFunction(*_normalize_rf(poly.add(self.num, other.num), list(self.den)))
        num = poly.add(poly.mul(self.num, other.den), poly.mul(other.num, self.den))
        return RationalFunction(*_normalize_rf(num, poly.mul(self.den, other.den)))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return QQ_q.zero
        return RationalFunction(*_normalize_rf(poly.mul(self.num, other.num), poly.mul(self.den, other.den)))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return RationalFunction(*_normalize_rf(list(self.den), list(self.num)))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = QQ_q.one
        for _ in range(e):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == QQ_q(other)
        if isinstance(other, Cyclotomic):
            raise FieldMismatchError(f"Q(q) vs {other.field.name}")
        return NotImplemented

    def __hash__(self):
        if self.den == _ONE and len(self.num) <= 1:
            return hash(self.num[0] if self.num else Fraction(0))
        return hash((self.num, self.den))

    def __repr__(self):
        n = poly.format(self.num, "q")
        if self.den == _ONE:
            return n
        return f"({n})/({poly.format(self.den, 'q')})"


QQ_q = RationalFunctionField()


def _get_qq_q():
    return QQ_q


# ---------------------------------------------------------------------------
# field-generic helpers


def field_of(x):
    """Field descriptor of a scalar; ints and Fractions belong to QQ."""
    if isinstance(x, Cyclotomic):
        return x.field
    if isinstance(x, RationalFunction):
        return QQ_q
    if isinstance(x, (int, Fraction)):
        return QQ
    raise TypeError(f"not a scalar: {x!r}")


def serialize_scalar(x):
    return field_of(x).serialize(x)


def deserialize_scalar(obj):
    if isinstance(obj, dict):
        if "conductor" in obj:
            return CyclotomicField(obj["conductor"]).deserialize(obj)
        return QQ_q.deserialize(obj)
    return parse_rational(obj)


def parse_field(spec: str):
    """'QQ', 'cyc:N' or 'QQ(q)'."""
    if spec == "QQ":
        return QQ
    if spec == "QQ(q)":
        return QQ_q
    if spec.startswith("cyc:"):
        return CyclotomicField(int(spec[4:]))
    raise ValueError(f"unknown field {spec!r}")
