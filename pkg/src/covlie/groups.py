"""Cyclic groups Z_N, the free group Z, and their linear characters.

Group elements are plain ints: canonical residues 0..N-1 for Z_N, any int
for Z.  A group object owns normalisation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fields import QQ_q, CyclotomicField, zeta_power


class GroupMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class CyclicGroup:
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("cyclic group order must be >= 1")

    @property
    def finite(self) -> bool:
        return True

    def norm(self, a: int) -> int:
        return a % self.order

    def elements(self) -> list[int]:
        return list(range(self.order))

    def __str__(self):
        return f"Z:{self.order}"


@dataclass(frozen=True)
class FreeZ:
    @property
    def finite(self) -> bool:
        return False

    def norm(self, a: int) -> int:
        return a

    def elements(self):
        raise ValueError("Z is infinite; use a window")

    def __str__(self):
        return "Zfree"


def parse_group(spec: str):
    """Parse 'Z:N' or 'Zfree'."""
    if spec == "Zfree":
        return FreeZ()
    if spec.startswith("Z:"):
        try:
            n = int(spec[2:])
        except ValueError:
            raise ValueError(f"invalid group spec {spec!r}") from None
        if n < 1:
            raise ValueError(f"invalid group spec {spec!r}")
        return CyclicGroup(n)
    raise ValueError(f"invalid group spec {spec!r}")


def two_torsion(S) -> list[int]:
    """The subgroup S^0 = {a : 2a = 0}."""
    if not S.finite:
        return [0]
    return [a for a in S.elements() if (2 * a) % S.order == 0]


def transversal(S) -> tuple[list[int], list[int]]:
    """Representatives of a ~ -a split as (T1, S0).

    Residues 0..floor(N/2) are used, so T1 = {a : 0 < a < N/2}.
    """
    if not S.finite:
        raise ValueError("transversal is only tabulated for finite S")
    s0 = two_torsion(S)
    t1 = [a for a in range(S.order // 2 + 1) if a not in s0]
    return t1, s0


def is_representative(S, a: int) -> bool:
    """True when a is its own class representative under a ~ -a."""
    if S.finite:
        return 2 * a <= S.order
    return a >= 0


@dataclass(frozen=True)
class Character:
    """Linear character of a cyclic group or Z.

    For Z_N the generator goes to zeta_N ** exponent in QQ(zeta_N); for Z it
    goes to the indeterminate q of QQ(q).
    """

    group: object
    exponent: int = 1
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def field(self):
        if self.group.finite:
            return CyclotomicField(self.group.order)
        return QQ_q

    def __call__(self, a: int):
        # any integer is accepted; for Z_N it is read modulo N
        v = self._cache.get(a)
        if v is None:
            if self.group.finite:
                v = zeta_power(self.group.order, self.exponent * a)
            else:
                v = QQ_q.q_power(self.exponent * a)
            self._cache[a] = v
        return v

    def generator_value(self):
        return self(1)

    def order(self) -> int | None:
        """Multiplicative order of the image of the generator."""
        if not self.group.finite:
            return None
        n = self.group.order
        for k in range(1, n + 1):
            if (self.exponent * k) % n == 0:
                return k
        return n


def faithful_character(S) -> Character:
    return Character(S, 1)


def eval_character(chi: Character, a: int, group=None):
    if group is not None and group != chi.group:
        raise GroupMismatchError(f"{group} vs {chi.group}")
    return chi(a)
