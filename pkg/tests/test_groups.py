import pytest

from covlie.groups import (Character, CyclicGroup, FreeZ, GroupMismatchError, eval_character,
                           faithful_character, parse_group, transversal, two_torsion)
from covlie.fields import QQ_q, zeta_power


def test_parse_group():
    assert parse_group("Z:5") == CyclicGroup(5)
    assert isinstance(parse_group("Zfree"), FreeZ)
    for bad in ["Z:0", "Q:3", "Z:x", ""]:
        with pytest.raises(ValueError):
            parse_group(bad)


def test_two_torsion():
    assert two_torsion(CyclicGroup(5)) == [0]
    assert two_torsion(CyclicGroup(6)) == [0, 3]
    assert two_torsion(FreeZ()) == [0]


def test_transversal_examples():
    assert transversal(CyclicGroup(5)) == ([1, 2], [0])
    assert transversal(CyclicGroup(6)) == ([1, 2], [0, 3])
    assert transversal(CyclicGroup(2)) == ([], [0, 1])


@pytest.mark.parametrize("n", range(1, 13))
def test_transversal_partitions(n):
    S = CyclicGroup(n)
    T1, S0 = transversal(S)
    parts = T1 + S0 + [(-t) % n for t in T1]
    assert sorted(parts) == list(range(n))


def test_character_values():
    chi = faithful_character(CyclicGroup(6))
    assert chi(3) == -1
    assert faithful_character(CyclicGroup(5))(0) == 1
    assert eval_character(faithful_character(FreeZ()), -2) == QQ_q.q_power(-2)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_character_multiplicative(n):
    chi = faithful_character(CyclicGroup(n))
    for a in range(n):
        for b in range(n):
            assert chi(a) * chi(b) == chi(a + b)


@pytest.mark.parametrize("l", [2, 3, 4, 5, 6])
def test_chi2_primitive_lth_root(l):
    chi = faithful_character(CyclicGroup(2 * l))
    assert chi(l) == -1
    powers = [chi(2 * k) for k in range(1, l + 1)]
    assert powers[-1] == 1 and all(p != 1 for p in powers[:-1])


def test_non_faithful_character():
    chi = Character(CyclicGroup(6), 2)
    assert chi(1) == zeta_power(6, 2)
    assert chi.order() == 3


def test_group_mismatch():
    with pytest.raises(GroupMismatchError):
        eval_character(faithful_character(CyclicGroup(5)), 1, CyclicGroup(6))
