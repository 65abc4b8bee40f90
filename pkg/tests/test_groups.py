"""Tests for the group layer: exact phases, invariant factors, characters."""

from fractions import Fraction

import pytest

from anyonmcg.errors import BoundExceededError, GroupMismatchError
from anyonmcg.groups import (
    Character,
    GroupElement,
    GroupSpec,
    RationalPhase,
    pairing_phase,
)


def test_phase_reduces_mod_one():
    assert RationalPhase(3, 2) == RationalPhase(1, 2)
    assert RationalPhase(-1, 4) == RationalPhase(3, 4)
    assert RationalPhase(Fraction(7, 3)) == RationalPhase(1, 3)
    assert RationalPhase(2) == RationalPhase(0)


def test_phase_arithmetic():
    assert RationalPhase(1, 2) + RationalPhase(3, 4) == RationalPhase(1, 4)
    assert RationalPhase(1, 3) - RationalPhase(2, 3) == RationalPhase(2, 3)
    assert -RationalPhase(1, 4) == RationalPhase(3, 4)
    assert RationalPhase(1, 8) * 4 == RationalPhase(1, 2)
    assert 3 * RationalPhase(1, 4) == RationalPhase(3, 4)


def test_phase_to_complex():
    assert RationalPhase(0).to_complex() == 1.0
    assert abs(RationalPhase(1, 4).to_complex() - 1j) < 1e-15
    assert abs(RationalPhase(1, 2).to_complex() + 1.0) < 1e-15
    assert abs(RationalPhase(7, 8).to_complex() - RationalPhase(-1, 8).to_complex()) == 0.0


def test_phase_str():
    assert str(RationalPhase(1, 2)) == "1/2"
    assert str(RationalPhase(0)) == "0"
    assert str(RationalPhase(6, 8)) == "3/4"


def test_spec_validation():
    GroupSpec((2, 4))
    GroupSpec((1, 2, 4))
    GroupSpec(())
    with pytest.raises(ValueError):
        GroupSpec((4, 2))
    with pytest.raises(ValueError):
        GroupSpec((3, 2))
    with pytest.raises(ValueError):
        GroupSpec((0,))
    with pytest.raises(ValueError):
        GroupSpec((2,), blocks=0)


def test_spec_order_and_flat_factors():
    g = GroupSpec((2, 4))
    assert g.order == 8
    assert g.flat_factors == (2, 4)
    g3 = g.power(3)
    assert g3.order == 512
    assert g3.flat_factors == (2, 4, 2, 4, 2, 4)
    assert g3.blocks == 3
    assert g3.base() == g


def test_add_examples():
    z2 = GroupSpec((2,))
    one = z2.element((1,))
    assert (one + one).coords == (0,)

    g = GroupSpec((2, 4))
    a = g.element((1, 3))
    b = g.element((1, 2))
    assert (a + b).coords == (0, 1)
    assert (-g.element((0, 3))).coords == (0, 1)
    assert (a - b).coords == (0, 1)
    assert a.scale(2).coords == (0, 2)
    assert (3 * a).coords == (1, 1)


def test_element_reduction_and_mismatch():
    g = GroupSpec((2, 4))
    assert g.element((3, 7)).coords == (1, 3)
    with pytest.raises(ValueError):
        g.element((1,))
    other = GroupSpec((2,))
    with pytest.raises(GroupMismatchError):
        g.element((0, 0)) + other.element((0,))


def test_group_axioms_exhaustive():
    for factors in [(2,), (3,), (4,), (2, 2), (2, 4)]:
        g = GroupSpec(factors)
        elems = g.elements()
        zero = g.zero()
        for a in elems:
            assert a + zero == a
            assert a + (-a) == zero
            for b in elems:
                assert a + b == b + a
                for c in elems:
                    assert (a + b) + c == a + (b + c)


def test_elements_row_major_order():
    g = GroupSpec((2, 2))
    assert [e.coords for e in g.elements()] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    g2 = GroupSpec((3,))
    assert [e.coords for e in g2.elements()] == [(0,), (1,), (2,)]


def test_index_roundtrip():
    g = GroupSpec((2, 4), blocks=2)
    for i, e in enumerate(g.elements()):
        assert g.index_of(e) == i
        assert g.element_at(i) == e


def test_enumeration_bound():
    g = GroupSpec((2,), blocks=13)  # order 8192
    with pytest.raises(BoundExceededError):
        g.elements()
    assert len(g.elements(bound=8192)) == 8192


def test_blocks_and_embedding():
    g = GroupSpec((2, 4))
    gg = g.power(2)
    e = gg.element((1, 3, 0, 2))
    assert e.block(0).coords == (1, 3)
    assert e.block(1).coords == (0, 2)
    emb = gg.embed_block(g.element((1, 1)), 1)
    assert emb.coords == (0, 0, 1, 1)
    assert e.replace_block(0, g.element((0, 0))).coords == (0, 0, 0, 2)


def test_pairing_examples():
    g = GroupSpec((4,))
    assert pairing_phase(g.element((1,)), g.element((3,))) == RationalPhase(3, 4)
    h = GroupSpec((2, 4))
    # <(1,2), (1,3)> = 1/2 + 6/4 = 0 mod 1
    assert pairing_phase(h.element((1, 2)), h.element((1, 3))) == RationalPhase(0)
    assert pairing_phase(h.element((1, 1)), h.element((1, 1))) == RationalPhase(3, 4)


def test_pairing_symmetric_and_bilinear_exhaustive():
    g = GroupSpec((2, 4))
    elems = g.elements()
    for h in elems:
        for x in elems:
            assert pairing_phase(h, x) == pairing_phase(x, h)
            for y in elems:
                assert pairing_phase(h, x + y) == pairing_phase(h, x) + pairing_phase(h, y)
                assert pairing_phase(h + y, x) == pairing_phase(h, x) + pairing_phase(y, x)


def test_character_values():
    g = GroupSpec((4,))
    chi = Character(g.element((1,)))
    assert abs(chi.value(g.element((1,))) - 1j) < 1e-15
    assert abs(chi.value(g.element((2,))) + 1.0) < 1e-15
    assert chi.phase(g.element((0,))) == RationalPhase(0)


def test_character_separates_points():
    # for each nonzero x some character is nontrivial on it
    g = GroupSpec((2, 4))
    elems = g.elements()
    for x in elems:
        if x.is_zero():
            continue
        assert any(not pairing_phase(h, x).is_zero() for h in elems)
