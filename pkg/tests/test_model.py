"""Tests for quadratic forms, derived anyon-model data, and model files."""

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from anyonmcg.errors import (
    InvalidFormError,
    MissingEntryError,
    NonModularModelError,
    ParseError,
)
from anyonmcg.groups import GroupSpec, RationalPhase, pairing_phase
from anyonmcg.model import (
    AbelianAnyonModel,
    CocycleData,
    QuadraticForm,
    builtin_model,
    cyclic_model,
    load_model,
    model_from_table,
    parse_model_text,
    product_model,
    validate_cocycle,
    validate_quadratic,
)

ALL_BUILTINS = ["semion", "z3", "z4", "toric"]


def test_semion_form_is_valid():
    m = builtin_model("semion")
    assert m.is_modular
    assert m.theta(m.spec.element((1,))) == RationalPhase(1, 4)


def test_invalid_form_z2_third():
    form = QuadraticForm.from_entries(GroupSpec((2,)), {(0,): 0, (1,): Fraction(1, 3)})
    report = validate_quadratic(form)
    assert not report.ok
    assert [v.axiom for v in report.violations] == ["bilinearity"]
    assert report.violations[0].elements == ((1,), (1,), (1,))
    with pytest.raises(InvalidFormError):
        AbelianAnyonModel(form)


def test_zero_form_valid_but_degenerate():
    for factors in [(2,), (4,), (2, 2)]:
        spec = GroupSpec(factors)
        form = QuadraticForm.from_entries(spec, {e.coords: 0 for e in spec.elements()})
        assert validate_quadratic(form).ok
        m = AbelianAnyonModel(form)
        assert not m.is_modular
        assert not m.check_modular()
        with pytest.raises(NonModularModelError):
            m.anchor_phase()


def test_incomplete_table_raises():
    form = QuadraticForm.from_entries(GroupSpec((2,)), {(0,): 0})
    with pytest.raises(MissingEntryError):
        validate_quadratic(form)


def test_bilinear_examples():
    semion = builtin_model("semion")
    one = semion.spec.element((1,))
    assert semion.bilinear(one, one) == RationalPhase(1, 2)
    assert semion.bilinear(one, semion.spec.zero()) == RationalPhase(0)

    toric = builtin_model("toric")
    e = toric.spec.element
    assert toric.bilinear(e((1, 0)), e((0, 1))) == RationalPhase(1, 2)
    assert toric.bilinear(e((1, 0)), e((1, 0))) == RationalPhase(0)

    z4 = builtin_model("z4")
    assert z4.bilinear(z4.spec.element((1,)), z4.spec.element((1,))) == RationalPhase(1, 4)

    z3 = builtin_model("z3")
    assert z3.bilinear(z3.spec.element((1,)), z3.spec.element((1,))) == RationalPhase(2, 3)


def test_smatrix_semion():
    m = builtin_model("semion")
    s = m.smatrix()
    expected = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    assert np.max(np.abs(s - expected)) < 1e-15


def test_smatrix_toric_is_character_table():
    m = builtin_model("toric")
    s = m.smatrix() * 2.0
    # sqrt|G| * S is the +-1 character table of Z/2 x Z/2
    assert np.max(np.abs(s.imag)) < 1e-12
    assert set(np.round(s.real.flatten()).astype(int)) == {1, -1}
    assert np.max(np.abs(s @ s.T / 4.0 - np.eye(4))) < 1e-12


def test_smatrix_row_zero():
    for name in ALL_BUILTINS:
        m = builtin_model(name)
        s = m.smatrix()
        assert np.max(np.abs(s[0, :] - 1.0 / m.total_dim)) < 1e-15


def test_check_modular():
    for name in ALL_BUILTINS:
        m = builtin_model(name)
        assert m.is_modular
        assert m.check_modular()


def test_anchor_phases():
    semion = builtin_model("semion")
    assert abs(semion.anchor_phase() - cmath.exp(-1j * math.pi / 4)) < 1e-12
    assert semion.central_charge() == 1

    toric = builtin_model("toric")
    assert abs(toric.anchor_phase() - 1.0) < 1e-12
    assert toric.central_charge() == 0

    z3 = builtin_model("z3")
    assert abs(z3.anchor_phase() - (-1j)) < 1e-12
    assert z3.central_charge() == 2

    z4 = builtin_model("z4")
    assert abs(z4.anchor_phase() - cmath.exp(-1j * math.pi / 4)) < 1e-12
    assert z4.central_charge() == 1


def test_anchor_trivial_group():
    m = model_from_table((), {(): 0}, name="trivial")
    assert m.is_modular
    assert abs(m.anchor_phase() - 1.0) < 1e-15
    assert m.central_charge() == 0


def test_anchor_is_root_of_unity():
    for name in ALL_BUILTINS:
        m = builtin_model(name)
        order = math.lcm(8, 2 * m.order)
        assert abs(m.anchor_phase() ** order - 1.0) < 1e-9


def test_quadratic_phase_law_exhaustive():
    # theta_{x+y} = theta_x theta_y e^{2 pi i b(x,y)}, exact
    for name in ALL_BUILTINS:
        m = builtin_model(name)
        for x in m.elements():
            for y in m.elements():
                assert m.theta(x + y) == m.theta(x) + m.theta(y) + m.bilinear(x, y)


def test_bicharacter_law_exhaustive():
    for name in ALL_BUILTINS:
        m = builtin_model(name)
        for x in m.elements():
            for y in m.elements():
                assert m.bilinear(x, y) == m.bilinear(y, x)
                for g in m.elements():
                    assert m.bilinear(x + y, g) == m.bilinear(x, g) + m.bilinear(y, g)


def test_zb_matches_bilinear_and_is_isomorphism():
    for name in ALL_BUILTINS:
        m = builtin_model(name)
        for g in m.elements():
            for x in m.elements():
                assert pairing_phase(m.zb(g), x) == m.bilinear(g, x)
        for g in m.elements():
            assert m.zb_inverse(m.zb(g)) == g
            for h in m.elements():
                assert m.zb(g + h) == m.zb(g) + m.zb(h)


def test_cyclic_constructor():
    assert cyclic_model(2, 1).theta(GroupSpec((2,)).element((1,))) == RationalPhase(1, 4)
    z4 = cyclic_model(4, 1)
    ref = builtin_model("z4")
    for x in ref.elements():
        assert z4.theta(z4.spec.element(x.coords)) == ref.theta(x)
    z3 = cyclic_model(3, 2)
    ref3 = builtin_model("z3")
    for x in ref3.elements():
        assert z3.theta(z3.spec.element(x.coords)) == ref3.theta(x)


def test_cyclic_rejects_odd_np():
    with pytest.raises(InvalidFormError):
        cyclic_model(3, 1)
    with pytest.raises(ValueError):
        cyclic_model(0, 1)


def test_product_model():
    m = product_model(builtin_model("semion"), builtin_model("semion"))
    assert m.spec.factors == (2, 2)
    assert m.is_modular
    e = m.spec.element
    assert m.theta(e((1, 0))) == RationalPhase(1, 4)
    assert m.theta(e((1, 1))) == RationalPhase(1, 2)
    assert m.central_charge() == 2
    # anchor multiplies over factors
    single = builtin_model("semion").anchor_phase()
    assert abs(m.anchor_phase() - single * single) < 1e-12


def test_product_requires_invariant_factor_order():
    with pytest.raises(ValueError):
        product_model(builtin_model("z4"), builtin_model("semion"))
    ok = product_model(builtin_model("semion"), builtin_model("z4"))
    assert ok.spec.factors == (2, 4)


def test_cocycle_validation():
    spec = GroupSpec((2,))
    elems = spec.elements()

    def table(fn):
        return {
            (a.coords, b.coords, c.coords): RationalPhase(fn(a.coords[0], b.coords[0], c.coords[0]))
            for a in elems
            for b in elems
            for c in elems
        }

    trivial = CocycleData(spec, table(lambda a, b, c: Fraction(0)))
    assert validate_cocycle(trivial) == []

    # carry cocycle: f(a,b,c) = a/2 when b=c=1
    carry = CocycleData(spec, table(lambda a, b, c: Fraction(a * b * c, 2)))
    assert validate_cocycle(carry) == []
    model = AbelianAnyonModel(builtin_model("semion").form, cocycle=carry)
    assert model.cocycle is carry

    bad = CocycleData(spec, table(lambda a, b, c: Fraction(a * b, 2)))
    assert validate_cocycle(bad) != []
    with pytest.raises(InvalidFormError):
        AbelianAnyonModel(builtin_model("semion").form, cocycle=bad)


def test_summary_fields():
    info = builtin_model("semion").summary()
    assert info["name"] == "semion"
    assert info["order"] == 2
    assert info["modular"] is True
    assert info["central_charge"] == 1


SEMION_FILE = """\
group: [2]
q:
  - {elem: [0], value: "0"}
  - {elem: [1], value: "1/4"}
"""


def test_parse_model_file():
    m = parse_model_text(SEMION_FILE)
    assert m.spec.factors == (2,)
    assert m.theta(m.spec.element((1,))) == RationalPhase(1, 4)


def test_parse_builtin_scalar_and_mapping():
    m = parse_model_text("builtin: semion")
    assert m.name == "semion"
    m2 = parse_model_text("builtin: {kind: cyclic, N: 4, p: 1}")
    assert m2.spec.factors == (4,)
    assert m2.theta(m2.spec.element((1,))) == RationalPhase(1, 8)
    m3 = parse_model_text("builtin: {kind: toric}")
    assert m3.name == "toric"


def test_parse_errors_carry_line_numbers():
    bad_value = 'group: [2]\nq:\n  - {elem: [0], value: "0"}\n  - {elem: [1], value: "x"}\n'
    with pytest.raises(ParseError) as err:
        parse_model_text(bad_value)
    assert err.value.line == 4

    bad_arity = 'group: [2, 2]\nq:\n  - {elem: [0], value: "0"}\n'
    with pytest.raises(ParseError) as err:
        parse_model_text(bad_arity)
    assert err.value.line == 3

    with pytest.raises(ParseError):
        parse_model_text("builtin: semion\ngroup: [2]\n")
    with pytest.raises(ParseError):
        parse_model_text("group: [2]\n")
    with pytest.raises(ParseError):
        parse_model_text("builtin: no_such_model")
    with pytest.raises(ParseError):
        parse_model_text("builtin: {kind: cyclic, N: 3, p: 1}")
    with pytest.raises(ParseError):
        parse_model_text('group: [2]\nq:\n  - {elem: [0], value: "1/0"}\n')
    with pytest.raises(ParseError):
        parse_model_text("nonsense: 1")

    dup = 'group: [2]\nq:\n  - {elem: [0], value: "0"}\n  - {elem: [2], value: "0"}\n'
    with pytest.raises(ParseError) as err:
        parse_model_text(dup)
    assert err.value.line == 4


def test_parse_incomplete_table():
    with pytest.raises(MissingEntryError):
        parse_model_text('group: [2]\nq:\n  - {elem: [0], value: "0"}\n')


def test_load_model_resolves_names_and_text():
    assert load_model("semion").name == "semion"
    assert load_model(SEMION_FILE).spec.factors == (2,)
    m = builtin_model("z3")
    assert load_model(m) is m
