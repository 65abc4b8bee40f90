"""Abelian anyon models built from a pure quadratic form q on a finite
abelian group G.

The form determines everything the rest of the package needs: topological
spins theta_a = e^(2 pi i q(a)), the symmetric bilinear form
b(x,y) = q(x+y) - q(x) - q(y), the S-matrix entries
(1/sqrt|G|) e^(2 pi i b(x,y)), and the anchor phase (Gauss sum)
(1/sqrt|G|) sum_a theta_a^(-1), a unit complex number e^(-c pi i / 4)
whose exponent c is the central charge mod 8.

The model is modular exactly when b is nondegenerate, equivalently when
g -> zb(g) with chi_{zb(g)} = e^(2 pi i b(g, .)) is a bijection of G.
Degenerate forms are accepted but flagged; gate construction refuses them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np
import yaml

from .errors import (
    BoundExceededError,
    ConsistencyError,
    InvalidFormError,
    MissingEntryError,
    NonModularModelError,
    ParseError,
)
from .groups import (
    DEFAULT_DENSE_BOUND,
    DEFAULT_ENUM_BOUND,
    GroupElement,
    GroupSpec,
    RationalPhase,
)

__all__ = [
    "QuadraticForm",
    "FormViolation",
    "FormValidation",
    "validate_quadratic",
    "CocycleData",
    "validate_cocycle",
    "AbelianAnyonModel",
    "BUILTIN_MODELS",
    "builtin_model",
    "cyclic_model",
    "product_model",
    "model_from_table",
    "parse_model_text",
    "load_model",
]


PhaseLike = RationalPhase | Fraction | int | str


def _as_phase(value: PhaseLike) -> RationalPhase:
    if isinstance(value, RationalPhase):
        return value
    if isinstance(value, (Fraction, int)):
        return RationalPhase(Fraction(value))
    if isinstance(value, str):
        return RationalPhase(Fraction(value))
    raise TypeError(f"cannot interpret {value!r} as a phase")


@dataclass(frozen=True, eq=False)
class QuadraticForm:
    """A value table q: G -> Q/Z, one entry per group element."""

    spec: GroupSpec
    table: Mapping[tuple[int, ...], RationalPhase]

    def __post_init__(self) -> None:
        if self.spec.blocks != 1:
            raise ValueError("a quadratic form lives on a single-block group")

    @classmethod
    def from_entries(cls, spec: GroupSpec, entries: Mapping[tuple[int, ...], PhaseLike]) -> "QuadraticForm":
        table = {spec.element(coords).coords: _as_phase(v) for coords, v in entries.items()}
        return cls(spec, table)

    def value(self, x: GroupElement) -> RationalPhase:
        self.spec._check(x)
        try:
            return self.table[x.coords]
        except KeyError:
            raise MissingEntryError(f"quadratic form has no entry for {x}") from None


@dataclass(frozen=True)
class FormViolation:
    axiom: str  # "origin", "purity", or "bilinearity"
    elements: tuple[tuple[int, ...], ...]
    detail: str


@dataclass(frozen=True)
class FormValidation:
    ok: bool
    violations: tuple[FormViolation, ...]


def validate_quadratic(form: QuadraticForm, bound: int = DEFAULT_ENUM_BOUND) -> FormValidation:
    """Check q(0)=0, q(-x)=q(x), and bilinearity of the polarization.

    Raises MissingEntryError if the table does not cover all of G.
    Axiom failures do not raise; every violated element/pair/triple is
    listed in the returned report.
    """
    spec = form.spec
    elems = spec.elements(bound)
    for x in elems:
        form.value(x)

    violations: list[FormViolation] = []
    q = form.value
    zero = spec.zero()
    if not q(zero).is_zero():
        violations.append(FormViolation("origin", (zero.coords,), f"q(0) = {q(zero)} != 0"))
    for x in elems:
        if q(-x) != q(x):
            violations.append(FormViolation("purity", (x.coords,), f"q(-x) = {q(-x)} != q(x) = {q(x)}"))

    def b(x: GroupElement, y: GroupElement) -> RationalPhase:
        return q(x + y) - q(x) - q(y)

    # b is symmetric by construction, so additivity in the first argument
    # is the whole bilinearity condition
    for x in elems:
        for y in elems:
            bxy = b(x, y)
            for g in elems:
                lhs = b(x + g, y)
                rhs = bxy + b(g, y)
                if lhs != rhs:
                    violations.append(
                        FormViolation(
                            "bilinearity",
                            (x.coords, g.coords, y.coords),
                            f"b(x+g,y) = {lhs} != b(x,y)+b(g,y) = {rhs}",
                        )
                    )
    return FormValidation(not violations, tuple(violations))


@dataclass(frozen=True, eq=False)
class CocycleData:
    """An explicit 3-cochain f: G^3 -> Q/Z.

    Validated against the 3-cocycle condition but never used in gate
    matrices; the twist-gate computation is cocycle-independent because
    the F-factors cancel.
    """

    spec: GroupSpec
    table: Mapping[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]], RationalPhase]

    def value(self, a: GroupElement, b: GroupElement, c: GroupElement) -> RationalPhase:
        try:
            return self.table[(a.coords, b.coords, c.coords)]
        except KeyError:
            raise MissingEntryError(f"cocycle has no entry for ({a}, {b}, {c})") from None


def validate_cocycle(data: CocycleData, bound: int = DEFAULT_ENUM_BOUND) -> list[tuple[tuple[int, ...], ...]]:
    """Return every quadruple violating the 3-cocycle condition
    f(b,c,d) - f(a+b,c,d) + f(a,b+c,d) - f(a,b,c+d) + f(a,b,c) = 0 mod 1."""
    spec = data.spec
    if spec.order ** 4 > bound ** 2:
        raise BoundExceededError("cocycle check too large", spec.order ** 4, bound ** 2)
    elems = spec.elements(bound)
    bad: list[tuple[tuple[int, ...], ...]] = []
    f = data.value
    for a in elems:
        for b in elems:
            for c in elems:
                for d in elems:
                    total = f(b, c, d) - f(a + b, c, d) + f(a, b + c, d) - f(a, b, c + d) + f(a, b, c)
                    if not total.is_zero():
                        bad.append((a.coords, b.coords, c.coords, d.coords))
    return bad


class AbelianAnyonModel:
    """An abelian anyon model (G, q) with its derived data.

    Construction validates the form and precomputes spins and the
    polarization; an invalid form raises InvalidFormError, a valid but
    degenerate one is accepted with is_modular False.
    """

    def __init__(
        self,
        form: QuadraticForm,
        name: str | None = None,
        cocycle: CocycleData | None = None,
        enum_bound: int = DEFAULT_ENUM_BOUND,
    ) -> None:
        report = validate_quadratic(form, enum_bound)
        if not report.ok:
            first = report.violations[0]
            raise InvalidFormError(
                f"quadratic form fails {first.axiom} at {first.elements}: {first.detail}"
                + (f" (+{len(report.violations) - 1} more violations)" if len(report.violations) > 1 else "")
            )
        if cocycle is not None:
            if cocycle.spec != form.spec:
                raise ValueError("cocycle group does not match the model group")
            bad = validate_cocycle(cocycle, enum_bound)
            if bad:
                raise InvalidFormError(f"3-cocycle condition fails at {len(bad)} quadruples, first {bad[0]}")

        self.form = form
        self.name = name or "custom"
        self.cocycle = cocycle
        self._elements = form.spec.elements(enum_bound)
        self._theta = {x.coords: form.value(x) for x in self._elements}

        # zb(g) is the element with chi_{zb(g)} = e^(2 pi i b(g, .));
        # coordinate j is m_j * b(g, e_j), an integer because e_j has order m_j
        spec = form.spec
        self._zb: dict[tuple[int, ...], GroupElement] = {}
        for g in self._elements:
            coords = []
            for j, m in enumerate(spec.flat_factors):
                frac = self.bilinear(g, spec.unit(j)).fraction * m
                if frac.denominator != 1:
                    raise ConsistencyError(f"b({g}, e_{j}) does not have order dividing {m}")
                coords.append(frac.numerator % m)
            self._zb[g.coords] = spec.element(tuple(coords))
        images = {e.coords for e in self._zb.values()}
        self._modular = len(images) == spec.order
        self._zb_inverse = {v.coords: spec.element(k) for k, v in self._zb.items()} if self._modular else None

    @property
    def spec(self) -> GroupSpec:
        return self.form.spec

    @property
    def order(self) -> int:
        return self.spec.order

    @property
    def total_dim(self) -> float:
        return math.sqrt(self.spec.order)

    @property
    def is_modular(self) -> bool:
        return self._modular

    def require_modular(self) -> None:
        if not self._modular:
            raise NonModularModelError(f"model {self.name!r} has a degenerate bilinear form")

    def elements(self) -> list[GroupElement]:
        return list(self._elements)

    def theta(self, x: GroupElement) -> RationalPhase:
        self.spec._check(x)
        return self._theta[x.coords]

    def theta_complex(self, x: GroupElement) -> complex:
        return self.theta(x).to_complex()

    def bilinear(self, x: GroupElement, y: GroupElement) -> RationalPhase:
        return self.form.value(x + y) - self.form.value(x) - self.form.value(y)

    def zb(self, g: GroupElement) -> GroupElement:
        """The element h with chi_h = e^(2 pi i b(g, .))."""
        self.spec._check(g)
        return self._zb[g.coords]

    def zb_inverse(self, h: GroupElement) -> GroupElement:
        self.require_modular()
        self.spec._check(h)
        assert self._zb_inverse is not None
        return self._zb_inverse[h.coords]

    def smatrix_entry(self, x: GroupElement, y: GroupElement) -> complex:
        return self.bilinear(x, y).to_complex() / self.total_dim

    def smatrix(self, dense_bound: int = DEFAULT_DENSE_BOUND) -> np.ndarray:
        n = self.spec.order
        if n > dense_bound:
            raise BoundExceededError("S-matrix too large to materialize", n, dense_bound)
        s = np.empty((n, n), dtype=complex)
        for i, x in enumerate(self._elements):
            for j, y in enumerate(self._elements):
                s[i, j] = self.smatrix_entry(x, y)
        return s

    def check_modular(self, tol: float = 1e-12) -> bool:
        """True iff S is unitary within tol (dense check; agrees with is_modular)."""
        s = self.smatrix()
        return bool(np.max(np.abs(s @ s.conj().T - np.eye(s.shape[0]))) <= tol)

    def anchor_phase(self) -> complex:
        """The Gauss sum (1/sqrt|G|) sum_a theta_a^(-1), a unit complex number."""
        total = sum(((-self._theta[x.coords]).to_complex() for x in self._elements), 0j)
        value = total / self.total_dim
        if abs(abs(value) - 1.0) > 1e-12:
            raise NonModularModelError(
                f"anchor phase has modulus {abs(value):.6g}; the form is degenerate"
            )
        return value

    def central_charge(self) -> int:
        """c mod 8 from anchor = e^(-c pi i / 4)."""
        anchor = self.anchor_phase()
        c = -4.0 * cmath.phase(anchor) / math.pi
        nearest = round(c) % 8
        if abs(c - round(c)) > 1e-9:
            raise ConsistencyError(f"anchor phase {anchor} is not an 8th root of unity")
        return nearest

    def summary(self) -> dict:
        info: dict = {
            "name": self.name,
            "group": str(self.spec),
            "factors": list(self.spec.factors),
            "order": self.spec.order,
            "modular": self.is_modular,
        }
        if self.is_modular:
            anchor = self.anchor_phase()
            info["anchor_phase"] = [anchor.real, anchor.imag]
            info["central_charge"] = self.central_charge()
        return info

    def __repr__(self) -> str:
        return f"AbelianAnyonModel({self.name!r}, {self.spec}, modular={self.is_modular})"


def model_from_table(
    factors: tuple[int, ...] | list[int],
    entries: Mapping[tuple[int, ...], PhaseLike],
    name: str | None = None,
    cocycle: CocycleData | None = None,
) -> AbelianAnyonModel:
    spec = GroupSpec(tuple(factors))
    return AbelianAnyonModel(QuadraticForm.from_entries(spec, entries), name=name, cocycle=cocycle)


def cyclic_model(n: int, p: int, name: str | None = None) -> AbelianAnyonModel:
    """q(x) = p x^2 / (2N) on Z/N; validation rejects (N, p) with N p odd,
    for which this is not well defined mod 1."""
    if n < 1:
        raise ValueError("N must be positive")
    spec = GroupSpec((n,))
    entries = {(x,): RationalPhase(p * x * x, 2 * n) for x in range(n)}
    return AbelianAnyonModel(QuadraticForm.from_entries(spec, entries), name=name or f"cyclic({n},{p})")


def product_model(left: AbelianAnyonModel, right: AbelianAnyonModel, name: str | None = None) -> AbelianAnyonModel:
    """The model on G1 x G2 with q(x1, x2) = q1(x1) + q2(x2).

    The concatenated factor list must itself be in invariant-factor form
    (each factor divides the next); no renormalization is attempted.
    """
    factors = left.spec.factors + right.spec.factors
    spec = GroupSpec(factors)  # raises if divisibility fails
    entries: dict[tuple[int, ...], RationalPhase] = {}
    for x in left.elements():
        for y in right.elements():
            entries[x.coords + y.coords] = left.form.value(x) + right.form.value(y)
    return AbelianAnyonModel(
        QuadraticForm.from_entries(spec, entries),
        name=name or f"product({left.name},{right.name})",
    )


def _builtin_semion() -> AbelianAnyonModel:
    return model_from_table((2,), {(0,): 0, (1,): Fraction(1, 4)}, name="semion")


def _builtin_z3() -> AbelianAnyonModel:
    return model_from_table((3,), {(x,): Fraction(x * x, 3) for x in range(3)}, name="z3")


def _builtin_z4() -> AbelianAnyonModel:
    return model_from_table((4,), {(x,): Fraction(x * x, 8) for x in range(4)}, name="z4")


def _builtin_toric() -> AbelianAnyonModel:
    return model_from_table(
        (2, 2),
        {(0, 0): 0, (0, 1): 0, (1, 0): 0, (1, 1): Fraction(1, 2)},
        name="toric",
    )


BUILTIN_MODELS = {
    "semion": _builtin_semion,
    "z3": _builtin_z3,
    "z4": _builtin_z4,
    "toric": _builtin_toric,
}


def builtin_model(name: str) -> AbelianAnyonModel:
    try:
        factory = BUILTIN_MODELS[name]
    except KeyError:
        known = ", ".join(sorted(BUILTIN_MODELS))
        raise ValueError(f"unknown builtin model {name!r} (known: {known})") from None
    return factory()


# ---------------------------------------------------------------------------
# model file grammar


def _node_line(node: yaml.Node) -> int:
    return node.start_mark.line + 1


def _expect_mapping(node: yaml.Node, what: str) -> list[tuple[str, yaml.Node]]:
    if not isinstance(node, yaml.MappingNode):
        raise ParseError(f"{what} must be a mapping", _node_line(node))
    items = []
    for key_node, value_node in node.value:
        if not isinstance(key_node, yaml.ScalarNode):
            raise ParseError(f"{what} keys must be plain scalars", _node_line(key_node))
        items.append((str(key_node.value), value_node))
    return items


def _expect_sequence(node: yaml.Node, what: str) -> list[yaml.Node]:
    if not isinstance(node, yaml.SequenceNode):
        raise ParseError(f"{what} must be a sequence", _node_line(node))
    return list(node.value)


def _expect_int(node: yaml.Node, what: str) -> int:
    if not isinstance(node, yaml.ScalarNode):
        raise ParseError(f"{what} must be an integer", _node_line(node))
    try:
        return int(str(node.value), 10)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {node.value!r}", _node_line(node)) from None


def _expect_phase(node: yaml.Node, what: str) -> RationalPhase:
    if not isinstance(node, yaml.ScalarNode):
        raise ParseError(f"{what} must be a rational like \"1/4\"", _node_line(node))
    try:
        return RationalPhase(Fraction(str(node.value)))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{what} must be a rational like \"1/4\", got {node.value!r}", _node_line(node)) from None


def _parse_builtin(node: yaml.Node) -> AbelianAnyonModel:
    if isinstance(node, yaml.ScalarNode):
        name = str(node.value)
        try:
            return builtin_model(name)
        except ValueError as exc:
            raise ParseError(str(exc), _node_line(node)) from None
    fields: dict[str, yaml.Node] = {}
    for key, value in _expect_mapping(node, "builtin"):
        if key in fields:
            raise ParseError(f"duplicate builtin field {key!r}", _node_line(value))
        fields[key] = value
    kind_node = fields.pop("kind", None)
    if kind_node is None:
        raise ParseError("builtin mapping needs a 'kind' field", _node_line(node))
    if not isinstance(kind_node, yaml.ScalarNode):
        raise ParseError("builtin kind must be a name", _node_line(kind_node))
    kind = str(kind_node.value)
    if kind == "cyclic":
        if set(fields) != {"N", "p"}:
            raise ParseError("builtin cyclic needs exactly the fields N and p", _node_line(node))
        n = _expect_int(fields["N"], "N")
        p = _expect_int(fields["p"], "p")
        try:
            return cyclic_model(n, p)
        except (ValueError, InvalidFormError) as exc:
            raise ParseError(f"invalid cyclic model: {exc}", _node_line(node)) from None
    if kind in BUILTIN_MODELS:
        if fields:
            raise ParseError(f"builtin {kind!r} takes no parameters", _node_line(node))
        return builtin_model(kind)
    raise ParseError(f"unknown builtin kind {kind!r}", _node_line(kind_node))


def parse_model_form(text: str) -> "QuadraticForm | AbelianAnyonModel":
    """Parse a model file without checking the form axioms.

    Returns the raw QuadraticForm for a group/q file, so callers can run
    validate_quadratic and itemize any violations; builtin references come
    back as the prevalidated model.  Grammar problems raise ParseError with
    a line number.
    """
    try:
        root = yaml.compose(text)
    except yaml.YAMLError as exc:
        line = None
        mark = getattr(exc, "problem_mark", None)
        if mark is not None:
            line = mark.line + 1
        raise ParseError(f"not valid structured text: {getattr(exc, 'problem', exc)}", line) from None
    if root is None:
        raise ParseError("empty model file", 1)
    if isinstance(root, yaml.ScalarNode):
        raise ParseError(
            f"{str(root.value)!r} is not a builtin model name or a model mapping",
            _node_line(root),
        )

    fields = dict(_expect_mapping(root, "model file"))
    unknown = set(fields) - {"group", "q", "builtin"}
    if unknown:
        bad = sorted(unknown)[0]
        raise ParseError(f"unknown top-level field {bad!r}", _node_line(fields[bad]))

    if "builtin" in fields:
        if "group" in fields or "q" in fields:
            raise ParseError("builtin cannot be combined with group/q", _node_line(fields["builtin"]))
        return _parse_builtin(fields["builtin"])

    if "group" not in fields:
        raise ParseError("model file needs a 'group' field", 1)
    if "q" not in fields:
        raise ParseError("model file needs a 'q' field", 1)

    factor_nodes = _expect_sequence(fields["group"], "group")
    factors = tuple(_expect_int(n, "group factor") for n in factor_nodes)
    try:
        spec = GroupSpec(factors)
    except ValueError as exc:
        raise ParseError(str(exc), _node_line(fields["group"])) from None

    entries: dict[tuple[int, ...], RationalPhase] = {}
    for item in _expect_sequence(fields["q"], "q"):
        item_fields = dict(_expect_mapping(item, "q entry"))
        if set(item_fields) != {"elem", "value"}:
            raise ParseError("q entry needs exactly the fields elem and value", _node_line(item))
        coord_nodes = _expect_sequence(item_fields["elem"], "elem")
        coords = tuple(_expect_int(n, "elem coordinate") for n in coord_nodes)
        if len(coords) != len(factors):
            raise ParseError(
                f"elem has {len(coords)} coordinates, group has {len(factors)} factors",
                _node_line(item_fields["elem"]),
            )
        reduced = spec.element(coords).coords
        if reduced in entries:
            raise ParseError(f"duplicate q entry for element {list(reduced)}", _node_line(item))
        entries[reduced] = _expect_phase(item_fields["value"], "value")

    return QuadraticForm.from_entries(spec, entries)


def parse_model_text(text: str) -> AbelianAnyonModel:
    """Parse a model file: either

        group: [m1, ..., ms]
        q:
          - {elem: [coords], value: "p/q"}
          ...

    with one q entry per group element, or

        builtin: semion
        builtin: {kind: cyclic, N: 4, p: 1}

    Raises ParseError with a line number for grammar problems; form-axiom
    failures raise InvalidFormError as usual.
    """
    parsed = parse_model_form(text)
    if isinstance(parsed, AbelianAnyonModel):
        return parsed
    return AbelianAnyonModel(parsed)


def load_model(source: str | AbelianAnyonModel) -> AbelianAnyonModel:
    """Resolve a builtin name or model-file text into a model."""
    if isinstance(source, AbelianAnyonModel):
        return source
    if source in BUILTIN_MODELS:
        return builtin_model(source)
    return parse_model_text(source)
