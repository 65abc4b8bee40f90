"""Stabilizer simulation of normalizer circuits, with a dense oracle.

A basis state |a> of G^g is stabilized by the s*g commuting Paulis
chi_{e_j}(a)^(-1) Z_{e_j}; a circuit of twist gates (and, via the API, raw
normalizer gates) conjugates the generator list.  Phases stay exact
rationals end to end; floats appear only in measure_all and in the dense
state-vector oracle.

Closed-form conjugation in the canonical (phase, z, x) ordering, writing
zb for the isomorphism with chi_{zb(g)} = e^(2 pi i b(g, .)):

    L on qudit i:  phase += q(x_i) - b(x_i, x_i);   z += zb(x_i) on block i
    M on (i, j):   d = x_i - x_j; phase += q(d) - b(d, d);
                   z += zb(d) on block i, -= zb(d) on block j
    O on qudit i:  Theta^-1, then the bare transform, then Theta^-1, where
        Theta^-1:       g = x_i; phase += b(g, g) - q(g); z_i -= zb(g)
        bare transform: w = zb^-1(z_i); phase += b(x_i, w);
                        z_i = zb(x_i); x_i = -w

Each is verified against dense conjugation in the tests; they are the
matrix-level content of the normalizer-membership proof for the twists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

import numpy as np

from .errors import BoundExceededError, ConsistencyError, NotNormalizerError, ParseError
from .gates import MCGWord, PlacedGate, humphries_gate, humphries_indices, placed_dense
from .groups import (
    DEFAULT_DENSE_BOUND,
    DEFAULT_ENUM_BOUND,
    DEFAULT_TOL,
    GroupElement,
    RationalPhase,
    pairing_phase,
)
from .model import AbelianAnyonModel
from .pauli import CliffordWitness, PauliLabel, is_clifford

__all__ = [
    "RawGate",
    "Circuit",
    "StabilizerState",
    "init_basis_state",
    "apply_gate",
    "measure_all",
    "simulate_stabilizer",
    "dense_simulate",
    "total_variation",
    "compare",
    "parse_circuit_text",
    "random_circuit",
]


@dataclass(frozen=True, eq=False)
class RawGate:
    """A user-supplied unitary on a run of adjacent qudits.

    Applied by table-driven conjugation: a Clifford witness is computed
    once and reused; a matrix without a witness raises a not-normalizer
    error at simulation time.
    """

    matrix: np.ndarray
    qudits: tuple[int, ...]
    genus: int
    name: str = "raw"

    def __post_init__(self) -> None:
        if not self.qudits:
            raise ValueError("a raw gate needs at least one qudit")
        for a, b in zip(self.qudits, self.qudits[1:]):
            if b != a + 1:
                raise ValueError("raw gate qudits must be consecutive ascending")
        if not (1 <= self.qudits[0] and self.qudits[-1] <= self.genus):
            raise ValueError(f"qudits {self.qudits} out of range 1..{self.genus}")
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise ValueError("raw gate matrix must be square")


CircuitGate = PlacedGate | RawGate


@dataclass(frozen=True, eq=False)
class Circuit:
    """A genus, an initial basis state, gates in application order, and
    whether a terminal measurement of all qudits was requested."""

    model: AbelianAnyonModel
    genus: int
    initial: GroupElement
    gates: tuple[CircuitGate, ...]
    measured: bool = True

    def __post_init__(self) -> None:
        spec = self.model.spec.power(self.genus)
        if self.initial.spec != spec:
            raise ValueError("initial state does not live on G^genus")
        for gate in self.gates:
            if gate.genus != self.genus:
                raise ValueError("gate genus does not match circuit genus")
            if isinstance(gate, RawGate):
                expected = self.model.order ** len(gate.qudits)
                if gate.matrix.shape[0] != expected:
                    raise ValueError(
                        f"raw gate dimension {gate.matrix.shape[0]} does not match |G|^{len(gate.qudits)} = {expected}"
                    )

    @classmethod
    def from_word(
        cls,
        model: AbelianAnyonModel,
        word: MCGWord,
        initial: GroupElement | None = None,
        measured: bool = True,
    ) -> "Circuit":
        spec = model.spec.power(word.genus)
        init = initial if initial is not None else spec.zero()
        gates = tuple(humphries_gate(word.genus, k) for k in word.letters)
        return cls(model, word.genus, init, gates, measured)

    def qft_count(self) -> int:
        """Number of O-type twists (the T_2i images); raw gates are not counted."""
        return sum(1 for g in self.gates if isinstance(g, PlacedGate) and g.kind == "O")


@dataclass(frozen=True)
class StabilizerState:
    """Generator labels of the stabilizer group, one per cyclic factor per qudit."""

    generators: tuple[PauliLabel, ...]

    @property
    def spec(self):
        return self.generators[0].spec


def init_basis_state(model: AbelianAnyonModel, genus: int, a: GroupElement) -> StabilizerState:
    """|a> is stabilized by chi_{e_j}(a)^(-1) Z_{e_j} for each flat coordinate j."""
    spec = model.spec.power(genus)
    spec._check(a)
    gens = []
    for j in range(spec.num_coords):
        ej = spec.unit(j)
        gens.append(PauliLabel(-pairing_phase(ej, a), ej, spec.zero()))
    return StabilizerState(tuple(gens))


def _update_L(model: AbelianAnyonModel, label: PauliLabel, block: int) -> PauliLabel:
    spec = label.spec
    g = label.xpart.block(block)
    q = model.form.value
    phase = label.phase + q(g) - model.bilinear(g, g)
    zpart = label.zpart + spec.embed_block(model.zb(g), block)
    return PauliLabel(phase, zpart, label.xpart)


def _update_M(model: AbelianAnyonModel, label: PauliLabel, bi: int, bj: int) -> PauliLabel:
    spec = label.spec
    d = label.xpart.block(bi) - label.xpart.block(bj)
    q = model.form.value
    phase = label.phase + q(d) - model.bilinear(d, d)
    zd = model.zb(d)
    zpart = label.zpart + spec.embed_block(zd, bi) - spec.embed_block(zd, bj)
    return PauliLabel(phase, zpart, label.xpart)


def _update_theta_inv(model: AbelianAnyonModel, label: PauliLabel, block: int) -> PauliLabel:
    spec = label.spec
    g = label.xpart.block(block)
    q = model.form.value
    phase = label.phase + model.bilinear(g, g) - q(g)
    zpart = label.zpart - spec.embed_block(model.zb(g), block)
    return PauliLabel(phase, zpart, label.xpart)


def _update_bare_transform(model: AbelianAnyonModel, label: PauliLabel, block: int) -> PauliLabel:
    spec = label.spec
    xi = label.xpart.block(block)
    w = model.zb_inverse(label.zpart.block(block))
    phase = label.phase + model.bilinear(xi, w)
    zpart = label.zpart.replace_block(block, model.zb(xi))
    xpart = label.xpart.replace_block(block, -w)
    return PauliLabel(phase, zpart, xpart)


def _update_O(model: AbelianAnyonModel, label: PauliLabel, block: int) -> PauliLabel:
    label = _update_theta_inv(model, label, block)
    label = _update_bare_transform(model, label, block)
    return _update_theta_inv(model, label, block)


def _conjugate_by_witness(
    witness: CliffordWitness, label: PauliLabel, blocks: tuple[int, ...]
) -> PauliLabel:
    """Conjugate only the named blocks of the label through the witness."""
    spec = label.spec
    sub_spec = witness.spec
    s = len(spec.factors)
    sub_z = [0] * sub_spec.num_coords
    sub_x = [0] * sub_spec.num_coords
    for pos, b in enumerate(blocks):
        sub_z[pos * s : (pos + 1) * s] = label.zpart.block(b).coords
        sub_x[pos * s : (pos + 1) * s] = label.xpart.block(b).coords
    sub = PauliLabel(RationalPhase(0), sub_spec.element(tuple(sub_z)), sub_spec.element(tuple(sub_x)))
    conj = witness.conjugate(sub)
    zpart, xpart = label.zpart, label.xpart
    for pos, b in enumerate(blocks):
        zpart = zpart.replace_block(b, conj.zpart.block(pos))
        xpart = xpart.replace_block(b, conj.xpart.block(pos))
    return PauliLabel(label.phase + conj.phase, zpart, xpart)


def apply_gate(
    model: AbelianAnyonModel,
    state: StabilizerState,
    gate: CircuitGate,
    tol: float = DEFAULT_TOL,
    witness_cache: dict | None = None,
) -> StabilizerState:
    """Conjugate every generator through the gate."""
    if isinstance(gate, PlacedGate):
        if gate.kind == "L":
            b = gate.qudits[0] - 1
            gens = tuple(_update_L(model, lab, b) for lab in state.generators)
        elif gate.kind == "M":
            bi, bj = gate.qudits[0] - 1, gate.qudits[1] - 1
            gens = tuple(_update_M(model, lab, bi, bj) for lab in state.generators)
        else:
            b = gate.qudits[0] - 1
            gens = tuple(_update_O(model, lab, b) for lab in state.generators)
        return StabilizerState(gens)

    key = id(gate)
    witness = witness_cache.get(key) if witness_cache is not None else None
    if witness is None:
        sub_spec = model.spec.power(len(gate.qudits))
        witness = is_clifford(gate.matrix, sub_spec, tol)
        if witness is None:
            raise NotNormalizerError(
                f"gate {gate.name!r} does not normalize the Pauli group within tol {tol}"
            )
        if witness_cache is not None:
            witness_cache[key] = witness
    blocks = tuple(i - 1 for i in gate.qudits)
    gens = tuple(_conjugate_by_witness(witness, lab, blocks) for lab in state.generators)
    return StabilizerState(gens)


def _enumerate_stabilizer(state: StabilizerState, bound: int) -> list[PauliLabel]:
    """All |G|^g elements of the stabilizer group, by generator powers."""
    spec = state.spec
    if spec.order > bound:
        raise BoundExceededError("stabilizer group too large to enumerate", spec.order, bound)
    power_tables = []
    for gen, m in zip(state.generators, spec.flat_factors):
        row = [PauliLabel.identity(spec)]
        for _ in range(m - 1):
            row.append(row[-1] * gen)
        power_tables.append(row)

    elements = [PauliLabel.identity(spec)]
    for row in power_tables:
        elements = [acc * p for acc in elements for p in row[: len(row)]]

    seen: dict[tuple, RationalPhase] = {}
    for lab in elements:
        key = (lab.zpart.coords, lab.xpart.coords)
        if key in seen:
            raise ConsistencyError("stabilizer generators are not independent")
        seen[key] = lab.phase
    if len(elements) != spec.order:
        raise ConsistencyError(
            f"stabilizer group has {len(elements)} elements, expected {spec.order}"
        )
    return elements


def measure_all(
    state: StabilizerState,
    enum_bound: int = DEFAULT_ENUM_BOUND,
) -> dict[tuple[int, ...], float]:
    """Born-rule distribution of a terminal all-qudit measurement:
    P(x) = (1/|S|) sum over stabilizer elements with zero x-part of
    phase * chi_z(x)."""
    spec = state.spec
    elements = _enumerate_stabilizer(state, enum_bound)
    diagonal = [lab for lab in elements if lab.xpart.is_zero()]
    size = len(elements)
    outcomes = spec.elements(bound=enum_bound)
    coords_mat = np.array([x.coords for x in outcomes], dtype=float).reshape(len(outcomes), -1)
    inv_m = np.array([1.0 / m for m in spec.flat_factors])
    totals = np.zeros(len(outcomes), dtype=complex)
    for lab in diagonal:
        exponents = coords_mat @ (np.array(lab.zpart.coords, dtype=float) * inv_m)
        totals += np.exp(2j * np.pi * (exponents + float(lab.phase.fraction)))
    totals /= size
    worst_imag = float(np.max(np.abs(totals.imag))) if len(outcomes) else 0.0
    if worst_imag > 1e-9:
        raise ConsistencyError(f"outcome probability has imaginary part {worst_imag:.3g}")
    probs = totals.real
    if float(np.min(probs)) < -1e-12:
        raise ConsistencyError(f"outcome probability {float(np.min(probs)):.3g} below zero")
    return {x.coords: float(min(max(p, 0.0), 1.0)) for x, p in zip(outcomes, probs)}


def simulate_stabilizer(
    circuit: Circuit,
    tol: float = DEFAULT_TOL,
    enum_bound: int = DEFAULT_ENUM_BOUND,
) -> dict[tuple[int, ...], float] | None:
    """Run the circuit by stabilizer tracking; distribution if measured."""
    circuit.model.require_modular()
    state = init_basis_state(circuit.model, circuit.genus, circuit.initial)
    cache: dict = {}
    for gate in circuit.gates:
        state = apply_gate(circuit.model, state, gate, tol, witness_cache=cache)
    if not circuit.measured:
        return None
    return measure_all(state, enum_bound)


def _placed_raw_dense(model: AbelianAnyonModel, gate: RawGate, dense_bound: int) -> np.ndarray:
    dim = model.order ** gate.genus
    if dim > dense_bound:
        raise BoundExceededError("circuit too large for the dense oracle", dim, dense_bound)
    before = model.order ** (gate.qudits[0] - 1)
    after = model.order ** (gate.genus - gate.qudits[-1])
    return np.kron(np.kron(np.eye(before), gate.matrix), np.eye(after))


def dense_simulate(
    circuit: Circuit,
    dense_bound: int = DEFAULT_DENSE_BOUND,
) -> dict[tuple[int, ...], float] | None:
    """State-vector oracle; distribution of |amplitude|^2 if measured."""
    circuit.model.require_modular()
    spec = circuit.model.spec.power(circuit.genus)
    dim = spec.order
    if dim > dense_bound:
        raise BoundExceededError("circuit too large for the dense oracle", dim, dense_bound)
    psi = np.zeros(dim, dtype=complex)
    psi[spec.index_of(circuit.initial)] = 1.0
    for gate in circuit.gates:
        if isinstance(gate, PlacedGate):
            u = placed_dense(circuit.model, gate, dense_bound)
        else:
            u = _placed_raw_dense(circuit.model, gate, dense_bound)
        psi = u @ psi
    if not circuit.measured:
        return None
    probs = np.abs(psi) ** 2
    return {e.coords: float(probs[i]) for i, e in enumerate(spec.elements(bound=dense_bound))}


def total_variation(
    p: dict[tuple[int, ...], float], q: dict[tuple[int, ...], float]
) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


def compare(
    circuit: Circuit,
    tol: float = DEFAULT_TOL,
    dense_bound: int = DEFAULT_DENSE_BOUND,
) -> float:
    """Total-variation distance between the stabilizer and dense backends."""
    if not circuit.measured:
        circuit = replace(circuit, measured=True)
    stab = simulate_stabilizer(circuit, tol)
    dense = dense_simulate(circuit, dense_bound)
    assert stab is not None and dense is not None
    return total_variation(stab, dense)


def random_circuit(
    model: AbelianAnyonModel,
    genus: int,
    num_gates: int,
    seed: int,
    random_initial: bool = True,
) -> Circuit:
    """Seeded random Humphries word, with a random initial basis state."""
    rng = random.Random(seed)
    spec = model.spec.power(genus)
    letters = tuple(rng.choice(humphries_indices(genus)) for _ in range(num_gates))
    if random_initial:
        initial = spec.element(tuple(rng.randrange(m) for m in spec.flat_factors))
    else:
        initial = spec.zero()
    return Circuit.from_word(model, MCGWord(genus, letters), initial)


# ---------------------------------------------------------------------------
# circuit file grammar


def parse_circuit_text(text: str, model: AbelianAnyonModel) -> Circuit:
    """One directive per line: `genus <g>`, `init <c1,..,cs per qudit>`,
    `twist <k>`, `measure`; `#` starts a comment.  `genus` must come first,
    `init` (optional, default all zeros) must precede every `twist`, and
    `measure` (optional) must be last."""
    genus: int | None = None
    initial: GroupElement | None = None
    gates: list[PlacedGate] = []
    measured = False
    saw_twist = False

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        directive, args = parts[0], parts[1:]
        if measured:
            raise ParseError("no directives may follow measure", lineno)

        if directive == "genus":
            if genus is not None:
                raise ParseError("duplicate genus directive", lineno)
            if len(args) != 1:
                raise ParseError("genus takes exactly one integer", lineno)
            try:
                genus = int(args[0], 10)
            except ValueError:
                raise ParseError(f"genus must be an integer, got {args[0]!r}", lineno) from None
            if genus < 1:
                raise ParseError("genus must be at least 1", lineno)
            continue

        if genus is None:
            raise ParseError(f"{directive} before genus", lineno)
        spec = model.spec.power(genus)

        if directive == "init":
            if initial is not None:
                raise ParseError("duplicate init directive", lineno)
            if saw_twist:
                raise ParseError("init must come before every twist", lineno)
            if len(args) != genus:
                raise ParseError(f"init needs {genus} qudit token(s), got {len(args)}", lineno)
            coords: list[int] = []
            s = len(model.spec.factors)
            for token in args:
                pieces = token.split(",")
                if len(pieces) != s:
                    raise ParseError(
                        f"each init token needs {s} comma-separated coordinate(s), got {token!r}",
                        lineno,
                    )
                for piece in pieces:
                    try:
                        coords.append(int(piece, 10))
                    except ValueError:
                        raise ParseError(f"coordinate must be an integer, got {piece!r}", lineno) from None
            initial = spec.element(tuple(coords))
        elif directive == "twist":
            if len(args) != 1:
                raise ParseError("twist takes exactly one integer", lineno)
            try:
                k = int(args[0], 10)
            except ValueError:
                raise ParseError(f"twist index must be an integer, got {args[0]!r}", lineno) from None
            try:
                gates.append(humphries_gate(genus, k))
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            saw_twist = True
        elif directive == "measure":
            if args:
                raise ParseError("measure takes no argument", lineno)
            measured = True
        else:
            raise ParseError(f"unknown directive {directive!r}", lineno)

    if genus is None:
        raise ParseError("circuit has no genus directive", 1)
    spec = model.spec.power(genus)
    if initial is None:
        initial = spec.zero()
    return Circuit(model, genus, initial, tuple(gates), measured)
