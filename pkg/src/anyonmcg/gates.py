"""Dehn-twist gates on H_G^(tensor g) and the induced projective
representation of the mapping class group.

The three gate species on the lexicographic basis of G^g:

    L |a>      = theta_a |a>                     (single qudit)
    M |a,b>    = theta_(a-b) |a,b>               (adjacent pair)
    O |a>      = sum_b theta_a^-1 S_ab theta_b^-1 |b>   (single qudit)

Humphries generator T_k of genus g maps to a placed gate:
T_0 -> L on qudit 2, T_1 -> L on qudit 1, T_(2i+1) -> M on (i, i+1),
T_(2i) -> O on qudit i.  For genus 1 only T_1 and T_2 exist.

Matrices are held exactly as (rational phase) * |G|^(-k/2) per entry and
materialized to complex floats on demand.  The global anchor-phase factor
on L and M twists is dropped by default (the representation is treated
projectively) and can be restored with include_anchor=True.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BoundExceededError, ConsistencyError
from .groups import (
    DEFAULT_DENSE_BOUND,
    DEFAULT_TOL,
    GroupElement,
    RationalPhase,
)
from .model import AbelianAnyonModel

__all__ = [
    "PlacedGate",
    "MCGWord",
    "ExactOperator",
    "gate_L",
    "gate_M",
    "gate_O",
    "humphries_gate",
    "humphries_indices",
    "placed_exact",
    "placed_dense",
    "word_to_matrix",
    "unitarity_residual",
    "projective_residual",
    "check_relation_projective",
    "expected_relation",
    "relation_suite",
    "ImageOrderResult",
    "projective_image_order",
    "emit_generator",
    "format_matrix_rows",
]


@dataclass(frozen=True)
class PlacedGate:
    """One of L, M, O acting on named qudits (1-based) of a genus-g state."""

    kind: str
    qudits: tuple[int, ...]
    genus: int

    def __post_init__(self) -> None:
        if self.kind not in ("L", "M", "O"):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.genus < 1:
            raise ValueError("genus must be at least 1")
        expected = 2 if self.kind == "M" else 1
        if len(self.qudits) != expected:
            raise ValueError(f"gate {self.kind} takes {expected} qudit index(es), got {self.qudits}")
        for i in self.qudits:
            if not 1 <= i <= self.genus:
                raise ValueError(f"qudit index {i} out of range 1..{self.genus}")
        if self.kind == "M" and self.qudits[1] != self.qudits[0] + 1:
            raise ValueError(f"gate M needs an adjacent pair (i, i+1), got {self.qudits}")


@dataclass(frozen=True)
class MCGWord:
    """A word in Humphries twist indices; the rightmost letter acts first."""

    genus: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        for k in self.letters:
            humphries_gate(self.genus, k)  # validates range and the genus-1 convention


def humphries_indices(genus: int) -> list[int]:
    """The legal twist indices at this genus: {1, 2} for the torus, else 0..2g."""
    if genus == 1:
        return [1, 2]
    return list(range(2 * genus + 1))


def humphries_gate(genus: int, k: int) -> PlacedGate:
    """Placement of the twist T_k as a gate on H_G^(tensor genus)."""
    if genus < 1:
        raise ValueError("genus must be at least 1")
    if genus == 1:
        if k not in (1, 2):
            raise ValueError(
                f"T_{k} is not defined at genus 1: the torus carries only the two twists T_1 and T_2"
            )
    elif not 0 <= k <= 2 * genus:
        raise ValueError(f"twist index {k} out of range 0..{2 * genus} for genus {genus}")
    if k == 0:
        return PlacedGate("L", (2,), genus)
    if k == 1:
        return PlacedGate("L", (1,), genus)
    if k % 2 == 0:
        return PlacedGate("O", (k // 2,), genus)
    i = (k - 1) // 2
    return PlacedGate("M", (i, i + 1), genus)


@dataclass
class ExactOperator:
    """A matrix whose every nonzero entry is e^(2 pi i phase) * base^(-scale_power/2).

    ``base`` is |G| for the model's single-qudit group; rows/columns index
    the lexicographic basis of G^genus.
    """

    dim: int
    base: int
    scale_power: int
    entries: dict[tuple[int, int], RationalPhase] = field(default_factory=dict)

    def to_dense(self) -> np.ndarray:
        scale = float(self.base) ** (-self.scale_power / 2.0)
        mat = np.zeros((self.dim, self.dim), dtype=complex)
        for (r, c), phase in self.entries.items():
            mat[r, c] = phase.to_complex() * scale
        return mat

    def add_global_phase(self, phase: RationalPhase) -> "ExactOperator":
        return ExactOperator(
            self.dim,
            self.base,
            self.scale_power,
            {rc: p + phase for rc, p in self.entries.items()},
        )

    def dump(self) -> dict:
        items = sorted(self.entries.items())
        return {
            "dim": self.dim,
            "base": self.base,
            "scale_power": self.scale_power,
            "entries": [{"row": r, "col": c, "phase": str(p)} for (r, c), p in items],
        }


def _anchor_phase_exact(model: AbelianAnyonModel) -> RationalPhase:
    # p_-/D = e^(-c pi i/4) with integer central charge c
    return RationalPhase(-model.central_charge(), 8)


def placed_exact(model: AbelianAnyonModel, gate: PlacedGate, include_anchor: bool = False) -> ExactOperator:
    """The full |G|^g matrix of a placed gate, entries kept exact."""
    model.require_modular()
    spec = model.spec.power(gate.genus)
    dim = spec.order
    op = ExactOperator(dim, model.order, 0)
    q = model.form.value
    if gate.kind == "L":
        i = gate.qudits[0] - 1
        for a in spec.iter_elements(bound=dim):
            idx = spec.index_of(a)
            op.entries[(idx, idx)] = q(a.block(i))
    elif gate.kind == "M":
        i, j = gate.qudits[0] - 1, gate.qudits[1] - 1
        for a in spec.iter_elements(bound=dim):
            idx = spec.index_of(a)
            op.entries[(idx, idx)] = q(a.block(i) - a.block(j))
    else:  # O
        op.scale_power = 1
        i = gate.qudits[0] - 1
        for a in spec.iter_elements(bound=dim):
            col = spec.index_of(a)
            ai = a.block(i)
            for b in model.elements():
                row = spec.index_of(a.replace_block(i, b))
                op.entries[(row, col)] = model.bilinear(ai, b) - q(ai) - q(b)
    if include_anchor and gate.kind in ("L", "M"):
        op = op.add_global_phase(_anchor_phase_exact(model))
    return op


def placed_dense(
    model: AbelianAnyonModel,
    gate: PlacedGate,
    dense_bound: int = DEFAULT_DENSE_BOUND,
    include_anchor: bool = False,
) -> np.ndarray:
    dim = model.order ** gate.genus
    if dim > dense_bound:
        raise BoundExceededError("gate matrix too large to materialize", dim, dense_bound)
    return placed_exact(model, gate, include_anchor=include_anchor).to_dense()


def gate_L(model: AbelianAnyonModel, include_anchor: bool = False) -> np.ndarray:
    return placed_dense(model, PlacedGate("L", (1,), 1), include_anchor=include_anchor)


def gate_M(model: AbelianAnyonModel, include_anchor: bool = False) -> np.ndarray:
    return placed_dense(model, PlacedGate("M", (1, 2), 2), include_anchor=include_anchor)


def gate_O(model: AbelianAnyonModel) -> np.ndarray:
    return placed_dense(model, PlacedGate("O", (1,), 1))


def word_to_matrix(
    model: AbelianAnyonModel,
    word: MCGWord,
    dense_bound: int = DEFAULT_DENSE_BOUND,
    include_anchor: bool = False,
) -> np.ndarray:
    """Product of the twist gates; the rightmost letter is applied first."""
    dim = model.order ** word.genus
    if dim > dense_bound:
        raise BoundExceededError("word matrix too large to materialize", dim, dense_bound)
    result = np.eye(dim, dtype=complex)
    cache: dict[int, np.ndarray] = {}
    for k in word.letters:
        if k not in cache:
            cache[k] = placed_dense(model, humphries_gate(word.genus, k), dense_bound, include_anchor)
        result = result @ cache[k]
    return result


def unitarity_residual(mat: np.ndarray) -> float:
    n = mat.shape[0]
    return float(np.max(np.abs(mat @ mat.conj().T - np.eye(n))))


def projective_residual(u1: np.ndarray, u2: np.ndarray) -> tuple[float, complex]:
    """Max-entry distance between u1 and lambda*u2, with the unit lambda
    recovered from the largest-modulus entry of u2."""
    if u1.shape != u2.shape:
        raise ValueError("shape mismatch")
    r, c = np.unravel_index(np.argmax(np.abs(u2)), u2.shape)
    pivot = u2[r, c]
    if abs(pivot) < 1e-12:
        raise ConsistencyError("projective comparison against a zero matrix")
    lam = u1[r, c] / pivot
    mod = abs(lam)
    if mod > 1e-12:
        lam = lam / mod
    return float(np.max(np.abs(u1 - lam * u2))), lam


def check_relation_projective(
    model: AbelianAnyonModel,
    w1: MCGWord,
    w2: MCGWord,
    tol: float = DEFAULT_TOL,
    dense_bound: int = DEFAULT_DENSE_BOUND,
) -> bool:
    if w1.genus != w2.genus:
        raise ValueError("words must have the same genus")
    residual, _ = projective_residual(
        word_to_matrix(model, w1, dense_bound),
        word_to_matrix(model, w2, dense_bound),
    )
    return residual <= tol


def expected_relation(j: int, k: int) -> str:
    """'braid' or 'commute' for distinct Humphries indices, from the standard
    configuration: the chain curves c_1..c_2g meet exactly when adjacent,
    and c_0 meets only c_4."""
    if j == k:
        raise ValueError("indices must differ")
    j, k = min(j, k), max(j, k)
    if j == 0:
        return "braid" if k == 4 else "commute"
    return "braid" if k - j == 1 else "commute"


def relation_suite(
    model: AbelianAnyonModel,
    genus: int,
    tol: float = DEFAULT_TOL,
    dense_bound: int = DEFAULT_DENSE_BOUND,
) -> list[dict]:
    """Check every pair of Humphries generators against its expected relation.

    Commuting pair: T_j T_k = T_k T_j; braiding pair: T_j T_k T_j = T_k T_j T_k,
    both projectively.  Returns one report per pair; failures are reported,
    not raised.
    """
    indices = humphries_indices(genus)
    reports = []
    for a, j in enumerate(indices):
        for k in indices[a + 1 :]:
            relation = expected_relation(j, k)
            if relation == "commute":
                w1 = MCGWord(genus, (j, k))
                w2 = MCGWord(genus, (k, j))
            else:
                w1 = MCGWord(genus, (j, k, j))
                w2 = MCGWord(genus, (k, j, k))
            residual, _ = projective_residual(
                word_to_matrix(model, w1, dense_bound),
                word_to_matrix(model, w2, dense_bound),
            )
            reports.append(
                {
                    "pair": [j, k],
                    "relation": relation,
                    "residual": residual,
                    "ok": residual <= tol,
                }
            )
    return reports


@dataclass(frozen=True)
class ImageOrderResult:
    order: int | None
    exceeded: bool
    visited: int
    dim: int


def _canonical_key(mat: np.ndarray, grid: float = 1e-9) -> tuple:
    """Hashable form of a matrix up to global phase: divide by the first
    nonzero entry in row-major order, then round to the grid."""
    flat = mat.ravel()
    pivot = 0j
    for value in flat:
        if abs(value) > 1e-6:
            pivot = value
            break
    if pivot == 0j:
        raise ConsistencyError("cannot canonicalize a zero matrix")
    normalized = flat / pivot
    rounded = np.round(normalized / grid) * grid
    return tuple(complex(v) for v in rounded)


def projective_image_order(
    model: AbelianAnyonModel,
    genus: int,
    bound: int = 200000,
    dense_bound: int = DEFAULT_DENSE_BOUND,
) -> ImageOrderResult:
    """Order of the projective image of MCG(Sigma_genus), by BFS closure
    over products of the generator matrices.

    Exceeding ``bound`` visited elements is reported in the result, not
    raised.  Deterministic: generators are applied in ascending twist order.
    """
    dim = model.order ** genus
    if dim > dense_bound:
        raise BoundExceededError("image-order search too large", dim, dense_bound)
    generators = [
        placed_dense(model, humphries_gate(genus, k), dense_bound) for k in humphries_indices(genus)
    ]
    identity = np.eye(dim, dtype=complex)
    seen: dict[tuple, np.ndarray] = {_canonical_key(identity): identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for mat in frontier:
            for gen in generators:
                prod = mat @ gen
                key = _canonical_key(prod)
                if key not in seen:
                    if len(seen) >= bound:
                        return ImageOrderResult(None, True, len(seen), dim)
                    seen[key] = prod
                    next_frontier.append(prod)
        frontier = next_frontier
    return ImageOrderResult(len(seen), False, len(seen), dim)


def format_matrix_rows(mat: np.ndarray) -> list[str]:
    """Rows of comma-separated re+im i pairs."""
    rows = []
    for row in mat:
        # adding 0.0 normalizes negative zero so entries print as 0, not -0
        rows.append(", ".join(f"{v.real + 0.0:.16g}{v.imag + 0.0:+.16g}i" for v in row))
    return rows


def emit_generator(
    model: AbelianAnyonModel,
    genus: int,
    k: int,
    include_anchor: bool = False,
    dense_bound: int = DEFAULT_DENSE_BOUND,
) -> dict:
    """Emission record for one Humphries generator: numeric rows plus the
    exact-phase dump."""
    gate = humphries_gate(genus, k)
    dim = model.order ** genus
    if dim > dense_bound:
        raise BoundExceededError("gate matrix too large to materialize", dim, dense_bound)
    exact = placed_exact(model, gate, include_anchor=include_anchor)
    dense = exact.to_dense()
    return {
        "twist": k,
        "kind": gate.kind,
        "qudits": list(gate.qudits),
        "genus": genus,
        "dim": dim,
        "unitarity_residual": unitarity_residual(dense),
        "rows": format_matrix_rows(dense),
        "exact": exact.dump(),
    }
