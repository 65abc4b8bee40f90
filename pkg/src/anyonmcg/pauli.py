"""The Pauli group over G^n and Clifford membership by generator conjugation.

A Pauli label (phase, z, x) stands for e^(2 pi i phase) * Z_z * X_x acting as

    Z_z X_x |v> = chi_z(x + v) |x + v>

so multiplication reorders X_x1 past Z_z2 at the cost of chi_z2(x1)^(-1):

    (p1, z1, x1) * (p2, z2, x2) = (p1 + p2 - <z2, x1>, z1 + z2, x1 + x2).

Clifford membership is projective: the global phase of U never enters,
and conjugated labels may carry phases of any rational order, not just
powers of gamma = e^(pi i / |G|).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BoundExceededError, NotUnitaryError
from .groups import (
    DEFAULT_DENSE_BOUND,
    DEFAULT_TOL,
    GroupElement,
    GroupSpec,
    RationalPhase,
    pairing_phase,
)
from .model import AbelianAnyonModel

__all__ = [
    "PauliLabel",
    "pauli_matrix",
    "decompose_pauli",
    "pauli_generator_keys",
    "pauli_generator",
    "CliffordWitness",
    "is_clifford",
    "classify_normalizer",
    "GATE_CLASSES",
]

GATE_CLASSES = ("automorphism", "quadratic_phase", "fourier", "unknown")


@dataclass(frozen=True)
class PauliLabel:
    """e^(2 pi i phase) * Z_zpart * X_xpart on the group algebra of zpart.spec."""

    phase: RationalPhase
    zpart: GroupElement
    xpart: GroupElement

    def __post_init__(self) -> None:
        if self.zpart.spec != self.xpart.spec:
            raise ValueError("zpart and xpart must share a group spec")

    @property
    def spec(self) -> GroupSpec:
        return self.zpart.spec

    @classmethod
    def identity(cls, spec: GroupSpec) -> "PauliLabel":
        return cls(RationalPhase(0), spec.zero(), spec.zero())

    def __mul__(self, other: "PauliLabel") -> "PauliLabel":
        if self.spec != other.spec:
            raise ValueError("labels live on different groups")
        phase = self.phase + other.phase - pairing_phase(other.zpart, self.xpart)
        return PauliLabel(phase, self.zpart + other.zpart, self.xpart + other.xpart)

    def power(self, k: int) -> "PauliLabel":
        if k < 0:
            raise ValueError("only nonnegative powers are needed")
        result = PauliLabel.identity(self.spec)
        for _ in range(k):
            result = result * self
        return result

    def with_phase(self, phase: RationalPhase) -> "PauliLabel":
        return PauliLabel(phase, self.zpart, self.xpart)

    def matrix(self, dense_bound: int = DEFAULT_DENSE_BOUND) -> np.ndarray:
        return pauli_matrix(self, dense_bound)


def pauli_matrix(label: PauliLabel, dense_bound: int = DEFAULT_DENSE_BOUND) -> np.ndarray:
    """Dense matrix of a label: column v holds e^(2 pi i phase) chi_z(x+v) at row x+v."""
    spec = label.spec
    n = spec.order
    if n > dense_bound:
        raise BoundExceededError("Pauli matrix too large to materialize", n, dense_bound)
    mat = np.zeros((n, n), dtype=complex)
    for v in spec.iter_elements(bound=dense_bound):
        target = label.xpart + v
        entry = (label.phase + pairing_phase(label.zpart, target)).to_complex()
        mat[spec.index_of(target), spec.index_of(v)] = entry
    return mat


def _snap_phase(value: complex) -> RationalPhase:
    angle = cmath.phase(value) / (2.0 * cmath.pi)
    return RationalPhase(Fraction(angle).limit_denominator(10**9))


def decompose_pauli(u: np.ndarray, spec: GroupSpec, tol: float = DEFAULT_TOL) -> PauliLabel | None:
    """Inverse of pauli_matrix, or None when u is not a Pauli within tol.

    u must be a generalized permutation matrix whose permutation is
    translation by some x and whose nonzero entries are a constant times
    a character.
    """
    n = spec.order
    if u.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got {u.shape}")

    # locate the translation from column 0
    col0 = np.abs(u[:, 0])
    row0 = int(np.argmax(col0))
    if abs(col0[row0] - 1.0) > tol:
        return None
    xpart = spec.element_at(row0)
    const = u[row0, 0]

    # one coordinate of z per cyclic factor, from the column of each unit
    zcoords = []
    for j, m in enumerate(spec.flat_factors):
        ej = spec.unit(j)
        col = spec.index_of(ej)
        row = spec.index_of(xpart + ej)
        ratio = u[row, col] / const
        k = round(cmath.phase(ratio) / (2.0 * cmath.pi) * m) % m
        if abs(ratio - RationalPhase(k, m).to_complex()) > tol:
            return None
        zcoords.append(k)
    zpart = spec.element(tuple(zcoords))

    phase = _snap_phase(const * pairing_phase(zpart, xpart).to_complex().conjugate())
    label = PauliLabel(phase, zpart, xpart)
    if np.max(np.abs(u - pauli_matrix(label))) > tol:
        return None
    return label


def pauli_generator_keys(spec: GroupSpec) -> list[tuple[str, int]]:
    """Witness keys: X and Z on each flat cyclic factor, in coordinate order."""
    keys = []
    for j in range(spec.num_coords):
        keys.append(("X", j))
        keys.append(("Z", j))
    return keys


def pauli_generator(spec: GroupSpec, axis: str, j: int) -> PauliLabel:
    ej = spec.unit(j)
    zero = spec.zero()
    if axis == "X":
        return PauliLabel(RationalPhase(0), zero, ej)
    if axis == "Z":
        return PauliLabel(RationalPhase(0), ej, zero)
    raise ValueError(f"axis must be 'X' or 'Z', got {axis!r}")


@dataclass(frozen=True)
class CliffordWitness:
    """Conjugates of every Pauli generator under some Clifford unitary."""

    spec: GroupSpec
    images: dict[tuple[str, int], PauliLabel]

    def conjugate(self, label: PauliLabel) -> PauliLabel:
        """Image of an arbitrary label, rebuilt from the generator images."""
        if label.spec != self.spec:
            raise ValueError("label lives on a different group")
        result = PauliLabel.identity(self.spec).with_phase(label.phase)
        for j, c in enumerate(label.zpart.coords):
            result = result * self.images[("Z", j)].power(c)
        for j, c in enumerate(label.xpart.coords):
            result = result * self.images[("X", j)].power(c)
        return result


def _check_unitary(u: np.ndarray, tol: float) -> None:
    n = u.shape[0]
    if u.shape != (n, n) or n == 0:
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    residual = float(np.max(np.abs(u @ u.conj().T - np.eye(n))))
    if residual > max(tol, 1e-10):
        raise NotUnitaryError(f"matrix is not unitary (residual {residual:.3g})")


def is_clifford(u: np.ndarray, spec: GroupSpec, tol: float = DEFAULT_TOL) -> CliffordWitness | None:
    """Witness that u normalizes the Pauli group, or None.

    Conjugates each generator and decomposes; membership is projective, so
    a global phase on u changes nothing (it cancels in u P u†).
    """
    _check_unitary(u, tol)
    n = spec.order
    if u.shape != (n, n):
        raise ValueError(f"matrix dimension {u.shape[0]} does not match group order {n}")
    udag = u.conj().T
    images: dict[tuple[str, int], PauliLabel] = {}
    for axis, j in pauli_generator_keys(spec):
        conj = u @ pauli_matrix(pauli_generator(spec, axis, j)) @ udag
        label = decompose_pauli(conj, spec, tol)
        if label is None:
            return None
        images[(axis, j)] = label
    return CliffordWitness(spec, images)


def _resolve_spec(target: GroupSpec | AbelianAnyonModel) -> GroupSpec:
    if isinstance(target, AbelianAnyonModel):
        return target.spec
    return target


def classify_normalizer(
    u: np.ndarray,
    target: GroupSpec | AbelianAnyonModel,
    tol: float = DEFAULT_TOL,
) -> str:
    """One of 'automorphism', 'quadratic_phase', 'fourier', 'unknown'.

    automorphism: a 0/1 permutation matrix whose permutation preserves
    addition.  quadratic_phase: diagonal, with ratios zeta(g) = d_g/d_0
    satisfying zeta(g+h) = zeta(g) zeta(h) B(g,h) for a bicharacter B.
    fourier: all entries of modulus 1/sqrt(|A|) and, after normalizing the
    global phase so the (0,0) entry is 1/sqrt(|A|), the kernel is a
    bicharacter in both arguments (the transform to the dual basis under
    some nondegenerate pairing of A with its dual).
    """
    spec = _resolve_spec(target)
    _check_unitary(u, tol)
    n = spec.order
    if u.shape != (n, n):
        raise ValueError(f"matrix dimension {u.shape[0]} does not match group order {n}")
    elems = spec.elements(bound=max(n, 1))
    idx = {e.coords: i for i, e in enumerate(elems)}

    # automorphism: permutation matrix, permutation additive
    if np.max(np.abs(u - np.round(u.real))) <= tol:
        rounded = np.round(u.real).astype(int)
        if np.all((rounded == 0) | (rounded == 1)) and np.all(rounded.sum(axis=0) == 1):
            image = [elems[int(np.argmax(rounded[:, i]))] for i in range(n)]
            additive = all(
                image[idx[(a + b).coords]] == image[spec.index_of(a)] + image[spec.index_of(b)]
                for a in elems
                for b in elems
            )
            if additive:
                return "automorphism"

    # quadratic phase: diagonal with multiplicative-up-to-bicharacter ratios
    diag = np.diag(np.diag(u))
    if np.max(np.abs(u - diag)) <= tol:
        d = np.diag(u)
        if np.max(np.abs(np.abs(d) - 1.0)) <= tol:
            zeta = d / d[0]
            bich = np.empty((n, n), dtype=complex)
            for i, g in enumerate(elems):
                for j, h in enumerate(elems):
                    bich[i, j] = zeta[idx[(g + h).coords]] / (zeta[i] * zeta[j])
            ok = all(
                abs(
                    bich[idx[(g + gp).coords], j] - bich[spec.index_of(g), j] * bich[spec.index_of(gp), j]
                )
                <= tol
                for g in elems
                for gp in elems
                for j in range(n)
            )
            if ok:
                return "quadratic_phase"

    # fourier: flat modulus and a bicharacter kernel once the global phase
    # is fixed by the (0,0) entry
    scale = 1.0 / np.sqrt(float(n))
    if np.max(np.abs(np.abs(u) - scale)) <= tol:
        kernel = u / u[0, 0]
        row0 = np.max(np.abs(kernel[0, :] - 1.0))
        col0 = np.max(np.abs(kernel[:, 0] - 1.0))
        if row0 <= tol / scale and col0 <= tol / scale:
            ok = True
            for i, g in enumerate(elems):
                if not ok:
                    break
                for j, h in enumerate(elems):
                    k = idx[(g + h).coords]
                    if np.max(np.abs(kernel[k, :] - kernel[i, :] * kernel[j, :])) > tol / scale:
                        ok = False
                        break
                    if np.max(np.abs(kernel[:, k] - kernel[:, i] * kernel[:, j])) > tol / scale:
                        ok = False
                        break
            if ok:
                return "fourier"

    return "unknown"
