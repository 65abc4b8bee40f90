"""Golden-ratio torus data and the one-qubit Clifford obstruction check.

The torus representation attached to the golden-ratio fusion rules assigns
the twist T = diag(1, e^{4 pi i/5}) and a real symmetric S built from the
golden ratio.  T has projective order five while the one-qubit Clifford
group has only 24 classes, so a Clifford T would have to reduce to the
identity class; absorbing the twist phases into the basis leaves a
rephased S whose off-diagonal entries fail every structural property the
order-two Clifford classes share.  This module enumerates the 24 classes
as the closure of H and Q modulo phase, labels each by its permutation of
the four cube diagonals of the Bloch sphere, and verifies the obstruction
numerically.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError

PHI = (1.0 + math.sqrt(5.0)) / 2.0

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0)
PHASE_GATE = np.array([[1, 0], [0, 1j]], dtype=complex)

for _mat in (PAULI_X, PAULI_Y, PAULI_Z, HADAMARD, PHASE_GATE):
    _mat.setflags(write=False)

_PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

# Numbering of the four main diagonals of the cube with vertices
# (+-1, +-1, +-1); this choice makes the Hadamard class act as (12) and
# the phase-gate class as (1234).
CUBE_DIAGONALS = (
    np.array([1.0, -1.0, 1.0]),
    np.array([1.0, 1.0, 1.0]),
    np.array([1.0, -1.0, -1.0]),
    np.array([1.0, 1.0, -1.0]),
)


@dataclass(frozen=True)
class FibTorusData:
    """Torus move matrices and fusion data for the golden-ratio model."""

    phi: float
    dims: tuple[float, float]
    t_matrix: np.ndarray
    s_matrix: np.ndarray
    r_vacuum: complex
    r_tau: complex
    f_matrix: np.ndarray


def fib_torus_data() -> FibTorusData:
    """Build the golden-ratio torus data and check its basic identities."""
    t = np.diag([1.0, np.exp(4j * np.pi / 5.0)]).astype(complex)
    s = np.array([[1.0, PHI], [PHI, -1.0]], dtype=complex) / math.sqrt(2.0 + PHI)
    f = np.array(
        [[1.0 / PHI, PHI**-0.5], [PHI**-0.5, -1.0 / PHI]], dtype=complex
    )
    for mat in (t, s, f):
        mat.setflags(write=False)
    data = FibTorusData(
        phi=PHI,
        dims=(1.0, PHI),
        t_matrix=t,
        s_matrix=s,
        r_vacuum=complex(np.exp(-4j * np.pi / 5.0)),
        r_tau=complex(np.exp(3j * np.pi / 5.0)),
        f_matrix=f,
    )
    _check_torus_data(data)
    return data


def _check_torus_data(data: FibTorusData) -> None:
    s, t = data.s_matrix, data.t_matrix
    eye = np.eye(2)
    if np.max(np.abs(s @ s.conj().T - eye)) > 1e-12:
        raise ConsistencyError("S is not unitary")
    if np.max(np.abs(s - s.T)) > 1e-12:
        raise ConsistencyError("S is not symmetric")
    if np.max(np.abs(np.linalg.matrix_power(t, 5) - eye)) > 1e-12:
        raise ConsistencyError("T does not have order five")
    if not projectively_equal(s @ s, eye, 1e-12):
        raise ConsistencyError("S squared is not projectively trivial")


def projective_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius distance from a to the closest unit-phase multiple of b.

    The minimizing phase is the normalized overlap trace; the norm of the
    difference is then taken entrywise, which keeps near-matches at float
    precision instead of the sqrt-of-cancellation floor of the closed form
    sqrt(|a|^2 + |b|^2 - 2|tr(b* a)|).
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shapes differ: {a.shape} vs {b.shape}")
    overlap = np.trace(b.conj().T @ a)
    lam = overlap / abs(overlap) if abs(overlap) > 0.0 else 1.0
    return float(np.linalg.norm(a - lam * b))


def projectively_equal(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """Whether a equals some unit-phase multiple of b within tol."""
    return projective_distance(a, b) <= tol


def projective_order(u: np.ndarray, tol: float = 1e-9, bound: int = 24) -> int:
    """Smallest k >= 1 with u**k proportional to the identity."""
    dim = u.shape[0]
    eye = np.eye(dim)
    acc = np.eye(dim, dtype=complex)
    for k in range(1, bound + 1):
        acc = acc @ u
        if projectively_equal(acc, eye, tol):
            return k
    raise ConsistencyError(f"no projective order up to {bound}")


def bloch_rotation(u: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Rotation induced on the Bloch sphere by conjugation with u."""
    rot = np.empty((3, 3))
    udag = u.conj().T
    for j, sig in enumerate(_PAULIS):
        image = u @ sig @ udag
        for i, tau in enumerate(_PAULIS):
            val = np.trace(tau @ image) / 2.0
            if abs(val.imag) > tol:
                raise ConsistencyError("conjugation image is not a real Pauli mix")
            rot[i, j] = val.real
    if np.max(np.abs(rot.T @ rot - np.eye(3))) > max(tol, 1e-9):
        raise ConsistencyError("induced Bloch action is not orthogonal")
    return rot


def diagonal_permutation(u: np.ndarray, tol: float = 1e-6) -> tuple[int, ...]:
    """Permutation of the four cube diagonals induced by conjugation with u.

    Diagonal k is the antipodal pair through CUBE_DIAGONALS[k - 1]; the
    result maps k to the image diagonal, as a tuple of images of 1..4.
    """
    rot = bloch_rotation(u)
    images = []
    for vec in CUBE_DIAGONALS:
        moved = rot @ vec
        target = None
        for idx, cand in enumerate(CUBE_DIAGONALS):
            if np.max(np.abs(moved - cand)) < tol or np.max(np.abs(moved + cand)) < tol:
                target = idx + 1
                break
        if target is None:
            raise ConsistencyError("rotation does not permute the cube diagonals")
        images.append(target)
    if sorted(images) != [1, 2, 3, 4]:
        raise ConsistencyError("diagonal action is not a permutation")
    return tuple(images)


def cycles_string(perm: tuple[int, ...]) -> str:
    """Cycle notation for images of 1..n, fixed points dropped, e.g. (12)(34)."""
    seen = [False] * (len(perm) + 1)
    parts = []
    for start in range(1, len(perm) + 1):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        nxt = perm[start - 1]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt - 1]
        if len(cycle) > 1:
            parts.append("(" + "".join(str(i) for i in cycle) + ")")
    return "".join(parts) if parts else "(1)"


def permutation_order(perm: tuple[int, ...]) -> int:
    """Order of a permutation given as images of 1..n."""
    seen = [False] * (len(perm) + 1)
    order = 1
    for start in range(1, len(perm) + 1):
        if seen[start]:
            continue
        length = 1
        seen[start] = True
        nxt = perm[start - 1]
        while nxt != start:
            length += 1
            seen[nxt] = True
            nxt = perm[nxt - 1]
        order = math.lcm(order, length)
    return order


@dataclass(frozen=True)
class CliffordClass:
    """One projective class: phase-normalized representative and its labels."""

    matrix: np.ndarray
    word: str
    permutation: tuple[int, ...]
    cycles: str
    order: int


@dataclass(frozen=True)
class CliffordClassTable:
    """The 24 projective classes of one-qubit Clifford operators."""

    classes: tuple[CliffordClass, ...]

    def find(self, matrix: np.ndarray, tol: float = 1e-9) -> CliffordClass | None:
        """The class projectively equal to matrix, or None."""
        for cls in self.classes:
            if projectively_equal(matrix, cls.matrix, tol):
                return cls
        return None

    def by_cycles(self) -> dict[str, CliffordClass]:
        return {cls.cycles: cls for cls in self.classes}

    def order_profile(self) -> dict[int, int]:
        """How many classes have each projective order."""
        profile: dict[int, int] = {}
        for cls in self.classes:
            profile[cls.order] = profile.get(cls.order, 0) + 1
        return dict(sorted(profile.items()))


_GENERATORS = (("H", HADAMARD), ("Q", PHASE_GATE))


def _phase_normalized(u: np.ndarray, tol: float = 1e-6) -> np.ndarray:
    for v in u.reshape(-1):
        if abs(v) > tol:
            return u * (abs(v) / v)
    raise ConsistencyError("zero matrix cannot be phase normalized")


def _class_key(u: np.ndarray) -> tuple:
    canon = _phase_normalized(u)
    return tuple(
        (round(v.real / 1e-9), round(v.imag / 1e-9)) for v in canon.reshape(-1)
    )


def enumerate_clifford_1q(tol: float = 1e-9) -> CliffordClassTable:
    """Close {H, Q} under multiplication modulo phase into exactly 24 classes.

    Each class stores a phase-normalized representative (first entry of
    modulus above 1e-6 made positive real), a shortest generator word, and
    the induced permutation of the four cube diagonals.  The 24
    permutations must exhaust the symmetric group on four letters.
    """
    eye = np.eye(2, dtype=complex)
    first: dict[tuple, tuple[np.ndarray, str]] = {_class_key(eye): (eye, "")}
    queue = [(eye, "")]
    while queue:
        current, word = queue.pop(0)
        for letter, gen in _GENERATORS:
            product = current @ gen
            key = _class_key(product)
            if key in first:
                continue
            if len(first) >= 24:
                raise ConsistencyError("closure of H and Q exceeds 24 classes")
            first[key] = (product, word + letter)
            queue.append((product, word + letter))
    if len(first) != 24:
        raise ConsistencyError(
            f"closure of H and Q has {len(first)} classes, expected 24"
        )
    classes = []
    for matrix, word in first.values():
        rep = _phase_normalized(matrix)
        rep.setflags(write=False)
        perm = diagonal_permutation(rep)
        order = projective_order(rep, tol)
        if order != permutation_order(perm):
            raise ConsistencyError("matrix order disagrees with permutation order")
        classes.append(CliffordClass(rep, word, perm, cycles_string(perm), order))
    if len({cls.permutation for cls in classes}) != 24:
        raise ConsistencyError("diagonal action is not faithful on the classes")
    classes.sort(key=lambda cls: (cls.order, cls.cycles))
    hq3 = np.linalg.matrix_power(HADAMARD @ PHASE_GATE, 3)
    if np.max(np.abs(hq3 - np.exp(1j * np.pi / 4.0) * eye)) > 1e-12:
        raise ConsistencyError("(HQ)**3 is not exp(i pi/4) times the identity")
    return CliffordClassTable(tuple(classes))


def pauli_group_sizes() -> tuple[int, int]:
    """Sizes of the one-qubit Pauli group and its sign-only subset.

    The closure of X, Y, Z under multiplication has 16 elements; keeping
    only the signs +-1 on Id, X, Y, Z leaves 8.
    """

    def key(mat: np.ndarray) -> tuple:
        return tuple((round(v.real), round(v.imag)) for v in mat.reshape(-1))

    eye = np.eye(2, dtype=complex)
    seen = {key(eye): eye}
    queue = [eye]
    while queue:
        cur = queue.pop(0)
        for gen in _PAULIS:
            nxt = cur @ gen
            k = key(nxt)
            if k not in seen:
                if len(seen) >= 64:
                    raise ConsistencyError("Pauli closure exceeds its known size")
                seen[k] = nxt
                queue.append(nxt)
    reduced = {
        key(sign * mat)
        for sign in (1.0, -1.0)
        for mat in (eye, PAULI_X, PAULI_Y, PAULI_Z)
    }
    for k in reduced:
        if k not in seen:
            raise ConsistencyError("sign-reduced Pauli element missing from closure")
    return len(seen), len(reduced)


def _reference_row(label: str, a, b, c, d, half: bool = False):
    mat = np.array([[a, b], [c, d]], dtype=complex)
    if half:
        mat = mat / math.sqrt(2.0)
    mat.setflags(write=False)
    return (mat, label)


# Conventional class representatives with their permutation labels, kept in
# their published order.  Two rows share the label (24); see
# reference_label_report, which reports their independently computed labels
# instead of asserting a match.
REFERENCE_ROWS: tuple[tuple[np.ndarray, str], ...] = (
    _reference_row("(1)", 1, 0, 0, 1),
    _reference_row("(132)", 1, 1j, -1, 1j, half=True),
    _reference_row("(12)", 1, 1, 1, -1, half=True),
    _reference_row("(34)", 1, -1, -1, -1, half=True),
    _reference_row("(1234)", 1, 0, 0, 1j),
    _reference_row("(12)(34)", 0, 1, -1, 0),
    _reference_row("(13)(24)", 1, 0, 0, -1),
    _reference_row("(24)", 0, 1, 1j, 0),
    _reference_row("(1432)", 1, 0, 0, -1j),
    _reference_row("(14)(23)", 0, 1, 1, 0),
    _reference_row("(134)", 1, 1, 1j, -1j, half=True),
    _reference_row("(14)", 1, 1j, -1j, -1, half=True),
    _reference_row("(1423)", 1, 1, -1, 1, half=True),
    _reference_row("(123)", 1, -1, -1j, -1j, half=True),
    _reference_row("(243)", 1, 1, -1j, 1j, half=True),
    _reference_row("(1342)", 1, -1j, -1j, 1, half=True),
    _reference_row("(234)", 1, 1j, 1, -1j, half=True),
    _reference_row("(124)", 1, -1j, -1, -1j, half=True),
    _reference_row("(1324)", 1, -1, 1, 1, half=True),
    _reference_row("(24)", 0, 1, -1j, 0),
    _reference_row("(143)", 1, -1j, 1, 1j, half=True),
    _reference_row("(23)", 1, -1j, 1j, -1, half=True),
    _reference_row("(1243)", 1, 1j, 1j, 1, half=True),
    _reference_row("(142)", 1, -1, 1j, 1j, half=True),
)


def reference_label_report(
    table: CliffordClassTable | None = None, tol: float = 1e-9
) -> dict:
    """Match each reference row to its enumerated class and compare labels.

    Rows whose label appears more than once in the reference list are
    reported under "ambiguous" with their computed labels rather than
    being asserted; every label is expected to match on the unambiguous
    rows, so "mismatched" should come back empty.
    """
    if table is None:
        table = enumerate_clifford_1q(tol)
    label_counts: dict[str, int] = {}
    for _, label in REFERENCE_ROWS:
        label_counts[label] = label_counts.get(label, 0) + 1
    matched = []
    mismatched = []
    ambiguous = []
    found_cycles = set()
    for index, (matrix, label) in enumerate(REFERENCE_ROWS):
        cls = table.find(matrix, tol)
        if cls is None:
            raise ConsistencyError(f"reference row {index} is not in the closure")
        found_cycles.add(cls.cycles)
        entry = {"row": index, "label": label, "computed": cls.cycles}
        if label_counts[label] > 1:
            ambiguous.append(entry)
        elif cls.cycles == label:
            matched.append(entry)
        else:
            mismatched.append(entry)
    if len(found_cycles) != 24:
        raise ConsistencyError("reference rows do not cover all 24 classes")
    return {
        "matched": len(matched),
        "mismatched": mismatched,
        "ambiguous": ambiguous,
        "duplicate_labels": sorted(l for l, c in label_counts.items() if c > 1),
    }


def normalized_s(data: FibTorusData | None = None) -> np.ndarray:
    """S after absorbing the twist eigenvalue phases into the basis.

    The diagonal change D = diag(1, conj(T[1,1])) satisfies D T = Id, and
    the matrix of S in the rephased basis is D* S D.  Its closed form has
    off-diagonal entries phi e^{-4 pi i/5} and phi e^{4 pi i/5} over
    sqrt(2 + phi); the derived and closed forms must agree to 1e-12.
    """
    if data is None:
        data = fib_torus_data()
    t, s = data.t_matrix, data.s_matrix
    d = np.diag([1.0, np.conj(t[1, 1])])
    if np.max(np.abs(d @ t - np.eye(2))) > 1e-12:
        raise ConsistencyError("diagonal rephasing does not trivialize T")
    derived = d.conj().T @ s @ d
    w = np.exp(-4j * np.pi / 5.0)
    closed = np.array(
        [[1.0, w * PHI], [PHI * np.conj(w), -1.0]], dtype=complex
    ) / math.sqrt(2.0 + PHI)
    if np.max(np.abs(derived - closed)) > 1e-12:
        raise ConsistencyError("derived normalized S disagrees with its closed form")
    closed.setflags(write=False)
    return closed


def offdiagonal_kind(matrix: np.ndarray, tol: float = 1e-9) -> str:
    """Structural kind of a 2x2 matrix, as used to sort the order-two classes.

    Checked in priority order: off-diagonal entries equal, off-diagonal
    entries summing to zero, some entry zero; all three survive global
    phases.  Returns "none" when no property holds.
    """
    top, bottom = matrix[0, 1], matrix[1, 0]
    if abs(top - bottom) <= tol:
        return "equal_offdiagonal"
    if abs(top + bottom) <= tol:
        return "offdiagonal_sum_zero"
    if any(abs(matrix[i, j]) <= tol for i in range(2) for j in range(2)):
        return "zero_entry"
    return "none"


def clifford_obstruction_report(tol: float = 1e-9) -> dict:
    """Verify that no basis makes both torus moves Clifford; report evidence.

    T**5 = Id while the class group has order 24, so a Clifford twist must
    reduce to the identity class; absorbing its phases into the basis
    leaves normalized S, which is compared against all 24 classes.  A
    projective match, a minimum distance at or below 0.1, or normalized S
    acquiring one of the order-two structural properties raises
    ConsistencyError.
    """
    data = fib_torus_data()
    table = enumerate_clifford_1q(tol)
    s_prime = normalized_s(data)
    t_power = np.linalg.matrix_power(data.t_matrix, 5)
    if np.max(np.abs(t_power - np.eye(2))) > 1e-12:
        raise ConsistencyError("T**5 is not the identity")
    distances = []
    for cls in table.classes:
        dist = projective_distance(s_prime, cls.matrix)
        if dist <= tol:
            raise ConsistencyError(
                f"normalized S projectively matches Clifford class {cls.cycles}"
            )
        distances.append({"cycles": cls.cycles, "order": cls.order, "distance": dist})
    distances.sort(key=lambda e: (e["distance"], e["cycles"]))
    min_distance = distances[0]["distance"]
    if min_distance <= 0.1:
        raise ConsistencyError(
            f"minimum projective distance {min_distance:g} is not above 0.1"
        )
    tally = {"equal_offdiagonal": 0, "offdiagonal_sum_zero": 0, "zero_entry": 0}
    for cls in table.classes:
        if cls.order != 2:
            continue
        kind = offdiagonal_kind(cls.matrix)
        if kind == "none":
            raise ConsistencyError(
                f"order-two class {cls.cycles} has no structural property"
            )
        tally[kind] += 1
    s_kind = offdiagonal_kind(s_prime)
    if s_kind != "none":
        raise ConsistencyError(
            f"normalized S unexpectedly has structural kind {s_kind}"
        )
    return {
        "t_has_order_five": True,
        "t_order": 5,
        "clifford_class_count": len(table.classes),
        "t_order_divides_class_count": 24 % 5 == 0,
        "match_found": False,
        "min_projective_distance": min_distance,
        "per_class_distances": distances,
        "order_two_structural_tally": tally,
        "normalized_s_structural_kind": s_kind,
        "order_profile": table.order_profile(),
        "reference_labels": reference_label_report(table, tol),
        "pauli_group_sizes": list(pauli_group_sizes()),
        "verdict": "no basis makes both S and T Clifford on one qubit",
    }


def compose_permutations(
    outer: tuple[int, ...], inner: tuple[int, ...]
) -> tuple[int, ...]:
    """Permutation applying inner first, then outer."""
    return tuple(outer[inner[k] - 1] for k in range(len(inner)))


def all_permutations(n: int = 4) -> set[tuple[int, ...]]:
    """Every permutation of 1..n as an image tuple."""
    return set(itertools.permutations(range(1, n + 1)))
