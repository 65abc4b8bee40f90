"""Tests for the golden-ratio torus data and the one-qubit Clifford tables."""

import itertools
import math

import numpy as np
import pytest

from anyonmcg.errors import ConsistencyError
from anyonmcg.fib import (
    CUBE_DIAGONALS,
    HADAMARD,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    PHASE_GATE,
    PHI,
    all_permutations,
    clifford_obstruction_report,
    compose_permutations,
    cycles_string,
    diagonal_permutation,
    enumerate_clifford_1q,
    fib_torus_data,
    normalized_s,
    offdiagonal_kind,
    pauli_group_sizes,
    permutation_order,
    projective_distance,
    projectively_equal,
    reference_label_report,
    REFERENCE_ROWS,
)


def test_torus_data_invariants():
    data = fib_torus_data()
    s, t = data.s_matrix, data.t_matrix
    eye = np.eye(2)
    assert np.max(np.abs(s @ s.conj().T - eye)) < 1e-12
    assert np.max(np.abs(s - s.T)) < 1e-12
    assert np.max(np.abs(np.linalg.matrix_power(t, 5) - eye)) < 1e-12
    assert projectively_equal(s @ s, eye, 1e-12)
    assert data.dims == (1.0, PHI)
    assert data.phi == pytest.approx((1 + math.sqrt(5)) / 2)
    assert data.r_vacuum == pytest.approx(np.exp(-4j * np.pi / 5))
    assert data.r_tau == pytest.approx(np.exp(3j * np.pi / 5))
    # the fusion matrix squares to the identity as well
    assert np.max(np.abs(data.f_matrix @ data.f_matrix - eye)) < 1e-12


def test_t_entries():
    data = fib_torus_data()
    assert data.t_matrix[0, 0] == 1.0
    assert data.t_matrix[1, 1] == pytest.approx(np.exp(4j * np.pi / 5))
    assert data.s_matrix[0, 0] == pytest.approx(1 / math.sqrt(2 + PHI))


def test_projectively_equal_examples():
    a = np.array([[1, 2], [3, 4j]], dtype=complex)
    assert projectively_equal(a, np.exp(1j * np.pi / 7) * a)
    assert not projectively_equal(PAULI_X, PAULI_Z)
    assert projectively_equal(HADAMARD, -HADAMARD)
    with pytest.raises(ValueError):
        projectively_equal(a, np.eye(3))


def test_projective_distance_precision():
    # near-matches sit at float precision, not at a cancellation floor
    assert projective_distance(HADAMARD, np.exp(0.3j) * HADAMARD) < 1e-14
    assert projective_distance(PAULI_X, PAULI_Z) == pytest.approx(2.0)


def test_enumeration_has_24_classes():
    table = enumerate_clifford_1q()
    assert len(table.classes) == 24


def test_named_rows_present():
    table = enumerate_clifford_1q()
    assert table.find(HADAMARD).cycles == "(12)"
    assert table.find(PHASE_GATE).cycles == "(1234)"
    assert table.find(np.eye(2)).cycles == "(1)"
    assert table.find(PAULI_Z).cycles == "(13)(24)"
    assert table.find(PAULI_X).cycles == "(14)(23)"


def test_order_profile():
    table = enumerate_clifford_1q()
    assert table.order_profile() == {1: 1, 2: 9, 3: 8, 4: 6}


def test_diagonal_action_exhausts_s4():
    table = enumerate_clifford_1q()
    assert {cls.permutation for cls in table.classes} == all_permutations(4)


def test_closed_under_multiplication():
    table = enumerate_clifford_1q()
    for a, b in itertools.product(table.classes, table.classes):
        cls = table.find(a.matrix @ b.matrix)
        assert cls is not None
        # and the class found is the composite permutation, inner factor first
        assert cls.permutation == compose_permutations(a.permutation, b.permutation)


def test_hq_cubed_is_projectively_trivial():
    hq3 = np.linalg.matrix_power(HADAMARD @ PHASE_GATE, 3)
    assert np.max(np.abs(hq3 - np.exp(1j * np.pi / 4) * np.eye(2))) < 1e-12
    table = enumerate_clifford_1q()
    assert table.find(hq3).cycles == "(1)"


def test_generator_words_recorded():
    table = enumerate_clifford_1q()
    assert table.find(HADAMARD).word == "H"
    assert table.find(PHASE_GATE).word == "Q"
    assert table.find(np.eye(2)).word == ""


def test_cycles_string_and_order():
    assert cycles_string((1, 2, 3, 4)) == "(1)"
    assert cycles_string((2, 1, 3, 4)) == "(12)"
    assert cycles_string((2, 1, 4, 3)) == "(12)(34)"
    assert cycles_string((3, 1, 2, 4)) == "(132)"
    assert cycles_string((2, 3, 4, 1)) == "(1234)"
    assert permutation_order((1, 2, 3, 4)) == 1
    assert permutation_order((2, 1, 4, 3)) == 2
    assert permutation_order((3, 1, 2, 4)) == 3
    assert permutation_order((2, 3, 4, 1)) == 4


def test_cube_diagonal_numbering():
    # the numbering pins the generator images used throughout
    assert diagonal_permutation(HADAMARD) == (2, 1, 3, 4)
    assert diagonal_permutation(PHASE_GATE) == (2, 3, 4, 1)
    assert diagonal_permutation(PAULI_Z) == (3, 4, 1, 2)
    assert len(CUBE_DIAGONALS) == 4


def test_pauli_group_sizes():
    assert pauli_group_sizes() == (16, 8)


def test_reference_rows_shape():
    assert len(REFERENCE_ROWS) == 24
    labels = [label for _, label in REFERENCE_ROWS]
    assert labels.count("(24)") == 2
    assert "(13)" not in labels


def test_reference_label_report():
    report = reference_label_report()
    assert report["matched"] == 22
    assert report["mismatched"] == []
    assert report["duplicate_labels"] == ["(24)"]
    computed = sorted(entry["computed"] for entry in report["ambiguous"])
    assert computed == ["(13)", "(24)"]
    for entry in report["ambiguous"]:
        assert entry["label"] == "(24)"


def test_normalized_s_entries():
    s_prime = normalized_s()
    scale = 1 / math.sqrt(2 + PHI)
    assert s_prime[0, 0] == pytest.approx(scale, abs=1e-12)
    assert s_prime[0, 1] == pytest.approx(np.exp(-4j * np.pi / 5) * PHI * scale, abs=1e-12)
    assert s_prime[1, 0] == pytest.approx(np.exp(4j * np.pi / 5) * PHI * scale, abs=1e-12)
    assert s_prime[1, 1] == pytest.approx(-scale, abs=1e-12)
    assert projectively_equal(s_prime @ s_prime, np.eye(2), 1e-12)


def test_offdiagonal_kind():
    assert offdiagonal_kind(HADAMARD) == "equal_offdiagonal"
    assert offdiagonal_kind(PAULI_Z) == "equal_offdiagonal"
    assert offdiagonal_kind(np.array([[0, 1], [-1, 0]], dtype=complex)) == "offdiagonal_sum_zero"
    assert offdiagonal_kind(np.array([[0, 1], [1j, 0]], dtype=complex)) == "zero_entry"
    assert offdiagonal_kind(normalized_s()) == "none"


def test_obstruction_report():
    report = clifford_obstruction_report()
    assert report["t_has_order_five"]
    assert not report["t_order_divides_class_count"]
    assert report["clifford_class_count"] == 24
    assert not report["match_found"]
    assert report["min_projective_distance"] == pytest.approx(0.7526685, abs=1e-6)
    assert report["min_projective_distance"] > 0.1
    assert report["per_class_distances"][0]["cycles"] == "(34)"
    assert len(report["per_class_distances"]) == 24
    assert report["order_two_structural_tally"] == {
        "equal_offdiagonal": 4,
        "offdiagonal_sum_zero": 3,
        "zero_entry": 2,
    }
    assert report["normalized_s_structural_kind"] == "none"
    assert report["order_profile"] == {1: 1, 2: 9, 3: 8, 4: 6}
    assert report["pauli_group_sizes"] == [16, 8]
    assert report["verdict"] == "no basis makes both S and T Clifford on one qubit"


def test_obstruction_report_serializes():
    import json

    text = json.dumps(clifford_obstruction_report())
    assert "min_projective_distance" in text


def test_projective_order_error():
    from anyonmcg.fib import projective_order

    almost = np.diag([1.0, np.exp(2j)])
    with pytest.raises(ConsistencyError):
        projective_order(almost, tol=1e-9, bound=10)
