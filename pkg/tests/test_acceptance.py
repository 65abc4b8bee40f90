"""End-to-end acceptance checks, one per headline property of the toolkit.

Each test prints a single summary line on success; run with -s to see them.
Tolerances are part of the contract and are asserted literally.
"""

import cmath
import math
import time

import numpy as np
import pytest

from anyonmcg.fib import (
    clifford_obstruction_report,
    enumerate_clifford_1q,
    fib_torus_data,
    normalized_s,
    pauli_group_sizes,
)
from anyonmcg.gates import (
    gate_L,
    gate_M,
    humphries_gate,
    humphries_indices,
    placed_dense,
    projective_image_order,
    relation_suite,
)
from anyonmcg.model import builtin_model
from anyonmcg.pauli import classify_normalizer, is_clifford
from anyonmcg.sim import compare, random_circuit

BUILTINS = ("semion", "z3", "z4", "toric")
GENERATOR_DIM_BOUND = 4096


def test_criterion_1_generator_images_are_clifford():
    """Every twist-generator image normalizes the Pauli group, g = 1, 2, 3."""
    checked = 0
    for name in BUILTINS:
        model = builtin_model(name)
        for genus in (1, 2, 3):
            spec_g = model.spec.power(genus)
            for k in humphries_indices(genus):
                image = placed_dense(
                    model, humphries_gate(genus, k), GENERATOR_DIM_BOUND
                )
                witness = is_clifford(image, spec_g, tol=1e-9)
                assert witness is not None, f"{name} g={genus} T_{k} not Clifford"
                checked += 1
    assert checked == 4 * (2 + 5 + 7)
    print(f"criterion 1: PASS ({checked} generator images Clifford at tol 1e-9)")


def test_criterion_2_exact_phase_and_kernel_identities():
    """Spin and kernel identities hold exactly in rational arithmetic."""
    triples = 0
    for name in BUILTINS:
        model = builtin_model(name)
        elems = model.spec.elements()
        for x in elems:
            assert model.theta(-x) == model.theta(x)
            for y in elems:
                assert model.theta(x + y) == (
                    model.theta(x) + model.theta(y) + model.bilinear(x, y)
                )
                assert model.bilinear(x, y) == model.bilinear(y, x)
                for z in elems:
                    assert model.bilinear(x + z, y) == (
                        model.bilinear(x, y) + model.bilinear(z, y)
                    )
                    triples += 1
        root = math.sqrt(model.order)
        s = model.smatrix()
        for i, x in enumerate(elems):
            for j, y in enumerate(elems):
                kernel = model.bilinear(x, y).to_complex()
                assert abs(root * s[i, j] - kernel) < 1e-12
    print(f"criterion 2: PASS (exact identities over {triples} triples, 4 models)")


def test_criterion_3_generator_classifications():
    """L and M are quadratic phase gates; the bare kernel transform is a
    Fourier transform; for every built-in model."""
    for name in BUILTINS:
        model = builtin_model(name)
        assert classify_normalizer(gate_L(model), model.spec) == "quadratic_phase"
        assert (
            classify_normalizer(gate_M(model), model.spec.power(2))
            == "quadratic_phase"
        )
        assert classify_normalizer(model.smatrix(), model.spec) == "fourier"
    print("criterion 3: PASS (L, M quadratic_phase; bare transform fourier)")


def test_criterion_4_backend_equivalence():
    """Stabilizer and dense backends agree on 50 random circuits per case."""
    start = time.perf_counter()
    cases = 0
    worst = 0.0
    for mi, name in enumerate(BUILTINS):
        model = builtin_model(name)
        for genus in (1, 2, 3):
            if model.order**genus > 64:
                continue
            for i in range(50):
                length = i % 50 + 1
                seed = 10000 * (mi + 1) + 100 * genus + i
                circuit = random_circuit(model, genus, length, seed)
                tv = compare(circuit)
                assert tv < 1e-9, f"{name} g={genus} seed={seed} tv={tv}"
                worst = max(worst, tv)
                cases += 1
    elapsed = time.perf_counter() - start
    assert cases == 600
    assert elapsed < 60.0, f"took {elapsed:.1f}s"
    print(
        f"criterion 4: PASS ({cases} circuits, worst tv={worst:.2e}, "
        f"{elapsed:.1f}s)"
    )


def test_criterion_5_twist_relations():
    """Disjoint twists commute and adjacent twists braid, g = 2 and 3."""
    count = 0
    worst = 0.0
    for name in BUILTINS:
        model = builtin_model(name)
        for genus in (2, 3):
            reports = relation_suite(model, genus, tol=1e-9)
            bad = [r for r in reports if not r["ok"]]
            assert not bad, f"{name} g={genus}: {bad}"
            worst = max(worst, max(r["residual"] for r in reports))
            count += len(reports)
    assert count == 4 * (10 + 21)
    print(f"criterion 5: PASS ({count} relations, worst residual {worst:.2e})")


def test_criterion_6_anchor_phases():
    """Gauss-sum anchors: exp(-i pi/4) for the semion, 1 for the toric code."""
    semion = builtin_model("semion")
    toric = builtin_model("toric")
    assert abs(semion.anchor_phase() - cmath.exp(-1j * math.pi / 4)) < 1e-12
    assert semion.central_charge() == 1
    assert abs(toric.anchor_phase() - 1.0) < 1e-12
    assert toric.central_charge() == 0
    print("criterion 6: PASS (anchors exp(-i pi/4) and 1 within 1e-12)")


def test_criterion_7_one_qubit_clifford_census():
    """24 projective classes with order profile 1/9/8/6; Pauli sizes 16, 8."""
    table = enumerate_clifford_1q()
    assert len(table.classes) == 24
    assert table.order_profile() == {1: 1, 2: 9, 3: 8, 4: 6}
    assert pauli_group_sizes() == (16, 8)
    print("criterion 7: PASS (24 classes, profile 1/9/8/6, Pauli sizes 16/8)")


def test_criterion_8_fib_torus_obstruction():
    """T has order 5, normalized S matches its closed form, and S lies in
    none of the 24 classes; the order-2 structural tally is 4/3/2."""
    data = fib_torus_data()
    t5 = np.linalg.matrix_power(data.t_matrix, 5)
    assert np.max(np.abs(t5 - np.eye(2))) < 1e-12

    phi = (1 + math.sqrt(5)) / 2
    w = cmath.exp(-4j * math.pi / 5)
    display = np.array(
        [[1.0, phi * w], [phi * w.conjugate(), -1.0]], dtype=complex
    ) / math.sqrt(2 + phi)
    assert np.max(np.abs(normalized_s(data) - display)) < 1e-12

    report = clifford_obstruction_report(tol=1e-9)
    assert report["t_has_order_five"]
    assert report["match_found"] is False
    distance = report["min_projective_distance"]
    assert distance > 0.1
    assert distance == pytest.approx(0.7526685081918876, abs=1e-9)
    assert report["order_two_structural_tally"] == {
        "equal_offdiagonal": 4,
        "offdiagonal_sum_zero": 3,
        "zero_entry": 2,
    }
    print(f"criterion 8: PASS (min projective distance {distance:.4f} > 0.1)")


def test_criterion_9_torus_image_orders():
    """The g=1 image closures terminate, with stable recorded orders."""
    expected = {"semion": 24, "toric": 6}
    recorded = {}
    for name, order in expected.items():
        model = builtin_model(name)
        first = projective_image_order(model, genus=1)
        second = projective_image_order(model, genus=1)
        assert not first.exceeded
        assert first.order == order, f"{name}: got {first.order}"
        assert (first.order, first.visited) == (second.order, second.visited)
        recorded[name] = first.order
    print(f"criterion 9: PASS (image orders {recorded})")
