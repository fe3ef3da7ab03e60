import time

import numpy as np
import pytest

from model.hermitian_eigen import NumericError
from model.torus_moduli import (
    EigenPairMultiset,
    commuting_pair,
    continuity_check,
    diagonal_section,
    diagonality_residuals,
    multiset_distance,
    random_joint_angles,
    random_unitary,
    simultaneous_diag,
    torus_moduli_map,
    torus_moduli_report,
)


TOL = 1e-8


def multiset(pairs):
    return EigenPairMultiset(np.array(pairs, dtype=float))


def test_identity_pair():
    a = np.eye(2, dtype=complex)
    u = simultaneous_diag(a, a)
    residuals = diagonality_residuals(a, a, u)
    assert residuals["unitarity"] <= 1e-9
    x = torus_moduli_map(a, a)
    assert multiset_distance(x, multiset([[0, 0], [0, 0]])) <= TOL


def test_already_diagonal_pair():
    a = np.diag([1j, -1j])
    b = np.diag([1.0 + 0j, -1.0])
    u = simultaneous_diag(a, b)
    residuals = diagonality_residuals(a, b, u)
    assert residuals["diagonality_a"] == 0.0
    assert residuals["diagonality_b"] == 0.0
    expected = multiset([[np.pi / 2, 0.0], [3 * np.pi / 2, np.pi]])
    assert multiset_distance(torus_moduli_map(a, b), expected) <= TOL


def test_pairing_follows_shared_eigenvectors():
    # sorting each spectrum separately would pair (i, -1) and (-i, 1)
    a = np.diag([1j, -1j])
    b = np.diag([-1.0 + 0j, 1.0])
    x = torus_moduli_map(a, b)
    expected = multiset([[np.pi / 2, np.pi], [3 * np.pi / 2, 0.0]])
    assert multiset_distance(x, expected) <= TOL


def test_conjugated_degenerate_example():
    rng = np.random.default_rng(3)
    v = random_unitary(3, rng)
    a = v @ np.diag([1j, -1j, 1]) @ v.conj().T
    b = v @ np.diag([1, -1, -1]).astype(complex) @ v.conj().T
    u = simultaneous_diag(a, b)
    residuals = diagonality_residuals(a, b, u)
    assert residuals["unitarity"] <= 1e-9
    assert residuals["diagonality_a"] <= TOL
    assert residuals["diagonality_b"] <= TOL


def test_random_pairs_round_trip_and_conjugation_invariance():
    start = time.time()
    for seed in range(100):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 9))
        repeat = int(rng.integers(2, n + 1)) if n >= 2 and seed % 3 == 0 else None
        alpha, beta = random_joint_angles(n, rng, repeat)
        a, b, _ = commuting_pair(alpha, beta, rng)
        expected = multiset(np.stack([alpha, beta], axis=1))

        u = simultaneous_diag(a, b, seed=seed)
        residuals = diagonality_residuals(a, b, u)
        assert residuals["unitarity"] <= 1e-9
        assert residuals["diagonality_a"] <= TOL
        assert residuals["diagonality_b"] <= TOL

        x = torus_moduli_map(a, b, seed=seed)
        assert multiset_distance(x, expected) <= TOL

        w = random_unitary(n, rng)
        y = torus_moduli_map(w @ a @ w.conj().T, w @ b @ w.conj().T, seed=seed + 1)
        assert multiset_distance(x, y) <= TOL
    assert time.time() - start < 10.0


def test_joint_multiplicity_in_both_factors():
    rng = np.random.default_rng(11)
    alpha = np.array([0.3, 0.3, 0.3, 2.0])
    beta = np.array([1.1, 1.1, 4.0, 4.0])
    a, b, _ = commuting_pair(alpha, beta, rng)
    x = torus_moduli_map(a, b)
    assert multiset_distance(x, multiset(np.stack([alpha, beta], axis=1))) <= TOL


def test_multiset_distance():
    rng = np.random.default_rng(0)
    angles = rng.uniform(0, 2 * np.pi, (6, 2))
    x = multiset(angles)
    assert multiset_distance(x, x) == 0.0
    assert multiset_distance(x, multiset(angles[rng.permutation(6)])) <= 1e-15
    eps = 1e-3
    assert multiset_distance(multiset([[0, 0]]), multiset([[eps, 0]])) == pytest.approx(eps)
    # the branch cut at angle 0 is invisible to the metric
    assert multiset_distance(multiset([[2 * np.pi - eps, 0]]), multiset([[eps, 0]])) == pytest.approx(
        2 * eps
    )
    with pytest.raises(ValueError):
        multiset_distance(x, multiset([[0, 0]]))


def test_angles_canonical():
    x = EigenPairMultiset.from_eigenvalues(np.array([-1.0 + 0j, 1j]), np.array([1.0 + 0j, -1j]))
    assert np.all((x.angles >= 0) & (x.angles < 2 * np.pi))
    np.testing.assert_allclose(x.angles, [[np.pi, 0.0], [np.pi / 2, 3 * np.pi / 2]])


def test_diagonal_section_is_a_section():
    x = multiset([[0.1, 2.0], [0.1, 3.0], [5.0, 0.2]])
    a, b = diagonal_section(x)
    assert multiset_distance(torus_moduli_map(a, b), x) <= TOL


def test_continuity_check():
    rng = np.random.default_rng(5)
    x = multiset(rng.uniform(0, 2 * np.pi, (5, 2)))
    for _ in range(10):
        assert continuity_check(x, rng, eps=1e-6) <= 1e-4


def test_report_records_seed_and_residuals():
    rng = np.random.default_rng(1)
    a, b, _ = commuting_pair(*random_joint_angles(4, rng), rng)
    report = torus_moduli_report(a, b, seed=9)
    assert report["seed"] == 9
    assert report["n"] == 4
    assert report["residuals"]["commutator"] <= TOL
    assert len(report["multiset"]) == 4


def test_non_commuting_pair_rejected():
    rng = np.random.default_rng(2)
    a, b = random_unitary(3, rng), random_unitary(3, rng)
    with pytest.raises(NumericError, match="do not commute"):
        simultaneous_diag(a, b)


def test_non_unitary_rejected():
    a = np.diag([2.0, 1.0]).astype(complex)
    with pytest.raises(NumericError, match="not unitary"):
        torus_moduli_map(a, np.eye(2))


def test_multiset_is_close_ignores_order():
    x = multiset([[0.1, 0.2], [0.3, 0.4]])
    assert x.is_close(multiset([[0.3, 0.4], [0.1, 0.2]]))
    assert not x.is_close(multiset([[0.1 + 1e-3, 0.2], [0.3, 0.4]]))
    assert x.is_close(multiset([[0.1 + 1e-3, 0.2], [0.3, 0.4]]), tol=1e-2)
    assert not x.is_close(multiset([[0.1, 0.2]]))


def test_multiset_identity_and_hash():
    x = multiset([[0.1, 0.2], [0.3, 0.4]])
    assert x == x
    assert x != multiset([[0.1, 0.2], [0.3, 0.4]])
    assert len({x, x}) == 1


def test_report_checks_conjugation_invariance():
    rng = np.random.default_rng(4)
    a, b, _ = commuting_pair(*random_joint_angles(5, rng, 3), rng)
    report = torus_moduli_report(a, b, seed=2, multiset_tol=1e-8)
    assert report["conjugation_invariant"] is True
    assert report["conjugation_distance"] <= 1e-8
    assert report["tolerances"]["multiset"] == 1e-8
