import numpy as np
import pytest

from model.characters import (
    CharacterPoint,
    determinant_map,
    local_dimension,
    relation_defect,
    stable_eigenvalue_map,
    u1_characters,
)
from model.group_kdef import Free, IntegersZ, NonOrientable, Orientable
from model.hermitian_eigen import NumericError
from model.torus_moduli import commuting_pair, random_unitary


def test_relation_defect_of_commuting_pair_vanishes():
    rng = np.random.default_rng(0)
    a, b, _ = commuting_pair(rng.uniform(0, 6, 3), rng.uniform(0, 6, 3), rng)
    assert relation_defect([a, b], Orientable(1)) <= 1e-12


@pytest.mark.parametrize(
    "presentation, count",
    [(Orientable(2), 4), (NonOrientable(3), 3), (Free(2), 2), (IntegersZ(), 1)],
)
def test_relation_defect_of_identity_tuple(presentation, count):
    identity = [np.eye(3, dtype=complex)] * count
    assert relation_defect(identity, presentation) == 0.0


def test_relation_defect_matches_direct_commutator():
    rng = np.random.default_rng(1)
    a, b = random_unitary(4, rng), random_unitary(4, rng)
    direct = np.linalg.norm(a @ b @ np.linalg.inv(a) @ np.linalg.inv(b) - np.eye(4))
    assert relation_defect([a, b], Orientable(1)) == pytest.approx(direct, rel=1e-10)


def test_relation_defect_conjugation_invariant():
    rng = np.random.default_rng(2)
    xs = [random_unitary(3, rng) for _ in range(3)]
    w = random_unitary(3, rng)
    conjugated = [w @ x @ w.conj().T for x in xs]
    assert relation_defect(conjugated, NonOrientable(3)) == pytest.approx(
        relation_defect(xs, NonOrientable(3)), abs=1e-12
    )


def test_relation_defect_input_checks():
    with pytest.raises(ValueError, match="generators"):
        relation_defect([np.eye(2)], Orientable(1))
    with pytest.raises(NumericError):
        relation_defect([2 * np.eye(2), np.eye(2)], Orientable(1))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_characters_realize_two_components_of_dimension_q_minus_one(q):
    points = u1_characters(q, 32, seed=q)
    labels = {point.label for point in points}
    assert labels == {1, -1}
    for point in points:
        assert relation_defect(point, NonOrientable(q)) <= 1e-12
        assert local_dimension(point) == q - 1


@pytest.mark.parametrize("seed", range(20))
def test_two_labels_for_every_seed(seed):
    labels = [point.label for point in u1_characters(2, 16, seed)]
    assert labels.count(1) >= 1
    assert labels.count(-1) >= 1
    assert set(labels) <= {1, -1}


def test_characters_reject_small_q():
    with pytest.raises(ValueError):
        u1_characters(1, 8)


def test_stable_eigenvalue_map_on_klein_character():
    theta = 0.7
    point = CharacterPoint((np.exp(1j * theta), -np.exp(-1j * theta)))
    result = stable_eigenvalue_map(point, NonOrientable(2))
    assert result.component == -1
    np.testing.assert_allclose(result.spectra[0], [theta])
    np.testing.assert_allclose(result.spectra[1], [np.pi - theta])


@pytest.mark.parametrize(
    "presentation, count",
    [(Orientable(1), 2), (NonOrientable(2), 2), (Free(2), 2)],
)
def test_stable_eigenvalue_map_on_trivial_representation(presentation, count):
    result = stable_eigenvalue_map([np.eye(1, dtype=complex)] * count, presentation)
    assert result.component == 1
    assert all(np.allclose(spectrum, 0.0) for spectrum in result.spectra)


def test_stable_eigenvalue_map_on_free_group():
    rng = np.random.default_rng(4)
    a, b = random_unitary(3, rng), random_unitary(3, rng)
    result = stable_eigenvalue_map([a, b], Free(2))
    assert len(result.spectra) == 2
    np.testing.assert_allclose(
        np.sort(np.mod(np.angle(np.linalg.eigvals(a)), 2 * np.pi)), result.spectra[0], atol=1e-12
    )


def test_stable_eigenvalue_map_leaves_higher_rank_component_open():
    first, second = u1_characters(3, 2, seed=5)
    blocks = [np.diag([x, y]) for x, y in zip(first.values, second.values)]
    assert stable_eigenvalue_map(blocks, NonOrientable(3)).component is None


def test_trivial_higher_rank_representation_is_in_the_identity_component():
    identity = [np.eye(2, dtype=complex)] * 3
    result = stable_eigenvalue_map(identity, NonOrientable(3))
    assert result.component == 1
    assert all(np.allclose(spectrum, 0.0) for spectrum in result.spectra)


@pytest.mark.parametrize(
    "values, message",
    [
        ((1j, 1j, 1j), "relation"),
        ((2.0, 0.5), "unit circle"),
        ((1.0,), "q >= 2"),
    ],
)
def test_character_point_validates(values, message):
    with pytest.raises(ValueError, match=message):
        CharacterPoint(values)


def test_stable_eigenvalue_map_rejects_non_representations():
    rng = np.random.default_rng(6)
    with pytest.raises(NumericError, match="relation"):
        stable_eigenvalue_map([random_unitary(2, rng), random_unitary(2, rng)], Orientable(1))


def test_determinant_map_on_characters_is_identity():
    point = u1_characters(3, 1, seed=0)[0]
    np.testing.assert_allclose(determinant_map(point), point.values)
