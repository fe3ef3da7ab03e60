"""

Commuting pairs of unitaries and the eigenvalue map to Sym^n(S^1 x S^1).

A commuting pair (A, B) is simultaneously diagonalized by a unitary u and
sent to the multiset of its joint eigenvalues, read off the diagonals of
u^H A u and u^H B u index by index. Joint eigenvalues are stored as angle
pairs in [0, 2 pi).

"""


from dataclasses import dataclass

from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from model.hermitian_eigen import (
    DEFAULT_JACOBI_TOL,
    DEFAULT_MAX_SWEEPS,
    DEFAULT_VALIDATION_TOL,
    NumericError,
    as_complex_matrix,
    hermitian_eigen,
    off_diagonal_norm,
    unitarity_residual,
)


TWO_PI = 2.0 * np.pi
DEFAULT_MULTISET_TOL = 1e-8
DEFAULT_MAX_DEPTH = 5
MAX_ATTEMPTS = 4
DEGENERACY_TOL = 1e-6


def canonical_angles(z: np.ndarray) -> np.ndarray:
    """arguments of unit complex numbers in [0, 2 pi), cut on the positive real axis"""
    angles = np.mod(np.angle(z), TWO_PI)
    angles[angles >= TWO_PI] = 0.0
    return angles


def circle_distance(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    delta = np.mod(np.abs(x - y), TWO_PI)
    return np.minimum(delta, TWO_PI - delta)


@dataclass(frozen=True, eq=False)
class EigenPairMultiset:
    """unordered joint eigenvalues (e^{i theta_j}, e^{i phi_j}), j = 1..n

    Compared with is_close under the optimal pairing; == is identity.

    Parameters
    ----------
    angles : np.ndarray
        shape (n, 2), columns theta and phi in [0, 2 pi)

    """

    angles: np.ndarray

    def __post_init__(self) -> None:
        angles = np.asarray(self.angles, dtype=np.float64)
        if angles.ndim != 2 or angles.shape[1] != 2 or angles.shape[0] < 1:
            raise ValueError(f"expected angle pairs of shape (n, 2), got {angles.shape}")
        angles = np.mod(angles, TWO_PI)
        angles[angles >= TWO_PI] = 0.0
        object.__setattr__(self, "angles", angles)

    @classmethod
    def from_eigenvalues(cls, alpha: np.ndarray, beta: np.ndarray) -> "EigenPairMultiset":
        alpha = np.asarray(alpha, dtype=np.complex128)
        beta = np.asarray(beta, dtype=np.complex128)
        return cls(np.stack([canonical_angles(alpha), canonical_angles(beta)], axis=1))

    def __len__(self) -> int:
        return self.angles.shape[0]

    def eigenvalues(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.exp(1j * self.angles[:, 0]), np.exp(1j * self.angles[:, 1])

    def sorted_angles(self) -> np.ndarray:
        order = np.lexsort((self.angles[:, 1], self.angles[:, 0]))
        return self.angles[order]

    def to_json(self) -> List[Dict]:
        return [{"theta": float(t), "phi": float(p)} for t, p in self.sorted_angles()]

    @classmethod
    def from_json(cls, rows: List[Dict]) -> "EigenPairMultiset":
        return cls(np.array([[row["theta"], row["phi"]] for row in rows], dtype=np.float64))

    def is_close(self, other: "EigenPairMultiset", tol: float = DEFAULT_MULTISET_TOL) -> bool:
        """equal as multisets up to tol in multiset_distance"""
        return len(self) == len(other) and multiset_distance(self, other) <= tol


def multiset_distance(x: EigenPairMultiset, y: EigenPairMultiset) -> float:
    """minimal total cost over perfect matchings, pairs compared in the sup circle metric"""
    if len(x) != len(y):
        raise ValueError(f"multisets of different sizes, {len(x)} and {len(y)}")
    theta = circle_distance(x.angles[:, None, 0], y.angles[None, :, 0])
    phi = circle_distance(x.angles[:, None, 1], y.angles[None, :, 1])
    cost = np.maximum(theta, phi)
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].sum())


########################################## validation ##########################################


def commutator_residual(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a @ b - b @ a))


def require_unitary(u: np.ndarray, tol: float, name: str = "matrix") -> None:
    residual = unitarity_residual(u)
    if residual > tol:
        raise NumericError(f"{name} is not unitary, ||u^H u - I||_F = {residual:.3e}")


def require_commuting_unitaries(a, b, tol: float) -> Tuple[np.ndarray, np.ndarray]:
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape != b.shape:
        raise NumericError(f"matrices of different shapes, {a.shape} and {b.shape}")
    require_unitary(a, tol, "A")
    require_unitary(b, tol, "B")
    residual = commutator_residual(a, b)
    if residual > tol:
        raise NumericError(f"A and B do not commute, ||AB - BA||_F = {residual:.3e}")
    return a, b


########################################## simultaneous diagonalization ##########################################


def hermitian_parts(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    return 0.5 * (a + a.conj().T), -0.5j * (a - a.conj().T)


def _clusters(values: np.ndarray, gap: float) -> List[np.ndarray]:
    order = np.argsort(values)
    groups = [[order[0]]]
    for prev, idx in zip(order[:-1], order[1:]):
        if values[idx] - values[prev] > gap:
            groups.append([idx])
        else:
            groups[-1].append(idx)
    return [np.array(group) for group in groups]


def _diagonalizer(
    a: np.ndarray,
    b: np.ndarray,
    rng: np.random.Generator,
    tol: float,
    jacobi_tol: float,
    max_sweeps: int,
    depth: int,
    max_depth: int,
) -> np.ndarray:
    if depth > max_depth:
        raise NumericError(
            f"degenerate eigenspaces did not split within refinement depth {max_depth}"
        )
    n = a.shape[0]
    if n == 1:
        return np.eye(1, dtype=np.complex128)

    parts = hermitian_parts(a) + hermitian_parts(b)
    weights = rng.standard_normal(len(parts))
    combination = sum(w * p for w, p in zip(weights, parts))
    values, u = hermitian_eigen(combination, tol=jacobi_tol, max_sweeps=max_sweeps)

    gap = DEGENERACY_TOL * max(1.0, float(np.linalg.norm(combination)))
    for cluster in _clusters(values, gap):
        if len(cluster) < 2:
            continue
        block = u[:, cluster]
        a_block = block.conj().T @ a @ block
        b_block = block.conj().T @ b @ block
        if max(off_diagonal_norm(a_block), off_diagonal_norm(b_block)) <= tol:
            continue
        v = _diagonalizer(
            a_block, b_block, rng, tol, jacobi_tol, max_sweeps, depth + 1, max_depth
        )
        u[:, cluster] = block @ v
    return u


def diagonality_residuals(a: np.ndarray, b: np.ndarray, u: np.ndarray) -> Dict[str, float]:
    return {
        "unitarity": unitarity_residual(u),
        "diagonality_a": off_diagonal_norm(u.conj().T @ a @ u),
        "diagonality_b": off_diagonal_norm(u.conj().T @ b @ u),
    }


def simultaneous_diag(
    a,
    b,
    tol: float = DEFAULT_VALIDATION_TOL,
    seed: int = 0,
    jacobi_tol: float = DEFAULT_JACOBI_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> np.ndarray:
    """unitary u with u^H a u and u^H b u diagonal

    A random real combination of the four commuting Hermitian parts of a and b
    is diagonalized first. Clusters of numerically equal eigenvalues on which
    a or b is still not diagonal are refined recursively with a fresh
    combination, up to max_depth levels. The whole procedure is repeated with
    new combinations up to MAX_ATTEMPTS times.

    Parameters
    ----------
    a, b : array_like
        commuting unitary matrices of equal shape
    tol : float, optional
        validation and diagonality tolerance, by default 1e-8
    seed : int, optional
        seed of the random combinations, by default 0
    jacobi_tol : float, optional
        off-diagonal target of the eigensolver, by default 1e-12
    max_sweeps : int, optional
        Jacobi sweep cap, by default 100
    max_depth : int, optional
        refinement depth, by default 5

    Returns
    -------
    u : np.ndarray
        unitary diagonalizer

    """
    a, b = require_commuting_unitaries(a, b, tol)
    return _simultaneous_diag_checked(a, b, tol, seed, jacobi_tol, max_sweeps, max_depth)


def _simultaneous_diag_checked(
    a: np.ndarray,
    b: np.ndarray,
    tol: float,
    seed: int,
    jacobi_tol: float,
    max_sweeps: int,
    max_depth: int,
) -> np.ndarray:
    rng = np.random.default_rng(seed)
    for _ in range(MAX_ATTEMPTS):
        u = _diagonalizer(a, b, rng, tol, jacobi_tol, max_sweeps, 0, max_depth)
        residuals = diagonality_residuals(a, b, u)
        if max(residuals["diagonality_a"], residuals["diagonality_b"]) <= tol:
            return u

    raise NumericError(
        f"simultaneous diagonalization failed, residuals {residuals} exceed {tol:.1e}"
    )


def torus_moduli_map(
    a,
    b,
    tol: float = DEFAULT_VALIDATION_TOL,
    seed: int = 0,
    jacobi_tol: float = DEFAULT_JACOBI_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> EigenPairMultiset:
    """joint eigenvalues of a commuting unitary pair, paired by shared eigenvector"""
    a, b = require_commuting_unitaries(a, b, tol)
    u = _simultaneous_diag_checked(a, b, tol, seed, jacobi_tol, max_sweeps, max_depth)
    return _joint_eigenvalues(a, b, u)


def _joint_eigenvalues(a: np.ndarray, b: np.ndarray, u: np.ndarray) -> EigenPairMultiset:
    return EigenPairMultiset.from_eigenvalues(
        np.diag(u.conj().T @ a @ u), np.diag(u.conj().T @ b @ u)
    )


def torus_moduli_report(
    a,
    b,
    tol: float = DEFAULT_VALIDATION_TOL,
    seed: int = 0,
    jacobi_tol: float = DEFAULT_JACOBI_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    max_depth: int = DEFAULT_MAX_DEPTH,
    multiset_tol: float = DEFAULT_MULTISET_TOL,
) -> Dict:
    """torus map with residuals and a conjugation-invariance check

    The pair is conjugated by a Haar unitary drawn from seed and mapped again;
    conjugation_invariant records whether both multisets agree within
    multiset_tol.

    """
    a, b = require_commuting_unitaries(a, b, tol)
    u = _simultaneous_diag_checked(a, b, tol, seed, jacobi_tol, max_sweeps, max_depth)
    multiset = _joint_eigenvalues(a, b, u)
    residuals = diagonality_residuals(a, b, u)
    residuals["commutator"] = commutator_residual(a, b)

    w = random_unitary(a.shape[0], np.random.default_rng(seed))
    a_conj, b_conj = w @ a @ w.conj().T, w @ b @ w.conj().T
    v = _simultaneous_diag_checked(
        a_conj, b_conj, tol, seed + 1, jacobi_tol, max_sweeps, max_depth
    )
    conjugated = _joint_eigenvalues(a_conj, b_conj, v)
    return {
        "n": len(multiset),
        "multiset": multiset.to_json(),
        "residuals": residuals,
        "conjugation_distance": multiset_distance(multiset, conjugated),
        "conjugation_invariant": multiset.is_close(conjugated, multiset_tol),
        "seed": seed,
        "tolerances": {"validation": tol, "jacobi": jacobi_tol, "multiset": multiset_tol},
    }


########################################## constructions ##########################################


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR factorization of a complex Ginibre matrix"""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases[None, :]


def diagonal_section(x: EigenPairMultiset) -> Tuple[np.ndarray, np.ndarray]:
    """the diagonal commuting pair with the given joint eigenvalues, one choice up to conjugacy"""
    alpha, beta = x.eigenvalues()
    return np.diag(alpha), np.diag(beta)


def commuting_pair(
    alpha: np.ndarray, beta: np.ndarray, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(V diag(e^{i alpha}) V^H, V diag(e^{i beta}) V^H, V) for a random unitary V"""
    alpha = np.asarray(alpha, dtype=np.float64)
    beta = np.asarray(beta, dtype=np.float64)
    if alpha.shape != beta.shape or alpha.ndim != 1:
        raise ValueError(f"angle arrays must be 1-d of equal length, got {alpha.shape} and {beta.shape}")
    v = random_unitary(len(alpha), rng)
    a = v @ np.diag(np.exp(1j * alpha)) @ v.conj().T
    b = v @ np.diag(np.exp(1j * beta)) @ v.conj().T
    return a, b, v


def random_joint_angles(
    n: int, rng: np.random.Generator, repeat: Optional[int] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """random angle arrays; with repeat >= 2 the first repeat entries of alpha coincide
    while beta still separates them"""
    alpha = rng.uniform(0.0, TWO_PI, n)
    beta = rng.uniform(0.0, TWO_PI, n)
    if repeat is not None and repeat >= 2:
        alpha[:repeat] = alpha[0]
    return alpha, beta


def continuity_check(
    x: EigenPairMultiset,
    rng: np.random.Generator,
    eps: float = 1e-6,
    tol: float = DEFAULT_VALIDATION_TOL,
    seed: int = 0,
) -> float:
    """distance moved by the torus map under a commuting perturbation of size <= eps

    The angles of the diagonal model are shifted by at most eps and the pair
    is conjugated by a random unitary, which keeps the perturbed pair commuting.

    """
    shift = rng.uniform(-eps, eps, x.angles.shape)
    perturbed = x.angles + shift
    a, b, _ = commuting_pair(perturbed[:, 0], perturbed[:, 1], rng)
    return multiset_distance(x, torus_moduli_map(a, b, tol=tol, seed=seed))
