"""

Cyclic Jacobi eigensolver for complex Hermitian matrices.

Each rotation first removes the phase of the pivot h_pq with a diagonal
unitary and then applies the real Givens rotation that annihilates it, so
the accumulated transform stays unitary to rounding error. Sweeps run over
all pairs p < q until the off-diagonal Frobenius norm drops below
tol * max(1, ||h||_F).

Postcondition, with c = 10 n:
    ||u^H h u - diag(eigenvalues)||_F <= c * tol * max(1, ||h||_F)

"""


import numpy as np

from typing import Tuple


DEFAULT_JACOBI_TOL = 1e-12
DEFAULT_VALIDATION_TOL = 1e-8
DEFAULT_MAX_SWEEPS = 100
RESIDUAL_CONSTANT = 10


class NumericError(RuntimeError):
    """a numerical precondition failed or an iteration did not converge"""


def as_complex_matrix(a) -> np.ndarray:
    matrix = np.asarray(a, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
        raise NumericError(f"expected a non-empty square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise NumericError("matrix has non-finite entries")
    return matrix


def hermitian_residual(h: np.ndarray) -> float:
    return float(np.linalg.norm(h - h.conj().T))


def unitarity_residual(u: np.ndarray) -> float:
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])))


def off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotate(h: np.ndarray, u: np.ndarray, p: int, q: int) -> None:
    pivot = h[p, q]
    r = abs(pivot)
    phase = pivot / r
    theta = 0.5 * np.arctan2(2.0 * r, (h[p, p] - h[q, q]).real)
    c, s = np.cos(theta), np.sin(theta)

    # columns of the rotation restricted to span(e_p, e_q)
    g = np.array([[c, -s], [s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128)

    idx = [p, q]
    h[:, idx] = h[:, idx] @ g
    h[idx, :] = g.conj().T @ h[idx, :]
    h[p, q] = 0.0
    h[q, p] = 0.0
    h[p, p] = h[p, p].real
    h[q, q] = h[q, q].real
    u[:, idx] = u[:, idx] @ g


def hermitian_eigen(
    h,
    tol: float = DEFAULT_JACOBI_TOL,
    validation_tol: float = DEFAULT_VALIDATION_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
) -> Tuple[np.ndarray, np.ndarray]:
    """diagonalize a Hermitian matrix by cyclic Jacobi sweeps

    Parameters
    ----------
    h : array_like
        square complex matrix with ||h - h^H||_F <= validation_tol
    tol : float, optional
        target for the off-diagonal norm, relative to max(1, ||h||_F),
        by default 1e-12
    validation_tol : float, optional
        tolerance of the Hermitian check, by default 1e-8
    max_sweeps : int, optional
        sweep cap, by default 100

    Returns
    -------
    eigenvalues : np.ndarray
        real eigenvalues in the order of the columns of u
    u : np.ndarray
        unitary matrix whose columns are eigenvectors

    """
    h = as_complex_matrix(h)
    residual = hermitian_residual(h)
    if residual > validation_tol:
        raise NumericError(f"matrix is not Hermitian, ||h - h^H||_F = {residual:.3e}")

    n = h.shape[0]
    work = 0.5 * (h + h.conj().T)
    u = np.eye(n, dtype=np.complex128)
    target = tol * max(1.0, float(np.linalg.norm(work)))

    for _ in range(max_sweeps):
        if off_diagonal_norm(work) <= target:
            return work.diagonal().real.copy(), u
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(work[p, q]) > 0.0:
                    _rotate(work, u, p, q)

    if off_diagonal_norm(work) <= target:
        return work.diagonal().real.copy(), u
    raise NumericError(
        f"Jacobi iteration did not converge in {max_sweeps} sweeps, "
        f"off-diagonal norm {off_diagonal_norm(work):.3e}"
    )
