"""

Unitary representations of surface groups given by generator tuples.

Presentations
    M(g)   generators a_1, b_1, ..., a_g, b_g   relation  [a_1, b_1] ... [a_g, b_g] = 1
    N(q)   generators x_1, ..., x_q             relation  x_1^2 ... x_q^2 = 1
    F(k)   k generators, no relation;  Z  one generator

At U(1) the non-orientable relation reads (x_1 ... x_q)^2 = 1, so the character
variety splits into two tori T^{q-1} labelled by s = x_1 ... x_q in {+1, -1}.

"""


from dataclasses import dataclass

from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from model.group_kdef import Free, GroupExpr, IntegersZ, NonOrientable, Orientable, expr_to_text
from model.hermitian_eigen import DEFAULT_VALIDATION_TOL, NumericError, as_complex_matrix
from model.torus_moduli import TWO_PI, canonical_angles, require_unitary


FINITE_DIFFERENCE_STEP = 1e-6
RANK_TOL = 1e-4


def _product_sign(values: Sequence[complex]) -> int:
    return 1 if np.prod(values).real >= 0 else -1


@dataclass(frozen=True)
class CharacterPoint:
    """a U(1) representation of N(q), one unit complex number per generator"""

    values: Tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(complex(v) for v in self.values))
        if len(self.values) < 2:
            raise ValueError(f"N(q) needs q >= 2 generators, got {len(self.values)}")
        moduli = np.abs(np.array(self.values))
        if np.max(np.abs(moduli - 1.0)) > DEFAULT_VALIDATION_TOL:
            raise ValueError(f"character values must lie on the unit circle, got moduli {moduli}")
        # x_1^2 ... x_q^2 = 1 in the abelian group U(1)
        defect = abs(np.prod(self.values) ** 2 - 1.0)
        if defect > DEFAULT_VALIDATION_TOL:
            raise ValueError(
                f"character violates the relation of N({len(self.values)}), defect {defect:.3e}"
            )

    @property
    def q(self) -> int:
        return len(self.values)

    def angles(self) -> np.ndarray:
        return canonical_angles(np.array(self.values))

    def matrices(self) -> List[np.ndarray]:
        return [np.array([[v]], dtype=np.complex128) for v in self.values]

    @property
    def label(self) -> int:
        """component invariant, the sign of the product of the character values"""
        return _product_sign(self.values)


Representation = Union[Sequence[np.ndarray], CharacterPoint]


def _as_matrices(rho: Representation) -> List[np.ndarray]:
    if isinstance(rho, CharacterPoint):
        return rho.matrices()
    return [as_complex_matrix(m) for m in rho]


def generator_count(presentation: GroupExpr) -> int:
    if isinstance(presentation, Orientable):
        return 2 * presentation.g
    if isinstance(presentation, NonOrientable):
        return presentation.q
    if isinstance(presentation, Free):
        return presentation.k
    if isinstance(presentation, IntegersZ):
        return 1
    raise ValueError(f"no one-relator presentation for {expr_to_text(presentation)}")


def relator(matrices: Sequence[np.ndarray], presentation: GroupExpr) -> np.ndarray:
    n = matrices[0].shape[0]
    word = np.eye(n, dtype=np.complex128)
    if isinstance(presentation, Orientable):
        for a, b in zip(matrices[0::2], matrices[1::2]):
            # unitary inverses are adjoints
            word = word @ a @ b @ a.conj().T @ b.conj().T
    elif isinstance(presentation, NonOrientable):
        for x in matrices:
            word = word @ x @ x
    return word


def relation_defect(
    matrices: Representation, presentation: GroupExpr, tol: float = DEFAULT_VALIDATION_TOL
) -> float:
    """||w(rho) - I||_F for the defining relator w of the presentation

    Parameters
    ----------
    matrices : list of array_like or CharacterPoint
        generator images, all unitary of the same size
    presentation : Orientable, NonOrientable, Free or IntegersZ
        the group whose standard presentation is used
    tol : float, optional
        unitarity tolerance, by default 1e-8

    Returns
    -------
    defect : float

    """
    matrices = _as_matrices(matrices)
    expected = generator_count(presentation)
    if len(matrices) != expected:
        raise ValueError(
            f"{expr_to_text(presentation)} has {expected} generators, {len(matrices)} matrices were given"
        )
    shapes = {m.shape for m in matrices}
    if len(shapes) != 1:
        raise ValueError(f"generator images must share one size, got shapes {sorted(shapes)}")
    for i, m in enumerate(matrices):
        require_unitary(m, tol, f"generator {i + 1}")
    word = relator(matrices, presentation)
    return float(np.linalg.norm(word - np.eye(word.shape[0])))


def u1_characters(q: int, samples: int, seed: int = 0) -> List[CharacterPoint]:
    """sample U(1) characters of N(q) from both components

    x_1 .. x_{q-1} are uniform on the circle and x_q = s * conj(x_1 ... x_{q-1})
    for a branch s in {+1, -1}; the branches are balanced over the batch so both
    components appear as soon as samples >= 2.

    """
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"N(q) needs q >= 2 crosscaps, got {q!r}")
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")

    rng = np.random.default_rng(seed)
    branches = rng.permutation(np.resize([1, -1], samples))
    points = []
    for s in branches:
        free = np.exp(1j * rng.uniform(0.0, TWO_PI, q - 1))
        last = s * np.conj(np.prod(free))
        points.append(CharacterPoint(tuple(free) + (last,)))
    return points


def local_dimension(point: CharacterPoint, presentation: NonOrientable = None) -> int:
    """q minus the rank of the differential of the relator at the point

    The relator is viewed as a map from angle space R^q to C = R^2 and
    differentiated by central differences.

    """
    if presentation is None:
        presentation = NonOrientable(point.q)
    theta = np.angle(np.array(point.values))

    def relation(angles: np.ndarray) -> np.ndarray:
        word = relator([np.array([[np.exp(1j * a)]]) for a in angles], presentation)[0, 0]
        return np.array([word.real, word.imag])

    h = FINITE_DIFFERENCE_STEP
    jacobian = np.empty((2, point.q))
    for i in range(point.q):
        step = np.zeros(point.q)
        step[i] = h
        jacobian[:, i] = (relation(theta + step) - relation(theta - step)) / (2.0 * h)
    return point.q - int(np.linalg.matrix_rank(jacobian, tol=RANK_TOL))


def determinant_map(rho: Representation) -> Tuple[complex, ...]:
    """determinant of every generator image, a U(1) character of the same group"""
    return tuple(complex(np.linalg.det(m)) for m in _as_matrices(rho))


@dataclass(frozen=True)
class StableEigenvalueResult:
    component: Optional[int]
    spectra: Tuple[np.ndarray, ...]
    defect: float

    def to_dict(self) -> dict:
        return {
            "component": self.component,
            "spectra": [[float(a) for a in angles] for angles in self.spectra],
            "relation_defect": self.defect,
        }


def stable_eigenvalue_map(
    rho: Representation, presentation: GroupExpr, tol: float = DEFAULT_VALIDATION_TOL
) -> StableEigenvalueResult:
    """unordered eigenvalues of every generator image, plus the component label

    Spectra are returned as sorted angle arrays in [0, 2 pi). The component is
    +1 for orientable, free and cyclic presentations and for the trivial
    representation of N(q) in any rank. U(1) characters of N(q) get the sign of
    the product, other representations of N(q) in rank n >= 2 get None.

    """
    matrices = _as_matrices(rho)
    defect = relation_defect(matrices, presentation, tol)
    if defect > tol:
        raise NumericError(
            f"representation does not satisfy the relation of {expr_to_text(presentation)}, "
            f"defect {defect:.3e}"
        )

    spectra = tuple(np.sort(canonical_angles(np.linalg.eigvals(m))) for m in matrices)
    n = matrices[0].shape[0]
    if isinstance(presentation, NonOrientable):
        if all(np.allclose(m, np.eye(n), atol=tol) for m in matrices):
            component = 1
        elif n == 1:
            component = _product_sign([m[0, 0] for m in matrices])
        else:
            component = None
    else:
        component = 1
    return StableEigenvalueResult(component=component, spectra=spectra, defect=defect)
