"""

Invariants of surface groups, free groups and their finite products.

Building blocks (q crosscaps, k = q - 1 = rank H^1):

    group      K^def                       H^*               K^*
    Z (S^1)    ku v S ku                   (Z, Z)            (Z, Z)
    F(k)       ku v k S ku                 (Z, Z^k)          (Z, Z^k)
    M(g)       ku v 2g S ku v S^2 ku       (Z, Z^2g, Z)      (Z^2, Z^2g)
    N(q)       ku v k S ku v ku/2          (Z, Z^k, Z/2)     (Z + Z/2, Z^k)

Products go through the smash product over ku on the K^def side and through
the Künneth formulas on the topological side.

"""


import functools
from dataclasses import dataclass

from typing import List, Tuple, Union

from model.graded_abelian import (
    FinAbGroup,
    GradedGroup,
    INTEGER,
    MOD2,
    kunneth_homology,
    kunneth_integer,
    kunneth_mod2,
)
from model.ku_module import (
    KuModule,
    KuSummand,
    bott_cofiber_homotopy,
    smash_all,
)

# memo bound for the normalized products, per cached function
CACHE_SIZE = 1024


class ExprSemanticError(ValueError):
    """well-formed expression naming a group outside the supported family"""


@dataclass(frozen=True)
class IntegersZ:
    """the infinite cyclic group, fundamental group of the circle"""

    def factors(self) -> Tuple["GroupExpr", ...]:
        return (self,)


@dataclass(frozen=True)
class Free:
    k: int

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 1:
            raise ExprSemanticError(f"free group rank must be at least 1, got F({self.k})")

    def factors(self) -> Tuple["GroupExpr", ...]:
        return (self,)


@dataclass(frozen=True)
class Orientable:
    """fundamental group of the closed orientable surface of genus g"""

    g: int

    def __post_init__(self) -> None:
        if not isinstance(self.g, int) or self.g < 1:
            raise ExprSemanticError(
                f"M({self.g}): the sphere is not aspherical, genus must be at least 1"
            )

    @property
    def first_betti(self) -> int:
        return 2 * self.g

    def factors(self) -> Tuple["GroupExpr", ...]:
        return (self,)


@dataclass(frozen=True)
class NonOrientable:
    """fundamental group of the closed non-orientable surface with q crosscaps"""

    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or self.q < 1:
            raise ExprSemanticError(
                f"N({self.q}): crosscap number must be at least 2 (aspherical surfaces only)"
            )
        if self.q == 1:
            raise ExprSemanticError("N(1): the projective plane is not aspherical")

    @property
    def k(self) -> int:
        """rank of H^1, also the genus of the orientation double cover"""
        return self.q - 1

    def factors(self) -> Tuple["GroupExpr", ...]:
        return (self,)


@dataclass(frozen=True)
class Product:
    """finite direct product, nested products are flattened on construction"""

    items: Tuple["GroupExpr", ...]

    def __post_init__(self) -> None:
        flat: List[GroupExpr] = []
        for item in self.items:
            flat.extend(item.factors())
        if not flat:
            raise ExprSemanticError("a product needs at least one factor")
        object.__setattr__(self, "items", tuple(flat))

    def factors(self) -> Tuple["GroupExpr", ...]:
        return self.items


GroupExpr = Union[IntegersZ, Free, Orientable, NonOrientable, Product]
Surface = Union[Orientable, NonOrientable]


def _atom_key(atom: GroupExpr) -> Tuple[int, int]:
    if isinstance(atom, IntegersZ):
        return (0, 0)
    if isinstance(atom, Free):
        return (1, atom.k)
    if isinstance(atom, Orientable):
        return (2, atom.g)
    return (3, atom.q)


def normalize(e: GroupExpr) -> Tuple[GroupExpr, ...]:
    """flattened, order-normalized factor tuple; every invariant here is symmetric"""
    return tuple(sorted(e.factors(), key=_atom_key))


def expr_to_text(e: GroupExpr) -> str:
    if isinstance(e, IntegersZ):
        return "Z"
    if isinstance(e, Free):
        return f"F({e.k})"
    if isinstance(e, Orientable):
        return f"M({e.g})"
    if isinstance(e, NonOrientable):
        return f"N({e.q})"
    return " x ".join(expr_to_text(item) for item in e.items)


def has_free_factor(e: GroupExpr) -> bool:
    return any(isinstance(atom, Free) for atom in e.factors())


def require_no_free_factor(e: GroupExpr, operation: str) -> None:
    if has_free_factor(e):
        raise ExprSemanticError(
            f"{operation} covers products of surfaces and circles only, "
            f"{expr_to_text(e)} has a free-group factor"
        )


########################################## K^def side ##########################################


def kdef_block(atom: GroupExpr) -> KuModule:
    if isinstance(atom, IntegersZ):
        return KuModule.of(KuSummand(0), KuSummand(1))
    if isinstance(atom, Free):
        return KuModule((KuSummand(0),) + (KuSummand(1),) * atom.k)
    if isinstance(atom, Orientable):
        return KuModule((KuSummand(0),) + (KuSummand(1),) * (2 * atom.g) + (KuSummand(2),))
    if isinstance(atom, NonOrientable):
        return KuModule((KuSummand(0),) + (KuSummand(1),) * atom.k + (KuSummand(0, 2),))
    raise TypeError(f"not a building block: {atom!r}")


def function_spectrum_block(atom: GroupExpr) -> KuModule:
    """connective function spectrum F~(X_+, ku) of a single circle or surface

    Agrees with kdef_block except for orientable surfaces, where the top class
    sits in degree 0 instead of degree 2.

    """
    if isinstance(atom, Orientable):
        return KuModule((KuSummand(0),) * 2 + (KuSummand(1),) * (2 * atom.g))
    return kdef_block(atom)


@functools.lru_cache(maxsize=CACHE_SIZE)
def _kdef_normalized(atoms: Tuple[GroupExpr, ...]) -> KuModule:
    return smash_all(kdef_block(atom) for atom in atoms)


def kdef(e: GroupExpr) -> KuModule:
    """ku-module decomposition of K^def, products via the smash product over ku"""
    return _kdef_normalized(normalize(e))


def qcd(e: GroupExpr) -> int:
    """rational cohomological dimension, additive over products"""
    total = 0
    for atom in e.factors():
        total += 2 if isinstance(atom, Orientable) else 1
    return total


def rdef_homotopy(e: GroupExpr, d: int) -> FinAbGroup:
    """pi_d R^def, the homotopy of the cofiber of the Bott map on K^def"""
    if d < 0:
        raise ValueError(f"degree must be nonnegative, got {d}")
    return bott_cofiber_homotopy(kdef(e), d)


def moduli_homotopy(e: GroupExpr, d: int) -> FinAbGroup:
    """pi_d of the stable moduli space; the degree-0 dimension coordinate Z is removed"""
    require_no_free_factor(e, "the stable moduli space")
    group = rdef_homotopy(e, d)
    if d == 0:
        assert group.free_rank >= 1, "pi_0 R^def always carries the dimension Z"
        group = FinAbGroup(group.free_rank - 1, group.torsion)
    return group


def rdef_graded(e: GroupExpr, lo: int = 0, hi: int = None) -> GradedGroup:
    if hi is None:
        hi = qcd(e) + 2
    return GradedGroup({d: rdef_homotopy(e, d) for d in range(lo, hi + 1)}, INTEGER)


def moduli_graded(e: GroupExpr, lo: int = 0, hi: int = None) -> GradedGroup:
    if hi is None:
        hi = qcd(e) + 2
    return GradedGroup({d: moduli_homotopy(e, d) for d in range(lo, hi + 1)}, INTEGER)


########################################## topological side ##########################################


def _cohomology_block(atom: GroupExpr) -> GradedGroup:
    if isinstance(atom, IntegersZ):
        groups = [FinAbGroup.free(), FinAbGroup.free()]
    elif isinstance(atom, Free):
        groups = [FinAbGroup.free(), FinAbGroup.free(atom.k)]
    elif isinstance(atom, Orientable):
        groups = [FinAbGroup.free(), FinAbGroup.free(2 * atom.g), FinAbGroup.free()]
    else:
        groups = [FinAbGroup.free(), FinAbGroup.free(atom.k), FinAbGroup.cyclic(2)]
    return GradedGroup.from_list(groups, INTEGER)


def _homology_block(atom: GroupExpr) -> GradedGroup:
    if isinstance(atom, NonOrientable):
        return GradedGroup.from_list(
            [FinAbGroup.free(), FinAbGroup(atom.k, (2,))], INTEGER
        )
    return _cohomology_block(atom)


def _ktheory_block(atom: GroupExpr) -> GradedGroup:
    if isinstance(atom, IntegersZ):
        groups = [FinAbGroup.free(), FinAbGroup.free()]
    elif isinstance(atom, Free):
        groups = [FinAbGroup.free(), FinAbGroup.free(atom.k)]
    elif isinstance(atom, Orientable):
        groups = [FinAbGroup.free(2), FinAbGroup.free(2 * atom.g)]
    else:
        groups = [FinAbGroup(1, (2,)), FinAbGroup.free(atom.k)]
    return GradedGroup.from_list(groups, MOD2)


@functools.lru_cache(maxsize=CACHE_SIZE)
def _cohomology_normalized(atoms: Tuple[GroupExpr, ...]) -> GradedGroup:
    result = GradedGroup({0: FinAbGroup.free()}, INTEGER)
    for atom in atoms:
        result = kunneth_integer(result, _cohomology_block(atom))
    return result


@functools.lru_cache(maxsize=CACHE_SIZE)
def _homology_normalized(atoms: Tuple[GroupExpr, ...]) -> GradedGroup:
    result = GradedGroup({0: FinAbGroup.free()}, INTEGER)
    for atom in atoms:
        result = kunneth_homology(result, _homology_block(atom))
    return result


@functools.lru_cache(maxsize=CACHE_SIZE)
def _ktheory_normalized(atoms: Tuple[GroupExpr, ...]) -> GradedGroup:
    result = GradedGroup({0: FinAbGroup.free()}, MOD2)
    for atom in atoms:
        result = kunneth_mod2(result, _ktheory_block(atom))
    return result


def cohomology(e: GroupExpr) -> GradedGroup:
    """integral cohomology of the classifying space, free groups as wedges of circles"""
    return _cohomology_normalized(normalize(e))


def homology(e: GroupExpr) -> GradedGroup:
    return _homology_normalized(normalize(e))


def ktheory(e: GroupExpr) -> GradedGroup:
    """Z/2-graded complex K-theory (K^0, K^1) of the classifying space"""
    return _ktheory_normalized(normalize(e))


def space_to_text(atoms: Tuple[GroupExpr, ...]) -> str:
    """name the aspherical space of circles and orientable surfaces, e.g. T^3 x M^2"""
    circles = sum(1 for atom in atoms if isinstance(atom, IntegersZ))
    circles += sum(2 for atom in atoms if isinstance(atom, Orientable) and atom.g == 1)
    names = []
    if circles == 1:
        names.append("S^1")
    elif circles > 1:
        names.append(f"T^{circles}")
    names += [f"M^{atom.g}" for atom in atoms if isinstance(atom, Orientable) and atom.g > 1]
    return " x ".join(names)


def moduli_model(e: GroupExpr) -> str:
    """homotopy type of the stable moduli space, as far as it has a closed form"""
    require_no_free_factor(e, "the stable moduli space")
    atoms = normalize(e)
    if all(not isinstance(atom, NonOrientable) for atom in atoms):
        return f"Sym^inf({space_to_text(atoms)})"
    if len(atoms) == 1:
        k = atoms[0].k
        return f"T^{k} u T^{k}"
    factors = [
        f"K({group}, {d})"
        for d, group in moduli_graded(e, 0, qcd(e)).items()
        if not group.is_zero()
    ]
    return " x ".join(factors)
