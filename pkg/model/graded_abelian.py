"""

Exact arithmetic on finitely generated abelian groups and on graded families of them.

Groups are kept in a light normal form: a free rank together with a sorted
tuple of cyclic torsion orders. No invariant-factor chaining is performed,
Z/2 + Z/4 stays as it is.

"""


import math
import itertools
from collections import defaultdict
from dataclasses import dataclass

from typing import Dict, Iterable, List, Mapping, Tuple


INTEGER = "integer"
MOD2 = "mod2"


class GradingError(ValueError):
    """raised when graded groups of different gradings are combined"""


@dataclass(frozen=True)
class FinAbGroup:
    """finitely generated abelian group Z^free_rank + Z/t_1 + ... + Z/t_k

    Parameters
    ----------
    free_rank : int, optional
        rank of the free part, by default 0
    torsion : Iterable[int], optional
        orders of the cyclic torsion summands, order-1 summands are dropped,
        by default ()

    """

    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.free_rank, int) or self.free_rank < 0:
            raise ValueError(
                f"free_rank must be a nonnegative integer, {self.free_rank!r} were given"
            )
        orders = []
        for order in self.torsion:
            if not isinstance(order, int) or order < 1:
                raise ValueError(f"torsion orders must be positive integers, got {order!r}")
            if order > 1:
                orders.append(order)
        object.__setattr__(self, "torsion", tuple(sorted(orders)))

    @classmethod
    def zero(cls) -> "FinAbGroup":
        return cls()

    @classmethod
    def free(cls, rank: int = 1) -> "FinAbGroup":
        return cls(free_rank=rank)

    @classmethod
    def cyclic(cls, order: int, copies: int = 1) -> "FinAbGroup":
        return cls(torsion=(order,) * copies)

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_torsion_free(self) -> bool:
        return not self.torsion

    def order(self) -> float:
        """cardinality, infinite when the free rank is positive"""
        if self.free_rank > 0:
            return math.inf
        return math.prod(self.torsion)

    def __add__(self, other: "FinAbGroup") -> "FinAbGroup":
        return direct_sum(self, other)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        for order, copies in _count_orders(self.torsion):
            parts.append(f"Z/{order}" if copies == 1 else f"(Z/{order})^{copies}")
        return " + ".join(parts)

    def to_dict(self) -> Dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def _count_orders(torsion: Iterable[int]) -> List[Tuple[int, int]]:
    counts: Dict[int, int] = defaultdict(int)
    for order in torsion:
        counts[order] += 1
    return sorted(counts.items())


def direct_sum(a: FinAbGroup, b: FinAbGroup) -> FinAbGroup:
    return FinAbGroup(a.free_rank + b.free_rank, a.torsion + b.torsion)


def sum_all(groups: Iterable[FinAbGroup]) -> FinAbGroup:
    free_rank = 0
    torsion: List[int] = []
    for group in groups:
        free_rank += group.free_rank
        torsion.extend(group.torsion)
    return FinAbGroup(free_rank, tuple(torsion))


def tensor(a: FinAbGroup, b: FinAbGroup) -> FinAbGroup:
    """tensor product over Z, extended bilinearly from the cyclic rules

    Z (x) Z = Z, Z (x) Z/n = Z/n, Z/n (x) Z/m = Z/gcd(n, m)

    """
    torsion = list(b.torsion) * a.free_rank + list(a.torsion) * b.free_rank
    torsion += [math.gcd(n, m) for n, m in itertools.product(a.torsion, b.torsion)]
    return FinAbGroup(a.free_rank * b.free_rank, tuple(torsion))


def tor(a: FinAbGroup, b: FinAbGroup) -> FinAbGroup:
    """Tor_1 over Z, only torsion against torsion survives"""
    return FinAbGroup(
        0, tuple(math.gcd(n, m) for n, m in itertools.product(a.torsion, b.torsion))
    )


@dataclass(frozen=True)
class GradedGroup:
    """degree-indexed family of FinAbGroup

    Parameters
    ----------
    components : Mapping[int, FinAbGroup]
        degree -> group, zero groups are dropped
    grading : str, optional
        "integer" for nonnegative integer degrees, "mod2" for degrees {0, 1},
        by default "integer"

    """

    components: Tuple[Tuple[int, FinAbGroup], ...] = ()
    grading: str = INTEGER

    def __init__(
        self, components: Mapping[int, FinAbGroup] = None, grading: str = INTEGER
    ) -> None:
        assert grading in [
            INTEGER,
            MOD2,
        ], f"grading should be 'integer' or 'mod2', {grading} were given"

        items = dict(components or {})
        for degree in items:
            if not isinstance(degree, int) or degree < 0:
                raise ValueError(f"degrees must be nonnegative integers, got {degree!r}")
            if grading == MOD2 and degree > 1:
                raise ValueError(f"mod2-graded groups only live in degrees 0 and 1, got {degree}")
        cleaned = tuple(
            (degree, group) for degree, group in sorted(items.items()) if not group.is_zero()
        )
        object.__setattr__(self, "components", cleaned)
        object.__setattr__(self, "grading", grading)

    @classmethod
    def from_list(cls, groups: Iterable[FinAbGroup], grading: str = INTEGER) -> "GradedGroup":
        return cls(dict(enumerate(groups)), grading)

    def __getitem__(self, degree: int) -> FinAbGroup:
        for key, group in self.components:
            if key == degree:
                return group
        return FinAbGroup.zero()

    def degrees(self) -> List[int]:
        return [degree for degree, _ in self.components]

    def items(self) -> List[Tuple[int, FinAbGroup]]:
        return list(self.components)

    def max_degree(self) -> int:
        """top nonzero degree, -1 for the zero graded group"""
        return self.components[-1][0] if self.components else -1

    def is_zero(self) -> bool:
        return not self.components

    def as_list(self, length: int = None) -> List[FinAbGroup]:
        if length is None:
            length = self.max_degree() + 1
        return [self[degree] for degree in range(length)]

    def reduced(self) -> "GradedGroup":
        """drop one Z from degree 0, as in reduced (co)homology"""
        bottom = self[0]
        if bottom.free_rank == 0:
            raise ValueError("degree 0 has no free summand to remove")
        items = dict(self.components)
        items[0] = FinAbGroup(bottom.free_rank - 1, bottom.torsion)
        return GradedGroup(items, self.grading)

    def __str__(self) -> str:
        if self.grading == MOD2:
            return f"({self[0]}, {self[1]})"
        return "(" + ", ".join(str(group) for group in self.as_list()) + ")"

    def to_json(self) -> List[Dict]:
        """serialize as a degree-sorted array of {"degree", "free_rank", "torsion"}"""
        rows = []
        for degree, group in self.components:
            row = {"degree": degree, **group.to_dict()}
            if self.grading == MOD2:
                row["grading"] = MOD2
            rows.append(row)
        return rows

    @classmethod
    def from_json(cls, rows: List[Dict], grading: str = None) -> "GradedGroup":
        if grading is None:
            grading = MOD2 if any(row.get("grading") == MOD2 for row in rows) else INTEGER
        items: Dict[int, FinAbGroup] = {}
        for row in rows:
            group = FinAbGroup(int(row["free_rank"]), tuple(int(t) for t in row["torsion"]))
            degree = int(row["degree"])
            items[degree] = direct_sum(items.get(degree, FinAbGroup.zero()), group)
        return cls(items, grading)


def _check_grading(g: GradedGroup, h: GradedGroup, grading: str) -> None:
    if g.grading != grading or h.grading != grading:
        raise GradingError(
            f"expected two {grading}-graded groups, got {g.grading} and {h.grading}"
        )


def _kunneth(g: GradedGroup, h: GradedGroup, tor_shift: int, modulus: int = None):
    terms: Dict[int, List[FinAbGroup]] = defaultdict(list)
    for (p, gp), (q, hq) in itertools.product(g.items(), h.items()):
        degree = p + q
        tensor_degree = degree if modulus is None else degree % modulus
        terms[tensor_degree].append(tensor(gp, hq))
        tor_degree = degree + tor_shift
        if modulus is not None:
            tor_degree %= modulus
        if tor_degree >= 0:
            terms[tor_degree].append(tor(gp, hq))
    return {degree: sum_all(groups) for degree, groups in terms.items()}


def kunneth_integer(g: GradedGroup, h: GradedGroup) -> GradedGroup:
    """integral cohomology Künneth formula

    H^n(X x Y) = sum_{p+q=n} H^p (x) H^q  +  sum_{p+q=n+1} Tor(H^p, H^q)

    """
    _check_grading(g, h, INTEGER)
    return GradedGroup(_kunneth(g, h, tor_shift=-1), INTEGER)


def kunneth_homology(g: GradedGroup, h: GradedGroup) -> GradedGroup:
    """integral homology Künneth formula, Tor terms shifted up by one degree"""
    _check_grading(g, h, INTEGER)
    return GradedGroup(_kunneth(g, h, tor_shift=1), INTEGER)


def kunneth_mod2(g: GradedGroup, h: GradedGroup) -> GradedGroup:
    """Künneth sequence for Z/2-graded K-theory, split

    The tensor term keeps the degree p + q, the Tor term moves to p + q + 1,
    both read mod 2.

    """
    _check_grading(g, h, MOD2)
    return GradedGroup(_kunneth(g, h, tor_shift=1, modulus=2), MOD2)


def rational_ranks(g: GradedGroup) -> Dict[int, int]:
    return {degree: group.free_rank for degree, group in g.items() if group.free_rank > 0}


def torsion_f2_rank_by_parity(g: GradedGroup) -> Tuple[int, int]:
    """number of cyclic torsion summands in even and in odd degrees"""
    even = sum(len(group.torsion) for degree, group in g.items() if degree % 2 == 0)
    odd = sum(len(group.torsion) for degree, group in g.items() if degree % 2 == 1)
    return even, odd
