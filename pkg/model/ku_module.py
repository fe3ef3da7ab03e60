"""

Term algebra of ku-modules built from suspended free summands S^d ku and
suspended Moore summands S^d ku/n.

A module is a multiset of summands kept in normal form, sorted by
(degree, free before mod, modulus). Smash product over ku is a bilinear
rewrite on summand pairs; the only non-trivial rule is

    S^a ku/n  ^  S^b ku/m  =  S^(a+b) ku/g  v  S^(a+b+1) ku/g,   g = gcd(n, m)

with both terms vanishing when g = 1.

"""


import re
import math
import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass

from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from model.graded_abelian import FinAbGroup, sum_all


FREE = "free"
MOD = "mod"


@dataclass(frozen=True)
class KuSummand:
    """a single summand S^degree ku (modulus None) or S^degree ku/modulus

    Parameters
    ----------
    degree : int
        suspension exponent, nonnegative
    modulus : Optional[int], optional
        n >= 2 for a Moore summand, None for a free summand, by default None

    """

    degree: int
    modulus: Optional[int] = None

    def __post_init__(self) -> None:
        if not isinstance(self.degree, int) or self.degree < 0:
            raise ValueError(f"summand degree must be a nonnegative integer, got {self.degree!r}")
        if self.modulus is not None and (not isinstance(self.modulus, int) or self.modulus < 2):
            raise ValueError(f"ku/n summands need n >= 2, got {self.modulus!r}")

    @property
    def is_free(self) -> bool:
        return self.modulus is None

    @property
    def kind(self) -> str:
        return FREE if self.is_free else MOD

    def sort_key(self) -> Tuple[int, int, int]:
        return (self.degree, 0 if self.is_free else 1, self.modulus or 0)

    def coefficient_group(self) -> FinAbGroup:
        """pi_degree of the summand, Z or Z/n"""
        return FinAbGroup.free() if self.is_free else FinAbGroup.cyclic(self.modulus)

    def shifted(self, s: int) -> "KuSummand":
        return KuSummand(self.degree + s, self.modulus)

    def __str__(self) -> str:
        base = "ku" if self.is_free else f"ku/{self.modulus}"
        if self.degree == 0:
            return base
        if self.degree == 1:
            return f"S {base}"
        return f"S^{self.degree} {base}"

    def to_dict(self) -> Dict:
        row = {"degree": self.degree, "kind": self.kind}
        if not self.is_free:
            row["modulus"] = self.modulus
        return row


@dataclass(frozen=True)
class KuModule:
    """finite wedge of KuSummand in normal form, the empty wedge is contractible"""

    summands: Tuple[KuSummand, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "summands", tuple(sorted(self.summands, key=KuSummand.sort_key))
        )

    @classmethod
    def of(cls, *summands: KuSummand) -> "KuModule":
        return cls(tuple(summands))

    @classmethod
    def zero(cls) -> "KuModule":
        return cls()

    @classmethod
    def unit(cls) -> "KuModule":
        return cls((KuSummand(0),))

    def is_zero(self) -> bool:
        return not self.summands

    def max_degree(self) -> int:
        return self.summands[-1].degree if self.summands else -1

    def moduli(self) -> List[int]:
        return sorted({s.modulus for s in self.summands if not s.is_free})

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __str__(self) -> str:
        if not self.summands:
            return "0"
        return " v ".join(str(s) for s in self.summands)

    def to_json(self) -> List[Dict]:
        return [s.to_dict() for s in self.summands]

    @classmethod
    def from_json(cls, rows: List[Dict]) -> "KuModule":
        summands = []
        for row in rows:
            if row["kind"] == FREE:
                summands.append(KuSummand(int(row["degree"])))
            elif row["kind"] == MOD:
                summands.append(KuSummand(int(row["degree"]), int(row["modulus"])))
            else:
                raise ValueError(f"unknown summand kind {row['kind']!r}")
        return cls(tuple(summands))

    @classmethod
    def parse(cls, text: str) -> "KuModule":
        """read back the rendering produced by str(), e.g. 'ku v S ku v S^2 ku/2'"""
        text = text.strip()
        if text == "0":
            return cls()
        summands = []
        for chunk in text.split(" v "):
            match = _SUMMAND_RE.fullmatch(chunk.strip())
            if match is None:
                raise ValueError(f"cannot read ku summand {chunk!r}")
            if match.group("s") is None:
                degree = 0
            else:
                degree = int(match.group("exp")) if match.group("exp") else 1
            modulus = match.group("mod")
            summands.append(KuSummand(degree, int(modulus) if modulus else None))
        return cls(tuple(summands))


_SUMMAND_RE = re.compile(r"(?:(?P<s>S)(?:\^(?P<exp>\d+))?\s+)?ku(?:/(?P<mod>\d+))?")


def wedge(m: KuModule, n: KuModule) -> KuModule:
    return KuModule(m.summands + n.summands)


def suspend(m: KuModule, s: int) -> KuModule:
    if s < 0:
        raise ValueError(f"only nonnegative suspensions are supported, got {s}")
    return KuModule(tuple(summand.shifted(s) for summand in m.summands))


def smash_summands(a: KuSummand, b: KuSummand) -> List[KuSummand]:
    degree = a.degree + b.degree
    if a.is_free:
        return [KuSummand(degree, b.modulus)]
    if b.is_free:
        return [KuSummand(degree, a.modulus)]
    g = math.gcd(a.modulus, b.modulus)
    if g == 1:
        return []
    return [KuSummand(degree, g), KuSummand(degree + 1, g)]


def smash(m: KuModule, n: KuModule) -> KuModule:
    """smash product over ku, distributed over the wedge decompositions"""
    out: List[KuSummand] = []
    for a, b in itertools.product(m.summands, n.summands):
        out.extend(smash_summands(a, b))
    return KuModule(tuple(out))


def smash_all(modules: Iterable[KuModule]) -> KuModule:
    result = KuModule.unit()
    for module in modules:
        result = smash(result, module)
    return result


def _summand_homotopy(summand: KuSummand, d: int) -> FinAbGroup:
    shift = d - summand.degree
    if shift < 0 or shift % 2 == 1:
        return FinAbGroup.zero()
    return summand.coefficient_group()


def homotopy(m: KuModule, d: int) -> FinAbGroup:
    """pi_d of the module: each summand is Z or Z/n in even degrees above its suspension"""
    return sum_all(_summand_homotopy(s, d) for s in m.summands)


def bott_cofiber_homotopy(m: KuModule, d: int) -> FinAbGroup:
    """pi_d of the cofiber of the Bott map S^2 M -> M

    The Bott map is injective on every summand and hits everything above the
    bottom class, so the cofiber just records the degrees in which the
    summands start.

    """
    return sum_all(s.coefficient_group() for s in m.summands if s.degree == d)


def bott_split(m: KuModule, d: int) -> Tuple[FinAbGroup, FinAbGroup]:
    """pi_d as (image of the Bott map from pi_{d-2}, part new in degree d)"""
    return homotopy(m, d - 2), bott_cofiber_homotopy(m, d)


class SummandCounts(NamedTuple):
    r0: int
    r1: int
    t0: int
    t1: int


def summand_counts(m: KuModule) -> SummandCounts:
    """numbers of free / Moore summands in even and odd suspension degrees"""
    counts = Counter((s.is_free, s.degree % 2) for s in m.summands)
    return SummandCounts(
        r0=counts[(True, 0)],
        r1=counts[(True, 1)],
        t0=counts[(False, 0)],
        t1=counts[(False, 1)],
    )


def summand_profile(m: KuModule) -> Tuple[Dict[int, int], Dict[int, int]]:
    free: Dict[int, int] = defaultdict(int)
    moore: Dict[int, int] = defaultdict(int)
    for s in m.summands:
        if s.is_free:
            free[s.degree] += 1
        else:
            moore[s.degree] += 1
    return dict(free), dict(moore)


def counts_recurrence(y: SummandCounts, s: SummandCounts) -> SummandCounts:
    """predicted counts of Y x S from the counts of the two factors

    Valid when every Moore summand involved has modulus 2, which is the only
    modulus the surface groups produce. With S a single non-orientable surface
    (r0 = 1, t0 = 1, t1 = 0) this is

        r0' = r0 + r1 * r1(S)
        r1' = r1 + r0 * r1(S)
        t0' = 2 t0 + (r1(S) + 1) t1 + r0
        t1' = 2 t1 + (r1(S) + 1) t0 + r1

    """
    moore_pairs = (y.t0 + y.t1) * (s.t0 + s.t1)
    return SummandCounts(
        r0=y.r0 * s.r0 + y.r1 * s.r1,
        r1=y.r0 * s.r1 + y.r1 * s.r0,
        t0=y.r0 * s.t0 + y.r1 * s.t1 + y.t0 * s.r0 + y.t1 * s.r1 + moore_pairs,
        t1=y.r0 * s.t1 + y.r1 * s.t0 + y.t0 * s.r1 + y.t1 * s.r0 + moore_pairs,
    )


def non_orientable_recurrence(y: SummandCounts, r1_surface: int) -> SummandCounts:
    """the four published recurrences for multiplying by one non-orientable surface"""
    return SummandCounts(
        r0=y.r0 + y.r1 * r1_surface,
        r1=y.r1 + y.r0 * r1_surface,
        t0=2 * y.t0 + (r1_surface + 1) * y.t1 + y.r0,
        t1=2 * y.t1 + (r1_surface + 1) * y.t0 + y.r1,
    )


def _multiplication_kernel(group: FinAbGroup, m: int) -> FinAbGroup:
    # kernel of x -> m x on Z^r + sum Z/n
    return FinAbGroup(0, tuple(math.gcd(n, m) for n in group.torsion))


def _multiplication_cokernel(group: FinAbGroup, m: int) -> FinAbGroup:
    return FinAbGroup(
        0, (m,) * group.free_rank + tuple(math.gcd(n, m) for n in group.torsion)
    )


def smash_oracle(a: KuSummand, b: KuSummand, d: int) -> FinAbGroup:
    """pi_d(a ^ b) read off the long exact sequence of the defining cofiber sequence

    For a = S^e ku/m the cofiber sequence S^e b --m--> S^e b --> a ^ b gives

        0 -> coker(m on pi_{d-e} b) -> pi_d(a ^ b) -> ker(m on pi_{d-e-1} b) -> 0

    Only one of the two ends is non-zero in any degree, so there is no
    extension to resolve. Free first factors are the unit up to suspension.

    """
    if a.is_free:
        return _summand_homotopy(b, d - a.degree)
    m = a.modulus
    shift = d - a.degree
    return sum_all(
        [
            _multiplication_cokernel(_summand_homotopy(b, shift), m),
            _multiplication_kernel(_summand_homotopy(b, shift - 1), m),
        ]
    )
