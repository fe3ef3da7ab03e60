"""

Verification reports comparing the K^def side with the topological side.

    atiyah_segal_compare   pi_d K^def(e) against K^{d mod 2}(B e) near and above qcd
    consistency_suite      rational, torsion-parity, Dold-Thom, recurrence and
                           vanishing checks for one product
    recurrence_check       summand counts of kdef(e) against the count recurrences,
                           folded in every factor order and every bracketing

"""


import itertools
from dataclasses import dataclass, field

from typing import Dict, Iterator, List, Optional, Tuple

import pandas as pd

from model.graded_abelian import INTEGER, FinAbGroup, GradedGroup, torsion_f2_rank_by_parity
from model.group_kdef import (
    GroupExpr,
    NonOrientable,
    cohomology,
    expr_to_text,
    homology,
    kdef,
    kdef_block,
    ktheory,
    moduli_homotopy,
    qcd,
    rdef_homotopy,
    require_no_free_factor,
)
from model.ku_module import (
    SummandCounts,
    counts_recurrence,
    homotopy,
    non_orientable_recurrence,
    summand_counts,
)


DEGREE_PADDING = 4


########################################## Atiyah-Segal comparison ##########################################


@dataclass(frozen=True)
class DegreeComparison:
    degree: int
    kdef_group: FinAbGroup
    ktheory_group: FinAbGroup
    expected_iso: Optional[bool]

    @property
    def iso(self) -> bool:
        return self.kdef_group == self.ktheory_group

    @property
    def passed(self) -> bool:
        return self.expected_iso is None or self.iso == self.expected_iso

    def to_dict(self) -> Dict:
        return {
            "degree": self.degree,
            "kdef": str(self.kdef_group),
            "ktheory": str(self.ktheory_group),
            "iso": self.iso,
            "expected_iso": self.expected_iso,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class ComparisonReport:
    expression: str
    qcd: int
    rows: Tuple[DegreeComparison, ...]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_dict(self) -> Dict:
        return {
            "expression": self.expression,
            "qcd": self.qcd,
            "bound": self.qcd - 2,
            "passed": self.passed,
            "degrees": [row.to_dict() for row in self.rows],
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.to_dict() for row in self.rows])


def atiyah_segal_compare(e: GroupExpr, padding: int = DEGREE_PADDING) -> ComparisonReport:
    """compare pi_d K^def(e) with K^{d mod 2} of the classifying space

    Degrees run over [max(0, qcd - 2), qcd + padding]. An isomorphism is
    expected for every d > qcd - 2, and a non-isomorphism at d = qcd - 2
    whenever that degree is nonnegative.

    Parameters
    ----------
    e : GroupExpr
        product of surfaces and circles
    padding : int, optional
        number of degrees checked above qcd, by default 4

    Returns
    -------
    report : ComparisonReport

    """
    require_no_free_factor(e, "the comparison map")
    top = qcd(e)
    bound = top - 2
    module = kdef(e)
    k_groups = ktheory(e)

    rows = []
    for d in range(max(0, bound), top + padding + 1):
        if d > bound:
            expected = True
        elif d == bound:
            expected = False
        else:
            expected = None
        rows.append(
            DegreeComparison(
                degree=d,
                kdef_group=homotopy(module, d),
                ktheory_group=k_groups[d % 2],
                expected_iso=expected,
            )
        )
    return ComparisonReport(expression=expr_to_text(e), qcd=top, rows=tuple(rows))


########################################## recurrences ##########################################


def _fold_counts(atoms: Tuple[GroupExpr, ...]) -> SummandCounts:
    counts = summand_counts(kdef_block(atoms[0]))
    for atom in atoms[1:]:
        if isinstance(atom, NonOrientable):
            counts = non_orientable_recurrence(counts, atom.k)
        else:
            counts = counts_recurrence(counts, summand_counts(kdef_block(atom)))
    return counts


def _bracketings(atoms: Tuple[GroupExpr, ...]) -> Iterator[SummandCounts]:
    if len(atoms) == 1:
        yield summand_counts(kdef_block(atoms[0]))
        return
    for split in range(1, len(atoms)):
        for left in _bracketings(atoms[:split]):
            for right in _bracketings(atoms[split:]):
                yield counts_recurrence(left, right)


@dataclass(frozen=True)
class RecurrenceReport:
    expression: str
    actual: SummandCounts
    mismatches: Tuple[Tuple[str, SummandCounts], ...]
    orders_checked: int

    @property
    def passed(self) -> bool:
        return not self.mismatches


def recurrence_check(e: GroupExpr) -> RecurrenceReport:
    atoms = e.factors()
    actual = summand_counts(kdef(e))
    mismatches = []
    checked = 0
    for order in sorted(set(itertools.permutations(range(len(atoms))))):
        checked += 1
        predicted = _fold_counts(tuple(atoms[i] for i in order))
        if predicted != actual:
            mismatches.append((f"order {order}", predicted))
    for i, predicted in enumerate(_bracketings(atoms)):
        checked += 1
        if predicted != actual:
            mismatches.append((f"bracketing {i}", predicted))
    return RecurrenceReport(
        expression=expr_to_text(e),
        actual=actual,
        mismatches=tuple(mismatches),
        orders_checked=checked,
    )


########################################## consistency suite ##########################################


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict:
        return {"check": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class SuiteReport:
    expression: str
    qcd: int
    checks: Tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[str]:
        return [check.name for check in self.checks if not check.passed]

    def to_dict(self) -> Dict:
        return {
            "expression": self.expression,
            "qcd": self.qcd,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([check.to_dict() for check in self.checks])


def _rational_check(e: GroupExpr, degrees: range) -> CheckResult:
    h = cohomology(e)
    bad = [
        d for d in degrees if d >= 1 and moduli_homotopy(e, d).free_rank != h[d].free_rank
    ]
    return CheckResult("rational", not bad, f"rank mismatch in degrees {bad}" if bad else "")


def _torsion_parity_check(e: GroupExpr, degrees: range) -> CheckResult:
    reduced = cohomology(e).reduced()
    moduli = GradedGroup({d: moduli_homotopy(e, d) for d in degrees}, INTEGER)
    expected = torsion_f2_rank_by_parity(reduced)
    found = torsion_f2_rank_by_parity(moduli)
    return CheckResult(
        "torsion_parity",
        expected == found,
        f"cohomology even/odd {expected[0]}/{expected[1]}, moduli even/odd {found[0]}/{found[1]}",
    )


def _dold_thom_check(e: GroupExpr, degrees: range) -> CheckResult:
    if not all(not isinstance(atom, NonOrientable) for atom in e.factors()):
        return CheckResult("dold_thom", True, "skipped, non-orientable factor")
    reduced = homology(e).reduced()
    bad = [d for d in degrees if moduli_homotopy(e, d) != reduced[d]]
    torsion = [d for d in degrees if not moduli_homotopy(e, d).is_torsion_free()]
    passed = not bad and not torsion
    return CheckResult(
        "dold_thom",
        passed,
        "" if passed else f"reduced homology mismatch {bad}, torsion in {torsion}",
    )


def _recurrence_suite_check(e: GroupExpr) -> CheckResult:
    report = recurrence_check(e)
    detail = f"{report.orders_checked} orders, counts {tuple(report.actual)}"
    if report.mismatches:
        detail += f", mismatches {[name for name, _ in report.mismatches]}"
    return CheckResult("recurrence", report.passed, detail)


def _vanishing_check(e: GroupExpr, padding: int) -> CheckResult:
    top = qcd(e)
    bad = [d for d in range(top + 1, top + padding + 1) if not moduli_homotopy(e, d).is_zero()]
    top_nonzero = not rdef_homotopy(e, top).is_zero()
    passed = not bad and top_nonzero
    return CheckResult(
        "vanishing",
        passed,
        "" if passed else f"nonzero above qcd in {bad}, top degree nonzero: {top_nonzero}",
    )


def _periodicity_check(e: GroupExpr, padding: int) -> CheckResult:
    top = qcd(e)
    module = kdef(e)
    k_groups = ktheory(e)
    bad = [
        d
        for d in range(top, top + padding + 1)
        if homotopy(module, d) != homotopy(module, d + 2) or homotopy(module, d) != k_groups[d % 2]
    ]
    return CheckResult("bott_periodicity", not bad, f"unstable degrees {bad}" if bad else "")


def consistency_suite(e: GroupExpr, padding: int = DEGREE_PADDING) -> SuiteReport:
    """run the self-consistency checks for one product of surfaces and circles

    Checks
    ------
    rational          free ranks of moduli homotopy equal those of cohomology, d >= 1
    torsion_parity    even/odd torsion counts of reduced cohomology and moduli homotopy agree
    dold_thom         orientable products: moduli homotopy equals reduced homology
    recurrence        summand counts agree with the count recurrences in every order
    vanishing         moduli homotopy vanishes above qcd and R^def is nonzero at qcd
    bott_periodicity  pi_d K^def is 2-periodic from qcd on and agrees with K-theory

    """
    require_no_free_factor(e, "the consistency suite")
    degrees = range(0, qcd(e) + padding + 1)
    checks = (
        _rational_check(e, degrees),
        _torsion_parity_check(e, degrees),
        _dold_thom_check(e, degrees),
        _recurrence_suite_check(e),
        _vanishing_check(e, padding),
        _periodicity_check(e, padding),
    )
    return SuiteReport(expression=expr_to_text(e), qcd=qcd(e), checks=checks)


def all_products(atoms: List[GroupExpr], max_factors: int) -> Iterator[Tuple[GroupExpr, ...]]:
    """every multiset of at most max_factors atoms, as sorted factor tuples"""
    for size in range(1, max_factors + 1):
        yield from itertools.combinations_with_replacement(atoms, size)
