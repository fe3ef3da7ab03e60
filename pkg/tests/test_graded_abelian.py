import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from model.graded_abelian import (
    INTEGER,
    MOD2,
    FinAbGroup,
    GradedGroup,
    GradingError,
    direct_sum,
    kunneth_homology,
    kunneth_integer,
    kunneth_mod2,
    rational_ranks,
    tensor,
    tor,
    torsion_f2_rank_by_parity,
)


Z = FinAbGroup.free()
Z2 = FinAbGroup.cyclic(2)


def G(free_rank=0, *torsion):
    return FinAbGroup(free_rank, tuple(torsion))


def graded(*groups):
    return GradedGroup.from_list(groups, INTEGER)


KLEIN = graded(Z, Z, Z2)
CIRCLE = graded(Z, Z)

EXAMPLE_COHOMOLOGY = graded(
    Z,
    G(3),
    G(3, *[2] * 3),
    G(1, *[2] * 9),
    G(0, *[2] * 10),
    G(0, *[2] * 5),
    Z2,
)


groups = st.builds(
    lambda r, t: FinAbGroup(r, tuple(t)),
    st.integers(min_value=0, max_value=3),
    st.lists(st.integers(min_value=1, max_value=12), max_size=3),
)


########################################## FinAbGroup ##########################################


def test_normal_form_drops_trivial_and_sorts():
    g = FinAbGroup(1, (4, 1, 2))
    assert g.torsion == (2, 4)
    assert g == FinAbGroup(1, (2, 4))
    assert FinAbGroup(0, (1, 1)).is_zero()


def test_invalid_groups_rejected():
    with pytest.raises(ValueError):
        FinAbGroup(-1)
    with pytest.raises(ValueError):
        FinAbGroup(0, (0,))


@pytest.mark.parametrize(
    "group, text",
    [
        (FinAbGroup.zero(), "0"),
        (Z, "Z"),
        (G(3, 2, 2, 2), "Z^3 + (Z/2)^3"),
        (G(0, 2, 4), "Z/2 + Z/4"),
    ],
)
def test_rendering(group, text):
    assert str(group) == text


def test_direct_sum_examples():
    assert direct_sum(G(1, 2), G(2, 2)) == G(3, 2, 2)
    assert direct_sum(FinAbGroup.zero(), G(1, 3)) == G(1, 3)
    assert direct_sum(G(1, 2), G(0, 4)) == G(1, 2, 4)


def test_tensor_examples():
    assert tensor(Z2, Z2) == Z2
    assert tensor(Z2, FinAbGroup.cyclic(3)).is_zero()
    assert tensor(G(1, 2), G(1, 2)) == G(1, 2, 2, 2)


def test_tor_examples():
    assert tor(Z, Z2).is_zero()
    assert tor(Z2, Z2) == Z2
    assert tor(G(1, 2), G(1, 2)) == Z2


@settings(max_examples=1000)
@given(groups, groups, groups)
def test_tensor_and_tor_bilinear(a, b, c):
    assert tensor(direct_sum(a, b), c) == direct_sum(tensor(a, c), tensor(b, c))
    assert tor(direct_sum(a, b), c) == direct_sum(tor(a, c), tor(b, c))
    assert tensor(a, b) == tensor(b, a)
    assert tor(a, b) == tor(b, a)


@given(groups)
def test_tensor_unit_and_tor_free(a):
    assert tensor(a, Z) == a
    assert tor(a, Z).is_zero()


########################################## GradedGroup ##########################################


def test_absent_degrees_are_zero():
    g = GradedGroup({0: Z, 3: Z2})
    assert g[1].is_zero()
    assert g.degrees() == [0, 3]
    assert GradedGroup({0: Z, 1: FinAbGroup.zero()}).degrees() == [0]


def test_mod2_grading_only_in_degrees_zero_and_one():
    with pytest.raises(ValueError):
        GradedGroup({2: Z}, MOD2)


def test_kunneth_integer_torus_and_klein():
    assert kunneth_integer(CIRCLE, CIRCLE) == graded(Z, G(2), Z)
    assert kunneth_integer(KLEIN, KLEIN) == graded(Z, G(2), G(1, 2, 2), G(0, 2, 2, 2), Z2)


def test_kunneth_integer_triple_klein():
    triple = kunneth_integer(kunneth_integer(KLEIN, KLEIN), KLEIN)
    assert triple == EXAMPLE_COHOMOLOGY


def test_kunneth_integer_associative_on_surfaces():
    genus_two = graded(Z, G(4), Z)
    left = kunneth_integer(kunneth_integer(KLEIN, genus_two), CIRCLE)
    right = kunneth_integer(KLEIN, kunneth_integer(genus_two, CIRCLE))
    assert left == right


def test_kunneth_ranks_convolve_for_torsion_free_input():
    g = graded(Z, G(2), Z)
    h = graded(Z, G(3))
    ranks = rational_ranks(kunneth_integer(g, h))
    assert ranks == {0: 1, 1: 5, 2: 7, 3: 3}


def test_kunneth_homology_moves_tor_up():
    klein_homology = graded(Z, G(1, 2))
    product = kunneth_homology(klein_homology, klein_homology)
    assert product == graded(Z, G(2, 2, 2), G(1, 2, 2, 2), Z2)


def test_kunneth_mod2_examples():
    circle = GradedGroup({0: Z, 1: Z}, MOD2)
    assert kunneth_mod2(circle, circle) == GradedGroup({0: G(2), 1: G(2)}, MOD2)

    k = GradedGroup({0: G(1, 2), 1: Z}, MOD2)
    assert kunneth_mod2(k, k) == GradedGroup({0: G(2, 2, 2, 2), 1: G(2, 2, 2, 2)}, MOD2)

    unit = GradedGroup({0: Z}, MOD2)
    assert kunneth_mod2(k, unit) == k


def test_grading_mismatch():
    with pytest.raises(GradingError):
        kunneth_mod2(CIRCLE, GradedGroup({0: Z}, MOD2))
    with pytest.raises(GradingError):
        kunneth_integer(CIRCLE, GradedGroup({0: Z}, MOD2))


def test_rational_ranks():
    assert rational_ranks(GradedGroup({0: G(1, *[2] * 7)})) == {0: 1}
    assert rational_ranks(EXAMPLE_COHOMOLOGY) == {0: 1, 1: 3, 2: 3, 3: 1}
    assert rational_ranks(GradedGroup()) == {}


def test_torsion_parity():
    assert torsion_f2_rank_by_parity(EXAMPLE_COHOMOLOGY.reduced()) == (14, 14)
    moduli = graded(G(0, *[2] * 7), G(3, *[2] * 14), G(3, *[2] * 7), Z)
    assert torsion_f2_rank_by_parity(moduli) == (14, 14)
    assert torsion_f2_rank_by_parity(graded(Z, G(2), Z)) == (0, 0)


def test_reduced_removes_one_z():
    assert CIRCLE.reduced() == GradedGroup({1: Z})
    with pytest.raises(ValueError):
        GradedGroup({1: Z}).reduced()


def test_json_schema():
    rows = GradedGroup({0: Z, 1: G(0, 2)}, MOD2).to_json()
    assert rows == [
        {"degree": 0, "free_rank": 1, "torsion": [], "grading": "mod2"},
        {"degree": 1, "free_rank": 0, "torsion": [2], "grading": "mod2"},
    ]
    assert GradedGroup.from_json(rows) == GradedGroup({0: Z, 1: G(0, 2)}, MOD2)
    assert GradedGroup.from_json(EXAMPLE_COHOMOLOGY.to_json()) == EXAMPLE_COHOMOLOGY


def test_str_lists_degrees():
    assert str(KLEIN) == "(Z, Z, Z/2)"
    assert str(GradedGroup({0: G(1, 2), 1: Z}, MOD2)) == "(Z + Z/2, Z)"
