import pytest

from oracles import sympy_group_order
from superelliptic.cosets import (cyclic_reduce, enumerate_cosets, free_reduce, tietze_simplify,
                                  verify_table)
from superelliptic.cover import GroupPresentation

GROUPS = {
    "C5": GroupPresentation(1, ((1, 1, 1, 1, 1),)),
    "S3": GroupPresentation(2, ((1, 1), (2, 2), (1, 2, 1, 2, 1, 2))),
    "A4": GroupPresentation(2, ((1, 1), (2, 2, 2), (1, 2, 1, 2, 1, 2))),
    "Q8": GroupPresentation(2, ((1, 1, 1, 1), (1, 1, -2, -2), (-2, 1, 2, 1))),
    "trivial": GroupPresentation(2, ((1, 2, 2), (1, 2))),
}


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_orders_match_sympy(name):
    pres = GROUPS[name]
    ct = enumerate_cosets(pres)
    assert ct.closed
    assert ct.index == sympy_group_order(pres.ngens, pres.relators)
    assert verify_table(pres, ct)


def test_subgroup_index():
    ct = enumerate_cosets(GROUPS["S3"], subgroup=((1,),))
    assert ct.index == 3
    assert verify_table(GROUPS["S3"], ct, ((1,),))


def test_budget_exhaustion():
    free = GroupPresentation(2, ())
    ct = enumerate_cosets(free, budget=200, initial=16)
    assert not ct.closed and ct.table is None
    assert ct.stats()["budget"] == 200


def test_small_initial_capacity_grows():
    ct = enumerate_cosets(GROUPS["A4"], initial=2)
    assert ct.index == 12


def test_free_and_cyclic_reduce():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert cyclic_reduce((-1, 2, 1)) == (2,)


def test_tietze():
    simp = tietze_simplify(GroupPresentation(2, ((1, -2), (1, 1))))
    assert simp.ngens == 1
    assert simp.abelian_invariants() == [2]
    assert enumerate_cosets(simp).index == 2
    for name, pres in GROUPS.items():
        assert enumerate_cosets(tietze_simplify(pres)).index == enumerate_cosets(pres).index
