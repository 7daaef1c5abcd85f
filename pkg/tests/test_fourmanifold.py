import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import model_for
from superelliptic import intmat
from superelliptic.family import FamilyParameters, UnsupportedParameters
from superelliptic.fourmanifold import (chain_reduction_script, euler_characteristic,
                                        family_relator, fibration_report, h1_of_presentation,
                                        hyperelliptic_signature, meyer_cocycle, pi1_total_space,
                                        random_transform_sequence, signature,
                                        total_space_presentation)
from superelliptic.cover import GroupPresentation
from superelliptic.words import Relator, transvection

TORUS = intmat.as_int_matrix([[0, 1], [-1, 0]])
GENUS2 = intmat.as_int_matrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
# symplectic basis a1, b1, a2, b2; the standard five-chain
CHAIN5 = [(0, 1, 0, 0), (1, 0, 0, 0), (0, -1, 0, 1), (0, 0, 1, 0), (0, 0, 0, 1)]


def chain_relator(form, classes, pattern, repeat):
    """Relator whose written word is ``pattern`` (indices into ``classes``) repeated."""
    written = [i for _ in range(repeat) for i in pattern]
    acting = list(reversed(written))
    return Relator(tuple(f"G[{i + 1}]" for i in acting), tuple(classes[i] for i in acting), form)


def test_euler_characteristic(oracle):
    for n in range(1, 11):
        for k in range(3, 11):
            assert euler_characteristic(FamilyParameters(n, k)) == oracle["euler"][f"{n},{k}"]


def test_textbook_signatures(oracle):
    ref = oracle["signature_textbook"]
    assert signature(chain_relator(TORUS, [(1, 0), (0, 1)], [0, 1], 6)) == ref["E1"]
    assert signature(chain_relator(GENUS2, CHAIN5, [0, 1, 2, 3], 10)) == ref["genus2_4chain"]
    assert signature(chain_relator(GENUS2, CHAIN5, [0, 1, 2, 3, 4], 6)) == ref["genus2_5chain"]
    inv = [0, 1, 2, 3, 4, 4, 3, 2, 1, 0]
    assert signature(chain_relator(GENUS2, CHAIN5, inv, 2)) == ref["genus2_involution"]
    for key, value in oracle["signature_textbook_check"].items():
        assert ref[key] == value


def test_textbook_signatures_under_form_negation():
    assert signature(chain_relator(-GENUS2, CHAIN5, [0, 1, 2, 3, 4], 6)) == -18


def test_signature_rejects_nontrivial_monodromy():
    with pytest.raises(ValueError):
        signature(chain_relator(TORUS, [(1, 0), (0, 1)], [0, 1], 5))
    assert signature(Relator((), (), TORUS)) == 0


def test_hyperelliptic_formula():
    assert hyperelliptic_signature(1, 12) == -8
    assert hyperelliptic_signature(2, 30) == -18
    with pytest.raises(ValueError):
        hyperelliptic_signature(2, 7)


def _symplectic_products(seed, count=3):
    rng = random.Random(seed)
    mats = []
    for _ in range(count):
        m = intmat.identity(4)
        for _ in range(rng.randrange(1, 5)):
            c = CHAIN5[rng.randrange(5)]
            t = transvection(GENUS2, c)
            if rng.random() < 0.5:
                t = intmat.inverse_unimodular(t)
            m = intmat.matmul(m, t)
        mats.append(m)
    return mats


@given(st.integers(0, 10**6))
def test_meyer_cocycle_properties(seed):
    A, B, C = _symplectic_products(seed)
    P = _symplectic_products(seed + 1, 1)[0]
    Pinv = intmat.inverse_unimodular(P)
    tau = lambda x, y: meyer_cocycle(x, y, GENUS2)  # noqa: E731
    mm = intmat.matmul
    assert tau(intmat.identity(4), B) == 0
    assert tau(A, intmat.inverse_unimodular(A)) == 0
    assert tau(A, B) == tau(B, A)
    assert tau(A, B) + tau(mm(A, B), C) == tau(A, mm(B, C)) + tau(B, C)
    assert tau(mm(mm(P, A), Pinv), mm(mm(P, B), Pinv)) == tau(A, B)


def test_meyer_rejects_non_symplectic():
    bad = intmat.identity(4)
    bad[0, 2] = 1
    with pytest.raises(ValueError):
        meyer_cocycle(bad, intmat.identity(4), GENUS2)


@pytest.mark.parametrize("n,k,expected", [(1, 3, -18), (1, 4, -32), (2, 3, -27)])
def test_family_signature(n, k, expected):
    assert signature(family_relator(model_for(n, k))) == expected


def test_family_signature_matches_hyperelliptic_oracle(oracle):
    for k in (3, 4):
        assert signature(family_relator(model_for(1, k))) == oracle["signature_hyperelliptic"][str(k)]


def test_signature_invariant_under_random_moves():
    rel = family_relator(model_for(1, 3))
    base = signature(rel)
    for seed in range(3):
        moved = random_transform_sequence(rel, 25, random.Random(seed))
        assert signature(moved) == base


@pytest.mark.parametrize("k", [3, 4])
def test_chain_reduction(k):
    m = model_for(1, k)
    red = chain_reduction_script(m)
    assert red.monodromy_preserved
    assert list(reversed(red.final.factors)) == red.chain_pattern(m.params)
    assert len(red.final) == (2 * k - 1) * (2 * m.params.g + 2)
    assert signature(red.final) == signature(red.initial)


def test_chain_reduction_n2_unsupported():
    with pytest.raises(UnsupportedParameters):
        chain_reduction_script(model_for(2, 3))


@pytest.mark.parametrize("key", ["1,3", "1,4", "2,3"])
def test_pi1_trivial_matches_sympy(key, oracle):
    n, k = map(int, key.split(","))
    res = pi1_total_space(FamilyParameters(n, k))
    assert res.status == "trivial"
    assert res.table.index == oracle["pi1_order_sympy"][key] == 1


def test_pi1_budget_exhaustion_is_unknown():
    res = pi1_total_space(FamilyParameters(1, 3), budget=2)
    assert res.status == "unknown_at_budget"


def test_pi1_with_tietze_agrees():
    assert pi1_total_space(FamilyParameters(1, 3), simplify=True).status == "trivial"


def test_h1():
    assert h1_of_presentation(GroupPresentation(1, ((1, 1),))) == [2]
    assert h1_of_presentation(total_space_presentation(FamilyParameters(1, 3))) == []


def test_report_13():
    rep = fibration_report(FamilyParameters(1, 3))
    assert (rep.chi, rep.s, rep.pi1, rep.h1, rep.spin, rep.signature) == (26, 30, "trivial", [], False, -18)
    assert rep.consistent
    assert rep.details["hyperelliptic_chain_value"] == -18
    assert rep.details["signature_anchor"] == -16


def test_report_unanchored_for_n2():
    rep = fibration_report(FamilyParameters(2, 3))
    assert "unanchored" in rep.provenance["signature"]
    assert "signature_anchor" not in rep.details
