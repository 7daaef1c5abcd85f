import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import cover_for, model_for
from oracles import sympy_monodromy
from superelliptic import intmat
from superelliptic.family import (CurveKind, CurveLabel, FamilyParameters, build_family, gamma,
                                  zeta_label_action)
from superelliptic.homology import (QuadraticFormWitness, build_homology, cycle_lattice,
                                    derive_alpha_classes, gamma_basis_status, matrix_order,
                                    monodromy_matrix, mod2_relations, pairing,
                                    spin_fiber_complement, spin_total, transvection,
                                    vanishing_classes)
from superelliptic.words import TwistWord

GRID = [(1, 3), (1, 4), (2, 3), (1, 5), (2, 4)]


@pytest.mark.parametrize("n,k", GRID)
def test_form_is_unimodular_and_antisymmetric(n, k):
    m = model_for(n, k)
    g = FamilyParameters(n, k).g
    assert m.rank == 2 * g
    assert np.all(m.form == -m.form.T)
    assert intmat.determinant(m.form) == 1


@pytest.mark.parametrize("n,k", GRID)
def test_mod2_relations_hold(n, k):
    assert all(v for v in mod2_relations(model_for(n, k)).values())


@pytest.mark.parametrize("n,k", GRID)
def test_gamma_set_is_integral_basis(n, k):
    st_ = gamma_basis_status(model_for(n, k))
    assert st_["size"] == model_for(n, k).rank
    assert st_["gf2_rank"] == st_["size"]
    assert abs(st_["integral_determinant"]) == 1


def test_cycle_lattice_torus():
    # one vertex, two edges, one face a b a^-1 b^-1
    b1 = intmat.zeros(1, 2)
    b2 = intmat.zeros(2, 1)
    lat = cycle_lattice(b1, b2)
    assert lat.rank == 2
    assert list(lat.classify(intmat.as_int_matrix([[1], [0]])).reshape(-1)) in ([1, 0], [-1, 0])


classes13 = sorted(model_for(1, 3).classes)


@given(st.sampled_from(classes13), st.sampled_from(classes13))
def test_transvection_properties(a, b):
    m = model_for(1, 3)
    ta = transvection(m, m.cls(a))
    assert intmat.determinant(ta) == 1
    assert np.all(ta.T @ m.form @ ta == m.form)
    assert intmat.matmul(ta, m.cls(a)).tolist() == m.cls(a).tolist()
    inv = 2 * intmat.identity(m.rank) - ta
    assert intmat.is_identity(intmat.matmul(ta, inv))
    if pairing(m.form, m.cls(a), m.cls(b)) == 0:
        tb = transvection(m, m.cls(b))
        assert np.all(intmat.matmul(ta, tb) == intmat.matmul(tb, ta))


def test_transvection_matches_sympy():
    m = model_for(1, 3)
    J = sympy.Matrix(intmat.to_lists(m.form))
    word = build_family(m.params).factorization
    ours = monodromy_matrix(m, word)
    theirs = sympy_monodromy(J, [list(m.classes[s.name]) for s in word.letters])
    assert intmat.to_lists(ours) == theirs.tolist()


@pytest.mark.parametrize("n,k", GRID)
def test_zeta_order_trace_and_labels(n, k, oracle):
    m = model_for(n, k)
    assert matrix_order(m.zeta) == k
    assert sum(int(m.zeta[i, i]) for i in range(m.rank)) == oracle["lefschetz_trace"][str(n)]
    assert np.all(m.zeta.T @ m.form @ m.zeta == m.form)
    for lab in m.classes:
        label = CurveLabel.parse(lab)
        if label.kind is CurveKind.ALPHA and label.l == k - 1:
            continue
        img = intmat.matmul(m.zeta, m.cls(lab))
        assert img.tolist() == m.cls(str(zeta_label_action(label, m.params))).tolist()


@pytest.mark.parametrize("key", ["1,3", "1,4", "2,3"])
def test_alpha_patterns_match_oracle(key, oracle):
    n, k = map(int, key.split(","))
    m = model_for(n, k)
    assert list(m.alpha_signs) == oracle["alpha_patterns"][key][0]
    cand, signs = derive_alpha_classes(m)
    assert signs == m.alpha_signs


@given(st.lists(st.sampled_from(classes13), max_size=6), st.lists(st.sampled_from(classes13), max_size=6))
def test_monodromy_multiplicative(u, v):
    m = model_for(1, 3)
    wu, wv = TwistWord.parse(" ".join(u)), TwistWord.parse(" ".join(v))
    assert np.all(monodromy_matrix(m, wu + wv) ==
                  intmat.matmul(monodromy_matrix(m, wu), monodromy_matrix(m, wv)))


@pytest.mark.parametrize("n,k", [(1, 3), (1, 4), (2, 3), (3, 3), (1, 6)])
def test_one_period_is_deck_action(n, k):
    m = model_for(n, k)
    mono = monodromy_matrix(m, build_family(m.params).factorization)
    assert np.all(mono == m.zeta)
    assert matrix_order(mono) == k


def test_spin_witness_matches_bruteforce(oracle):
    for key, expected in oracle["spin_bruteforce"].items():
        n, k = map(int, key.split(","))
        m = model_for(n, k)
        w = spin_fiber_complement(m.form, vanishing_classes(m, build_family(m.params).factorization))
        if expected["count"] == 0:
            assert w is None
        else:
            assert list(w.values) == expected["least"]
    assert set(oracle["spin_bruteforce"]) >= {"1,3", "1,4", "2,3"}


def test_spin_witness_values_on_curves():
    m = model_for(1, 4)
    w = spin_fiber_complement(m.form, vanishing_classes(m, build_family(m.params).factorization))
    for i in range(1, 4):
        for l in range(1, 5):
            assert w.evaluate(m.cls(gamma(i, l))) == 1
    assert not spin_total(w, -1)


def test_spin_total_synthetic():
    w = QuadraticFormWitness((1, 1), ((0, 1), (1, 0)))
    assert spin_total(w, -2)
    assert not spin_total(w, -1)
    assert not spin_total(None, -2)


def test_build_without_alpha():
    m = build_homology(cover_for(1, 3), with_alpha=False)
    assert m.alpha_signs is None
    assert all(lab.startswith("g") for lab in m.classes)
    assert mod2_relations(m)["alpha_sum"] is None
