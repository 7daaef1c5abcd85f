import json

import numpy as np
import pytest

from conftest import cover_for, model_for
from superelliptic import intmat
from superelliptic.cover import (ComplexError, GroupPresentation, SurfaceComplex, build_cover,
                                 build_sphere, cycle_to_word, dual_cycle_chain, generator_cycles,
                                 lift_dual_loop, pi1_presentation, push_dual_to_primal_path)
from superelliptic.family import FamilyParameters, UnsupportedParameters
from superelliptic.homology import gamma_sheet


def test_sphere_complex():
    s = build_sphere(6)
    assert s.complex.euler_characteristic() == 2
    for i in range(1, 6):
        assert s.encloses(s.pair_loop(i)) == {i - 1, i}


@pytest.mark.parametrize("n,k,chi,g", [(1, 3, -2, 2), (2, 3, -6, 4), (1, 4, -4, 3)])
def test_cover_examples(n, k, chi, g):
    c = cover_for(n, k)
    assert c.complex.euler_characteristic() == chi and c.genus == g


def test_riemann_hurwitz_grid():
    for n in range(1, 5):
        for k in range(3, 7):
            c = cover_for(n, k)
            assert c.complex.euler_characteristic() == k * 2 - (2 * n + 2) * (k - 1)
            assert len(c.fixed_vertices) == 2 * n + 2


def test_deck_order_and_free_orbits():
    for n, k in [(1, 3), (2, 4), (1, 5)]:
        c = cover_for(n, k)
        for j in range(1, k):
            v, e, f = c.deck_power(j)
            assert e != tuple(range(len(e)))
        v, e, f = c.deck_power(k)
        assert v == tuple(range(len(v))) and e == tuple(range(len(e)))
        for x in range(len(c.complex.vertices)):
            orbit = {c.deck_power(j)[0][x] for j in range(k)}
            assert len(orbit) in (1, k)
            assert (len(orbit) == 1) == (x in c.fixed_vertices)


def test_quotient_is_sphere():
    c = cover_for(2, 3)
    q = c.quotient()
    s = c.sphere.complex
    assert q.edges == s.edges and q.faces == s.faces and q.vertices == s.vertices


def test_lift_component_counts(oracle):
    for k in range(3, 7):
        c = cover_for(2, k)
        pairs = [len(lift_dual_loop(c, c.sphere.pair_loop(i))) for i in range(1, 6)]
        singles = [len(lift_dual_loop(c, c.sphere.point_loop(j))) for j in range(1, 7)]
        assert pairs == oracle["lift_components"][str(k)]["pair"]
        assert singles == oracle["lift_components"][str(k)]["single"]


def test_deck_permutes_lifted_gammas():
    c = cover_for(1, 4)
    for i in range(1, 4):
        comps = lift_dual_loop(c, c.sphere.pair_loop(i))
        for l in range(1, 4):
            src = comps[gamma_sheet(i, l, 4)]
            dst = comps[gamma_sheet(i, l + 1, 4)]
            assert sorted(c.apply_deck_to_dual(src)) == sorted(dst)


def test_pi1_presentation():
    c = cover_for(1, 3)
    sp = pi1_presentation(c)
    pres = sp.presentation
    assert pres.abelian_invariants() == [0, 0, 0, 0]
    assert len(pres.relators) == len(c.complex.faces)
    assert sp == pi1_presentation(c)


def test_cycle_to_word_matches_homology():
    c = cover_for(1, 3)
    m = model_for(1, 3)
    sp = pi1_presentation(c)
    gens = generator_cycles(c, sp)
    comps = lift_dual_loop(c, c.sphere.pair_loop(1))
    path = push_dual_to_primal_path(c.complex, comps[gamma_sheet(1, 1, 3)])
    word = cycle_to_word(c, path, sp)
    ab = intmat.zeros(sp.presentation.ngens, 1)
    for x in word:
        ab[abs(x) - 1, 0] += 1 if x > 0 else -1
    cls = m.lattice.classify(intmat.matmul(gens, ab))
    assert np.all(cls == m.cls("g[1][1]"))
    tree = sorted(sp.tree_edges)[:1]
    assert cycle_to_word(c, [(tree[0], 1), (tree[0], -1)], sp) == ()
    with pytest.raises(ComplexError):
        cycle_to_word(c, [(tree[0], 1)], sp)


def test_deck_translate_of_cycle():
    c = cover_for(1, 3)
    m = model_for(1, 3)
    comps = lift_dual_loop(c, c.sphere.pair_loop(2))
    moved = c.apply_deck_to_dual(comps[0])
    push = push_dual_to_primal_path
    a = m.lattice.classify(_chain(c, push(c.complex, comps[0])))
    b = m.lattice.classify(_chain(c, push(c.complex, moved)))
    assert np.all(intmat.matmul(m.zeta, a) == b)


def _chain(c, path):
    v = intmat.zeros(len(c.complex.edges), 1)
    for e, s in path:
        v[e, 0] += s
    return v


def test_json_roundtrip():
    c = cover_for(1, 3)
    back = SurfaceComplex.from_json_dict(json.loads(c.to_json()))
    assert back.complex == c.complex
    data = json.loads(c.to_json())
    data["faces"][0]["boundary"][0][1] *= -1
    with pytest.raises(ComplexError):
        SurfaceComplex.from_json_dict(data)


def test_build_cover_rejects_bad_params():
    with pytest.raises(UnsupportedParameters):
        build_cover((1, 3))


def test_presentation_validation():
    with pytest.raises(ValueError):
        GroupPresentation(1, ((2,),))


def test_dual_chain_is_dual_cycle():
    c = cover_for(1, 3)
    for comp in lift_dual_loop(c, c.sphere.pair_loop(1)):
        w = dual_cycle_chain(c, comp)
        assert not intmat.matmul(c.complex.boundary_2().T, w).any()
