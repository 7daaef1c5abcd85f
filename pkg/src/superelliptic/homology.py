"""Integral first homology of the cover and the spin obstruction over GF(2).

The intersection form comes from pairing primal cycles with dual cycles
(curves transverse to the edges). A dual cycle crossing edge ``e`` from its
left face to its right face meets ``e`` once; summing ``b(e) * w(e)`` gives a
primal/dual pairing matrix ``M``. Pushing the dual basis into the 1-skeleton
gives its primal coordinates ``X``, and ``J = M X^{-1}`` is the form with
``T_c(x) = x + <x, c> c`` for a right-handed twist along ``c``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import intmat
from .cover import (SurfaceComplex, dual_cycle_chain, dual_to_primal_chain_matrix,
                    lift_dual_loop)
from .family import FamilyParameters, alpha, alpha_labels, gamma
from .words import TwistWord, UnresolvedClassError, transvection as _transvection


class HomologyError(RuntimeError):
    pass


class AlphaDerivationError(HomologyError):
    pass


# sign patterns (eps1, eps2) tried in this order; the first valid one is kept
SIGN_PATTERNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class CycleLattice:
    """``H_1 = ker(a) / im(b)`` for integer matrices with ``a b = 0``, torsion-free.

    ``coords`` (rank x cells) sends a cycle to its class; ``basis`` (cells x
    rank) holds representative cycles with ``coords @ basis = I``.
    """

    cycle_test: np.ndarray
    coords: np.ndarray
    basis: np.ndarray

    @property
    def rank(self) -> int:
        return self.basis.shape[1]

    def classify(self, chain) -> np.ndarray:
        c = np.asarray(chain, dtype=object).reshape(-1, 1)
        if intmat.matmul(self.cycle_test, c).any():
            raise HomologyError("chain is not a cycle")
        return intmat.matmul(self.coords, c)


def cycle_lattice(a: np.ndarray, b: np.ndarray) -> CycleLattice:
    _, D1, V1, _, V1inv = intmat.smith_normal_form(a)
    r1 = sum(1 for i in range(min(D1.shape)) if D1[i, i] != 0)
    Z = V1[:, r1:]
    left = V1inv[r1:, :]              # left inverse of Z on cycles
    Y = intmat.matmul(left, b)        # boundaries in cycle coordinates
    U2, D2, _, U2inv, _ = intmat.smith_normal_form(Y)
    r2 = sum(1 for i in range(min(D2.shape)) if D2[i, i] != 0)
    if any(D2[i, i] != 1 for i in range(r2)):
        raise HomologyError("homology has torsion")
    coords = intmat.matmul(U2, left)[r2:, :]
    basis = intmat.matmul(Z, U2inv[:, r2:])
    lat = CycleLattice(a, coords, basis)
    if not intmat.is_identity(intmat.matmul(coords, basis)):
        raise HomologyError("coordinate map is not a left inverse of the basis")
    return lat


def _col(v) -> np.ndarray:
    return np.asarray(v, dtype=object).reshape(-1, 1)


def _tuple(v) -> tuple[int, ...]:
    return tuple(int(x) for x in np.asarray(v, dtype=object).reshape(-1))


def pairing(form: np.ndarray, x, y) -> int:
    return int(intmat.matmul(_col(x).T, intmat.matmul(form, _col(y)))[0, 0])


@dataclass(frozen=True)
class HomologyModel:
    params: FamilyParameters
    form: np.ndarray
    classes: dict
    zeta: np.ndarray
    alpha_signs: tuple[int, int] | None
    lattice: CycleLattice = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.form.shape[0]

    def cls(self, label: str) -> np.ndarray:
        if label not in self.classes:
            raise UnresolvedClassError(f"no class for {label}")
        return _col(self.classes[label])

    def pair(self, a: str, b: str) -> int:
        return pairing(self.form, self.classes[a], self.classes[b])

    def to_json_dict(self) -> dict:
        return {
            "rank": self.rank,
            "form": intmat.to_lists(self.form),
            "zeta_star": intmat.to_lists(self.zeta),
            "classes": {k: list(v) for k, v in sorted(self.classes.items())},
            "alpha_signs": list(self.alpha_signs) if self.alpha_signs else None,
        }


def gamma_sheet(i: int, l: int, k: int) -> int:
    """Sheet of the upper cell on which the lift labelled ``gamma_i^l`` starts."""
    return (l - 1 + (1 if i % 2 == 0 else 0)) % k


def intersection_form(cover: SurfaceComplex, lattice: CycleLattice | None = None) -> np.ndarray:
    cx = cover.complex
    B1, B2 = cx.boundary_1(), cx.boundary_2()
    primal = lattice or cycle_lattice(B1, B2)
    dual = cycle_lattice(B2.T, B1.T)
    push = dual_to_primal_chain_matrix(cx)
    M = intmat.matmul(primal.basis.T, dual.basis)
    pushed = intmat.matmul(push, dual.basis)
    if intmat.matmul(B1, pushed).any():
        raise HomologyError("pushed dual cycles are not closed")
    X = intmat.matmul(primal.coords, pushed)
    J = intmat.matmul(M, intmat.inverse_unimodular(X))
    if np.any(J != -J.T):
        raise HomologyError("intersection form is not antisymmetric")
    if intmat.determinant(J) != 1:
        raise HomologyError("intersection form is not unimodular")
    return J


def zeta_star(model_or_lattice, cover: SurfaceComplex) -> np.ndarray:
    """Matrix of the deck transformation on ``H_1`` in the model's basis."""
    lat = getattr(model_or_lattice, "lattice", model_or_lattice)
    ne = len(cover.complex.edges)
    P = intmat.zeros(ne, ne)
    for e, f in enumerate(cover.deck_edges):
        P[f, e] = 1
    return intmat.matmul(lat.coords, intmat.matmul(P, lat.basis))


def lifted_gamma_classes(cover: SurfaceComplex, lattice: CycleLattice) -> dict:
    push = dual_to_primal_chain_matrix(cover.complex)
    n, k = cover.params.n, cover.params.k
    out = {}
    for i in range(1, 2 * n + 2):
        comps = lift_dual_loop(cover, cover.sphere.pair_loop(i))
        if len(comps) != k:
            raise HomologyError(f"G[{i}] lifts to {len(comps)} components, expected {k}")
        for l in range(1, k + 1):
            chain = intmat.matmul(push, dual_cycle_chain(cover, comps[gamma_sheet(i, l, k)]))
            out[gamma(i, l)] = _tuple(lattice.classify(chain))
    return out


def transvection(model: HomologyModel, c) -> np.ndarray:
    return _transvection(model.form, _col(c))


def monodromy_matrix(model: HomologyModel, word: TwistWord) -> np.ndarray:
    """Product of transvections, rightmost letter applied first."""
    out = intmat.identity(model.rank)
    for sym in word.letters:
        t = transvection(model, model.cls(sym.name))
        if sym.sign == -1:
            t = 2 * intmat.identity(model.rank) - t    # unipotent of rank one
        out = intmat.matmul(out, t)
    return out


def matrix_order(m: np.ndarray, limit: int = 1000) -> int | None:
    cur = m.copy()
    for j in range(1, limit + 1):
        if intmat.is_identity(cur):
            return j
        cur = intmat.matmul(cur, m)
    return None


def _alpha_candidates(classes: dict, params: FamilyParameters, signs) -> dict:
    e1, e2 = signs
    out = {}
    for i in range(1, params.n + 1):
        for l in range(1, params.k):
            v = e1 * _col(classes[gamma(2 * i, l)]) + e2 * _col(classes[gamma(2 * i - 1, l + 1)])
            out[alpha(i, l)] = _tuple(v)
    return out


def derive_alpha_classes(model: HomologyModel, factorization: TwistWord | None = None):
    """Integral alpha classes and the sign pattern that produced them.

    A pattern is accepted when (a) every ``T_{gamma_{2i-1}^{l+1}}`` sends the
    alpha class to plus or minus ``gamma_{2i}^l`` and (b) the monodromy of the
    one-period factorization equals the deck action.
    """
    from .family import build_family

    p = model.params
    word = factorization or build_family(p).factorization
    for signs in SIGN_PATTERNS:
        cand = _alpha_candidates(model.classes, p, signs)
        ok = True
        for i in range(1, p.n + 1):
            for l in range(1, p.k):
                img = intmat.matmul(
                    _transvection(model.form, _col(model.classes[gamma(2 * i - 1, l + 1)])),
                    _col(cand[alpha(i, l)]))
                target = _col(model.classes[gamma(2 * i, l)])
                if not (np.all(img == target) or np.all(img == -target)):
                    ok = False
        if not ok:
            continue
        trial = HomologyModel(p, model.form, {**model.classes, **cand}, model.zeta, signs,
                              model.lattice)
        if np.all(monodromy_matrix(trial, word) == model.zeta):
            return cand, signs
    raise AlphaDerivationError(f"no uniform sign pattern works for n={p.n}, k={p.k}")


def build_homology(cover: SurfaceComplex, with_alpha: bool = True) -> HomologyModel:
    cx = cover.complex
    lat = cycle_lattice(cx.boundary_1(), cx.boundary_2())
    if lat.rank != 2 * cover.genus:
        raise HomologyError(f"rank {lat.rank} differs from 2g = {2 * cover.genus}")
    J = intersection_form(cover, lat)
    z = zeta_star(lat, cover)
    model = HomologyModel(cover.params, J, lifted_gamma_classes(cover, lat), z, None, lat)
    if not with_alpha:
        return model
    cand, signs = derive_alpha_classes(model)
    return HomologyModel(cover.params, J, {**model.classes, **cand}, z, signs, lat)


def gamma_basis_labels(params: FamilyParameters) -> list[str]:
    return [gamma(i, l) for i in range(1, 2 * params.n + 1) for l in range(1, params.k)]


def gamma_basis_status(model: HomologyModel) -> dict:
    """Whether the chosen gamma labels form a basis mod 2 and over the integers."""
    labs = gamma_basis_labels(model.params)
    mat = np.hstack([model.cls(lab) for lab in labs])
    return {
        "gf2_rank": intmat.gf2_rank(np.array(mat % 2, dtype=np.uint8)),
        "integral_determinant": intmat.determinant(mat),
        "size": len(labs),
    }


def mod2_relations(model: HomologyModel) -> dict:
    """The GF(2) identities among the curve classes, each as a boolean."""
    p = model.params
    n, k = p.n, p.k
    c = model.cls
    zero = intmat.zeros(model.rank, 1)

    def even(v):
        return not np.any(v % 2)

    out = {}
    out["gamma_k_sum"] = all(
        even(sum((c(gamma(i, l)) for l in range(1, k)), zero) - c(gamma(i, k)))
        for i in range(1, 2 * n + 2))
    out["gamma_last_sum"] = all(
        even(sum((c(gamma(i, l)) for i in range(1, 2 * n, 2)), zero) - c(gamma(2 * n + 1, l)))
        for l in range(1, k + 1))
    out["alpha_sum"] = all(
        even(c(alpha(i, l)) - c(gamma(2 * i, l)) - c(gamma(2 * i - 1, l + 1)))
        for i in range(1, n + 1) for l in range(1, k)) if alpha_labels(p)[0] in model.classes else None
    out["same_index_disjoint"] = all(
        model.pair(gamma(i, l), gamma(i, m)) % 2 == 0
        for i in range(1, 2 * n + 2) for l in range(1, k + 1) for m in range(1, k + 1))
    out["chain_pairs_meet"] = all(
        model.pair(gamma(2 * i, l), gamma(2 * i - 1, l + 1)) % 2 == 1
        and model.pair(gamma(2 * i, l), gamma(2 * i - 1, l)) % 2 == 1
        for i in range(1, n + 1) for l in range(1, k))
    return out


# ---- spin obstruction -------------------------------------------------------


@dataclass(frozen=True)
class QuadraticFormWitness:
    """Values ``q(e_i)`` on the model basis; ``form2`` is the form mod 2."""

    values: tuple[int, ...]
    form2: tuple[tuple[int, ...], ...]

    def evaluate(self, vec) -> int:
        a = [int(x) % 2 for x in np.asarray(vec, dtype=object).reshape(-1)]
        total = sum(ai * qi for ai, qi in zip(a, self.values))
        for i, j in itertools.combinations(range(len(a)), 2):
            total += a[i] * a[j] * self.form2[i][j]
        return total % 2

    def to_json_dict(self) -> dict:
        return {"values": list(self.values)}


def spin_fiber_complement(form: np.ndarray, vanishing) -> QuadraticFormWitness | None:
    """Least quadratic form (in lexicographic order) with ``q = 1`` on every class, or None."""
    J2 = [[int(v) % 2 for v in row] for row in form]
    rows, rhs = [], []
    for c in vanishing:
        a = [int(x) % 2 for x in np.asarray(c, dtype=object).reshape(-1)]
        cross = sum(a[i] * a[j] * J2[i][j] for i, j in itertools.combinations(range(len(a)), 2))
        rows.append(a)
        rhs.append((1 + cross) % 2)
    if not rows:
        return QuadraticFormWitness(tuple([0] * len(J2)), tuple(map(tuple, J2)))
    sol = intmat.gf2_solve(np.array(rows, dtype=np.uint8), np.array(rhs, dtype=np.uint8))
    if sol is None:
        return None
    w = QuadraticFormWitness(tuple(int(x) for x in sol), tuple(map(tuple, J2)))
    for c in vanishing:
        if w.evaluate(c) != 1:
            raise HomologyError("spin witness fails re-verification")
    return w


def vanishing_classes(model: HomologyModel, word: TwistWord) -> list[np.ndarray]:
    return [model.cls(lab) for lab in dict.fromkeys(s.name for s in word.letters)]


def spin_total(fiber_result: QuadraticFormWitness | None, section_square: int) -> bool:
    return fiber_result is not None and section_square % 2 == 0
