"""Invariants of the Lefschetz fibration defined by the relator (W~)^k.

Signatures are accumulated from Meyer's cocycle along the partial products
of the monodromy. With the sign fixed so that ``(t_a t_b)^6`` on the torus
gives -8 (the rational elliptic surface), the plain sum reproduces the
classical genus-2 values as well, so no per-fiber correction is added: every
vanishing cycle here is nonseparating.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import intmat
from .cosets import CosetTable, enumerate_cosets, tietze_simplify, verify_table
from .cover import (GroupPresentation, build_cover, cycle_to_word, lift_dual_loop,
                    pi1_presentation, push_dual_to_primal_path)
from .family import FamilyParameters, UnsupportedParameters, alpha, build_family, gamma
from .homology import (HomologyModel, build_homology, gamma_sheet, spin_fiber_complement,
                       spin_total, vanishing_classes)
from .words import (Relator, UnresolvedClassError, elementary_transform, is_symplectic,
                    transvection)


class InconsistencyError(RuntimeError):
    pass


SECTION_SQUARE = -1


# ---- Euler characteristic ----------------------------------------------------


def singular_fiber_count(params: FamilyParameters) -> int:
    return len(build_family(params).relator)


def euler_characteristic(params: FamilyParameters) -> int:
    n, k, g = params.n, params.k, params.g
    closed = (3 * n + 1) * k * k - 6 * n * k + 4 * n + 4
    via_fibers = -4 * (g - 1) + singular_fiber_count(params)
    if closed != via_fibers:
        raise InconsistencyError(f"chi: formula {closed} != -4(g-1)+s = {via_fibers}")
    return closed


# ---- fundamental group and first homology ------------------------------------


def vanishing_cycle_words(params: FamilyParameters):
    """Surface presentation and one word per gamma label, via lifted loops."""
    cover = build_cover(params)
    sp = pi1_presentation(cover)
    words = {}
    for i in range(1, 2 * params.n + 2):
        comps = lift_dual_loop(cover, cover.sphere.pair_loop(i))
        for l in range(1, params.k + 1):
            path = push_dual_to_primal_path(cover.complex, comps[gamma_sheet(i, l, params.k)])
            words[gamma(i, l)] = cycle_to_word(cover, path, sp)
    return cover, sp, words


def total_space_presentation(params: FamilyParameters) -> GroupPresentation:
    _, sp, words = vanishing_cycle_words(params)
    return sp.presentation.with_relators(words[lab] for lab in sorted(words))


@dataclass(frozen=True)
class Pi1Result:
    status: str                      # "trivial" or "unknown_at_budget"
    table: CosetTable
    simplified: bool
    note: str = ""

    def to_json_dict(self) -> dict:
        d = {"status": self.status, "simplified": self.simplified, **self.table.stats()}
        if self.note:
            d["note"] = self.note
        return d


def pi1_total_space(params: FamilyParameters, budget: int = 10**6,
                    simplify: bool = False) -> Pi1Result:
    """Semi-decide triviality of the quotient by the gamma vanishing cycles.

    The alpha words are omitted: this quotient surjects onto the total
    space's group, so index 1 certifies triviality. A table closing at a
    larger index is therefore inconclusive as well.
    """
    pres = total_space_presentation(params)
    if simplify:
        pres = tietze_simplify(pres)
    table = enumerate_cosets(pres, budget=budget)
    if table.closed and not verify_table(pres, table):
        raise InconsistencyError("closed coset table fails verification")
    if table.closed and table.index == 1:
        return Pi1Result("trivial", table, simplify)
    note = "" if not table.closed else f"gamma-only quotient has order {table.index}"
    return Pi1Result("unknown_at_budget", table, simplify, note)


def h1_of_presentation(pres: GroupPresentation) -> list[int]:
    return pres.abelian_invariants()


def h1_total_space(params: FamilyParameters) -> list[int]:
    return h1_of_presentation(total_space_presentation(params))


# ---- Meyer cocycle and signature ---------------------------------------------


def meyer_cocycle(A: np.ndarray, B: np.ndarray, form: np.ndarray) -> int:
    """Meyer's signature cocycle for matrices symplectic with respect to ``form``.

    The value is the signature of ``((x1, y1), (x2, y2)) -> <x1 + y1, (I - B) y2>``
    on ``{(x, y) : (A^{-1} - I) x + (B - I) y = 0}``.
    """
    if not (is_symplectic(A, form) and is_symplectic(B, form)):
        raise ValueError("meyer_cocycle needs symplectic matrices")
    n = form.shape[0]
    eye = intmat.identity(n)
    Ainv = intmat.inverse_unimodular(A)
    basis = intmat.rational_kernel(np.hstack([Ainv - eye, B - eye]))
    if not basis:
        return 0
    vecs = [(np.array(v[:n], dtype=object), np.array(v[n:], dtype=object)) for v in basis]
    rhs = [intmat.matmul(form, intmat.matmul(eye - B, y)) for _, y in vecs]
    gram = [[(x1 + y1).dot(r) for r in rhs] for x1, y1 in vecs]
    return intmat.symmetric_signature(gram)


def _written_transvections(relator: Relator) -> list[np.ndarray]:
    return list(reversed(relator.transvections()))


def signature(relator: Relator) -> int:
    """Signature of the fibration over the sphere with this positive relator."""
    if len(relator) == 0:
        return 0
    ts = _written_transvections(relator)
    form = relator.form
    total = 0
    prefix = ts[0]
    for t in ts[1:]:
        total += meyer_cocycle(prefix, t, form)
        prefix = intmat.matmul(prefix, t)
    if not intmat.is_identity(prefix):
        raise ValueError("relator monodromy is not the identity")
    return total


def hyperelliptic_signature(genus: int, nonseparating: int) -> int:
    """Signature of a hyperelliptic fibration with only nonseparating fibers."""
    num = -(genus + 1) * nonseparating
    if num % (2 * genus + 1):
        raise ValueError("count incompatible with a hyperelliptic fibration")
    return num // (2 * genus + 1)


def anchor_signature(params: FamilyParameters) -> int | None:
    """Value stated for n = 1 alongside the chain reduction; None otherwise."""
    return -2 * params.g * (params.g + 2) if params.n == 1 else None


# ---- the chain reduction for n = 1 -------------------------------------------


@dataclass
class ChainReduction:
    initial: Relator
    final: Relator
    steps: list = field(default_factory=list)
    monodromy_preserved: bool = True

    def chain_pattern(self, params: FamilyParameters) -> list[str]:
        block = []
        for l in range(1, params.k + 1):
            block.append(gamma(1, l))
            if l < params.k:
                block.append(gamma(2, l))
        return block * (2 * params.g + 2)

    def to_json_dict(self) -> dict:
        return {"steps": self.steps, "length": len(self.final),
                "final": str(self.final), "monodromy_preserved": self.monodromy_preserved}


def family_relator(model: HomologyModel) -> Relator:
    fam = build_family(model.params)
    return fam.relator.with_classes(model.classes, model.form)


def _move_right(rel: Relator, written_pos: int) -> Relator:
    """Slide the factor at written position ``written_pos`` one place to the right."""
    acting = len(rel) - 2 - written_pos
    return elementary_transform(rel, acting, "right")


def _written(rel: Relator) -> list[str]:
    return list(reversed(rel.factors))


def chain_reduction_script(model: HomologyModel, check_every_step: bool = True) -> ChainReduction:
    p = model.params
    if p.n != 1:
        raise UnsupportedParameters("the chain reduction is defined for n = 1 only")
    k = p.k
    rel = family_relator(model)
    target = rel.monodromy()
    result = ChainReduction(initial=rel, final=rel)
    catalog = {lab: model.classes[lab] for lab in (gamma(1, l) for l in range(1, k + 1))}
    catalog.update({gamma(2, l): model.classes[gamma(2, l)] for l in range(1, k)})

    # t~_3 = t~_1: each gamma_3^l is recognised by its class
    for l in range(1, k + 1):
        c3 = np.array(model.classes[gamma(3, l)], dtype=object)
        c1 = np.array(model.classes[gamma(1, l)], dtype=object)
        if not (np.all(c3 == c1) or np.all(c3 == -c1)):
            raise InconsistencyError(f"{gamma(3, l)} is not homologous to {gamma(1, l)}")
    renamed = tuple(gamma(1, int(f.split("][")[1][:-1])) if f.startswith("g[3]") else f
                    for f in rel.factors)
    rel = Relator(renamed, rel.classes, rel.form)
    result.steps.append({"step": "identify", "detail": "g[3][l] -> g[1][l] (equal classes)"})

    period = len(build_family(p).factorization)
    h_len = 2 * k - 1

    def check(r):
        if check_every_step and not np.all(r.monodromy() == target):
            result.monodromy_preserved = False
            raise InconsistencyError("monodromy changed during the reduction")

    for q in range(k):
        base = q * period + h_len          # written index of the t~ block
        # slide t_{g1^l} (l = k..3) right past al^1..al^{l-2}; these pairs commute
        for l in range(k, 2, -1):
            pos = base + (l - 1)
            for j in range(1, l - 1):
                nxt = _written(rel)[pos + 1]
                if nxt != alpha(1, j):
                    raise InconsistencyError(f"expected {alpha(1, j)}, found {nxt}")
                rel = _move_right(rel, pos)
                check(rel)
                result.steps.append({"period": q + 1, "move": "right", "written_position": pos,
                                     "factor": gamma(1, l), "past": nxt})
                pos += 1
        # now (g1^{l+1}, al^l) are adjacent; replace al^l by t_{g1^{l+1}}(al^l)
        for l in range(1, k):
            w = _written(rel)
            pos = base + 2 * l - 1         # written index of g1^{l+1}
            if w[pos] != gamma(1, l + 1) or w[pos + 1] != alpha(1, l):
                raise InconsistencyError(f"unexpected factors {w[pos]}, {w[pos + 1]}")
            rel = _move_right(rel, pos)
            check(rel)
            result.steps.append({"period": q + 1, "move": "right", "written_position": pos,
                                 "factor": gamma(1, l + 1), "past": alpha(1, l)})
    rel = rel.relabel(catalog)
    result.final = rel
    if _written(rel) != result.chain_pattern(p):
        raise InconsistencyError("reduction did not reach the chain pattern")
    if not np.all(rel.monodromy() == target):
        result.monodromy_preserved = False
    return result


def random_transform_sequence(relator: Relator, length: int, rng: random.Random) -> Relator:
    rel = relator
    for _ in range(length):
        pos = rng.randrange(len(rel) - 1)
        rel = elementary_transform(rel, pos, rng.choice(("left", "right")))
    return rel


# ---- report -------------------------------------------------------------------


@dataclass
class FibrationReport:
    n: int
    k: int
    g: int
    s: int
    chi: int
    pi1: str
    h1: list
    spin: bool
    signature: int | None
    provenance: dict
    checks: dict
    details: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return all(v for v in self.checks.values() if v is not None)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "g": self.g, "s": self.s, "chi": self.chi,
                "pi1": self.pi1, "h1": self.h1, "spin": self.spin, "signature": self.signature,
                "provenance": self.provenance, "checks": self.checks, "details": self.details}


def fibration_report(params: FamilyParameters, budget: int = 10**6,
                     with_signature: bool = True) -> FibrationReport:
    chi = euler_characteristic(params)
    s = singular_fiber_count(params)
    model = build_homology(build_cover(params))
    rel = family_relator(model)
    checks = {"chi_routes_agree": True,
              "relator_monodromy_identity": bool(intmat.is_identity(rel.monodromy()))}
    pi1 = pi1_total_space(params, budget)
    h1 = h1_total_space(params)
    fiber = spin_fiber_complement(model.form, vanishing_classes(model, build_family(params).factorization))
    spin = spin_total(fiber, SECTION_SQUARE)
    provenance = {
        "chi": "closed formula and -4(g-1)+s",
        "pi1": "coset enumeration on the surface group modulo gamma vanishing cycles",
        "h1": "Smith normal form of the abelianised presentation",
        "spin": f"GF(2) quadratic form search; section square {SECTION_SQUARE}",
    }
    details = {"pi1": pi1.to_json_dict(), "alpha_signs": list(model.alpha_signs),
               "spin_fiber_witness": fiber.to_json_dict() if fiber else None}
    sig = None
    if with_signature:
        sig = signature(rel)
        b2 = chi - 2
        if pi1.status == "trivial":
            checks["signature_bounded_by_b2"] = abs(sig) <= b2
            checks["signature_parity"] = (sig - b2) % 2 == 0
            # symplectic with b1 = 0 forces b2+ odd
            checks["b2_plus_odd"] = (b2 + sig) % 4 == 2
        anchor = anchor_signature(params)
        if anchor is None:
            provenance["signature"] = "Meyer cocycle sum (unanchored)"
        else:
            provenance["signature"] = "Meyer cocycle sum"
            details["signature_anchor"] = anchor
            details["signature_matches_anchor"] = sig == anchor
            details["hyperelliptic_chain_value"] = hyperelliptic_signature(params.g, s)
    checks["h1_trivial_if_pi1_trivial"] = (h1 == []) if pi1.status == "trivial" else None
    return FibrationReport(params.n, params.k, params.g, s, chi, pi1.status, h1, spin, sig,
                           provenance, checks, details)


__all__ = [
    "ChainReduction", "FibrationReport", "InconsistencyError", "Pi1Result", "UnresolvedClassError",
    "anchor_signature", "chain_reduction_script", "euler_characteristic", "family_relator",
    "fibration_report", "h1_of_presentation", "h1_total_space", "hyperelliptic_signature",
    "meyer_cocycle", "pi1_total_space", "random_transform_sequence", "signature",
    "singular_fiber_count", "total_space_presentation", "transvection", "vanishing_cycle_words",
]
