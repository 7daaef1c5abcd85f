"""Todd-Coxeter enumeration and Tietze simplification for finite presentations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import coset_enumerate
from .cover import GroupPresentation


def _encode(word) -> list[int]:
    return [2 * (abs(x) - 1) + (0 if x > 0 else 1) for x in word]


def _flatten(words) -> tuple[np.ndarray, np.ndarray]:
    flat: list[int] = []
    off = [0]
    for w in words:
        flat += _encode(w)
        off.append(len(flat))
    return np.array(flat, dtype=np.int64), np.array(off, dtype=np.int64)


@dataclass(frozen=True)
class CosetTable:
    """Outcome of an enumeration; ``table`` is set only when it closed."""

    ngens: int
    index: int | None
    total_defined: int
    budget: int
    table: np.ndarray | None = None

    @property
    def closed(self) -> bool:
        return self.index is not None

    def stats(self) -> dict:
        return {"index": self.index, "total_defined": self.total_defined, "budget": self.budget}


def _compact(table: np.ndarray, p: np.ndarray, used: int) -> np.ndarray:
    live = [c for c in range(used) if p[c] == c]
    new = {c: i for i, c in enumerate(live)}
    out = np.empty((len(live), table.shape[1]), dtype=np.int64)
    for c in live:
        for x in range(table.shape[1]):
            d = table[c, x]
            while p[d] != d:
                d = p[d]
            out[new[c], x] = new[d]
    return out


def enumerate_cosets(pres: GroupPresentation, subgroup=(), budget: int = 10**6,
                     initial: int = 4096) -> CosetTable:
    """HLT enumeration of the cosets of ``<subgroup>``.

    The table capacity starts small and doubles, each attempt from scratch,
    until the enumeration closes or ``budget`` cosets would be exceeded.
    """
    nlet = 2 * pres.ngens
    rel_flat, rel_off = _flatten(w for w in pres.relators if w)
    sub_flat, sub_off = _flatten(w for w in subgroup if w)
    if pres.ngens == 0:
        return CosetTable(0, 1, 1, budget, np.zeros((1, 0), dtype=np.int64))
    cap = min(initial, budget)
    while True:
        live, total, used, table, p = coset_enumerate(nlet, rel_flat, rel_off, sub_flat,
                                                      sub_off, cap)
        if live >= 0:
            compact = _compact(table, p, int(used))
            return CosetTable(pres.ngens, int(live), int(total), budget, compact)
        if cap >= budget:
            return CosetTable(pres.ngens, None, int(total), budget)
        cap = min(2 * cap, budget)


def verify_table(pres: GroupPresentation, ct: CosetTable, subgroup=()) -> bool:
    """Check a closed table: columns are permutations, every relator fixes every coset,
    and every subgroup word fixes coset 0."""
    if not ct.closed:
        return False
    t = ct.table
    n = t.shape[0]
    for g in range(pres.ngens):
        fwd, inv = t[:, 2 * g], t[:, 2 * g + 1]
        if sorted(fwd.tolist()) != list(range(n)):
            return False
        if any(inv[fwd[c]] != c for c in range(n)):
            return False

    def run(c, w):
        for x in _encode(w):
            c = t[c, x]
        return c

    if any(run(c, w) != c for w in pres.relators for c in range(n)):
        return False
    return all(run(0, w) == 0 for w in subgroup)


# ---- Tietze simplification --------------------------------------------------


def free_reduce(word) -> tuple[int, ...]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word) -> tuple[int, ...]:
    w = list(free_reduce(word))
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def _invert(word):
    return tuple(-x for x in reversed(word))


def tietze_simplify(pres: GroupPresentation, max_length: int = 10**5) -> GroupPresentation:
    """Eliminate generators occurring exactly once in some relator.

    Deterministic: the shortest such relator is used first (ties broken by
    position), and its smallest eligible generator is eliminated.
    """
    ngens = pres.ngens
    rels = [cyclic_reduce(w) for w in pres.relators]
    names = list(pres.names) if pres.names else [f"x{i}" for i in range(1, ngens + 1)]
    while True:
        rels = sorted({w for w in (cyclic_reduce(r) for r in rels) if w}, key=lambda w: (len(w), w))
        choice = None
        for idx, r in enumerate(rels):
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            once = sorted(g for g, c in counts.items() if c == 1)
            if once:
                choice = (idx, once[0])
                break
        if choice is None:
            break
        idx, g = choice
        r = rels.pop(idx)
        pos = next(i for i, x in enumerate(r) if abs(x) == g)
        rot = r[pos:] + r[:pos]      # g^e * rest = 1
        rest = rot[1:]
        value = _invert(rest) if rot[0] > 0 else rest
        new_rels = []
        for w in rels:
            sub: list[int] = []
            for x in w:
                if abs(x) == g:
                    sub += list(value if x > 0 else _invert(value))
                else:
                    sub.append(x)
            new_rels.append(tuple(sub))
        if sum(len(w) for w in new_rels) > max_length:
            rels.insert(idx, r)
            break
        # renumber generators above g
        rels = [tuple(x - (1 if x > g else -1 if x < -g else 0) for x in w) for w in new_rels]
        names.pop(g - 1)
        ngens -= 1
    return GroupPresentation(ngens, tuple(rels), tuple(names))
