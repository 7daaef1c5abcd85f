"""Braid words, the Artin action on the free group, and kernel witnesses.

The Artin action is faithful, so two braids are equal exactly when their
automorphisms agree on every free generator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .family import FamilyParameters, sphere_word as _sphere_symbols
from .words import TwistWord

FreeWord = tuple  # tuple of nonzero ints: +j is x_j, -j its inverse


def reduce_free(word: Iterable[int]) -> FreeWord:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_free(word: FreeWord) -> FreeWord:
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class BraidWord:
    m: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        for s in self.letters:
            if s == 0 or abs(s) > self.m - 1:
                raise ValueError(f"braid letter {s} out of range for {self.m} strands")

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if other.m != self.m:
            raise ValueError("strand counts differ")
        return BraidWord(self.m, self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.m, tuple(-s for s in reversed(self.letters)))

    def exponent_sum(self) -> int:
        return sum(1 if s > 0 else -1 for s in self.letters)

    def __str__(self) -> str:
        return " ".join(f"s{s}" if s > 0 else f"s{-s}^-1" for s in self.letters)


@dataclass(frozen=True)
class FreeAutomorphism:
    images: tuple[FreeWord, ...]

    @classmethod
    def identity(cls, m: int) -> "FreeAutomorphism":
        return cls(tuple((j,) for j in range(1, m + 1)))

    def apply(self, word: FreeWord) -> FreeWord:
        out: list[int] = []
        for x in word:
            img = self.images[abs(x) - 1]
            out.extend(img if x > 0 else invert_free(img))
        return reduce_free(out)

    def compose(self, other: "FreeAutomorphism") -> "FreeAutomorphism":
        """``self o other``: apply ``other`` first."""
        return FreeAutomorphism(tuple(self.apply(img) for img in other.images))

    def is_identity(self) -> bool:
        return all(img == (j,) for j, img in enumerate(self.images, start=1))


def _generator_action(m: int, s: int) -> FreeAutomorphism:
    i = abs(s)
    images = [(j,) for j in range(1, m + 1)]
    if s > 0:
        images[i - 1] = (i, i + 1, -i)
        images[i] = (i,)
    else:
        images[i - 1] = (i + 1,)
        images[i] = (-(i + 1), i, i + 1)
    return FreeAutomorphism(tuple(images))


def artin_action(braid: BraidWord) -> FreeAutomorphism:
    """Automorphism of the free group of rank m; the rightmost letter acts first.

    ``sigma_i`` sends ``x_i`` to ``x_i x_{i+1} x_i^{-1}`` and ``x_{i+1}`` to ``x_i``.
    """
    out = FreeAutomorphism.identity(braid.m)
    for s in braid.letters:
        out = out.compose(_generator_action(braid.m, s))
    return out


def _expand(sym_family: str, i: int) -> tuple[int, ...]:
    if sym_family == "s":
        return (i,)
    if sym_family == "h":
        return (i, i + 1, i)
    if sym_family == "t":
        return (i, i)
    if sym_family == "a":
        return (2 * i, 2 * i - 1, -2 * i)
    raise ValueError(f"{sym_family}{i} is not a sphere generator")


def expand_symbols(word: TwistWord, m: int) -> BraidWord:
    letters: list[int] = []
    for sym in word.letters:
        block = _expand(sym.family, sym.index)
        if sym.sign == -1:
            block = tuple(-x for x in reversed(block))
        letters.extend(block)
    return BraidWord(m, tuple(letters))


def sphere_word(n: int) -> BraidWord:
    """``W = h_1 h_3 ... h_{2n-1} t_{2n+1} a_n ... a_1`` in half twists."""
    if n < 1:
        raise ValueError("n must be positive")
    params = FamilyParameters(n, 3)       # k plays no role downstairs
    return expand_symbols(_sphere_symbols(params), 2 * n + 2)


def sphere_relator(m: int) -> BraidWord:
    """``R = s_1 s_2 ... s_{m-1}^2 ... s_2 s_1``."""
    up = tuple(range(1, m))
    return BraidWord(m, up + tuple(reversed(up)))


def full_twist(m: int) -> BraidWord:
    return BraidWord(m, tuple(range(1, m)) * m)


GENERATORS = ("R", "R^-1", "D2", "D2^-1")


def _generator_word(name: str, m: int) -> BraidWord:
    if name == "R":
        return sphere_relator(m)
    if name == "R^-1":
        return sphere_relator(m).inverse()
    if name == "D2":
        return full_twist(m)
    if name == "D2^-1":
        return full_twist(m).inverse()
    raise ValueError(f"unknown witness generator {name!r}")


@dataclass(frozen=True)
class Witness:
    """Product of conjugates ``c_1 g_1 c_1^{-1} ... c_r g_r c_r^{-1}``."""

    terms: tuple[tuple[BraidWord, str], ...]

    def product(self, m: int) -> BraidWord:
        out = BraidWord(m)
        for c, g in self.terms:
            if c.m != m:
                raise ValueError("witness conjugator has the wrong strand count")
            out = out + c + _generator_word(g, m) + c.inverse()
        return out

    def to_json_dict(self) -> list:
        return [{"conjugator": list(c.letters), "generator": g} for c, g in self.terms]

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def kernel_witness_check(W: BraidWord, witness: Witness) -> bool:
    """True iff ``W`` equals the witness product in the braid group."""
    for term in witness.terms:
        if not (isinstance(term, tuple) and len(term) == 2 and isinstance(term[0], BraidWord)
                and term[1] in GENERATORS):
            raise ValueError(f"malformed witness term {term!r}")
    return artin_action(W) == artin_action(witness.product(W.m))


def _letter_order(m: int) -> list[int]:
    out = []
    for i in range(1, m):
        out += [i, -i]
    return out


@dataclass(frozen=True)
class SearchResult:
    witness: Witness | None
    explored: int

    @property
    def found(self) -> bool:
        return self.witness is not None


def witness_search(W: BraidWord, max_conjugator_length: int,
                   generator: str = "R", max_nodes: int = 2_000_000) -> SearchResult:
    """Shortest, then lexicographically first, ``c`` with ``W = c g c^{-1}``.

    Conjugators are freely reduced words; letters are ordered
    ``s1, s1^-1, s2, s2^-1, ...``. Searching stops after ``max_nodes``
    candidates.
    """
    m = W.m
    g = _generator_word(generator, m)
    if W.exponent_sum() != g.exponent_sum():
        return SearchResult(None, 0)
    target = artin_action(W)
    gen = artin_action(g)
    gens = {s: _generator_action(m, s) for s in _letter_order(m)}
    order = _letter_order(m)
    explored = 0
    # breadth-first by length; each level kept in lexicographic order
    level = [((), FreeAutomorphism.identity(m), FreeAutomorphism.identity(m))]
    for length in range(max_conjugator_length + 1):
        nxt = []
        for word, act, inv in level:
            explored += 1
            if explored > max_nodes:
                return SearchResult(None, explored)
            # W c = c g  <=>  W = c g c^-1
            if target.compose(act) == act.compose(gen):
                return SearchResult(Witness(((BraidWord(m, word), generator),)), explored)
            if length == max_conjugator_length:
                continue
            for s in order:
                if word and word[-1] == -s:
                    continue
                nxt.append((word + (s,), act.compose(gens[s]), gens[-s].compose(inv)))
        level = nxt
        if not level:
            break
    return SearchResult(None, explored)
