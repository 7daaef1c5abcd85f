"""The balanced superelliptic family: labels, words, Psi and the lift table.

Genus ``g = n(k-1)``; the sphere carries ``2n+2`` marked points. Upstairs
curves are ``g[i][l]`` (1 <= i <= 2n+1, 1 <= l <= k) and ``al[i][l]``
(1 <= i <= n, 1 <= l <= k-1); the downstairs loop around ``p_i, p_{i+1}``
is ``G[i]``.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass

from .words import GeneratorSymbol, Relator, TwistWord


class UnsupportedParameters(ValueError):
    pass


class NotCatalogued(ValueError):
    pass


class UndefinedResult(ValueError):
    pass


@dataclass(frozen=True)
class FamilyParameters:
    n: int
    k: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not isinstance(self.k, int):
            raise UnsupportedParameters("n and k must be integers")
        if self.n < 1 or self.k < 3:
            raise UnsupportedParameters(f"need n >= 1 and k >= 3, got n={self.n}, k={self.k}")

    @property
    def g(self) -> int:
        return self.n * (self.k - 1)

    @property
    def m(self) -> int:
        """Number of marked points on the sphere."""
        return 2 * self.n + 2


class CurveKind(str, enum.Enum):
    GAMMA = "gamma"
    ALPHA = "alpha"
    DOWNSTAIRS = "downstairs-gamma"


_LABEL = re.compile(r"^(?:g\[(\d+)\]\[(\d+)\]|al\[(\d+)\]\[(\d+)\]|G\[(\d+)\])$")


@dataclass(frozen=True, order=True)
class CurveLabel:
    kind: CurveKind
    i: int
    l: int | None = None

    def validate(self, params: FamilyParameters) -> "CurveLabel":
        n, k = params.n, params.k
        ok = {
            CurveKind.GAMMA: lambda: 1 <= self.i <= 2 * n + 1 and self.l is not None and 1 <= self.l <= k,
            CurveKind.ALPHA: lambda: 1 <= self.i <= n and self.l is not None and 1 <= self.l <= k - 1,
            CurveKind.DOWNSTAIRS: lambda: 1 <= self.i <= 2 * n + 1 and self.l is None,
        }[self.kind]()
        if not ok:
            raise ValueError(f"label {self} out of range for n={n}, k={k}")
        return self

    def __str__(self) -> str:
        if self.kind is CurveKind.GAMMA:
            return f"g[{self.i}][{self.l}]"
        if self.kind is CurveKind.ALPHA:
            return f"al[{self.i}][{self.l}]"
        return f"G[{self.i}]"

    @classmethod
    def parse(cls, text: str) -> "CurveLabel":
        mt = _LABEL.match(text)
        if not mt:
            raise ValueError(f"not a curve label: {text!r}")
        if mt.group(1):
            return cls(CurveKind.GAMMA, int(mt.group(1)), int(mt.group(2)))
        if mt.group(3):
            return cls(CurveKind.ALPHA, int(mt.group(3)), int(mt.group(4)))
        return cls(CurveKind.DOWNSTAIRS, int(mt.group(5)))


def gamma(i: int, l: int) -> str:
    return f"g[{i}][{l}]"


def alpha(i: int, l: int) -> str:
    return f"al[{i}][{l}]"


@dataclass(frozen=True)
class Permutation:
    """Permutation of the marked points in one-line notation (1-based images)."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError("images do not form a bijection")

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def transposition(cls, m: int, a: int, b: int) -> "Permutation":
        im = list(range(1, m + 1))
        im[a - 1], im[b - 1] = b, a
        return cls(tuple(im))

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other``: apply ``other`` first."""
        return Permutation(tuple(self(other(x)) for x in range(1, len(self.images) + 1)))

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for s in range(1, len(self.images) + 1):
            if s in seen or self(s) == s:
                continue
            cyc, x = [], s
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"


class Liftability(str, enum.Enum):
    PARITY_PRESERVING = "parity_preserving"
    PARITY_REVERSING = "parity_reversing"
    NON_LIFTABLE = "non_liftable"


_DOWNSTAIRS = {"s", "h", "a", "t"}


def _generator_permutation(sym: GeneratorSymbol, params: FamilyParameters) -> Permutation:
    m = params.m
    fam, i = sym.family, sym.index
    if fam not in _DOWNSTAIRS:
        raise TypeError(f"{sym.name} is not a downstairs generator")
    if fam == "s":
        if not 1 <= i <= m - 1:
            raise ValueError(f"{sym.name} out of range")
        return Permutation.transposition(m, i, i + 1)
    if fam == "h":
        if not 1 <= i <= m - 2:
            raise ValueError(f"{sym.name} out of range")
        return Permutation.transposition(m, i, i + 2)
    if fam == "a":
        if not 1 <= i <= params.n:
            raise ValueError(f"{sym.name} out of range")
        return Permutation.transposition(m, 2 * i - 1, 2 * i + 1)
    if not 1 <= i <= m - 1:
        raise ValueError(f"{sym.name} out of range")
    return Permutation.identity(m)


def psi(word: TwistWord, params: FamilyParameters) -> Permutation:
    """Image in the symmetric group of the marked points; rightmost letter acts first.

    Each generator's image is an involution or the identity, so inverse
    letters have the same image.
    """
    out = Permutation.identity(params.m)
    for sym in word.letters:
        out = out.compose(_generator_permutation(sym, params))
    return out


def classify_permutation(perm: Permutation) -> Liftability:
    if all(perm(x) % 2 == x % 2 for x in range(1, len(perm.images) + 1)):
        return Liftability.PARITY_PRESERVING
    if all(perm(x) % 2 != x % 2 for x in range(1, len(perm.images) + 1)):
        return Liftability.PARITY_REVERSING
    return Liftability.NON_LIFTABLE


def liftability(word: TwistWord, params: FamilyParameters) -> Liftability:
    return classify_permutation(psi(word, params))


def h_tilde(i: int, params: FamilyParameters) -> TwistWord:
    """Lift of ``h_i`` for odd ``i``: ``2k-1`` twists alternating along a chain."""
    if i % 2 != 1 or not 1 <= i <= 2 * params.n - 1:
        raise NotCatalogued(f"h{i} is not in the lift table")
    names = []
    for l in range(1, params.k + 1):
        names.append(gamma(i, l))
        if l < params.k:
            names.append(gamma(i + 1, l))
    return TwistWord.of(*names)


def a_tilde(i: int, params: FamilyParameters) -> TwistWord:
    if not 1 <= i <= params.n:
        raise NotCatalogued(f"a{i} is not in the lift table")
    return TwistWord.of(*(alpha(i, l) for l in range(1, params.k)))


def t_tilde(params: FamilyParameters) -> TwistWord:
    i = 2 * params.n + 1
    return TwistWord.of(*(gamma(i, l) for l in range(1, params.k + 1)))


def lift_word(word: TwistWord, params: FamilyParameters) -> TwistWord:
    """Replace each catalogued liftable generator by its lift; order is kept."""
    out = TwistWord()
    for sym in word.letters:
        if sym.sign != 1:
            raise NotCatalogued(f"inverse letter {sym} is not in the lift table")
        fam, i = sym.family, sym.index
        if fam == "h" and i % 2 == 1 and i <= 2 * params.n - 1:
            out = out + h_tilde(i, params)
        elif fam == "a" and 1 <= i <= params.n:
            out = out + a_tilde(i, params)
        elif fam == "t" and i == 2 * params.n + 1:
            out = out + t_tilde(params)
        else:
            raise NotCatalogued(f"{sym.name} has no catalogued lift")
    return out


def sphere_word(params: FamilyParameters) -> TwistWord:
    """``W = h_1 h_3 ... h_{2n-1} t_{2n+1} a_n ... a_1`` in h/t/a symbols."""
    n = params.n
    names = [f"h{2 * i - 1}" for i in range(1, n + 1)]
    names.append(f"t{2 * n + 1}")
    names += [f"a{i}" for i in range(n, 0, -1)]
    return TwistWord.of(*names)


def gamma_labels(params: FamilyParameters) -> list[str]:
    return [gamma(i, l) for i in range(1, 2 * params.n + 2) for l in range(1, params.k + 1)]


def alpha_labels(params: FamilyParameters) -> list[str]:
    return [alpha(i, l) for i in range(1, params.n + 1) for l in range(1, params.k)]


def zeta_label_action(label: CurveLabel, params: FamilyParameters) -> CurveLabel:
    label.validate(params)
    if label.kind is CurveKind.GAMMA:
        return CurveLabel(CurveKind.GAMMA, label.i, label.l % params.k + 1)
    if label.kind is CurveKind.ALPHA:
        if label.l == params.k - 1:
            raise UndefinedResult(f"image of {label} is not a catalogued curve")
        return CurveLabel(CurveKind.ALPHA, label.i, label.l + 1)
    raise UndefinedResult("the rotation acts upstairs only")


@dataclass(frozen=True)
class FamilyData:
    params: FamilyParameters
    gamma_labels: tuple[str, ...]
    alpha_labels: tuple[str, ...]
    factorization: TwistWord
    relator: Relator
    sphere_word: TwistWord

    def to_json_dict(self) -> dict:
        p = self.params
        return {
            "n": p.n,
            "k": p.k,
            "g": p.g,
            "curves": {"gamma": list(self.gamma_labels), "alpha": list(self.alpha_labels)},
            "factorization": str(self.factorization),
            "factor_count": len(self.factorization),
            "relator": str(self.relator.to_word()),
            "relator_length": len(self.relator),
            "sphere_word": str(self.sphere_word),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def build_family(params: FamilyParameters) -> FamilyData:
    W = sphere_word(params)
    Wt = lift_word(W, params)
    expected = 3 * params.n * params.k - 2 * params.n + params.k
    if len(Wt) != expected:
        raise AssertionError(f"lift has {len(Wt)} factors, expected {expected}")
    return FamilyData(
        params=params,
        gamma_labels=tuple(gamma_labels(params)),
        alpha_labels=tuple(alpha_labels(params)),
        factorization=Wt,
        relator=Relator.from_word(Wt * params.k),
        sphere_word=W,
    )
