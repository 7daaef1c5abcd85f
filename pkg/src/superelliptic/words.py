"""Words in signed generators and positive Dehn-twist relators.

Words are written the usual way and act right to left: in ``h f`` the map
``f`` is applied first. A :class:`Relator` instead stores its factors in
acting order (first factor acts first) and only reverses when printed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import intmat


class WordParseError(ValueError):
    pass


class UnresolvedClassError(ValueError):
    pass


_TOKEN = re.compile(
    r"^(?:(?P<kind>[shat])(?P<idx>[1-9]\d*)"
    r"|g\[(?P<gi>[1-9]\d*)\]\[(?P<gl>[1-9]\d*)\]"
    r"|al\[(?P<ai>[1-9]\d*)\]\[(?P<al>[1-9]\d*)\]"
    r"|G\[(?P<Gi>[1-9]\d*)\])"
    r"(?:\^(?P<exp>-?1))?$"
)


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    name: str
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("exponent sign must be +1 or -1")

    def inverse(self) -> "GeneratorSymbol":
        return GeneratorSymbol(self.name, -self.sign)

    @property
    def family(self) -> str:
        """Leading alphabet tag: 's', 'h', 'a', 't', 'g', 'al' or 'G'."""
        return re.match(r"[a-zA-Z]+", self.name).group(0)

    @property
    def index(self) -> int:
        return int(re.search(r"\d+", self.name).group(0))

    def __str__(self) -> str:
        return self.name if self.sign == 1 else f"{self.name}^-1"


@dataclass(frozen=True)
class Alphabet:
    """Declared generator names; ``None`` accepts anything the grammar allows."""

    names: frozenset | None = None

    def check(self, sym: GeneratorSymbol) -> None:
        if self.names is not None and sym.name not in self.names:
            raise WordParseError(f"unknown generator {sym.name!r}")


def parse_symbol(token: str, alphabet: Alphabet | None = None) -> GeneratorSymbol:
    mt = _TOKEN.match(token)
    if not mt:
        raise WordParseError(f"cannot parse token {token!r}")
    sign = int(mt.group("exp") or 1)
    if mt.group("kind"):
        name = f"{mt.group('kind')}{int(mt.group('idx'))}"
    elif mt.group("gi"):
        name = f"g[{int(mt.group('gi'))}][{int(mt.group('gl'))}]"
    elif mt.group("ai"):
        name = f"al[{int(mt.group('ai'))}][{int(mt.group('al'))}]"
    else:
        name = f"G[{int(mt.group('Gi'))}]"
    sym = GeneratorSymbol(name, sign)
    if alphabet is not None:
        alphabet.check(sym)
    return sym


@dataclass(frozen=True)
class TwistWord:
    """Written-order word; the rightmost letter acts first."""

    letters: tuple[GeneratorSymbol, ...] = ()

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet | None = None) -> "TwistWord":
        return cls(tuple(parse_symbol(t, alphabet) for t in text.split()))

    @classmethod
    def of(cls, *names: str) -> "TwistWord":
        return cls(tuple(parse_symbol(n) for n in names))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "TwistWord") -> "TwistWord":
        return TwistWord(self.letters + other.letters)

    def __mul__(self, power: int) -> "TwistWord":
        if power < 0:
            return self.inverse() * (-power)
        return TwistWord(self.letters * power)

    def inverse(self) -> "TwistWord":
        return TwistWord(tuple(s.inverse() for s in reversed(self.letters)))

    def acting_order(self) -> tuple[GeneratorSymbol, ...]:
        return tuple(reversed(self.letters))

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.letters)


def reduce(word: TwistWord) -> TwistWord:
    """Free reduction: cancel adjacent letter/inverse pairs."""
    out: list[GeneratorSymbol] = []
    for s in word.letters:
        if out and out[-1].name == s.name and out[-1].sign == -s.sign:
            out.pop()
        else:
            out.append(s)
    return TwistWord(tuple(out))


def exponent_sum(word: TwistWord) -> int:
    return sum(s.sign for s in word.letters)


def transvection(form: np.ndarray, c) -> np.ndarray:
    """Matrix of ``x -> x + <x, c> c`` where ``<x, y> = x^T form y``."""
    c = np.asarray(c, dtype=object).reshape(-1, 1)
    # <x, c> = x^T (form c), so the rank-one part is c (form c)^T
    fc = intmat.matmul(form, c)
    return intmat.identity(len(c)) + intmat.matmul(c, fc.T)


def _vec(c) -> tuple[int, ...]:
    return tuple(int(v) for v in np.asarray(c, dtype=object).reshape(-1))


@dataclass(frozen=True)
class Relator:
    """Positive relator ``t_{c_m} ... t_{c_1}``, stored in acting order ``c_1, ..., c_m``.

    ``classes`` (one integer vector per factor) and the intersection ``form``
    are optional; operations that need them raise if they are missing.
    """

    factors: tuple[str, ...]
    classes: tuple[tuple[int, ...], ...] | None = None
    form: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for lab in self.factors:
            sym = parse_symbol(lab)
            if sym.sign != 1:
                raise WordParseError("relators admit only positive twists")
        if self.classes is not None and len(self.classes) != len(self.factors):
            raise ValueError("one class per factor is required")

    @classmethod
    def from_word(cls, word: TwistWord, classes: dict | None = None,
                  form: np.ndarray | None = None) -> "Relator":
        if any(s.sign != 1 for s in word.letters):
            raise WordParseError("relators admit only positive twists")
        labels = tuple(s.name for s in word.acting_order())
        cls_ = None
        if classes is not None:
            missing = [lab for lab in labels if lab not in classes]
            if missing:
                raise UnresolvedClassError(f"no class for {missing[0]}")
            cls_ = tuple(_vec(classes[lab]) for lab in labels)
        return cls(labels, cls_, form)

    def __len__(self) -> int:
        return len(self.factors)

    def resolved(self) -> bool:
        return self.classes is not None and self.form is not None

    def _require(self) -> None:
        if not self.resolved():
            raise UnresolvedClassError("relator classes or form not resolved")

    def with_classes(self, classes: dict, form: np.ndarray) -> "Relator":
        return Relator.from_word(self.to_word(), classes, form)

    def to_word(self) -> TwistWord:
        return TwistWord(tuple(GeneratorSymbol(lab) for lab in reversed(self.factors)))

    def __str__(self) -> str:
        return " ".join(f"t_{lab}" for lab in reversed(self.factors))

    def transvections(self) -> list[np.ndarray]:
        self._require()
        return [transvection(self.form, c) for c in self.classes]

    def monodromy(self) -> np.ndarray:
        """Product ``T_{c_m} ... T_{c_1}`` of the factor transvections."""
        self._require()
        dim = self.form.shape[0]
        out = intmat.identity(dim)
        for t in self.transvections():
            out = intmat.matmul(t, out)
        return out

    def relabel(self, catalog: dict) -> "Relator":
        """Rename factors whose class matches a catalogue class up to sign."""
        self._require()
        lookup = {}
        for lab, c in catalog.items():
            v = _vec(c)
            lookup.setdefault(v, lab)
            lookup.setdefault(tuple(-x for x in v), lab)
        names = tuple(lookup.get(c, lab) for lab, c in zip(self.factors, self.classes))
        return Relator(names, self.classes, self.form)

    def to_json_dict(self) -> dict:
        d = {"acting_order": list(self.factors), "written": str(self)}
        if self.classes is not None:
            d["classes"] = [list(c) for c in self.classes]
        return d


def _pair(form, x, y) -> int:
    return int(intmat.matmul(np.asarray(x, dtype=object).reshape(1, -1),
                             intmat.matmul(form, np.asarray(y, dtype=object).reshape(-1, 1)))[0, 0])


def elementary_transform(relator: Relator, position: int, direction: str) -> Relator:
    """Hurwitz move on the adjacent acting-order factors ``position``, ``position+1``.

    Written as ``... t_b t_a ...`` (``a`` acts first):

    * ``"right"``: ``t_b t_a -> t_{t_b(a)} t_b`` (``b`` slides right)
    * ``"left"``:  ``t_b t_a -> t_a t_{t_a^{-1}(b)}`` (``a`` slides left)
    """
    relator._require()
    if not 0 <= position < len(relator) - 1:
        raise IndexError("position out of range")
    f = list(relator.factors)
    c = list(relator.classes)
    a_lab, b_lab = f[position], f[position + 1]
    a, b = c[position], c[position + 1]
    form = relator.form
    if direction == "right":
        new = _vec(intmat.matmul(transvection(form, b), np.asarray(a, dtype=object).reshape(-1, 1)))
        new_lab = a_lab if new == a or new == tuple(-x for x in a) else f"T({b_lab})({a_lab})"
        f[position], f[position + 1] = b_lab, new_lab
        c[position], c[position + 1] = b, new
    elif direction == "left":
        inv = intmat.identity(len(a)) - (transvection(form, a) - intmat.identity(len(a)))
        new = _vec(intmat.matmul(inv, np.asarray(b, dtype=object).reshape(-1, 1)))
        new_lab = b_lab if new == b or new == tuple(-x for x in b) else f"T({a_lab})^-1({b_lab})"
        f[position], f[position + 1] = new_lab, a_lab
        c[position], c[position + 1] = new, a
    else:
        raise ValueError("direction must be 'left' or 'right'")
    return _unchecked(tuple(f), tuple(c), form)


def _unchecked(factors, classes, form) -> Relator:
    # composite labels like T(g[1][2])(al[1][1]) are not in the token grammar
    obj = object.__new__(Relator)
    object.__setattr__(obj, "factors", factors)
    object.__setattr__(obj, "classes", classes)
    object.__setattr__(obj, "form", form)
    return obj


def is_symplectic(m: np.ndarray, form: np.ndarray) -> bool:
    return bool(np.all(intmat.matmul(intmat.matmul(m.T, form), m) == form))


def simultaneous_conjugate(relator: Relator, conjugator: np.ndarray) -> Relator:
    """Replace every factor class ``x`` by ``conjugator @ x``."""
    relator._require()
    if not is_symplectic(conjugator, relator.form):
        raise ValueError("conjugator is not symplectic for the relator's form")
    classes = tuple(_vec(intmat.matmul(conjugator, np.asarray(c, dtype=object).reshape(-1, 1)))
                    for c in relator.classes)
    return _unchecked(relator.factors, classes, relator.form)


def concat_relators(parts: Sequence[Relator]) -> Relator:
    factors: tuple = ()
    classes: tuple | None = ()
    form = parts[0].form if parts else None
    for p in parts:
        factors += p.factors
        classes = None if classes is None or p.classes is None else classes + p.classes
    return _unchecked(factors, classes, form)


def power(relator: Relator, k: int) -> Relator:
    return concat_relators([relator] * k)


def letters_in(words: Iterable[TwistWord]) -> set[str]:
    return {s.name for w in words for s in w.letters}
