"""Integer 2-cocycles on T: the Euler cocycle and the discrete Godbillon-Vey cocycle."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .plmaps import (
    PLCircleMap,
    canonical_lift,
    line_translation_part,
    pl_compose,
    second_deriv_jump,
)
from .words import Word, eval_word

Element = Union[Word, PLCircleMap]

# Orientation of the Euler cocycle: +1 reads the translation of
# s(g)s(h)s(gh)^-1, -1 its inverse.  +1 is the choice under which the lifts
# to the line realize T~ as T_{3,1,1} (see tests/test_extensions.py).
EULER_SIGN = 1


class UnknownCycle(KeyError):
    pass


def _map(x: Element) -> PLCircleMap:
    return eval_word(x) if isinstance(x, Word) else x


def euler_cocycle(g: Element, h: Element) -> int:
    fg, fh = _map(g), _map(h)
    sg, sh = canonical_lift(fg), canonical_lift(fh)
    sgh = canonical_lift(pl_compose(fg, fh))
    return EULER_SIGN * line_translation_part(sg.compose(sh).compose(sgh.inverse()))


def gv_cocycle(g: Element, h: Element) -> int:
    fg, fh = _map(g), _map(h)
    gh = pl_compose(fg, fh)
    total = 0
    # the determinant vanishes off the breakpoints of h and g∘h
    for x in set(fh.breakpoints) | set(gh.breakpoints):
        total += (fh.log2_slope_right(x) * second_deriv_jump(gh, x)
                  - gh.log2_slope_right(x) * second_deriv_jump(fh, x))
    return total


@dataclass(frozen=True)
class CocycleSpec:
    """The cocycle ``euler_coef * c_E + gv_coef * gv``."""

    euler_coef: Fraction = Fraction(0)
    gv_coef: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "euler_coef", Fraction(self.euler_coef))
        object.__setattr__(self, "gv_coef", Fraction(self.gv_coef))

    def __call__(self, g: Element, h: Element) -> Fraction:
        g, h = _map(g), _map(h)
        value = Fraction(0)
        if self.euler_coef:
            value += self.euler_coef * euler_cocycle(g, h)
        if self.gv_coef:
            value += self.gv_coef * gv_cocycle(g, h)
        return value

    @classmethod
    def parse(cls, text: str) -> "CocycleSpec":
        """``"euler"``, ``"gv"`` or a combination like ``"3E+1/2G"``."""
        t = text.replace(" ", "")
        if t == "euler":
            return EULER
        if t == "gv":
            return GV
        coefs = {"E": Fraction(0), "G": Fraction(0)}
        pos = 0
        for m in re.finditer(r"([+-]?)(\d+(?:/\d+)?)?\*?([EG])", t):
            if m.start() != pos:
                break
            pos = m.end()
            c = Fraction(m.group(2) or 1)
            coefs[m.group(3)] += -c if m.group(1) == "-" else c
        if pos != len(t) or not t:
            raise ValueError(f"bad cocycle spec {text!r}")
        return cls(coefs["E"], coefs["G"])


EULER = CocycleSpec(1, 0)
GV = CocycleSpec(0, 1)


@dataclass(frozen=True)
class TwoChain:
    terms: tuple = ()

    def __add__(self, other: "TwoChain") -> "TwoChain":
        return TwoChain(self.terms + other.terms)

    def to_json(self) -> list:
        return [[c, [g.to_text(), h.to_text()]] for c, (g, h) in self.terms]

    @classmethod
    def from_json(cls, data, gens: str = "ab") -> "TwoChain":
        return cls(tuple((int(c), (Word.parse(g, gens), Word.parse(h, gens))) for c, (g, h) in data))


def commutator_cycle(x: Word, y: Word) -> TwoChain:
    """The 2-cycle ``(x, y) - (y, x)`` attached to commuting ``x, y``."""
    return TwoChain(((1, (x, y)), (-1, (y, x))))


def pair(c, z: TwoChain) -> Fraction:
    return sum((Fraction(coef) * c(g, h) for coef, (g, h) in z.terms), Fraction(0))


def coboundary_defect(c, g: Element, h: Element, k: Element) -> Fraction:
    g, h, k = _map(g), _map(h), _map(k)
    gh, hk = pl_compose(g, h), pl_compose(h, k)
    return Fraction(c(h, k)) - c(gh, k) + c(g, hk) - c(g, h)


def builtin_cycle(name: str) -> TwoChain:
    bab = Word.parse("b a b")
    A, B = Word.of("A"), Word.of("B")
    if name == "mu":
        return commutator_cycle(bab, Word.parse("a^2 b a b a^2"))
    if name == "delta":
        return commutator_cycle(bab, Word.parse("a^2 b a^2 b a b a^2 b^2 a^2"))
    if name == "eta":
        return commutator_cycle(A * ~B, ~A * B * A)
    if name == "epsilon":
        return commutator_cycle(A * ~B, (~A) ** 2 * B * A ** 2)
    raise UnknownCycle(name)


CYCLE_NAMES = ("mu", "eta", "delta", "epsilon")
