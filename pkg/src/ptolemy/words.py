"""Words in the generators of T and F, and their evaluation as PL maps."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .numbers import Dyadic
from .plmaps import (
    IDENTITY,
    PLCircleMap,
    pl_compose,
    pl_inverse,
    pl_power,
)

ALPHA, BETA = "α", "β"
SYMBOLS = (ALPHA, BETA, "A", "B", "C")

# letter -> symbol, per input alphabet; uppercase letters are inverses
ALPHABETS = {
    "ab": {"a": ALPHA, "b": BETA, "c": "C"},
    "abc": {"a": "A", "b": "B", "c": "C"},
}
_ASCII = {ALPHA: "a", BETA: "b", "A": "A", "B": "B", "C": "C"}


class UnknownSymbol(ValueError):
    pass


def _reduce(letters) -> tuple:
    out: list[list] = []
    for sym, e in letters:
        if sym not in SYMBOLS:
            raise UnknownSymbol(sym)
        if e == 0:
            continue
        if out and out[-1][0] == sym:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([sym, e])
    return tuple((s, e) for s, e in out)


@dataclass(frozen=True)
class Word:
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def parse(cls, text: str, gens: str = "ab") -> "Word":
        table = ALPHABETS[gens]
        letters = []
        pos = 0
        text = text.strip()
        for m in re.finditer(r"\s*([A-Za-z])(?:\^(-?\d+))?\s*", text):
            if m.start() != pos:
                raise UnknownSymbol(f"cannot parse {text!r} at {pos}")
            pos = m.end()
            ch, exp = m.group(1), int(m.group(2) or 1)
            sym = table.get(ch.lower())
            if sym is None:
                raise UnknownSymbol(ch)
            letters.append((sym, -exp if ch.isupper() else exp))
        if pos != len(text):
            raise UnknownSymbol(f"cannot parse {text!r} at {pos}")
        return cls(tuple(letters))

    @classmethod
    def of(cls, *items) -> "Word":
        """``Word.of("β", ("α", 2))`` style constructor."""
        return cls(tuple((i, 1) if isinstance(i, str) else tuple(i) for i in items))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __invert__(self) -> "Word":
        return Word(tuple((s, -e) for s, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return (~self) ** (-n)
        return Word(self.letters * n)

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self):
        return bool(self.letters)

    def expand(self) -> tuple:
        """Letters as a flat sequence of ``(symbol, ±1)``."""
        out = []
        for s, e in self.letters:
            out.extend([(s, 1 if e > 0 else -1)] * abs(e))
        return tuple(out)

    def in_alpha_beta(self) -> "Word":
        """Rewrite A, B, C through ``A = βα², B = β²α, C = β²``."""
        out = []
        for s, e in self.letters:
            sub = SUBSTITUTION.get(s)
            if sub is None:
                out.append((s, e))
            else:
                w = sub ** e
                out.extend(w.letters)
        return Word(tuple(out))

    def to_text(self, gens: str = "ab") -> str:
        """Parseable text in the given alphabet (exponents written out)."""
        back = {sym: ch for ch, sym in ALPHABETS[gens].items()}
        parts = []
        for s, e in self.letters:
            if s not in back:
                raise UnknownSymbol(f"{s} not in alphabet {gens!r}")
            parts.append(back[s] if e == 1 else f"{back[s]}^{e}")
        return " ".join(parts)

    def __str__(self):
        for gens in ALPHABETS:
            try:
                return self.to_text(gens)
            except UnknownSymbol:
                pass
        return " ".join(_ASCII[s] + ("" if e == 1 else f"^{e}") for s, e in self.letters)

    def __repr__(self):
        return f"Word({''.join(s + ('' if e == 1 else f'^{e}') for s, e in self.letters)!r})"


EMPTY = Word()


def word_concat(w1: Word, w2: Word) -> Word:
    return w1 * w2


def word_inverse(w: Word) -> Word:
    return ~w


def commutator(x: Word, y: Word) -> Word:
    return x * y * ~x * ~y


def _w(text: str) -> Word:
    return Word.parse(text)


# A, B, C as words in α, β
SUBSTITUTION = {
    "A": Word.of(BETA, (ALPHA, 2)),
    "B": Word.of((BETA, 2), ALPHA),
    "C": Word.of((BETA, 2)),
}


def _build_generators() -> dict:
    d = Dyadic
    half = d(1, 1)
    table = {
        ALPHA: PLCircleMap.from_formulas([(0, -1, half), (d(3, 2), 0, d(1, 3)), (d(7, 3), 2, d(-7, 1))]),
        BETA: PLCircleMap.from_formulas([(0, -1, half), (half, 0, d(1, 2)), (d(3, 2), 1, d(-3, 1))]),
        "A": PLCircleMap.from_formulas([(0, -1, 0), (half, 0, d(-1, 2)), (d(3, 2), 1, -1)]),
        "B": PLCircleMap.from_formulas([(0, 0, 0), (half, -1, d(1, 2)), (d(3, 2), 0, d(-1, 3)),
                                        (d(7, 3), 1, -1)]),
        "C": PLCircleMap.from_formulas([(0, -1, d(3, 2)), (half, 1, -1), (d(3, 2), 0, d(-1, 2))]),
    }
    a, b = table[ALPHA], table[BETA]
    c_inv = pl_inverse(table["C"])
    # the two formula sets must describe the same generators
    assert b == c_inv, "β ≠ C⁻¹"
    assert a == pl_compose(c_inv, table["B"]), "α ≠ C⁻¹B"
    assert table["A"] == pl_compose(b, pl_compose(a, a)), "A ≠ βα²"
    assert table["B"] == pl_compose(pl_power(b, 2), a), "B ≠ β²α"
    assert table["C"] == pl_power(b, 2), "C ≠ β²"
    return table


GENERATORS = _build_generators()


@lru_cache(maxsize=8192)
def _eval_letters(letters: tuple) -> PLCircleMap:
    if not letters:
        return IDENTITY
    if len(letters) == 1:
        s, e = letters[0]
        return pl_power(GENERATORS[s], e)
    mid = len(letters) // 2
    return pl_compose(_eval_letters(letters[:mid]), _eval_letters(letters[mid:]))


def eval_word(w: Word) -> PLCircleMap:
    """Product of the generator maps; the rightmost letter acts first."""
    return _eval_letters(w.letters)


# relators of T, by name
def relators() -> dict:
    A, B, C = Word.of("A"), Word.of("B"), Word.of("C")
    Ai, Bi = ~A, ~B
    bab = _w("b a b")
    return {
        "alpha^4": _w("a^4"),
        "beta^3": _w("b^3"),
        "(beta alpha)^5": _w("b a") ** 5,
        "[bab, a2 bab a2]": commutator(bab, _w("a^2 b a b a^2")),
        "[bab, a2 b2 a2 bab a2 b a2]": commutator(bab, _w("a^2 b^2 a^2 b a b a^2 b a^2")),
        "[AB^-1, A^-1BA]": commutator(A * Bi, Ai * B * A),
        "[AB^-1, A^-2BA^2]": commutator(A * Bi, Ai ** 2 * B * A ** 2),
        "CA = (A^-1CB)^2": C * A * ~((Ai * C * B) ** 2),
        "(A^-1CB)(A^-1BA) = B(A^-2CB^2)": Ai * C * B * Ai * B * A * ~(B * Ai ** 2 * C * B ** 2),
        "C^3": C ** 3,
        "C = BA^-1CB": ~C * B * Ai * C * B,
    }


# the second commutator as it appears in the presentations of T_{n,p,q,r}
SECOND_COMMUTATOR_ALT = commutator(_w("b a b"), _w("a^2 b a^2 b a b a^2 b^2 a^2"))


def check_presentations() -> dict:
    """Evaluate every relator of T; maps relator name to ``True`` when trivial."""
    report = {name: eval_word(w).is_identity() for name, w in relators().items()}
    report["[bab, a2 b a2 bab a2 b2 a2]"] = eval_word(SECOND_COMMUTATOR_ALT).is_identity()
    return report
