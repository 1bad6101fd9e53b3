"""Central extensions of T by Z built from the Euler and Godbillon-Vey cocycles.

The extension with class ``chi*χ + alpha*α`` is modelled on pairs
``(t, s)`` with ``t`` a circle map and ``s`` a half-integer, multiplied
through ``chi*c_E + (alpha/2)*gv`` since ``gv`` represents ``2α``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .cocycles import CocycleSpec, euler_cocycle, gv_cocycle
from .plmaps import IDENTITY, NotTorsion, PLCircleMap, pl_compose, pl_inverse, torsion_order
from .words import ALPHA, BETA, GENERATORS, SECOND_COMMUTATOR_ALT, Word, commutator, eval_word

DEFAULT_BOUND = 60

FIRST_COMMUTATOR = commutator(Word.parse("b a b"), Word.parse("a^2 b a b a^2"))
SECOND_COMMUTATOR = SECOND_COMMUTATOR_ALT
TORSION_RELATORS = (Word.parse("b a") ** 5, Word.parse("a^4"), Word.parse("b^3"))


class NotCentralWord(ValueError):
    pass


class OddGVCharge(ValueError):
    pass


@dataclass(frozen=True)
class ExtensionParams:
    n: int
    p: int
    q: int
    r: int = 0

    def as_tuple(self):
        return (self.n, self.p, self.q, self.r)


@dataclass(frozen=True)
class ClassVector:
    chi_coef: int
    alpha_coef: int

    def cocycle(self) -> CocycleSpec:
        return CocycleSpec(self.chi_coef, Fraction(self.alpha_coef, 2))


def class_of(params: ExtensionParams) -> ClassVector:
    n, p, q, r = params.as_tuple()
    return ClassVector(12 * n - 15 * p - 20 * q - 60 * r, r)


@dataclass(frozen=True)
class ExtElement:
    body: PLCircleMap
    charge: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "charge", Fraction(self.charge))


EXT_ONE = ExtElement(IDENTITY, 0)


def _cocycle_value(cls: ClassVector, f: PLCircleMap, g: PLCircleMap) -> Fraction:
    v = Fraction(0)
    if cls.chi_coef:
        v += cls.chi_coef * euler_cocycle(f, g)
    if cls.alpha_coef:
        v += Fraction(cls.alpha_coef, 2) * gv_cocycle(f, g)
    return v


def ext_mul(e1: ExtElement, e2: ExtElement, cls: ClassVector) -> ExtElement:
    return ExtElement(pl_compose(e1.body, e2.body),
                      e1.charge + e2.charge + _cocycle_value(cls, e1.body, e2.body))


def ext_inverse(e: ExtElement, cls: ClassVector) -> ExtElement:
    inv = pl_inverse(e.body)
    return ExtElement(inv, -e.charge - _cocycle_value(cls, e.body, inv))


def ext_power(e: ExtElement, k: int, cls: ClassVector) -> ExtElement:
    if k < 0:
        e, k = ext_inverse(e, cls), -k
    acc = EXT_ONE
    for _ in range(k):
        acc = ext_mul(acc, e, cls)
    return acc


def word_product(w: Word, cls: ClassVector, offsets=(0, 0)) -> ExtElement:
    """Product of the lifted letters ``(α, a)`` and ``(β, b)`` spelling ``w``."""
    a, b = (Fraction(o) for o in offsets)
    lifts = {ALPHA: ExtElement(GENERATORS[ALPHA], a), BETA: ExtElement(GENERATORS[BETA], b)}
    inverses = {s: ext_inverse(e, cls) for s, e in lifts.items()}
    acc = EXT_ONE
    for sym, sign in w.in_alpha_beta().expand():
        acc = ext_mul(acc, lifts[sym] if sign > 0 else inverses[sym], cls)
    return acc


def word_exponent(w: Word, cls: ClassVector, offsets=(0, 0)) -> Fraction:
    if not eval_word(w).is_identity():
        raise NotCentralWord(f"{w} is not trivial in T")
    return word_product(w, cls, offsets).charge


def _letter_counts(w: Word) -> tuple[int, int]:
    ca = cb = 0
    for s, e in w.in_alpha_beta().letters:
        if s == ALPHA:
            ca += e
        elif s == BETA:
            cb += e
    return ca, cb


def params_equivalent(p1: ExtensionParams, p2: ExtensionParams):
    """Integers ``(x, y)`` with ``p2 = (n1+5x+5y, p1+4x, q1+3y)``, or ``None``."""
    if p1.r != p2.r:
        raise ValueError("equivalence moves keep r fixed")
    return _moves(p2.n - p1.n, p2.p - p1.p, p2.q - p1.q)


def _moves(dn, dp, dq):
    dn, dp, dq = Fraction(dn), Fraction(dp), Fraction(dq)
    x, y = dp / 4, dq / 3
    if x.denominator != 1 or y.denominator != 1 or dn != 5 * x + 5 * y:
        return None
    return int(x), int(y)


def normal_params(m: int) -> tuple[int, int, int]:
    for p, q in product(range(4), range(3)):
        rest = m + 15 * p + 20 * q
        if rest % 12 == 0:
            return rest // 12, p, q
    raise AssertionError("3p + 8q covers every residue mod 12")


@dataclass
class RealizationResult:
    params: ExtensionParams
    cls: ClassVector
    status: str
    offsets: tuple = None
    exponents: tuple = None
    moves: tuple = None
    base_exponents: tuple = ()
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status in ("exact", "equivalent")

    def to_json(self) -> dict:
        s = lambda v: str(Fraction(v))  # noqa: E731
        return {
            "params": list(self.params.as_tuple()),
            "class": {"chi": self.cls.chi_coef, "alpha": self.cls.alpha_coef},
            "status": self.status,
            "offsets": None if self.offsets is None else [s(v) for v in self.offsets],
            "exponents": None if self.exponents is None else [s(v) for v in self.exponents],
            "moves": None if self.moves is None else list(self.moves),
            "base_exponents": [s(v) for v in self.base_exponents],
            "witnesses": self.witnesses,
        }


RELATOR_WORDS = TORSION_RELATORS + (FIRST_COMMUTATOR, SECOND_COMMUTATOR)


def relator_exponents(cls: ClassVector, offsets=(0, 0)) -> tuple:
    """``(E1, ..., E5)`` for ``(βα)^5, α^4, β^3`` and the two commutators."""
    return tuple(word_exponent(w, cls, offsets) for w in RELATOR_WORDS)


def realize_presentation(params: ExtensionParams, bound: int = DEFAULT_BOUND,
                         cls: ClassVector = None,
                         swap_commutators: bool = False) -> RealizationResult:
    """Search lifts ``(α, a), (β, b)`` with ``a, b`` in ``{-bound..bound}/2``.

    Charges depend affinely on the offsets (every letter carries its offset
    into the total), so the exponents are computed once at zero offset and
    shifted; the chosen witness is then recomputed directly.

    ``swap_commutators`` asks for ``z^r`` on the second commutator and 1 on
    the first instead; it is a diagnostic, the default follows the stated
    presentation.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    cls = cls or class_of(params)
    base = relator_exponents(cls)
    counts = [_letter_counts(w) for w in RELATOR_WORDS]
    n, p, q, r = params.as_tuple()
    target = (n, p, q, r, 0)
    want4, want5 = (0, r) if swap_commutators else (r, 0)
    if swap_commutators:
        target = (n, p, q, 0, r)
    best = None
    for i, j in product(range(-bound, bound + 1), repeat=2):
        a, b = Fraction(i, 2), Fraction(j, 2)
        e = tuple(base[k] + a * ca + b * cb for k, (ca, cb) in enumerate(counts))
        if e == target:
            best = ("exact", (a, b), e, (0, 0))
            break
        if e[3] == want4 and e[4] == want5 and best is None:
            mv = _moves(e[0] - n, e[1] - p, e[2] - q)
            if mv is not None:
                best = ("equivalent", (a, b), e, mv)
    if best is None:
        return RealizationResult(params, cls, "failed", base_exponents=base,
                                 witnesses=_failure_table(base, (want4, want5)))
    status, offs, e, mv = best
    direct = relator_exponents(cls, offs)
    assert direct == e, "offset shift disagrees with direct evaluation"
    return RealizationResult(params, cls, status, offs, e, mv, base)


def _failure_table(base, wanted) -> list:
    why = []
    if base[3] != wanted[0]:
        why.append(f"first commutator exponent {base[3]} != {wanted[0]} for every offset")
    if base[4] != wanted[1]:
        why.append(f"second commutator exponent {base[4]} != {wanted[1]} for every offset")
    if not why:
        why.append("no half-integer offsets in range reach (n, p, q) up to the moves")
    return why


def milnor_wood(y: Word, k: int, params: ExtensionParams, offset=0) -> int:
    """Charge of ``(y, offset)^k`` reduced mod ``k``."""
    f = eval_word(y)
    order = torsion_order(f, max(k, 1))
    if order != k:
        raise NotTorsion(f"{y} does not have order exactly {k}")
    cls = class_of(params)
    charge = ext_power(ExtElement(f, offset), k, cls).charge
    if charge.denominator != 1:
        raise OddGVCharge(f"charge {charge} is not an integer")
    return int(charge) % k
