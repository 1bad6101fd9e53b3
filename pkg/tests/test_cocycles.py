import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import words
from ptolemy.cocycles import (
    EULER,
    GV,
    CocycleSpec,
    TwoChain,
    UnknownCycle,
    builtin_cycle,
    coboundary_defect,
    euler_cocycle,
    gv_cocycle,
    pair,
)
from ptolemy.extensions import FIRST_COMMUTATOR, SECOND_COMMUTATOR, ClassVector, word_exponent
from ptolemy.numbers import Dyadic
from ptolemy.plmaps import PLCircleMap, pl_compose, pl_eval, pl_inverse
from ptolemy.sampling import random_word
from ptolemy.words import GENERATORS, Word, eval_word

EPS = Dyadic(1, 40)


def _lift_at(f, x):
    # the lift is only stored on [0, 1); extend by periodicity
    k = math.floor(x.to_fraction())
    return f.lift_value(x - k) + k


def _slope(f, x, side):
    h = EPS if side > 0 else -EPS
    q = (_lift_at(f, x + h) - _lift_at(f, x)).to_fraction() / h.to_fraction()
    return round(math.log2(q))


def _jump(f, x):
    return _slope(f, x, 1) - _slope(f, x, -1)


def gv_oracle(g, h):
    """Determinant sum over a superset of the relevant breakpoints."""
    gh = pl_compose(g, h)
    hinv = pl_inverse(h)
    pts = {x for x, _, _ in h.pieces} | {pl_eval(hinv, x) for x, _, _ in g.pieces}
    return sum(_slope(h, x, 1) * _jump(gh, x) - _slope(gh, x, 1) * _jump(h, x) for x in pts)


A, B = GENERATORS["A"], GENERATORS["B"]


def test_euler_examples():
    for w in ("", "a", "b a B", "a^2 b"):
        assert euler_cocycle(PLCircleMap.identity(), Word.parse(w)) == 0
    assert euler_cocycle(Word.parse("b"), Word.parse("b")) == 0
    assert euler_cocycle(Word.parse("b"), Word.parse("b b")) == 1


def test_gv_regression_value_and_oracle():
    assert gv_cocycle(A, B) == gv_oracle(A, B) == -2


@settings(max_examples=150, deadline=None)
@given(words(8), words(8))
def test_gv_matches_finite_difference_oracle(u, v):
    g, h = eval_word(u), eval_word(v)
    assert gv_cocycle(g, h) == gv_oracle(g, h)


@settings(max_examples=150, deadline=None)
@given(words(8))
def test_cocycles_are_normalized(w):
    ident = PLCircleMap.identity()
    for c in (EULER, GV):
        assert c(ident, w) == 0 and c(w, ident) == 0


@settings(max_examples=200, deadline=None)
@given(words(10), words(10))
def test_euler_values_are_zero_or_one(u, v):
    assert euler_cocycle(u, v) in (0, 1)


@settings(max_examples=100, deadline=None)
@given(words(10), words(10), words(10))
def test_cocycle_identity(g, h, k):
    assert coboundary_defect(EULER, g, h, k) == 0
    assert coboundary_defect(GV, g, h, k) == 0
    assert coboundary_defect(CocycleSpec(3, Fraction(1, 2)), g, h, k) == 0


def test_gv_depends_only_on_the_element():
    rng = random.Random(3)
    for _ in range(100):
        u, v = random_word(rng, 8), random_word(rng, 8)
        # pad with relators to get a different spelling of the same element
        u2 = u * Word.parse("a^4") * Word.parse("b a") ** 5
        v2 = Word.parse("b^3") * v
        assert gv_cocycle(u, v) == gv_cocycle(u2, v2)


def test_builtin_cycles_are_commutator_cycles():
    mu = builtin_cycle("mu")
    x, y = mu.terms[0][1]
    assert [t[0] for t in mu.terms] == [1, -1]
    assert mu.terms[1][1] == (y, x)
    assert x == Word.parse("b a b") and y == Word.parse("a^2 b a b a^2")
    delta = builtin_cycle("delta")
    assert delta.terms[0][1][1] == Word.parse("a^2 b a^2 b a b a^2 b^2 a^2")
    for name in ("mu", "delta", "eta", "epsilon"):
        (_, (g, h)), _ = builtin_cycle(name).terms
        assert eval_word(g * h * ~g * ~h).is_identity()
    with pytest.raises(UnknownCycle):
        builtin_cycle("nu")


def test_euler_vanishes_on_mu():
    assert pair(EULER, builtin_cycle("mu")) == 0


def test_gv_pairing_with_mu_is_two():
    # expected 2; the whole-circle sum used here gives 0
    assert pair(GV, builtin_cycle("mu")) == 2


def test_gv_pairing_with_delta_is_zero():
    # expected 0; the whole-circle sum used here gives 2
    assert pair(GV, builtin_cycle("delta")) == 0


def test_pairing_matches_commutator_charge():
    # the central charge of a lifted commutator telescopes to <c, (x,y) - (y,x)>
    for word, name in ((FIRST_COMMUTATOR, "mu"), (SECOND_COMMUTATOR, "delta")):
        for offs in ((0, 0), (1, Fraction(-3, 2))):
            assert word_exponent(word, ClassVector(0, 2), offs) == pair(GV, builtin_cycle(name))
            assert word_exponent(word, ClassVector(1, 0), offs) == pair(EULER, builtin_cycle(name))


def test_spec_parsing():
    assert CocycleSpec.parse("euler") == EULER
    assert CocycleSpec.parse("gv") == GV
    assert CocycleSpec.parse("3E+1/2G") == CocycleSpec(3, Fraction(1, 2))
    assert CocycleSpec.parse("-G") == CocycleSpec(0, -1)
    with pytest.raises(ValueError):
        CocycleSpec.parse("3X")


def test_chain_json_round_trip():
    z = builtin_cycle("delta")
    assert TwoChain.from_json(z.to_json()) == z
