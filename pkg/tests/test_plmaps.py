from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import dyadics, unit_dyadics, words
from ptolemy.numbers import INF, ONE, ZERO, Dyadic, Rational, ccw
from ptolemy.plmaps import (
    InvalidMap,
    NotATranslation,
    NotTorsion,
    PLCircleMap,
    canonical_lift,
    jump_support,
    line_translation_part,
    pl_compose,
    pl_equal,
    pl_eval,
    pl_inverse,
    pl_power,
    rotation_number_torsion,
    second_deriv_jump,
    torsion_order,
)
from ptolemy.words import ALPHA, BETA, GENERATORS, Word, eval_word

alpha, beta = GENERATORS[ALPHA], GENERATORS[BETA]
A, C = GENERATORS["A"], GENERATORS["C"]
ID = PLCircleMap.identity()


# --- numbers ---------------------------------------------------------------

def test_dyadic_normalized():
    d = Dyadic(6, 3)
    assert (d.numerator, d.exponent) == (3, 2)
    assert Dyadic(0, 5).exponent == 0
    assert Dyadic.parse("3/2^2") == d
    assert str(Dyadic(5)) == "5"


@given(dyadics(), dyadics(), dyadics())
def test_dyadic_field_ops_match_fractions(a, b, c):
    F = lambda x: x.to_fraction()  # noqa: E731
    assert F(a + b) == F(a) + F(b)
    assert F(a - b) == F(a) - F(b)
    assert F(a * b * c) == F(a) * F(b) * F(c)
    assert F(a.mul_pow2(-3)) == F(a) / 8
    assert (a < b) == (F(a) < F(b))
    assert Dyadic.parse(str(a)) == a


def test_dyadic_rejects_non_dyadic():
    with pytest.raises(ValueError):
        Dyadic.parse("1/3")


def test_rational_parse_and_infinity():
    assert Rational.parse("1/0") == INF
    assert Rational.parse("inf") == INF
    assert Rational.parse("-2/4") == Rational(-1, 2)
    assert Rational(0).det(INF) == -1 or Rational(0).det(INF) == 1
    assert ccw(Rational(0), Rational(1), INF)
    assert not ccw(Rational(1), Rational(0), INF)


# --- maps ------------------------------------------------------------------

def test_evaluation_examples():
    assert pl_eval(A, Dyadic.parse("1/2")) == Dyadic.parse("1/4")
    assert pl_eval(ID, Dyadic.parse("5/8")) == Dyadic.parse("5/8")
    assert pl_eval(beta, Dyadic.parse("3/4")) == ZERO


def test_composition_examples():
    assert pl_power(beta, 3).is_identity()
    assert pl_compose(alpha, ID) == alpha
    assert pl_compose(beta, beta) == C


def test_inverse_examples():
    assert pl_compose(alpha, pl_inverse(alpha)).is_identity()
    assert pl_inverse(beta) == pl_compose(beta, beta)


def test_inverse_of_A_inverts_each_piece():
    inv = pl_inverse(A)
    # invert each affine piece y = 2^k x + b by hand and compare pointwise
    for x, k, b in A.pieces:
        y = x.mul_pow2(k) + b
        assert pl_eval(inv, y.frac()) == x


def test_equality_examples():
    assert pl_equal(eval_word(Word.parse("b a a")), A)
    # split the first piece of α at 1/4: same map after canonicalization
    (x0, k0, b0), *rest = alpha.pieces
    split = [(x0, k0, b0), (Dyadic.parse("1/4"), k0, b0)] + list(rest)
    assert pl_equal(PLCircleMap.from_formulas(split), alpha)
    assert not pl_equal(alpha, beta)


def test_invalid_maps_rejected():
    with pytest.raises(InvalidMap):
        PLCircleMap.from_formulas([(0, 1, 0)])  # degree two
    with pytest.raises(InvalidMap):
        PLCircleMap.from_formulas([(0, 0, 0), ("1/2", 1, 0)])


def test_second_derivative_jumps():
    assert second_deriv_jump(alpha, 0) == -3
    assert second_deriv_jump(beta, "1/2") == 1
    assert second_deriv_jump(beta, 0) == -2
    assert all(second_deriv_jump(ID, x) == 0 for x in ("0", "1/2", "3/8"))


def test_lifts():
    assert line_translation_part(canonical_lift(ID)) == 0
    la, lb = canonical_lift(alpha), canonical_lift(beta)
    assert la(ZERO) == Dyadic.parse("1/2")
    assert lb(Dyadic.parse("3/4")) == ONE
    assert line_translation_part(la.power(4)) == 1
    assert line_translation_part(lb.power(3)) == 1
    assert line_translation_part(lb.compose(la).power(5)) == 3
    with pytest.raises(NotATranslation):
        line_translation_part(la)


def test_orders_and_rotation_numbers():
    assert torsion_order(beta) == 3
    assert torsion_order(alpha) == 4
    assert torsion_order(A) is None
    assert rotation_number_torsion(beta) == Rational(1, 3)
    assert rotation_number_torsion(ID) == Rational(0)
    assert rotation_number_torsion(pl_compose(beta, alpha)) == Rational(3, 5)
    with pytest.raises(NotTorsion):
        rotation_number_torsion(A)


def _is_valid(f):
    PLCircleMap(f.pieces)  # re-run the invariant checks
    return all(isinstance(k, int) for _, k, _ in f.pieces)


@settings(max_examples=150, deadline=None)
@given(words(20))
def test_closure_under_composition(w):
    f = eval_word(w)
    assert _is_valid(f) and _is_valid(pl_inverse(f))


@settings(max_examples=150, deadline=None)
@given(words(12))
def test_jumps_sum_to_zero(w):
    assert sum(jump_support(eval_word(w)).values()) == 0


@settings(max_examples=150, deadline=None)
@given(words(8), words(8), unit_dyadics())
def test_chain_rule_for_jumps(u, v, x):
    f, g = eval_word(u), eval_word(v)
    lhs = second_deriv_jump(pl_compose(f, g), x)
    assert lhs == second_deriv_jump(f, pl_eval(g, x)) + second_deriv_jump(g, x)


@settings(max_examples=100, deadline=None)
@given(words(10), st.lists(dyadics(8, 1 << 10), min_size=1, max_size=5))
def test_lift_commutes_with_unit_translation(w, xs):
    lift = canonical_lift(eval_word(w))
    for x in xs:
        assert lift(x + 1) == lift(x) + 1
        assert lift(x).frac() == pl_eval(lift.base, x.frac())


@settings(max_examples=60, deadline=None)
@given(words(10), st.sampled_from(["b", "a", "b a", "a^2"]))
def test_rotation_number_conjugation_invariant(g, y):
    f = eval_word(Word.parse(y))
    conj = eval_word(g * Word.parse(y) * ~g)
    assert rotation_number_torsion(conj) == rotation_number_torsion(f)


def test_lift_rotation_matches_fraction_arithmetic():
    # orbit 0 -> 3/4 -> 1/4 -> 7/8 -> 1/2 -> 0 of βα, wrapping three times
    f = pl_compose(beta, alpha)
    orbit, x = [], ZERO
    for _ in range(5):
        x = pl_eval(f, x)
        orbit.append(x.to_fraction())
    assert orbit == [Fraction(3, 4), Fraction(1, 4), Fraction(7, 8), Fraction(1, 2), 0]
