import pytest
from hypothesis import given, settings

from conftest import words
from ptolemy.plmaps import pl_compose, pl_inverse
from ptolemy.words import (
    GENERATORS,
    UnknownSymbol,
    Word,
    check_presentations,
    commutator,
    eval_word,
    relators,
    word_concat,
    word_inverse,
)


def test_eval_examples():
    assert eval_word(Word.parse("b b")) == GENERATORS["C"]
    assert eval_word(Word.parse("")).is_identity()
    assert eval_word(Word.parse("b a a")) == GENERATORS["A"]


def test_relator_examples():
    assert eval_word(Word.parse("b a") ** 5).is_identity()
    c = commutator(Word.parse("b a b"), Word.parse("a^2 b a b a^2"))
    assert eval_word(c).is_identity()
    assert eval_word(Word.parse("c c c", "abc")).is_identity()


def test_all_presentations_hold():
    report = check_presentations()
    assert report and all(report.values()), report
    assert len(relators()) >= 10


def test_concat_and_inverse():
    w = Word.parse("a b A b^2")
    assert eval_word(word_concat(w, word_inverse(w))).is_identity()
    ab = Word.parse("a b")
    assert eval_word(word_inverse(ab)) == pl_inverse(eval_word(ab))
    assert word_concat(Word(), w) == w


def test_parse_syntax():
    assert Word.parse("a^3 b^-2") == Word.parse("a a a B B")
    assert Word.parse("a A") == Word()
    abc = Word.parse("A B C", "abc")
    assert Word.parse(abc.to_text("abc"), "abc") == abc
    assert abc.to_text("abc") == "a^-1 b^-1 c^-1"
    with pytest.raises(UnknownSymbol):
        Word.parse("x")
    assert Word.parse("c") == Word.parse("c", "abc")  # C is usable alongside α, β
    with pytest.raises(UnknownSymbol):
        Word.parse("a^")


@settings(max_examples=200, deadline=None)
@given(words(12), words(12))
def test_eval_is_a_homomorphism(u, v):
    assert eval_word(u * v) == pl_compose(eval_word(u), eval_word(v))


@settings(max_examples=100, deadline=None)
@given(words(8), words(8))
def test_eval_ignores_free_reduction(u, v):
    # u v v^-1 u^-1 u reduces to u
    padded = Word(u.letters + v.letters + (~v).letters)
    assert eval_word(padded) == eval_word(u)


def test_round_trip_text():
    w = Word.parse("a b^-2 a^3")
    assert Word.parse(w.to_text()) == w
