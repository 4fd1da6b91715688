from hypothesis import given, strategies as st

from ribbon_schober.errors import SchoberError
from ribbon_schober.words import (FunctorWord, RelationSet, compose, conjugate_equal, equal,
                                  normal_form, parse_word, format_word, simultaneous_conjugator)
import pytest

T = FunctorWord.gen("T")
S = FunctorWord.gen("S")

letters = st.lists(st.tuples(st.sampled_from("ABT"), st.sampled_from((1, -1))), max_size=6)
words = st.builds(lambda k, ls: FunctorWord(k, tuple(ls)), st.integers(-5, 5), letters)


def test_shifts_add():
    assert compose(FunctorWord(1), FunctorWord(1)) == FunctorWord(2)


def test_free_cancellation():
    assert compose(T, T.inverse()).is_identity()


def test_shift_is_central():
    assert compose(S * FunctorWord(1), T * FunctorWord(-1)) == S * T


def test_resolved_generator_becomes_shift():
    assert normal_form(T, RelationSet({"T": -1})) == FunctorWord(-1)


def test_period_reduces_shift():
    assert normal_form(FunctorWord(7), RelationSet(period=2)) == FunctorWord(1)


def test_reduction_to_identity():
    assert normal_form(S * T * T.inverse() * S.inverse()).is_identity()


def test_full_nonsingular_loop_word():
    R = RelationSet({"T": -1})
    for m in range(2, 9):
        loop = S * FunctorWord(m - 1) * T * S.inverse()
        assert equal(FunctorWord(m - 2), loop, R)


def test_conjugate_by_cyclic_rotation():
    assert conjugate_equal(S * T * S.inverse() * FunctorWord(1), T * FunctorWord(1))


def test_distinct_without_relations():
    assert not equal(T * FunctorWord(1), FunctorWord())


def test_parse_format_examples():
    w = parse_word("[3]*T(v1)^-1*S(e2)")
    assert w.shift == 3
    assert w.letters == (("T(v1)", -1), ("S(e2)", 1))
    assert format_word(w) == "[3]*T(v1)^-1*S(e2)"
    assert parse_word("id").is_identity()
    with pytest.raises(SchoberError):
        parse_word("T(v)^x")


@given(words, words, words)
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(words)
def test_inverse_laws(w):
    assert w.inverse().inverse() == w
    assert (w * w.inverse()).is_identity()


@given(words, words, st.integers(0, 4))
def test_normal_form_idempotent_and_compatible(a, b, p):
    R = RelationSet({"T": -1}, p)
    assert normal_form(normal_form(a, R), R) == normal_form(a, R)
    assert normal_form(a * b, R) == normal_form(normal_form(a, R) * normal_form(b, R), R)


@given(st.integers(-20, 20), st.integers(1, 6))
def test_period_shift_invariance(k, p):
    R = RelationSet(period=p)
    assert normal_form(FunctorWord(k), R) == normal_form(FunctorWord(k + p), R)


@given(words)
def test_format_parse_roundtrip(w):
    assert parse_word(format_word(w)) == w


@given(words, words)
def test_conjugates_are_detected(w, x):
    assert conjugate_equal(w, x * w * x.inverse())


@given(st.lists(words, min_size=1, max_size=3), words)
def test_simultaneous_conjugator_found(ws, x):
    pairs = [(w, x * w * x.inverse()) for w in ws]
    y = simultaneous_conjugator(pairs)
    assert y is not None
    assert all(y * a * y.inverse() == b for a, b in pairs)


def test_simultaneous_conjugacy_can_fail_pairwise_succeed():
    A, B = FunctorWord.gen("A"), FunctorWord.gen("B")
    pairs = [(A, B * A * B.inverse()), (B, A * B * A.inverse())]
    assert all(conjugate_equal(a, b) for a, b in pairs)
    assert simultaneous_conjugator(pairs) is None
