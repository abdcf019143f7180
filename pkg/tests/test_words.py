import pytest

from igmax.words import (
    WordSyntaxError,
    format_relation,
    format_word,
    invert_word,
    parse_relation,
    parse_word,
    reduce_word,
)

GENS = {"a": 0, "b": 1, "c": 2}


def test_parse_word_tokens():
    assert parse_word("a b^-1 c", GENS) == ((0, 1), (1, -1), (2, 1))
    assert parse_word("  ", GENS) == ()
    assert parse_word("1", GENS) == ()


def test_parse_word_errors():
    with pytest.raises(WordSyntaxError):
        parse_word("a^2", GENS)
    with pytest.raises(WordSyntaxError):
        parse_word("d", GENS)


def test_parse_relation_forms():
    lhs, rhs = parse_relation("b a = c", GENS)
    assert lhs == ((1, 1), (0, 1))
    assert rhs == ((2, 1),)
    lhs, rhs = parse_relation("a a", GENS)
    assert rhs == ()
    with pytest.raises(WordSyntaxError):
        parse_relation("a = b = c", GENS)


def test_reduce_word_cancels():
    w = parse_word("a b b^-1 a^-1 c", GENS)
    assert reduce_word(w) == ((2, 1),)


def test_reduce_idempotent():
    w = parse_word("a a^-1 b c c^-1 b^-1", GENS)
    assert reduce_word(reduce_word(w)) == reduce_word(w) == ()


def test_invert_word():
    w = parse_word("a b^-1", GENS)
    assert invert_word(w) == ((1, 1), (0, -1))
    assert reduce_word(w + invert_word(w)) == ()


def test_formatting_round_trip():
    names = ("a", "b", "c")
    w = ((0, 1), (1, -1))
    assert format_word(w, names) == "a b^-1"
    assert format_word((), names) == "1"
    assert format_relation(w, (), names) == "a b^-1 = 1"
    assert parse_word(format_word(w, names), GENS) == w
