from hypothesis import given, strategies as st

from nilrel.words import (all_words, as_word, content, delete, factors, format_word, identify, is_factor,
                          occ, occurrence_symbols, parse_word, restrict, substitute)

letters = st.sampled_from([1, 2, 3, 4])
words = st.lists(letters, max_size=10).map(tuple)


def test_content_and_occ():
    assert content(parse_word("abab")) == {"a", "b"}
    assert content(()) == set()
    assert content(parse_word("asabtb")) == {"a", "s", "b", "t"}
    assert occ("a", parse_word("abab")) == 2
    assert occ("s", parse_word("asabtb")) == 1
    assert occ("c", parse_word("abab")) == 0


def test_restrict_and_identify():
    c3 = as_word("x1x2x1x3x2x3")
    assert restrict(c3, {1, 3}) == as_word("x1x1x3x3")
    assert restrict(c3, content(c3)) == c3
    assert restrict(parse_word("abab"), set()) == ()
    assert identify(as_word("x1x2x1x2"), 1, 2) == as_word("x2x2x2x2")
    assert identify(c3, 1, 3) == as_word("x3x2x3x3x2x3")
    assert identify(parse_word("abab"), "c", "b") == parse_word("abab")


def test_identify_rejects_equal_letters():
    import pytest
    with pytest.raises(ValueError):
        identify((1, 2), 1, 1)


def test_parse_forms():
    assert parse_word("a^3b") == ("a", "a", "a", "b")
    assert parse_word("1") == ()
    assert as_word("x12x3") == (12, 3)
    assert as_word("xyxy") == ("x", "y", "x", "y")
    assert format_word((1, 1, 2), powers=True) == "x1^2x2"


def test_factors_and_symbols():
    assert len(factors(parse_word("abab"))) == 8   # 1, a, b, ab, ba, aba, bab, abab
    assert is_factor(("b", "a"), parse_word("abab"))
    assert not is_factor(("a", "a"), parse_word("abab"))
    assert occurrence_symbols(parse_word("aba")) == [("a", 1), ("b", 1), ("a", 2)]
    assert substitute((1, 2), {1: ("a",), 2: ("b", "b")}) == ("a", "b", "b")


def test_all_words_count():
    assert len(all_words("xyz", 6)) == (3 ** 7 - 1) // 2


@given(words)
def test_format_parse_roundtrip(w):
    assert as_word(format_word(w)) == w


@given(words, st.sets(letters))
def test_restrict_delete_partition(w, Y):
    assert len(restrict(w, Y)) + len(delete(w, Y)) == len(w)
    assert restrict(restrict(w, Y), Y) == restrict(w, Y)


@given(words, letters, letters)
def test_identify_preserves_length(w, i, j):
    if i != j:
        v = identify(w, i, j)
        assert len(v) == len(w)
        assert occ(j, v) == occ(i, w) + occ(j, w)
        assert i not in v
