from hypothesis import given, settings, strategies as st

from nilrel.identities import (compare_identities, counterexample, equivalence_class, evaluate, fingerprint,
                               identity_classes, is_island, is_isoterm, minimal_A, primitive_letters,
                               satisfies, satisfies_A, satisfies_full, strongly_primitive_letters)
from nilrel.monoid import adjoin, build_M, build_M_Ak, build_M_Bk, build_S
from nilrel.words import as_word, all_words

ABAB = build_M(["abab"])
ABBA = build_M(["abba"])
ABAB_AABB = build_M(["abab", "aabb"])

small = st.lists(st.sampled_from("xyz"), max_size=5).map(tuple)


def test_known_identities():
    assert satisfies(ABAB, "xxy", "yxx")
    theta = counterexample(ABAB, "xyxy", "yxyx")
    assert {k: ABAB.format_element(v) for k, v in theta.items()} == {"x": "a", "y": "b"}
    assert satisfies(ABAB_AABB, "xyyx", "yxxy")
    assert not satisfies(ABBA, "xyyx", "yxxy")


def test_evaluate():
    a, b = ABAB.index("a"), ABAB.index("b")
    assert ABAB.format_element(evaluate("xyx", {"x": a, "y": b}, ABAB)) == "aba"
    assert evaluate("xx", {"x": a}, ABAB) == ABAB.zero


def test_isoterms():
    assert is_isoterm(ABAB, "xyxy").verdict
    v = is_isoterm(ABAB, "xxy")
    assert not v.verdict and v.witness == as_word("yxx")
    assert is_isoterm(ABBA, "xyyx").verdict
    assert not is_isoterm(ABBA, "xyxy").verdict


def test_islands():
    assert is_island(ABBA, ["xyxy", "yxyx", "xxyy", "yyxx"]).verdict
    assert is_island(ABAB_AABB, ["xyyx", "yxxy"]).verdict
    assert not is_island(ABAB, ["xyyx", "yxxy"]).verdict


def test_equivalence_class_of_xxy():
    res = equivalence_class(ABAB, as_word("xxy"))
    assert res.complete
    assert res.words == {as_word("xxy"), as_word("yxx")}


def test_minimal_A():
    assert minimal_A(ABAB) == (3, 1)
    assert minimal_A(ABBA) == (3, 1)
    assert minimal_A(build_M(["asabtb"])) == (3, 1)
    assert minimal_A(build_M_Ak("ab", 2)) == (3, 1)
    assert minimal_A(build_M_Bk(2)) == (4, 1)
    assert satisfies_A(ABAB, 3, 1) and not satisfies_A(ABAB, 2, 1)


def test_primitive_letters():
    assert primitive_letters(ABAB, as_word("xyxyx")) == {"x"}
    assert strongly_primitive_letters(as_word("xyxyx"), 3) == {"x"}


def test_semigroup_without_identity_uses_full_check():
    S = build_S(["ab"])
    assert satisfies(S, "xy", "xy")
    S1 = adjoin(S, "identity")
    assert satisfies(S1, "xxy", "yxx")


@settings(max_examples=150, deadline=None)
@given(small, small)
def test_pruned_matches_full_enumeration(u, v):
    assert satisfies(ABAB, u, v) == satisfies_full(ABAB, u, v)
    assert satisfies(ABBA, u, v) == satisfies_full(ABBA, u, v)


@settings(max_examples=60, deadline=None)
@given(small)
def test_fingerprint_is_class_invariant(u):
    # reversing x and y in M(abba) is an automorphism up to the reversal of the words
    rev = tuple(reversed(u))
    assert satisfies(ABBA, u, u)
    assert (fingerprint(ABBA, u) == fingerprint(ABBA, rev)) == satisfies(ABBA, u, rev)


def test_identity_classes_agree_with_satisfies():
    words = all_words("xy", 4)
    fps, classes = identity_classes(ABAB, words, ["x", "y"])
    for u in words[:12]:
        for v in words:
            assert (fps[u] == fps[v]) == satisfies(ABAB, u, v)


def test_compare_identities_detects_difference():
    (c1, _), (c2, _) = compare_identities(ABAB, ABBA, all_words("xy", 4), ["x", "y"])
    assert c1 > 0 and c2 > 0
