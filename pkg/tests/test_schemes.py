import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from nilrel.families import build_family_scheme, chain
from nilrel.identities import evaluate, satisfies
from nilrel.monoid import build_M, build_M_Ak
from nilrel.schemes import (Scheme, check_consistency, check_dependency, comes_from_term, exponent_report,
                            first_failure, induced_choices, induced_operation, merge_pairs, occurrence_options,
                            prim_st, scheme_from_term, variable_exponents, verify_scheme)
from nilrel.words import as_word, identify

ABAB = build_M(["abab"])
ABBA = build_M(["abba"])
A2 = build_M_Ak("ab", 2)
CHAIN5 = build_family_scheme("chain", 5, 1, 1)


def test_scheme_from_term():
    F = scheme_from_term("x1x2x3", 3)
    assert F[(1, 2)] == as_word("x2x2x3")
    assert F[(1, 3)] == as_word("x3x2x3")
    assert F[(2, 3)] == as_word("x1x3x3")
    G = scheme_from_term("x1x2x1x2", 2)
    assert G.terms == {(1, 2): as_word("x2x2x2x2")}


def test_scheme_validation_and_json():
    with pytest.raises(ValueError):
        Scheme(3, {(1, 2): "x1"})
    with pytest.raises(ValueError):
        Scheme(2, {(1, 2): "x3"})
    data = json.loads(json.dumps(CHAIN5.to_json()))
    assert Scheme.from_json(data) == CHAIN5


def test_dependency():
    assert check_dependency(ABAB, CHAIN5)[0]
    bad = Scheme(2, {(1, 2): "x1"})
    assert check_dependency(ABAB, bad) == (False, [(1, 2)])
    assert check_dependency(ABAB, scheme_from_term("x2x3", 3)) == (True, [])


def test_consistency_chain_and_crown():
    ok, bad, checked = check_consistency(ABAB, CHAIN5)
    assert ok and checked == 100
    ok, _, checked = check_consistency(ABBA, build_family_scheme("crown", 6, 1, 1))
    assert ok and checked == 225


def test_merge_pairs():
    w = as_word("x1x2x3x4")
    assert merge_pairs(w, 1, 2, 3, 4) == as_word("x2x2x4x4")
    assert merge_pairs(w, 1, 2, 2, 3) == as_word("x3x3x3x4")


def test_exponents():
    e = variable_exponents(CHAIN5)
    assert set(e.values()) == {2}
    assert all(CHAIN5[(i, j)].count(j) == 4 for i, j in CHAIN5.pairs())
    assert set(variable_exponents(scheme_from_term("x1x2x3x4x5", 5)).values()) == {1}
    with pytest.warns(UserWarning):
        rep = exponent_report(CHAIN5, ABAB)
    assert rep["ok"]


def test_induced_operation():
    a, b, ab, one = ABAB.index("a"), ABAB.index("b"), ABAB.index("ab"), ABAB.identity
    t = (a, a, b, one, ab)
    val = induced_operation(CHAIN5, ABAB, t)
    assert val == evaluate(CHAIN5[(1, 2)], {k + 1: t[k] for k in range(5)}, ABAB)
    assert induced_operation(CHAIN5, ABAB, (one,) * 5) == one
    with pytest.raises(ValueError):
        induced_operation(CHAIN5, ABAB, (0, 1, 2, 3, 4))


def test_induced_operation_well_defined_exhaustive():
    for t in itertools.product(range(len(ABAB)), repeat=5):
        vals = set(induced_choices(CHAIN5, ABAB, t).values())
        assert len(vals) <= 1


def test_strongly_primitive_decomposition():
    # x1 occurs three times, so it is strongly primitive over M(abab) (alpha = 3)
    F = scheme_from_term("x1x2x1x3x2x1x4x5x4", 5)
    assert prim_st(F, 3) == {1}
    e = variable_exponents(F)
    for t in itertools.product(range(len(ABAB)), repeat=5):
        if len(set(t)) == 5:
            continue
        left = induced_operation(F, ABAB, t)
        s = (ABAB.identity,) + t[1:]
        rest = induced_operation(F, ABAB, s) if len(set(s)) < 5 else None
        if rest is None:
            continue
        right = ABAB.mul(rest, ABAB.power(t[0], e[1]))
        assert left == right


def test_occurrence_options():
    assert occurrence_options(1, 3, 1) == [1]
    assert occurrence_options(3, 3, 1) == [3, 4, 5]
    assert occurrence_options(4, 2, 2) == [2, 4, 6]


def test_comes_from_term():
    res = comes_from_term(ABAB, CHAIN5)
    assert not res["found"]
    assert res["certificate"]["refuted"]
    F = scheme_from_term(chain(5, 1, 1), 5)
    res = comes_from_term(ABAB, F)
    assert res["found"]
    w = res["word"]
    assert all(satisfies(ABAB, identify(w, i, j), F[(i, j)]) for i, j in F.pairs())
    assert first_failure(ABAB, F, w) is None
    assert first_failure(ABAB, CHAIN5, chain(5, 1, 1)) is not None


def test_chain_search_dies_at_the_first_letter():
    # every first letter x_i is blocked by the pattern on {x_(i-1), x_i}
    assert comes_from_term(ABAB, CHAIN5)["stats"]["nodes"] == 0


def test_comes_from_term_node_cap():
    res = comes_from_term(ABBA, build_family_scheme("crown", 6, 1, 1), max_nodes=3)
    assert res["stats"].get("truncated") and "certificate" not in res


def test_verify_scheme_report():
    rep = verify_scheme(ABAB, CHAIN5)
    assert rep["dependency_ok"] and rep["consistency_ok"] and rep["alpha"] == 3
    assert rep["prim_st"] == [] and rep["lin"] == []


words5 = st.lists(st.integers(1, 5), min_size=1, max_size=12).map(tuple)


@settings(max_examples=40, deadline=None)
@given(words5, st.sampled_from([ABAB, ABBA, A2]))
def test_schemes_from_terms_are_consistent(w, M):
    F = scheme_from_term(w, 5)
    assert check_consistency(M, F)[0]


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=8).map(tuple))
def test_found_terms_reproduce_the_scheme(w):
    F = scheme_from_term(w, 5)
    res = comes_from_term(ABAB, F)
    assert res["found"]
    G = scheme_from_term(res["word"], 5)
    assert all(satisfies(ABAB, G[p], F[p]) for p in F.pairs())
