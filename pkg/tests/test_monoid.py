import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nilrel.monoid import (ZERO, adjoin, build_M, build_M_Ak, build_M_Bk, build_S, direct_product, dump_monoid,
                           index_period, load_monoid, nilpotency_degree, parse_monoid_spec, products_vanish,
                           same_table)
from nilrel.words import EMPTY, parse_word


def test_sizes():
    # factor counts by hand: abab has 7 nonempty factors, plus 1 and 0
    assert len(build_M(["abab"])) == 9
    assert len(build_M(["abba"])) == 10
    assert len(build_M(["abab", "aabb"])) == 14
    assert len(build_M_Ak("ab", 2)) == 20
    assert len(build_M(["asabtb"])) == 21
    assert len(build_M_Bk(2)) == 24


def test_tables_are_associative_with_identity_and_zero():
    for M in (build_M(["abab"]), build_M(["abba"]), build_M_Ak("ab", 2), build_M(["asabtb"])):
        assert M.is_associative()
        assert M.identity_ok() and M.zero_ok()
        assert M.find_identity() == M.identity


def test_products():
    M = build_M(["abab"])
    a, b = M.index("a"), M.index("b")
    assert M.format_element(M.product([a, b, a])) == "aba"
    assert M.product([a, a]) == M.zero
    assert M.product([]) == M.identity


def test_index_period():
    assert index_period(build_M(["abab"])) == (3, 1)
    assert index_period(build_M(["asabtb"])) == (2, 1)
    assert index_period(build_M_Ak("ab", 2)) == (3, 1)


def test_nilpotent():
    M = build_M(["abba"])
    assert nilpotency_degree(M) == 5
    assert products_vanish(M, 5)
    assert not products_vanish(M, 4)


def test_S_and_adjoin():
    S = build_S(["abab"])
    assert len(S) == 8 and S.identity is None
    M = adjoin(S, "identity")
    assert same_table(M, build_M(["abab"]))
    Z = adjoin(build_M(["ab"]), "zero")
    assert len(Z) == 6 and Z.zero == 5 and Z.is_associative()


def test_direct_product():
    P = direct_product(build_M(["abba"]), build_M(["abab", "aabb"]))
    assert len(P) == 140
    assert P.is_associative() and P.identity_ok() and P.zero_ok()


def test_specs(tmp_path):
    assert len(parse_monoid_spec("M:abab,aabb")) == 14
    assert len(parse_monoid_spec("A 2 ab")) == 20
    f = tmp_path / "abab.m"
    f.write_text("M\nabab\n")
    assert len(load_monoid(str(f))) == 9
    with pytest.raises(ValueError):
        parse_monoid_spec("Q abab")
    assert '"size": 9' in dump_monoid(load_monoid(str(f)))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.text(alphabet="ab", min_size=1, max_size=5), min_size=1, max_size=3))
def test_word_monoids_are_monoids(W):
    M = build_M(W)
    assert M.is_associative() and M.identity_ok() and M.zero_ok()
    assert M.elements[0] == EMPTY and M.elements[-1] is ZERO
    # every nonzero product is a concatenation
    for i, j in itertools.product(range(len(M)), repeat=2):
        k = M.mul(i, j)
        if k != M.zero:
            assert M.elements[k] == M.elements[i] + M.elements[j]


def test_associativity_detects_breakage():
    M = build_M(["abab"])
    t = M.table.copy()
    t[1, 2] = 1
    from nilrel.monoid import FiniteMonoid
    assert not FiniteMonoid(M.elements, t).is_associative()
    assert np.array_equal(M.table, build_M([parse_word("abab")]).table)
