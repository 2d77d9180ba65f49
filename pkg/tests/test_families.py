import pytest
from hypothesis import given, settings, strategies as st

from nilrel.families import (PAD_Y, alternating_chain, build_family_scheme, chain, check_theorem_conditions,
                             crown, family_slice, is_limited, maelstrom, odot, theta)
from nilrel.impossibility import interlock_edges
from nilrel.monoid import build_M, build_M_Ak
from nilrel.schemes import check_consistency, check_dependency
from nilrel.words import as_word, content, free_commute, occ, restrict

ABAB = build_M(["abab"])
ABBA = build_M(["abba"])
ABAB_AABB = build_M(["abab", "aabb"])


def test_words():
    assert chain(2, 1, 1) == as_word("x1x2x1x2")
    assert chain(3, 1, 1) == as_word("x1x2x1x3x2x3")
    assert chain(2, 2, 1) == as_word("x1^2x2^2x1x2")
    assert maelstrom(4, 1, 1) == as_word("x1x3x2x4x3x4x1x2")
    assert crown(6, 1, 1) == as_word("x1x3x2x2x1x5x4x4x3x6x6x5")
    assert restrict(maelstrom(4, 1, 1), {1, 2}) == as_word("x1x2x1x2")
    assert restrict(maelstrom(4, 1, 1), {1, 3}) == as_word("x1x3x3x1")
    with pytest.raises(ValueError):
        maelstrom(5, 1, 1)


def test_slices():
    assert family_slice("chain", 2, 1, 5, 1, 1) == ()
    assert family_slice("chain", 2, 4, 5, 1, 1) == as_word("x2x3x2x4x3x4")
    assert family_slice("maelstrom", 4, 1, 4, 1, 1, wrap=True) == as_word("x1x4x1x4")
    assert family_slice("crown", 7, 0, 6, 1, 1, wrap=True) == ()
    assert PAD_Y not in family_slice("crown", 4, 2, 6, 1, 1, wrap=True)


def test_odot_and_theta():
    m = as_word("x1x2x1x2")
    assert odot(m, as_word("x7"), 1) == as_word("x1x2x7x1x2")
    assert odot((), as_word("x7"), 1) == as_word("x7")
    assert theta(1, 2, 5) == (2, 2, 3, 4, 5)
    assert theta(3, 5, 5) == (5, 4, 5, 1, 2)


def test_chain_scheme_terms():
    F = build_family_scheme("chain", 5, 1, 1)
    assert F[(1, 2)] == as_word("x2^3x3x2x4x3x5x4x5")
    assert all(i not in content(t) for (i, j), t in F.terms.items())


def test_maelstrom_scheme_prefix():
    F = build_family_scheme("maelstrom", 6, 1, 1)
    for (i, j), t in F.terms.items():
        assert t[:4] == (j,) * 4 and occ(j, t) == 4


@pytest.mark.parametrize("kind,M,n", [("chain", ABAB, 5), ("maelstrom", ABAB_AABB, 6), ("crown", ABBA, 6)])
def test_family_schemes_are_schemes(kind, M, n):
    F = build_family_scheme(kind, n, 1, 1)
    assert check_dependency(M, F)[0]
    assert check_consistency(M, F)[0]


def test_conditions():
    rep = check_theorem_conditions("chain", ABAB, 1, 1, sizes=[(2, 2), (2, 3), (3, 2), (3, 3)])
    assert rep["ok"] and rep["ii"]["alpha"] == 3
    assert check_theorem_conditions("crown", ABBA, 1, 1)["ok"]
    assert check_theorem_conditions("maelstrom", ABAB_AABB, 1, 1)["ok"]
    bad = check_theorem_conditions("maelstrom", ABBA, 1, 1)
    assert not bad["ok"] and bad["first_failure"] == "i"
    assert not bad["iii"]["ok"]


def test_free_commute():
    assert free_commute(as_word("ab"), as_word("abab"))
    assert not free_commute(as_word("a"), as_word("b"))
    assert free_commute(as_word("ab"), ())


def test_alternating_chain():
    (row,) = alternating_chain(2)
    assert row["chain_limited"] and not is_limited(chain(5, 2, 1), 2)
    assert row["B_scheme_ok"] and not row["B_comes_from_term"]
    assert row["A_scheme_ok"] and row["A_comes_from_term"]
    assert row["pattern_isoterm"]
    assert row["A_word"] == as_word("x1^3x2^3x3^3x4^3x5^3")


def test_chain_511_is_not_a_scheme_over_A2():
    F = build_family_scheme("chain", 5, 1, 1)
    assert not check_consistency(build_M_Ak("ab", 2), F)[0]


params = st.tuples(st.integers(2, 7), st.integers(1, 3), st.integers(1, 3))


@settings(max_examples=40, deadline=None)
@given(params)
def test_chain_shape(npq):
    n, p, q = npq
    w = chain(n, p, q)
    assert len(w) == n * (p + q)
    assert all(occ(x, w) == p + q for x in range(1, n + 1))
    for i in range(1, n):
        assert restrict(w, {i, i + 1}) == (i,) * p + (i + 1,) * p + (i,) * q + (i + 1,) * q


@pytest.mark.parametrize("n", [4, 6])
@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_maelstrom_restrictions(n, p, q):
    w = maelstrom(n, p, q)
    edges = interlock_edges(n) - {(1, n)}
    for x in range(1, n + 1):
        for y in range(x + 1, n + 1):
            r = restrict(w, {x, y})
            if (x, y) in edges or (y, x) in edges:
                a, b = (x, y) if (x, y) in edges else (y, x)
                assert r == (a,) * p + (b,) * p + (a,) * q + (b,) * q
            elif (x, y) != (1, n):
                assert r in {(x,) * p + (y,) * (p + q) + (x,) * q, (y,) * p + (x,) * (p + q) + (y,) * q}


@pytest.mark.parametrize("n", [5, 6])
def test_crown_restrictions(n):
    w = crown(n, 1, 1)
    for x in range(1, n + 1):
        for y in range(x + 1, n + 1):
            r = restrict(w, {x, y})
            bracket = r in {(x, y, y, x), (y, x, x, y)}
            adjacent = y == x + 1
            assert bracket == adjacent
