"""Equational theory of ``M(A_k)`` and terms recovered from its schemes.

A letter occurring more than ``kappa`` times is strongly primitive: any
non-identity value sends the word to 0.  Two words are equivalent exactly when
they have the same strongly primitive letters and agree once those are deleted.
"""

import itertools
import warnings

import numpy as np

from .identities import evaluate
from .monoid import build_M_Ak
from .schemes import prim_st, variable_exponents
from .words import as_word, content, delete, format_word, identify, letter_key, occ, occurrence_symbols, restrict


def strongly_primitive(w, kappa):
    return {x for x in content(w) if occ(x, w) > kappa}


def equiv_mak(u, v, kappa):
    if kappa < 1:
        raise ValueError("kappa must be positive")
    u, v = as_word(u), as_word(v)
    pu, pv = strongly_primitive(u, kappa), strongly_primitive(v, kappa)
    return pu == pv and delete(u, pu) == delete(v, pv)


def mak_key(w, kappa):
    """Class invariant: equal keys exactly when ``equiv_mak`` holds."""
    w = as_word(w)
    p = strongly_primitive(w, kappa)
    return frozenset(p), delete(w, p)


class OrderError(ValueError):
    """The pairwise orders do not assemble into a strict linear order."""

    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


def _disjoint_pairs(F, avoid):
    return [(k, l) for (k, l) in F.pairs() if k not in avoid and l not in avoid]


def _spot_check(M, F, word, pair, kl):
    """Compare the symbolic restriction against a second term at one assignment."""
    a, b = pair
    others = [e for e in range(len(M)) if e not in (M.identity, M.zero)]
    theta = {x: M.identity for x in range(1, F.n + 1)}
    theta[a], theta[b] = others[0], others[min(1, len(others) - 1)]
    return evaluate(word, theta, M) == evaluate(F[kl], theta, M)


def pair_restrictions(F, kappa, Y, M=None):
    """The isoterm inducing ``f[x_a, x_b]`` for each pair in ``Y``."""
    out = {}
    for a, b in itertools.combinations(sorted(Y), 2):
        kls = _disjoint_pairs(F, (a, b))
        if not kls:
            raise ValueError("pair restrictions need n >= 4")
        words = {restrict(F[kl], (a, b)) for kl in kls}
        best = min(words, key=lambda w: [letter_key(x) for x in w])
        if any(not equiv_mak(w, best, kappa) for w in words):
            raise OrderError(f"terms disagree on the restriction to x{a}, x{b}")
        if M is not None and not _spot_check(M, F, best, (a, b), kls[-1]):
            raise OrderError(f"restriction to x{a}, x{b} fails the semantic spot check")
        out[(a, b)] = best
    return out


def occurrence_order(F, kappa, M=None):
    """Strict linear order on the occurrence symbols of the non-strongly-primitive variables.

    Returns ``(symbols in order, pair words)``.
    """
    e = variable_exponents(F)
    Y = [x for x in range(1, F.n + 1) if x not in prim_st(F, kappa + 1) and e[x] > 0]
    pairs = pair_restrictions(F, kappa, Y, M)
    symbols = [(x, p) for x in Y for p in range(1, e[x] + 1)]
    idx = {s: k for k, s in enumerate(symbols)}
    N = len(symbols)
    before = np.zeros((N, N), dtype=bool)
    known = np.zeros((N, N), dtype=bool)
    for x in Y:
        for p in range(1, e[x]):
            for q in range(p + 1, e[x] + 1):
                before[idx[(x, p)], idx[(x, q)]] = True
                known[idx[(x, p)], idx[(x, q)]] = known[idx[(x, q)], idx[(x, p)]] = True
    for (a, b), w in pairs.items():
        syms = occurrence_symbols(w)
        for c in (a, b):
            if occ(c, w) != e[c]:
                raise OrderError(f"x{c} occurs {occ(c, w)} times in f[x{a}, x{b}], expected {e[c]}")
        for s, t in itertools.combinations(syms, 2):
            if s[0] != t[0]:
                before[idx[s], idx[t]] = True
                known[idx[s], idx[t]] = known[idx[t], idx[s]] = True
    off = ~np.eye(N, dtype=bool)
    if not np.array_equal(known, off):
        raise OrderError("the pairwise orders do not compare every two occurrences")
    if (before & before.T).any():
        raise OrderError("the pairwise orders are not antisymmetric")
    trans = (before.astype(np.int32) @ before.astype(np.int32) > 0) & ~before & off
    if trans.any():
        i, k = map(int, np.argwhere(trans)[0])
        j = int(np.argwhere(before[i] & before[:, k])[0, 0])
        triple = (symbols[i], symbols[j], symbols[k])
        raise OrderError("the pairwise orders are not transitive: " +
                         " < ".join(f"{p}x{x}" for x, p in triple), triple)
    rank = before.sum(axis=1)
    order = [symbols[k] for k in np.argsort(-rank, kind="stable")]
    return order, pairs


def reconstruct_term_mak(F, kappa, M=None):
    """A term the scheme comes from, read off the pairwise restrictions."""
    if M is None:
        M = build_M_Ak("ab", kappa)
    if F.n <= len(M) + 1:
        warnings.warn(f"arity {F.n} is not above |M| + 1 = {len(M) + 1}; success is not guaranteed",
                      stacklevel=2)
    order, _ = occurrence_order(F, kappa, M)
    e = variable_exponents(F)
    tail = ()
    for x in sorted(prim_st(F, kappa + 1)):
        tail += (x,) * e[x]
    w = tuple(x for x, _ in order) + tail
    for (i, j), t in F.terms.items():
        if not equiv_mak(identify(w, i, j), t, kappa):
            raise OrderError(f"reconstructed term {format_word(w)} does not give t_{i}{j}")
    return w
