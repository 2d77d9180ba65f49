"""Chain, maelstrom and crown words, their slices, and the schemes built from them."""

from .identities import (equivalence_class, is_island, is_isoterm, minimal_A, satisfies)
from .impossibility import island_words
from .monoid import build_M, build_M_Ak, build_M_Bk
from .schemes import Scheme, check_consistency, check_dependency, comes_from_term
from .words import content, free_commute, occ, occurrence_symbols, power, restrict, substitute

KINDS = ("chain", "maelstrom", "crown")

# padding letters for even-start wraps; strings never collide with the int variables
PAD_Y = "_y"
PAD_Z = "_z"


def chain_on(seq, p, q):
    """Chain word over the letters ``seq`` (one letter gives ``x^(p+q)``)."""
    seq = list(seq)
    m = len(seq)
    if m == 0:
        return ()
    if m == 1:
        return power(seq[0], p + q)
    w = power(seq[0], p)
    for k in range(1, m):
        w += power(seq[k], p) + power(seq[k - 1], q)
    return w + power(seq[-1], q)


def maelstrom_on(seq, p, q):
    seq = list(seq)
    m = len(seq)
    if m == 0:
        return ()
    if m % 2:
        raise ValueError("maelstrom words need an even number of letters")
    s = lambda k: seq[k - 1]  # 1-based
    w = power(s(1), p)
    for k in range(1, m // 2):
        w += power(s(2 * k + 1), p) + power(s(2 * k), p)
    w += power(s(m), p)
    for k in range(m // 2):
        w += power(s(m - 2 * k - 1), q) + power(s(m - 2 * k), q)
    return w


def crown_on(seq, p, q):
    seq = list(seq)
    m = len(seq)
    if m == 0:
        return ()
    s = lambda k: seq[k - 1]
    w = power(s(1), p)
    if m % 2 == 0:
        for k in range(1, m // 2):
            w += power(s(2 * k + 1), p) + power(s(2 * k), p + q) + power(s(2 * k - 1), q)
        return w + power(s(m), p + q) + power(s(m - 1), q)
    for k in range(1, (m - 1) // 2 + 1):
        w += power(s(2 * k + 1), p) + power(s(2 * k), p + q) + power(s(2 * k - 1), q)
    return w + power(s(m), q)


_BUILDERS = {"chain": chain_on, "maelstrom": maelstrom_on, "crown": crown_on}


def chain(n, p, q):
    if n < 2:
        raise ValueError("chain words need n >= 2")
    return chain_on(range(1, n + 1), p, q)


def maelstrom(n, p, q):
    """Maelstrom word on x1..xn.  At n = 2 the middle product is empty and the
    word is the length-2 chain; the scheme builders never use that case."""
    if n < 2 or n % 2:
        raise ValueError("maelstrom words need an even n >= 2")
    return maelstrom_on(range(1, n + 1), p, q)


def crown(n, p, q):
    if n < 1:
        raise ValueError("crown words need n >= 1")
    return crown_on(range(1, n + 1), p, q)


def family_word(kind, n, p, q):
    return {"chain": chain, "maelstrom": maelstrom, "crown": crown}[_kind(kind)](n, p, q)


def _kind(kind):
    if kind not in KINDS:
        raise ValueError(f"unknown family {kind!r}; expected one of {', '.join(KINDS)}")
    return kind


def odot(m, w, p):
    """Insert ``w`` into ``m`` after every letter's p-th occurrence and before
    any (p+1)-th occurrence."""
    if not m:
        return tuple(w)
    ranks = [r for _, r in occurrence_symbols(m)]
    low = [k for k, r in enumerate(ranks) if r <= p]
    high = [k for k, r in enumerate(ranks) if r > p]
    cut = (max(low) + 1) if low else 0
    if high and min(high) < cut:
        raise ValueError("no insertion point: some (p+1)-th occurrence precedes a p-th occurrence")
    return tuple(m[:cut]) + tuple(w) + tuple(m[cut:])


def family_slice(kind, i, j, n, p, q, wrap=False):
    """The slice ``(i;j)`` or, with ``wrap``, the wrap-around slice ``(i;n;j)``."""
    _kind(kind)
    if not wrap:
        if j == i - 1:
            return ()
        if not 1 <= i <= j <= n:
            raise ValueError(f"slice ({i};{j}) is undefined for n = {n}")
        letters = list(range(i, j + 1))
        if kind == "chain":
            return chain_on(letters, p, q)
        return restrict(family_word(kind, n, p, q), letters)
    if i == n + 1:
        return () if j == 0 else family_slice(kind, 1, j, n, p, q)
    if j == 0:
        return family_slice(kind, i, n, n, p, q)
    if not 1 <= j < i <= n:
        raise ValueError(f"wrap ({i};{n};{j}) is undefined")
    rot = list(range(i, n + 1)) + list(range(1, i))
    keep = list(range(1, j + 1)) + list(range(i, n + 1))
    if kind == "chain":
        return chain_on(list(range(i, n + 1)) + list(range(1, j + 1)), p, q)
    if i % 2:
        return restrict(_BUILDERS[kind](rot, p, q), keep)
    if kind == "maelstrom":
        return restrict(maelstrom_on([PAD_Y] + rot + [PAD_Z], p, q), keep)
    return restrict(crown_on([PAD_Y] + rot, p, q), keep)


def theta(i, j, n):
    """``(x_j, x_{i+1}, ..., x_n, x_1, ..., x_{i-1})``."""
    return (j,) + tuple(range(i + 1, n + 1)) + tuple(range(1, i))


def build_family_scheme(kind, n, p, q):
    _kind(kind)
    if n <= 4:
        raise ValueError("the family schemes need n > 4")
    if kind != "chain" and n % 2:
        raise ValueError(f"{kind} schemes need an even n")
    terms = {}
    base = chain(n, p, q) if kind == "chain" else None
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if kind == "chain":
                th = theta(i, j, n)
                t = substitute(base, {k: (th[k - 1],) for k in range(1, n + 1)})
            else:
                head = power(j, 2 * p + 2 * q)
                outer = family_slice(kind, j + 1, i - 1, n, p, q, wrap=True)
                inner = family_slice(kind, i + 1, j - 1, n, p, q)
                body = odot(outer, inner, p) if kind == "maelstrom" else outer + inner
                t = head + body
            terms[(i, j)] = t
    return Scheme(n, terms, {"kind": kind, "p": p, "q": q})


# hypotheses of the three non-finite-relatedness criteria

def _disjoint(kind, n, m, p, q):
    """A family word on x1..xn and one on fresh letters n+1..n+m."""
    f = _BUILDERS[kind]
    u = f(range(1, n + 1), p, q)
    v = f(range(n + 1, n + m + 1), p, q)
    return u, v


def _commuting_identity(kind, n, m, p, q):
    u, v = _disjoint(kind, n, m, p, q)
    if kind == "maelstrom":
        return odot(u, v, p), odot(v, u, p)
    return u + v, v + u


DEFAULT_WINDOWS = {"chain": (1, 2, 3, 4), "crown": (1, 2, 3, 4), "maelstrom": (2, 4)}


def check_theorem_conditions(kind, M, p, q, sizes=None):
    """Verdict on each hypothesis (i)-(iv) for the given family.

    (i) is checked for the (n, m) window in ``sizes`` only, so it is reported
    as bounded evidence.
    """
    _kind(kind)
    if sizes is None:
        w = DEFAULT_WINDOWS[kind]
        sizes = [(a, b) for a in w for b in w]
    failures = []
    for a, b in sizes:
        u, v = _commuting_identity(kind, a, b, p, q)
        if not satisfies(M, u, v):
            failures.append([a, b])
    report = {"kind": kind, "p": p, "q": q,
              "i": {"ok": not failures, "bounded_evidence": True,
                    "sizes": [list(s) for s in sizes], "failures": failures}}

    A = minimal_A(M)
    report["ii"] = {"ok": A is not None and A[0] <= 2 * p + 2 * q,
                    "alpha": A[0] if A else None, "beta": A[1] if A else None,
                    "bound": 2 * p + 2 * q}

    x, y = "x", "y"
    if kind == "crown":
        iso = power(x, p) + power(y, p + q) + power(x, q)
    else:
        iso = power(x, p) + power(y, p) + power(x, q) + power(y, q)
    v = is_isoterm(M, iso)
    report["iii"] = {"ok": v.verdict and not v.bounded_only, "word": iso, "witness": v.witness,
                     "bounded_only": v.bounded_only}

    if kind != "chain":
        if kind == "maelstrom":
            U = [power(x, p) + power(y, p + q) + power(x, q), power(y, p) + power(x, p + q) + power(y, q)]
        else:
            U = sorted(island_words(x, y, p, q))
        v = is_island(M, U)
        report["iv"] = {"ok": v.verdict and not v.bounded_only, "words": U, "witness": v.witness,
                        "bounded_only": v.bounded_only}
    report["ok"] = all(report[c]["ok"] for c in ("i", "ii", "iii", "iv") if c in report)
    report["first_failure"] = next((c for c in ("i", "ii", "iii", "iv")
                                    if c in report and not report[c]["ok"]), None)
    return report


def is_limited(w, kappa):
    return all(occ(x, w) <= kappa for x in content(w))


def alternating_chain(kappa_max, n=5, check_A=True):
    """For each kappa up to ``kappa_max``: the chain scheme with exponents
    ``(kappa, 1)`` is a scheme for ``M(B_k)`` with no realising term, and its
    terms are (kappa+1)-limited, so it is also a scheme for ``M(A_k)``."""
    if kappa_max < 2:
        raise ValueError("kappa_max must be at least 2")
    rows = []
    for kappa in range(2, kappa_max + 1):
        F = build_family_scheme("chain", n, kappa, 1)
        w = chain(n, kappa, 1)
        MB = build_M_Bk(kappa)
        row = {"kappa": kappa, "n": n,
               "chain_limited": is_limited(w, kappa + 1)}
        dep, _ = check_dependency(MB, F)
        con, bad, _ = check_consistency(MB, F)
        row["B_scheme_ok"] = dep and con
        res = comes_from_term(MB, F)
        row["B_comes_from_term"] = res["found"]
        row["B_search"] = res["stats"]
        pattern = power("x", kappa) + power("y", kappa) + ("x", "y")
        Mw = build_M([power("a", kappa) + power("b", kappa) + ("a", "b")])
        row["pattern_isoterm"] = is_isoterm(Mw, pattern).verdict
        if check_A:
            MA = build_M_Ak("ab", kappa)
            dep, _ = check_dependency(MA, F)
            con, _, _ = check_consistency(MA, F)
            row["A_scheme_ok"] = dep and con
            resA = comes_from_term(MA, F)
            row["A_comes_from_term"] = resA["found"]
            row["A_word"] = resA["word"]
        rows.append(row)
    return rows


__all__ = [
    "chain", "maelstrom", "crown", "chain_on", "maelstrom_on", "crown_on", "family_word",
    "odot", "family_slice", "theta", "build_family_scheme", "check_theorem_conditions",
    "free_commute", "alternating_chain", "is_limited", "equivalence_class",
]
