"""Schemes: families ``t_ij`` of n-ary terms, one per identified pair ``i < j``.

Variables are the integers ``1..n``.  A scheme comes from a term ``w`` when
every ``t_ij`` is equivalent to ``w`` with ``x_i`` renamed to ``x_j``.
"""

import itertools
import json
import warnings
from dataclasses import dataclass, field

from .identities import counterexample, evaluate, fingerprint, minimal_A, satisfies
from .impossibility import SolveStats, first_letter_certificate, iter_solve
from .monoid import index_period
from .words import as_word, content, delete, format_word, identify, occ, restrict


@dataclass
class Scheme:
    n: int
    terms: dict
    family: dict = field(default=None, compare=False)

    def __post_init__(self):
        terms = {}
        for (i, j), t in self.terms.items():
            t = as_word(t)
            if not i < j or not 1 <= i or not j <= self.n:
                raise ValueError(f"bad index pair ({i},{j}) for arity {self.n}")
            stray = [x for x in content(t) if not (isinstance(x, int) and 1 <= x <= self.n)]
            if stray:
                raise ValueError(f"term t_{i}{j} uses letters outside x1..x{self.n}")
            terms[(i, j)] = t
        missing = [pr for pr in self.pairs() if pr not in terms]
        if missing:
            raise ValueError(f"scheme is missing terms for {missing[:3]}")
        self.terms = terms

    def pairs(self):
        return list(itertools.combinations(range(1, self.n + 1), 2))

    def __getitem__(self, pair):
        return self.terms[pair]

    def to_json(self):
        data = {"n": self.n, "terms": {f"{i},{j}": format_word(t) for (i, j), t in sorted(self.terms.items())}}
        if self.family:
            data["family"] = self.family
        return data

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for key, text in data["terms"].items():
            i, j = (int(s) for s in key.split(","))
            terms[(i, j)] = as_word(text)
        return cls(int(data["n"]), terms, data.get("family"))


def scheme_from_term(w, n):
    w = as_word(w)
    stray = [x for x in content(w) if not (isinstance(x, int) and 1 <= x <= n)]
    if stray:
        raise ValueError(f"term uses letters outside x1..x{n}")
    return Scheme(n, {(i, j): identify(w, i, j) for i, j in itertools.combinations(range(1, n + 1), 2)})


def check_dependency(M, F):
    """``t_ij`` must not depend on ``x_i``; returns ``(ok, failing pairs)``."""
    bad = []
    for (i, j), t in F.terms.items():
        if i in t and not satisfies(M, t, delete(t, {i})):
            bad.append((i, j))
    return not bad, bad


def merge_pairs(w, i, j, k, l):
    """Identify ``x_i`` with ``x_j`` and ``x_k`` with ``x_l`` at once.

    Each merged class is renamed to its largest member.  For disjoint pairs
    this is just ``identify(identify(w, i, j), k, l)``; for overlapping pairs
    it describes tuples with ``a_i = a_j`` and ``a_k = a_l`` simultaneously.
    """
    classes = [{i, j}, {k, l}]
    if classes[0] & classes[1]:
        classes = [classes[0] | classes[1]]
    rep = {}
    for c in classes:
        top = max(c)
        for x in c:
            rep[x] = top
    return tuple(rep.get(x, x) for x in w)


def check_consistency(M, F):
    """``t_ij`` and ``t_kl`` must agree on tuples with ``a_i = a_j`` and ``a_k = a_l``.

    For disjoint pairs this is ``t_ij^(kl) = t_kl^(ij)``.  Every ordered pair
    of pairs is counted.  Returns ``(ok, failing quadruples, number checked)``.
    """
    bad = []
    seen = {}
    checked = 0
    for (i, j), (k, l) in itertools.product(F.pairs(), repeat=2):
        checked += 1
        u = merge_pairs(F[(i, j)], i, j, k, l)
        v = merge_pairs(F[(k, l)], i, j, k, l)
        key = (u, v) if u <= v else (v, u)
        if key not in seen:
            seen[key] = u == v or satisfies(M, u, v)
        if not seen[key]:
            bad.append((i, j, k, l))
    return not bad, bad, checked


def induced_operation(F, M, a):
    """Value of the operation the scheme determines at the tuple ``a``."""
    a = list(a)
    if len(a) != F.n:
        raise ValueError(f"tuple has length {len(a)}, scheme arity is {F.n}")
    pos = {}
    for k, v in enumerate(a, start=1):
        if v in pos:
            i, j = pos[v], k
            return evaluate(F[(i, j)], {x: a[x - 1] for x in range(1, F.n + 1)}, M)
        pos[v] = k
    raise ValueError("the tuple has no repeated coordinate")


def induced_choices(F, M, a):
    """Values from every repeated pair, to check the choice does not matter."""
    theta = {x: a[x - 1] for x in range(1, F.n + 1)}
    return {(i, j): evaluate(F[(i, j)], theta, M)
            for i, j in F.pairs() if a[i - 1] == a[j - 1]}


def variable_exponents(F):
    e = {}
    for i in range(1, F.n + 1):
        counts = [occ(i, t) for (j, k), t in F.terms.items() if i not in (j, k)]
        e[i] = min(counts) if counts else 0
    return e


def exponent_report(F, M, pq=None):
    """Exponents together with the occurrence-count checks they must pass."""
    p, q = pq or index_period(M)
    e = variable_exponents(F)
    if F.n <= len(M) + 1:
        warnings.warn(f"arity {F.n} is not above |M| + 1 = {len(M) + 1}; the size bounds are advisory",
                      stacklevel=2)
    bad_i = []
    for i in range(1, F.n + 1):
        for (j, k), t in F.terms.items():
            if i in (j, k):
                continue
            c = occ(i, t)
            if (e[i] < p and c != e[i]) or (e[i] >= p and (c - e[i]) % q):
                bad_i.append((i, j, k))
    bad_ii = []
    for i, j in F.pairs():
        c = occ(j, F[(i, j)])
        s = e[i] + e[j]
        if (s < p and c != s) or (s >= p and (c - s) % q):
            bad_ii.append((i, j))
    return {"exponents": e, "index": p, "period": q, "clause_i": bad_i, "clause_ii": bad_ii,
            "ok": not bad_i and not bad_ii}


def prim_st(F, alpha):
    out = set()
    for (i, j), t in F.terms.items():
        for k in content(t):
            if k not in (i, j) and occ(k, t) >= alpha:
                out.add(k)
    return out


def verify_scheme(M, F):
    dep_ok, dep_bad = check_dependency(M, F)
    con_ok, con_bad, checked = check_consistency(M, F)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = exponent_report(F, M)
    A = minimal_A(M)
    alpha = A[0] if A else None
    e = rep["exponents"]
    return {
        "dependency_ok": dep_ok,
        "dependency_failures": dep_bad,
        "consistency_ok": con_ok,
        "consistency_failures": con_bad,
        "consistency_checked": checked,
        "variable_exponents": e,
        "exponent_checks_ok": rep["ok"],
        "alpha": alpha,
        "prim_st": sorted(prim_st(F, alpha)) if alpha else None,
        "lin": sorted(i for i, c in e.items() if c == 1),
        "arity_note": "fixed-arity check" + ("" if F.n > len(M) + 1 else "; arity below |M|+2"),
    }


# does the scheme come from a term?

def occurrence_options(e, p, q, slack=None):
    """Counts a realising term may give a letter with exponent ``e``."""
    if e < p:
        return [e]
    top = slack if slack is not None else max(e, p + 2 * q)
    return [c for c in range(p, top + 1) if (c - e) % q == 0]


def _words_with_counts(a, b, ca, cb):
    total = ca + cb
    for pos in itertools.combinations(range(total), ca):
        w = [b] * total
        for k in pos:
            w[k] = a
        yield tuple(w)


def _pair_targets(F):
    targets = {}
    for a, b in itertools.combinations(range(1, F.n + 1), 2):
        for (i, j), t in F.terms.items():
            if not {i, j} & {a, b}:
                targets[(a, b)] = restrict(t, (a, b))
                break
    return targets


def _equivalent_to(M, target, candidates):
    """Candidates equivalent to ``target``; all share its content."""
    fp = fingerprint(M, target)
    out = []
    for v in candidates:
        if set(v) != set(target):
            if satisfies(M, v, target):
                out.append(v)
            continue
        if fingerprint(M, v) == fp:
            out.append(v)
    return out


def comes_from_term(M, F, slack=None, max_profiles=100000, max_nodes=None):
    """Search for a term that the scheme comes from.

    Each letter's count in a realising term is fixed or bounded by the
    exponents (``slack`` caps counts at or above the index).  Each pair
    ``{a, b}`` must restrict to a word equivalent to ``t_ij[a, b]`` for some
    ``i, j`` outside the pair.  Candidates that pass the pair checks are
    verified against every ``t_ij``.  ``max_nodes`` caps the solver work
    per profile; a capped search reports ``truncated`` instead of a verdict.
    """
    p, q = index_period(M)
    e = variable_exponents(F)
    letters = list(range(1, F.n + 1))
    options = {k: occurrence_options(e[k], p, q, slack) for k in letters}
    targets = _pair_targets(F)

    allowed = {}
    for (a, b), target in targets.items():
        cands = []
        for ca in options[a]:
            for cb in options[b]:
                if ca == 0 and cb == 0:
                    cands.append(())
                    continue
                cands.extend(_words_with_counts(a, b, ca, cb) if ca and cb
                             else [(a,) * ca + (b,) * cb])
        allowed[(a, b)] = set(_equivalent_to(M, target, cands))
        options[a] = [c for c in options[a] if any(occ(a, w) == c for w in allowed[(a, b)])]
        options[b] = [c for c in options[b] if any(occ(b, w) == c for w in allowed[(a, b)])]

    stats = {"index": p, "period": q, "exponents": e,
             "options": {k: v for k, v in options.items()},
             "profiles": 0, "nodes": 0, "verified": 0, "rejected": 0}
    constraints = [((a, b), words) for (a, b), words in allowed.items()]
    found = None
    for profile_vec in itertools.product(*[options[k] for k in letters]):
        stats["profiles"] += 1
        if stats["profiles"] > max_profiles:
            stats["truncated"] = True
            break
        profile = dict(zip(letters, profile_vec))
        st = SolveStats()
        for w in iter_solve(profile, constraints, stats=st, max_nodes=max_nodes):
            stats["verified"] += 1
            if _realises(M, F, w):
                found = w
                break
            stats["rejected"] += 1
        stats["nodes"] += st.nodes
        if st.truncated:
            stats["truncated"] = True
        if found:
            break
    result = {"found": found is not None, "word": found, "stats": stats}
    if found is None and F.family and not stats.get("truncated"):
        fam = F.family
        try:
            result["certificate"] = first_letter_certificate(fam["kind"], F.n, fam["p"], fam["q"])
        except ValueError:
            pass
    return result


def _realises(M, F, w):
    for (i, j), t in F.terms.items():
        if not satisfies(M, identify(w, i, j), t):
            return False
    return True


def first_failure(M, F, w):
    """First pair where ``w`` fails to produce ``t_ij``, with a separating assignment."""
    w = as_word(w)
    for (i, j), t in F.terms.items():
        theta = counterexample(M, identify(w, i, j), t)
        if theta is not None:
            return (i, j), theta
    return None
