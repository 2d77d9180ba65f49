"""Evaluating words in a finite monoid and deciding identities.

Monoids with a zero use a pruned search: a depth-first walk along the left
side only branches over nonzero elements and stops as soon as the running
product is zero.  That visits exactly the assignments on which the word is
nonzero, and an identity holds iff both sides agree on those (checked from
each side).  Monoids without a zero fall back to full enumeration.
"""

import hashlib
import itertools
from dataclasses import dataclass, field

import numpy as np

from .words import as_word, content, first_occurrence_order, letter_key, occ


def evaluate(w, theta, M):
    """Value of ``w`` under the assignment ``theta`` (letter -> element index)."""
    w = as_word(w)
    rows = M.rows
    z = M.zero
    if not w:
        if M.identity is None:
            raise ValueError("the empty word has no value in a semigroup")
        return M.identity
    try:
        acc = theta[w[0]]
        for x in w[1:]:
            if acc == z:
                return z
            acc = rows[acc][theta[x]]
    except KeyError as e:
        raise ValueError(f"no value assigned to {e.args[0]!r}") from None
    return acc


def nonzero_evaluations(M, u):
    """All assignments of ``content(u)`` under which ``u`` is nonzero.

    Returns ``(letters, rows)`` where ``letters`` is the sorted content and
    each row is ``(values, value_of_u)`` with ``values`` aligned to it.
    """
    if M.zero is None:
        raise ValueError("pruned evaluation needs a zero")
    u = as_word(u)
    order = first_occurrence_order(u)
    slot = {x: i for i, x in enumerate(order)}
    code = [slot[x] for x in u]
    seen = set()
    first = []
    for x in u:
        first.append(x not in seen)
        seen.add(x)
    letters = sorted(order, key=letter_key)
    perm = [slot[x] for x in letters]
    rows = M.rows
    z = M.zero
    cand = M.nonzero()
    n = len(u)
    vals = [0] * len(order)
    out = []

    def walk(pos, acc):
        while pos < n and not first[pos]:
            acc = rows[acc][vals[code[pos]]]
            if acc == z:
                return
            pos += 1
        if pos == n:
            out.append((tuple(vals[i] for i in perm), acc))
            return
        s = code[pos]
        for a in cand:
            b = a if acc is None else rows[acc][a]
            if b == z:
                continue
            vals[s] = a
            walk(pos + 1, b)

    if not u:
        if M.identity is None:
            raise ValueError("the empty word has no value in a semigroup")
        return letters, [((), M.identity)]
    walk(0, None)
    return letters, out


def fingerprint(M, u):
    """Set of (assignment, value) pairs with nonzero value.

    Two words with the same content are equivalent over ``M`` iff their
    fingerprints coincide.
    """
    letters, rows = nonzero_evaluations(M, u)
    return frozenset(rows)


def _all_assignments(M, letters):
    n = len(M)
    k = len(letters)
    grids = np.indices((n,) * k).reshape(k, -1) if k else np.zeros((0, 1), dtype=np.int64)
    return {x: grids[i] for i, x in enumerate(letters)}


def _evaluate_all(M, w, cols):
    size = next(iter(cols.values())).shape[0] if cols else 1
    if not w:
        return np.full(size, M.identity, dtype=np.int64)
    acc = cols[w[0]].copy()
    for x in w[1:]:
        acc = M.table[acc, cols[x]]
    return acc


def _full_check(M, u, v):
    letters = sorted(content(u) | content(v), key=letter_key)
    cols = _all_assignments(M, letters)
    if (not u or not v) and M.identity is None:
        raise ValueError("the empty word has no value in a semigroup")
    a = _evaluate_all(M, u, cols)
    b = _evaluate_all(M, v, cols)
    bad = np.nonzero(a != b)[0]
    if bad.size == 0:
        return None
    i = int(bad[0])
    return {x: int(cols[x][i]) for x in letters}


def _one_side(M, u, v):
    extra = content(v) - content(u)
    letters, rows = nonzero_evaluations(M, u)
    for values, value in rows:
        theta = dict(zip(letters, values))
        if extra:
            # any letter missing from u can be sent to zero
            for x in extra:
                theta[x] = M.zero
            return theta
        if evaluate(v, theta, M) != value:
            return theta
    return None


def counterexample(M, u, v):
    """An assignment separating ``u`` and ``v``, or None if ``M`` satisfies ``u = v``."""
    u, v = as_word(u), as_word(v)
    if u == v:
        return None
    if M.zero is None:
        return _full_check(M, u, v)
    theta = _one_side(M, u, v)
    if theta is None:
        theta = _one_side(M, v, u)
    return theta


def satisfies(M, u, v):
    return counterexample(M, u, v) is None


def satisfies_full(M, u, v):
    """Reference check by enumerating every assignment."""
    u, v = as_word(u), as_word(v)
    return _full_check(M, u, v) is None


# bulk fingerprints over all assignments of a fixed variable set

def trie_fingerprints(M, words, letters=None):
    """Digest of each word's full value table over all assignments.

    Words sharing prefixes share work through a prefix trie.  Equal digests
    mean the identity ``u = v`` holds (over the common variable set).
    """
    words = [as_word(w) for w in words]
    if letters is None:
        letters = sorted(set().union(*map(set, words)) if words else set(), key=letter_key)
    n = len(M)
    dtype = np.uint8 if n <= 256 else np.int32
    table = M.table.astype(dtype)
    k = len(letters)
    grids = np.indices((n,) * k, dtype=dtype).reshape(k, -1)
    cols = {x: grids[i] for i, x in enumerate(letters)}
    size = grids.shape[1]

    trie = {}
    for w in words:
        node = trie
        for x in w:
            node = node.setdefault(x, {})
        node[None] = True

    out = {}

    def digest(arr):
        return hashlib.blake2b(arr.tobytes(), digest_size=16).hexdigest()

    def walk(node, prefix, acc):
        if None in node:
            if acc is None:
                arr = np.full(size, M.identity, dtype=dtype)
            else:
                arr = acc
            out[prefix] = digest(arr)
        for x, child in node.items():
            if x is None:
                continue
            nxt = cols[x] if acc is None else table[acc, cols[x]]
            walk(child, prefix + (x,), nxt)

    walk(trie, (), None)
    return out


# isoterms and islands

@dataclass
class Bounds:
    max_occ: int = 0        # per-letter cap in the bounded fallback, 0 = max occ in u plus one
    max_length: int = 0     # length cap in the bounded fallback, 0 = |u| + 2
    max_candidates: int = 2_000_000


@dataclass
class ClassResult:
    words: set
    complete: bool
    mode: str
    stats: dict = field(default_factory=dict)


def _multiset_permutations(counts):
    letters = sorted(counts, key=letter_key)
    remaining = dict(counts)
    total = sum(counts.values())
    buf = []

    def rec():
        if len(buf) == total:
            yield tuple(buf)
            return
        for x in letters:
            if remaining[x]:
                remaining[x] -= 1
                buf.append(x)
                yield from rec()
                buf.pop()
                remaining[x] += 1

    yield from rec()


def _lengths(M, values):
    return tuple(len(M.elements[a]) for a in values)


def equivalence_class(M, u, bounds=None):
    """Words equivalent to ``u`` over ``M``, with a completeness flag.

    For a word monoid every equivalent word has the same content.  A letter
    is pinned when some nonzero evaluation supports only that letter; its
    occurrence count is then forced.  If some nonzero evaluation gives every
    letter a non-identity value, equivalent words have bounded length.  In
    either case (or all letters pinned) the search is exhaustive; otherwise
    the verdict is only as good as the caps in ``bounds``.
    """
    bounds = bounds or Bounds()
    u = as_word(u)
    if not u:
        return ClassResult({u}, True, "empty")
    if M.zero is None or M.identity is None or not M.graded:
        raise ValueError("isoterm search needs a word monoid with identity and zero")
    letters, rows = nonzero_evaluations(M, u)
    one = M.identity
    k = len(letters)
    counts_u = [occ(x, u) for x in letters]

    # length equations: sum_x c_x |theta(x)| = |theta(u)| for every nonzero theta
    equations = {(_lengths(M, vals), len(M.elements[val])) for vals, val in rows}
    pinned = [False] * k
    full_support = False
    for vals, _ in rows:
        support = [i for i, a in enumerate(vals) if a != one]
        if len(support) == 1:
            pinned[support[0]] = True
        if len(support) == k:
            full_support = True

    if all(pinned):
        mode = "pinned"
        caps = list(counts_u)
        lows = list(counts_u)
        max_total = len(u)
    elif full_support:
        mode = "full-support"
        D = M.max_length
        caps = [counts_u[i] if pinned[i] else D for i in range(k)]
        lows = [counts_u[i] if pinned[i] else 1 for i in range(k)]
        max_total = D
    else:
        mode = "bounded"
        cap = bounds.max_occ or max(counts_u) + 1
        caps = [counts_u[i] if pinned[i] else cap for i in range(k)]
        lows = [counts_u[i] if pinned[i] else 1 for i in range(k)]
        max_total = bounds.max_length or len(u) + 2
    complete = mode != "bounded"

    vectors = []
    for vec in itertools.product(*[range(lo, hi + 1) for lo, hi in zip(lows, caps)]):
        if sum(vec) > max_total:
            continue
        if all(sum(c * l for c, l in zip(vec, lens)) == total for lens, total in equations):
            vectors.append(vec)

    found = {u}
    examined = 0
    n_rows = len(rows)
    for vec in vectors:
        for v in _multiset_permutations(dict(zip(letters, vec))):
            examined += 1
            if examined > bounds.max_candidates:
                return ClassResult(found, False, mode, {"vectors": len(vectors), "examined": examined,
                                                        "truncated": True})
            if v == u:
                continue
            if _agrees(M, v, letters, rows) and len(nonzero_evaluations(M, v)[1]) == n_rows:
                found.add(v)
    stats = {"vectors": len(vectors), "examined": examined, "nonzero_assignments": n_rows}
    if not complete:
        stats["caps"] = {"max_occ": max(caps) if caps else 0, "max_length": max_total}
    return ClassResult(found, complete, mode, stats)


def _agrees(M, v, letters, rows):
    for vals, val in rows:
        if evaluate(v, dict(zip(letters, vals)), M) != val:
            return False
    return True


def _shortlex(w):
    return (len(w), [letter_key(x) for x in w])


@dataclass
class Verdict:
    verdict: bool
    witness: object = None
    bounded_only: bool = False
    stats: dict = field(default_factory=dict)


def is_isoterm(M, u, bounds=None):
    u = as_word(u)
    if not u:
        raise ValueError("isoterm check needs a non-empty word")
    res = equivalence_class(M, u, bounds)
    others = sorted(res.words - {u}, key=_shortlex)
    stats = dict(res.stats, mode=res.mode)
    return Verdict(not others, others[0] if others else None, not res.complete, stats)


def is_island(M, U, bounds=None):
    U = [as_word(w) for w in U]
    if not U:
        raise ValueError("island check needs at least one word")
    for a, b in itertools.combinations(U, 2):
        if not satisfies(M, a, b):
            return Verdict(False, (a, b), False, {"reason": "members not equivalent"})
    best = None
    for w in U:
        res = equivalence_class(M, w, bounds)
        if best is None or (res.complete and not best.complete):
            best = res
        if res.complete:
            break
    outside = sorted(best.words - set(U), key=_shortlex)
    stats = dict(best.stats, mode=best.mode)
    return Verdict(not outside, outside[0] if outside else None, not best.complete, stats)


# the laws x^a = x^(a+b) and t1 x t2 x ... ta x = x^a t1 ... ta

def _power_law(M, alpha, beta):
    for a in range(len(M)):
        if M.power(a, alpha) != M.power(a, alpha + beta):
            return False
    return True


def _shuffle_law(M, alpha):
    n = len(M)
    T = M.table.astype(np.int64)
    elems = np.arange(n)
    for x in range(n):
        tx = T[elems, x]                  # t * x for each t
        # reachable pairs (t1 x ... tk x, t1 ... tk)
        L = tx.copy()
        R = elems.copy()
        codes = np.unique(L * n + R)
        for _ in range(alpha - 1):
            L, R = codes // n, codes % n
            L2 = T[T[L[:, None], elems[None, :]], x]
            R2 = T[R[:, None], elems[None, :]]
            codes = np.unique((L2 * n + R2).ravel())
        L, R = codes // n, codes % n
        xa = M.power(x, alpha)
        if not np.array_equal(L, T[xa, R]):
            return False
    return True


def satisfies_A(M, alpha, beta):
    if alpha < 1 or beta < 1:
        raise ValueError("alpha and beta must be positive")
    return _power_law(M, alpha, beta) and _shuffle_law(M, alpha)


def minimal_A(M, max_alpha=8, max_beta=8):
    """Least (alpha, beta), alpha first, with both laws; None past the caps."""
    for alpha in range(1, max_alpha + 1):
        shuffle = None
        for beta in range(1, max_beta + 1):
            if not _power_law(M, alpha, beta):
                continue
            if shuffle is None:
                shuffle = _shuffle_law(M, alpha)
            if shuffle:
                return alpha, beta
            break
    return None


def primitive_letters(M, w):
    """Letters whose every non-identity value sends ``w`` to zero."""
    w = as_word(w)
    if M.identity is None:
        raise ValueError("primitivity is defined for monoids")
    if not w:
        return set()
    letters, rows = nonzero_evaluations(M, w)
    alive = set()
    for vals, _ in rows:
        alive.update(x for x, a in zip(letters, vals) if a != M.identity)
    return set(letters) - alive


def strongly_primitive_letters(w, alpha):
    w = as_word(w)
    return {x for x in content(w) if occ(x, w) >= alpha}


def identity_classes(M, words, letters=None):
    """Group words by their value table on ``M``: one class per equivalence class."""
    fps = trie_fingerprints(M, words, letters)
    classes = {}
    for w in words:
        classes.setdefault(fps[tuple(w)], []).append(tuple(w))
    return fps, classes


def compare_identities(M1, M2, words, letters=None):
    """Pairs of corpus words on which ``M1`` and ``M2`` disagree.

    Returns ``(pairs M1 satisfies but M2 does not, the converse)``, each as
    a count plus a few examples.
    """
    f1, _ = identity_classes(M1, words, letters)
    f2, _ = identity_classes(M2, words, letters)
    joint = {}
    for w in words:
        joint.setdefault((f1[w], f2[w]), []).append(w)
    by1, by2 = {}, {}
    for (a, b), ws in joint.items():
        by1.setdefault(a, []).append(ws)
        by2.setdefault(b, []).append(ws)

    def split(groups):
        count = 0
        examples = []
        for parts in groups.values():
            sizes = [len(p) for p in parts]
            total = sum(sizes)
            count += (total * total - sum(s * s for s in sizes)) // 2
            if len(parts) > 1 and len(examples) < 5:
                examples.append((parts[0][0], parts[1][0]))
        return count, examples

    return split(by1), split(by2)
