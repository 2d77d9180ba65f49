"""Equational theory of ``M(asabtb)`` and terms recovered from its schemes.

Terminology for a word ``u``:

* the spine is the sequence of linear letters ``t_1 ... t_m``;
* a letter is primitive when it occurs three or more times, or twice with
  no linear letter between the two occurrences;
* every other letter occurs twice, with its occurrences in different
  segments, where segment ``k`` is the stretch between ``t_k`` and
  ``t_(k+1)`` (segment 0 precedes ``t_1``, segment ``m`` follows ``t_m``).

Inside a segment the relative order of a first occurrence and a second
occurrence is fixed under equivalence, while neighbouring occurrences with
the same tag commute.  The normal form keeps the spine, the segment of every
occurrence and the tag pattern, sorts each maximal same-tag run and moves
the primitive letters to a tail of squares.
"""

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .identities import fingerprint, satisfies
from .monoid import build_M
from .schemes import variable_exponents
from .words import as_word, content, format_word, identify, is_factor, letter_key, occ, restrict

FIRST, SECOND = 1, 2


@lru_cache(maxsize=1)
def monoid():
    return build_M(["asabtb"])


def linear(u):
    return [x for x in u if occ(x, u) == 1]


def primitive(u):
    """Letters sent to 0 by every non-identity value."""
    lin = set(linear(u))
    out = set()
    for x in content(u):
        c = occ(x, u)
        if c >= 3:
            out.add(x)
        elif c == 2:
            i = u.index(x)
            j = u.index(x, i + 1)
            if not any(y in lin for y in u[i + 1:j]):
                out.add(x)
    return out


@dataclass
class BlockStructure:
    spine: tuple
    # segments[k]: (letter, tag) in order of appearance, primitive letters dropped
    segments: list
    # blocks[k]: maximal runs of one tag, as (tag, letters in order of appearance)
    blocks: list
    primitive: set = field(default_factory=set)

    def first_set(self, k):
        return {x for x, tag in self.segments[k] if tag == FIRST}

    def second_set(self, k):
        return {x for x, tag in self.segments[k] if tag == SECOND}


def _segments(u):
    u = as_word(u)
    spine = tuple(linear(u))
    prim = primitive(u)
    segs = [[] for _ in range(len(spine) + 1)]
    k = 0
    seen = set()
    for x in u:
        if x in spine and occ(x, u) == 1:
            k += 1
            continue
        if x in prim:
            continue
        segs[k].append((x, SECOND if x in seen else FIRST))
        seen.add(x)
    return spine, segs, prim


def _side_ok(u, tl, tr, x, side):
    r = restrict(u, [y for y in (x, tl, tr) if y is not None])
    if side == FIRST:
        pattern = (tl, x, tr, x)
    else:
        pattern = (x, tl, x, tr)
    return r == tuple(y for y in pattern if y is not None)


def stable_pair(u, gap, x, y, side):
    """Is ``{p x, p y}`` stable in ``u`` (``p`` = 1 for side FIRST, 2 for SECOND)?

    ``gap`` is a segment index: the occurrences lie between the ``gap``-th
    and ``(gap+1)``-th spine letters.  Stable exactly when some letter with
    the opposite pattern in that segment sits between the two occurrences.
    """
    u = as_word(u)
    spine, segs, _ = _segments(u)
    if not 0 <= gap <= len(spine):
        raise ValueError(f"no segment {gap} in a word with {len(spine)} linear letters")
    tl = spine[gap - 1] if gap > 0 else None
    tr = spine[gap] if gap < len(spine) else None
    for w in (x, y):
        if not _side_ok(u, tl, tr, w, side):
            raise ValueError(f"{format_word((w,))} does not have the required pattern in segment {gap}")
    if x == y:
        return True
    other = SECOND if side == FIRST else FIRST
    for z, tag in segs[gap]:
        if tag != other or not _side_ok(u, tl, tr, z, other):
            continue
        r = restrict(u, [w for w in (x, y, z, tl, tr) if w is not None])
        if is_factor((x, z, y), r) or is_factor((y, z, x), r):
            return True
    return False


def block_structure(u):
    u = as_word(u)
    spine, segs, prim = _segments(u)
    blocks = []
    for k, seg in enumerate(segs):
        runs = []
        for x, tag in seg:
            if runs and runs[-1][0] == tag:
                runs[-1][1].append(x)
            else:
                runs.append((tag, [x]))
        blocks.append([(tag, tuple(xs)) for tag, xs in runs])
    bs = BlockStructure(spine, segs, blocks, prim)
    _check_partition(u, bs)
    return bs


def _check_partition(u, bs):
    """Blocks must be the classes of the 'unstable or equal' relation."""
    for k, runs in enumerate(bs.blocks):
        for tag in (FIRST, SECOND):
            letters = [x for t, xs in runs if t == tag for x in xs]
            if len(letters) > 12:
                continue
            block_of = {x: b for b, (t, xs) in enumerate(runs) if t == tag for x in xs}
            for x, y in itertools.combinations(letters, 2):
                same = block_of[x] == block_of[y]
                if same == stable_pair(u, k, x, y, tag):
                    raise RuntimeError(f"block partition broken in segment {k}")


def _sort_letters(xs):
    return tuple(sorted(xs, key=letter_key))


def normal_form(u):
    u = as_word(u)
    bs = block_structure(u)
    out = []
    for k, runs in enumerate(bs.blocks):
        if k > 0:
            out.append(bs.spine[k - 1])
        for _, xs in runs:
            out.extend(_sort_letters(xs))
    for x in _sort_letters(bs.primitive):
        out.extend((x, x))
    return tuple(out)


def _support_sets(letters, size=5):
    letters = sorted(letters, key=letter_key)
    if len(letters) <= size:
        return [tuple(letters)]
    return list(itertools.combinations(letters, size))


def support_signature(u, letters=None, size=5):
    """Fingerprints of every restriction to ``size`` letters."""
    u = as_word(u)
    letters = content(u) if letters is None else letters
    return tuple(_cached_fp(restrict(u, X)) for X in _support_sets(letters, size))


@lru_cache(maxsize=20_000)
def _cached_fp(w):
    return fingerprint(monoid(), w)


def equiv_support(u, v):
    """Agreement on every restriction to at most five letters."""
    u, v = as_word(u), as_word(v)
    if content(u) != content(v):
        return satisfies(monoid(), u, v)
    return support_signature(u) == support_signature(v)


def equiv_asabtb(u, v, method="both"):
    """``M(asabtb) |= u = v``, by normal forms, by five-letter supports, or both."""
    u, v = as_word(u), as_word(v)
    if method == "nf":
        return normal_form(u) == normal_form(v)
    if method == "support":
        return equiv_support(u, v)
    if method != "both":
        raise ValueError("method must be 'nf', 'support' or 'both'")
    a = normal_form(u) == normal_form(v)
    b = equiv_support(u, v)
    if a != b:
        raise RuntimeError(f"normal form and support checks disagree on {format_word(u)} = {format_word(v)}")
    return a


# semantic stability, for cross-checking the criterion above

def stable_semantic(u, s1, s2, max_words=20000):
    """Stability of two occurrence symbols ``(letter, p)`` by search over
    equivalent words reachable through single adjacent swaps."""
    u = as_word(u)
    M = monoid()

    def pos(w, sym):
        x, p = sym
        k = -1
        for _ in range(p):
            k = w.index(x, k + 1)
        return k

    def order(w):
        return pos(w, s1) < pos(w, s2)

    start = order(u)
    seen = {u}
    queue = deque([u])
    fp = fingerprint(M, u)
    while queue:
        w = queue.popleft()
        if order(w) != start:
            return False
        for k in range(len(w) - 1):
            if w[k] == w[k + 1]:
                continue
            v = w[:k] + (w[k + 1], w[k]) + w[k + 2:]
            if v in seen:
                continue
            seen.add(v)
            if len(seen) > max_words:
                raise RuntimeError("stability search exceeded its word budget")
            if fingerprint(M, v) == fp:
                queue.append(v)
    return True


# schemes

def _restriction(F, Y):
    """The term of ``f[Y]``, from any ``t_kl`` with ``k, l`` outside ``Y``."""
    for k, l in F.pairs():
        if k not in Y and l not in Y:
            return restrict(F[(k, l)], Y)
    raise ValueError(f"arity {F.n} is too small to read restrictions to {len(Y)} letters")


def scheme_linear(F):
    e = variable_exponents(F)
    return [x for x in range(1, F.n + 1) if e[x] == 1]


def scheme_primitive(F):
    """Variables primitive in every ``t_kl`` with ``k, l`` different from it."""
    out = set()
    for x in range(1, F.n + 1):
        terms = [t for (k, l), t in F.terms.items() if x not in (k, l)]
        if terms and all(x in content(t) and x in primitive(t) for t in terms):
            out.add(x)
    return out


class ReconstructionError(ValueError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


def _nf_restriction(F, Y):
    return normal_form(_restriction(F, Y))


def reconstruct_term_asabtb(F):
    """A term the scheme comes from, assembled from restrictions to at most four letters."""
    lin = scheme_linear(F)
    # spine order from the two-letter restrictions
    before = {}
    for a, b in itertools.combinations(lin, 2):
        r = _nf_restriction(F, (a, b))
        if sorted(r) != sorted((a, b)):
            raise ReconstructionError(f"x{a}, x{b} are not linear in f[x{a}, x{b}]")
        before[(a, b)] = r[0] == a
        before[(b, a)] = r[0] == b
    spine = sorted(lin, key=lambda a: -sum(before[(a, b)] for b in lin if b != a))
    for a, b in zip(spine, spine[1:]):
        if not before[(a, b)]:
            raise ReconstructionError("linear variables are not linearly ordered")
    for a, b, c in itertools.combinations(spine, 3):
        if not (before[(a, b)] and before[(b, c)] and before[(a, c)]):
            raise ReconstructionError(f"linear order broken on x{a}, x{b}, x{c}")
    m = len(spine)
    prim = scheme_primitive(F)
    e = variable_exponents(F)
    doubles = [x for x in range(1, F.n + 1) if e[x] >= 2 and x not in prim]

    # segment of each occurrence, read from f[x, t0, t] with t0 between the occurrences
    where = {}
    for x in doubles:
        t0 = None
        for t in spine:
            r = _nf_restriction(F, (x, t))
            if r == (x, t, x):
                t0 = t
                break
        if t0 is None:
            raise ReconstructionError(f"x{x} has no linear variable between its occurrences")
        first = second = 0
        for k, t in enumerate(spine, start=1):
            r = _nf_restriction(F, (x, t, t0)) if t != t0 else (x, t0, x)
            if r.count(x) != 2:
                raise ReconstructionError(f"x{x} does not occur twice in f[x{x}, x{t}, x{t0}]")
            i = r.index(x)
            j = r.index(x, i + 1)
            p = r.index(t)
            if p < i:
                first = max(first, k)
            if p < j:
                second = max(second, k)
        where[x] = (first, second)

    segs = [[] for _ in range(m + 1)]
    for x in doubles:
        segs[where[x][0]].append((x, FIRST))
        segs[where[x][1]].append((x, SECOND))
    words = []
    for k, seg in enumerate(segs):
        firsts = sorted((x for x, tag in seg if tag == FIRST), key=letter_key)
        seconds = sorted((x for x, tag in seg if tag == SECOND), key=letter_key)
        prec = {(z, x): _precedes(F, spine, k, z, x) for z in seconds for x in firsts}
        # a second occurrence preceding more first occurrences comes earlier
        seconds.sort(key=lambda z: -sum(prec[(z, x)] for x in firsts))
        firsts.sort(key=lambda x: sum(prec[(z, x)] for z in seconds))
        seg_word = []
        placed = 0
        for x in firsts:
            cnt = sum(prec[(z, x)] for z in seconds)
            seg_word.extend(seconds[placed:cnt])
            placed = max(placed, cnt)
            seg_word.append(x)
        seg_word.extend(seconds[placed:])
        for (z, x), flag in prec.items():
            if (seg_word.index(z) < seg_word.index(x)) != flag:
                raise ReconstructionError(f"occurrences of x{z} and x{x} cannot be interleaved")
        words.append(seg_word)

    v = []
    for k, seg_word in enumerate(words):
        if k > 0:
            v.append(spine[k - 1])
        v.extend(seg_word)
    for x in sorted(prim):
        v.extend([x] * 2)
    v = normal_form(tuple(v))
    for (i, j), t in F.terms.items():
        if not equiv_asabtb(identify(v, i, j), t, method="nf"):
            raise ReconstructionError(f"reconstructed term {format_word(v)} does not give t_{i}{j}", (i, j))
    return v


def _sym_pos(w, x, p):
    k = -1
    for _ in range(p):
        k = w.index(x, k + 1)
    return k


def _precedes(F, spine, k, z, x):
    """Does the second occurrence of ``z`` precede the first of ``x`` in segment ``k``?"""
    Y = (x, z) + tuple(spine[max(k - 1, 0):k + 1])
    r = _nf_restriction(F, Y)
    return _sym_pos(r, z, 2) < _sym_pos(r, x, 1)
