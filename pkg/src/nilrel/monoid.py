"""Finite monoids given by multiplication tables.

The constructions here are the Rees quotients ``M(W)`` of a free monoid by
the ideal of non-factors of ``W``, the semigroup ``S(W)`` (``M(W)`` without
its identity), ``M(A_k)`` for the k-limited words over ``A``, adjunction of a
fresh zero or identity, and direct products.
"""

import itertools
import json
import math
from pathlib import Path

import numpy as np

from .words import EMPTY, factors, format_word, letter_key, parse_word


class _Symbol:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (_symbol, (self.name,))


_SYMBOLS = {}


def _symbol(name):
    if name not in _SYMBOLS:
        _SYMBOLS[name] = _Symbol(name)
    return _SYMBOLS[name]


ZERO = _symbol("0")
ADJOINED_ONE = _symbol("1'")
ADJOINED_ZERO = _symbol("0'")


class FiniteMonoid:
    """A finite semigroup stored as a dense multiplication table.

    ``identity`` and ``zero`` are element indices or None.  A semigroup
    without identity (such as ``S(W)``) is the same type with
    ``identity=None``.  ``graded`` marks word monoids: every label other than
    the zero is a word, the identity is the empty word, and a product is
    either the concatenation or zero.
    """

    def __init__(self, elements, table, identity=None, zero=None, description="", graded=False):
        self.elements = tuple(elements)
        self.table = np.asarray(table, dtype=np.int32)
        n = len(self.elements)
        if self.table.shape != (n, n):
            raise ValueError(f"table shape {self.table.shape} does not match {n} elements")
        self.rows = self.table.tolist()
        self.identity = identity
        self.zero = zero
        self.description = description
        self.graded = graded
        self._index = {label: i for i, label in enumerate(self.elements)}
        if graded:
            self.max_length = max(len(e) for e in self.elements if e is not ZERO)
        else:
            self.max_length = None

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"<FiniteMonoid {self.description or '?'} |M|={len(self)}>"

    @property
    def has_identity(self):
        return self.identity is not None

    def index(self, label):
        if isinstance(label, str) and self.graded:
            label = parse_word(label)
        return self._index[label]

    def mul(self, a, b):
        return self.rows[a][b]

    def product(self, items):
        items = list(items)
        if not items:
            if self.identity is None:
                raise ValueError("empty product in a semigroup without identity")
            return self.identity
        acc = items[0]
        rows = self.rows
        for b in items[1:]:
            acc = rows[acc][b]
        return acc

    def power(self, a, k):
        return self.product([a] * k) if k else self.identity

    def element_length(self, a):
        if not self.graded or a == self.zero:
            raise ValueError("length is defined for nonzero elements of word monoids")
        return len(self.elements[a])

    def format_element(self, a):
        label = self.elements[a]
        if isinstance(label, tuple) and self.graded:
            return format_word(label)
        if isinstance(label, tuple):
            return "(" + ", ".join(_format_label(x) for x in label) + ")"
        return _format_label(label)

    def nonzero(self):
        return [a for a in range(len(self)) if a != self.zero]

    def is_associative(self):
        t = self.table
        left = t[t, :]            # left[a, b, c] = (ab)c
        right = t[:, t]           # right[a, b, c] = a(bc)
        return bool(np.array_equal(left, right))

    def identity_ok(self):
        e = self.identity
        if e is None:
            return True
        n = len(self)
        return all(self.rows[e][a] == a == self.rows[a][e] for a in range(n))

    def zero_ok(self):
        z = self.zero
        if z is None:
            return True
        n = len(self)
        return all(self.rows[z][a] == z == self.rows[a][z] for a in range(n))

    def find_identity(self):
        n = len(self)
        for e in range(n):
            if all(self.rows[e][a] == a == self.rows[a][e] for a in range(n)):
                return e
        return None

    def to_json(self):
        return {
            "description": self.description,
            "size": len(self),
            "elements": [self.format_element(a) for a in range(len(self))],
            "identity": self.identity,
            "zero": self.zero,
            "table": self.rows,
        }


def _format_label(label):
    if isinstance(label, tuple):
        return format_word(label)
    return repr(label)


def _as_words(W):
    words = []
    for w in W:
        w = parse_word(w) if isinstance(w, str) else tuple(w)
        if not w:
            raise ValueError("words in W must be non-empty")
        words.append(w)
    if not words:
        raise ValueError("W must contain at least one word")
    return words


def _word_key(w):
    return (len(w), [letter_key(x) for x in w])


def _word_monoid(universe, description, with_identity=True):
    """Rees quotient on a factor-closed set of words (the empty word included)."""
    words = sorted((w for w in universe if w), key=_word_key)
    elements = ([EMPTY] if with_identity else []) + words + [ZERO]
    index = {w: i for i, w in enumerate(elements)}
    z = len(elements) - 1
    n = len(elements)
    table = np.full((n, n), z, dtype=np.int32)
    for i, u in enumerate(elements):
        if u is ZERO:
            continue
        for j, v in enumerate(elements):
            if v is ZERO:
                continue
            table[i, j] = index.get(u + v, z)
    return FiniteMonoid(
        elements, table,
        identity=0 if with_identity else None,
        zero=z,
        description=description,
        graded=True,
    )


def _describe(words, prefix):
    return f"{prefix}(" + ",".join(format_word(w) for w in words) + ")"


def build_M(W):
    """The monoid ``M(W)``: factors of ``W``, the empty word and 0."""
    words = _as_words(W)
    universe = set()
    for w in words:
        universe |= factors(w)
    return _word_monoid(universe, _describe(words, "M"))


def build_S(W):
    """``S(W)``: ``M(W)`` with the empty word removed."""
    words = _as_words(W)
    universe = set()
    for w in words:
        universe |= factors(w, nonempty=True)
    return _word_monoid(universe, _describe(words, "S"), with_identity=False)


def k_limited_universe(alphabet, kappa):
    """All words over ``alphabet`` in which no letter occurs more than ``kappa`` times."""
    letters = sorted(set(alphabet), key=letter_key)
    out = {EMPTY}
    frontier = [(EMPTY, {x: 0 for x in letters})]
    while frontier:
        nxt = []
        for w, counts in frontier:
            for x in letters:
                if counts[x] < kappa:
                    c = dict(counts)
                    c[x] += 1
                    v = w + (x,)
                    out.add(v)
                    nxt.append((v, c))
        frontier = nxt
    return out


def build_M_Ak(alphabet, kappa):
    """``M(A_k)``; the k-limited words are already factor closed."""
    if kappa < 1:
        raise ValueError("kappa must be positive")
    letters = "".join(sorted(set(alphabet), key=letter_key))
    return _word_monoid(k_limited_universe(alphabet, kappa), f"M({{{letters}}}_{kappa})")


def adjoin(S, kind):
    """Adjoin a fresh zero or identity (always a new element)."""
    if kind not in ("zero", "identity"):
        raise ValueError("kind must be 'zero' or 'identity'")
    n = len(S)
    table = np.empty((n + 1, n + 1), dtype=np.int32)
    table[:n, :n] = S.table
    if kind == "identity":
        table[n, :n] = np.arange(n)
        table[:n, n] = np.arange(n)
        table[n, n] = n
        # re-adding the empty word to S(W) gives back M(W) on the nose
        plain = S.graded and S.identity is None
        label = EMPTY if plain else ADJOINED_ONE
        if plain and S.description.startswith("S"):
            desc = "M" + S.description[1:]
        else:
            desc = f"({S.description})^1"
        return FiniteMonoid(S.elements + (label,), table, identity=n, zero=S.zero,
                            description=desc, graded=plain)
    table[n, :] = n
    table[:, n] = n
    label = ZERO if S.zero is None and ZERO not in S.elements else ADJOINED_ZERO
    return FiniteMonoid(S.elements + (label,), table, identity=S.identity, zero=n,
                        description=f"({S.description})^0")


def direct_product(M1, M2):
    if (M1.identity is None) != (M2.identity is None):
        raise ValueError("both factors must be monoids, or both semigroups")
    n1, n2 = len(M1), len(M2)
    elements = [(a, b) for a in M1.elements for b in M2.elements]
    i = np.arange(n1).repeat(n2)
    j = np.tile(np.arange(n2), n1)
    # (a1,b1)(a2,b2) = (a1 a2, b1 b2), flattened as a*n2 + b
    left = M1.table[i[:, None], i[None, :]]
    right = M2.table[j[:, None], j[None, :]]
    table = left * n2 + right
    identity = None if M1.identity is None else M1.identity * n2 + M2.identity
    zero = None if M1.zero is None or M2.zero is None else M1.zero * n2 + M2.zero
    M = FiniteMonoid(elements, table, identity=identity, zero=zero,
                     description=f"{M1.description} x {M2.description}")
    M.factors = (M1, M2)
    return M


def _element_index_period(M, a):
    seen = {}
    x = a
    k = 1
    while x not in seen:
        seen[x] = k
        x = M.rows[x][a]
        k += 1
    first = seen[x]
    return first, k - first


def index_period(M):
    """Least ``(p, q)`` with ``x^p = x^(p+q)`` for every element."""
    p, q = 1, 1
    for a in range(len(M)):
        pa, qa = _element_index_period(M, a)
        p = max(p, pa)
        q = q * qa // math.gcd(q, qa)
    return p, q


def nilpotency_degree(M):
    """For a word monoid, any product of this many non-identity elements is zero."""
    if not M.graded:
        raise ValueError("nilpotency degree is only exposed for word monoids")
    return M.max_length + 1


def products_vanish(M, d):
    """Exhaustively check that every product of ``d`` non-identity elements is zero."""
    others = [a for a in range(len(M)) if a != M.identity]
    reach = set(others)
    for _ in range(d - 1):
        reach = {M.rows[x][b] for x in reach for b in others}
    return reach == {M.zero}


def same_table(M1, M2):
    """Tables agree after matching elements by label."""
    if set(M1.elements) != set(M2.elements):
        return False
    perm = [M2.index(label) for label in M1.elements]
    return all(
        perm[M1.rows[a][b]] == M2.rows[perm[a]][perm[b]]
        for a, b in itertools.product(range(len(M1)), repeat=2)
    )


def parse_monoid_spec(text):
    """Read a monoid description.

    The first line is ``M`` or ``S`` followed by one word per line, or
    ``A <kappa> <letters>`` for ``M(A_kappa)``.  A single line of the form
    ``M:abab,aabb`` is accepted as a compact spelling.
    """
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty monoid description")
    head = lines[0]
    if ":" in head and len(lines) == 1:
        kind, _, rest = head.partition(":")
        lines = [kind.strip()] + [w for w in rest.replace(",", " ").split()]
        head = lines[0]
    parts = head.split()
    kind = parts[0].upper()
    if kind == "A":
        if len(parts) != 3:
            raise ValueError("expected 'A <kappa> <letters>'")
        return build_M_Ak(parts[2], int(parts[1]))
    words = [parse_word(w) for w in lines[1:]]
    if kind == "M":
        return build_M(words)
    if kind == "S":
        return build_S(words)
    raise ValueError(f"unknown monoid kind {parts[0]!r}")


def load_monoid(source):
    """Load from a description file, or parse ``source`` itself if it is no path."""
    path = Path(source)
    if path.exists():
        return parse_monoid_spec(path.read_text())
    return parse_monoid_spec(source)


def dump_monoid(M):
    return json.dumps(M.to_json())


def build_M_Bk(kappa):
    """``M(B_k)`` with ``B_k = {a,b}_k`` plus the word ``a^k b^k a b``."""
    extra = ("a",) * kappa + ("b",) * kappa + ("a", "b")
    universe = k_limited_universe("ab", kappa) | factors(extra)
    return _word_monoid(universe, f"M(B_{kappa})")
