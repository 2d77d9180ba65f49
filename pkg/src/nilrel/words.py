"""Words over an alphabet: content, occurrences, deletion, identification, factors.

A word is a plain tuple of letters.  Letters are any hashable values; by
convention variables ``x_i`` are the integers ``i`` and concrete letters of a
monoid's alphabet are one-character strings.  Tuples keep words immutable,
hashable and cheap to compare, which is all the search code needs.
"""

import re
from collections import Counter

EMPTY = ()

_TOKEN = re.compile(r"\s*(?:\{([^}]*)\}|x(\d+)|([A-Za-z0-9]))(?:\^(?:\{(\d+)\}|(\d+)))?")
# same groups as _TOKEN but the x<digits> branch can never match
_TOKEN_PLAIN = re.compile(r"\s*(?:\{([^}]*)\}|(?!)(\d+)|([A-Za-z0-9]))(?:\^(?:\{(\d+)\}|(\d+)))?")
_VAR_NAME = re.compile(r"x(\d+)$")


def parse_word(text, variables=False):
    """Parse the text form of a word.

    Letters are single alphanumerics or ``{name}``; ``a^3`` repeats a letter.
    The empty word is spelled ``1``.  With ``variables=True``, ``x12`` is the
    single variable ``12`` (an int), so ``x1x2x1`` parses to ``(1, 2, 1)``.
    ``{x7}`` is always the variable 7.
    """
    text = text.strip()
    if text in ("", "1"):
        return EMPTY
    out = []
    pos = 0
    pattern = _TOKEN if variables else _TOKEN_PLAIN
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = pattern.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse word {text!r} at offset {pos}")
        braced, var, single, exp_b, exp = m.group(1), m.group(2), m.group(3), m.group(4), m.group(5)
        if braced is not None:
            vm = _VAR_NAME.match(braced)
            letter = int(vm.group(1)) if vm else braced
        elif var is not None:
            letter = int(var)
        else:
            letter = single
        k = int(exp_b or exp or 1)
        out.extend([letter] * k)
        pos = m.end()
    return tuple(out)


def letter_name(x):
    if isinstance(x, int):
        return f"x{x}"
    if isinstance(x, str) and len(x) == 1:
        return x
    return "{" + str(x) + "}"


def format_word(w, powers=False):
    """Inverse of :func:`parse_word`; ``powers=True`` writes runs as ``x^k``."""
    if not w:
        return "1"
    if not powers:
        return "".join(letter_name(x) for x in w)
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        name = letter_name(w[i])
        parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return "".join(parts)


def letter_key(x):
    """Sort key that orders ints and strings without comparing across types."""
    return (isinstance(x, str), x)


def content(w):
    return frozenset(w)


def occ(x, w):
    return w.count(x)


def occurrences(w):
    return Counter(w)


def first_occurrence_order(w):
    seen = {}
    for x in w:
        seen.setdefault(x, None)
    return tuple(seen)


def restrict(w, keep):
    """Delete every letter not in ``keep`` (the ``w[Y]`` operation)."""
    keep = set(keep)
    return tuple(x for x in w if x in keep)


def delete(w, drop):
    drop = set(drop)
    return tuple(x for x in w if x not in drop)


def identify(w, i, j):
    """Replace every ``i`` by ``j``."""
    if i == j:
        raise ValueError("identify needs two distinct letters")
    return tuple(j if x == i else x for x in w)


def substitute(w, sigma):
    """Apply the endomorphism ``sigma`` (letter -> word) to ``w``."""
    out = []
    for x in w:
        try:
            image = sigma[x]
        except KeyError:
            raise ValueError(f"substitution undefined on letter {letter_name(x)}") from None
        out.extend(image)
    return tuple(out)


def is_factor(u, v):
    """True iff ``u`` occurs as a contiguous block of ``v``."""
    n, m = len(u), len(v)
    if n == 0:
        return True
    return any(v[k:k + n] == u for k in range(m - n + 1))


def factors(w, nonempty=False):
    out = {w[i:j] for i in range(len(w)) for j in range(i + 1, len(w) + 1)}
    if not nonempty:
        out.add(EMPTY)
    return out


def linear_letters(w):
    return frozenset(x for x, c in Counter(w).items() if c == 1)


def occurrence_symbols(w):
    """Label each position with ``(letter, p)``: the p-th occurrence, 1-based."""
    seen = Counter()
    out = []
    for x in w:
        seen[x] += 1
        out.append((x, seen[x]))
    return out


def power(x, k):
    return (x,) * k


def rename(w, mapping):
    return tuple(mapping.get(x, x) for x in w)


def free_commute(u, v):
    """Two words commute in the free monoid iff both are powers of one word."""
    return u + v == v + u


def as_word(w):
    """Accept a word given as text (variables allowed) or as any sequence."""
    if isinstance(w, str):
        return parse_word(w, variables=True)
    return tuple(w)


def all_words(letters, max_length):
    """Every word over ``letters`` of length at most ``max_length``, shortest first."""
    out = [EMPTY]
    layer = [EMPTY]
    for _ in range(max_length):
        layer = [w + (x,) for w in layer for x in letters]
        out.extend(layer)
    return out
