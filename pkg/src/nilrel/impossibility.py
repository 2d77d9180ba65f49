"""Can some word realise a given set of restriction patterns?

A constraint is a set of letters ``Y`` together with the words that
``w[Y]`` may equal.  The solver fills a word left to right and abandons a
branch as soon as one restriction stops being a prefix of an allowed word.
Failed states are remembered, since the state (the restricted prefixes plus
remaining counts) does not depend on the order the prefix was built in.
"""

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field

from .words import as_word, format_word, letter_key, occ, power, restrict


class _Trie:
    def __init__(self, words):
        self.children = [{}]
        for w in words:
            node = 0
            for x in w:
                nxt = self.children[node].get(x)
                if nxt is None:
                    nxt = len(self.children)
                    self.children.append({})
                    self.children[node][x] = nxt
                node = nxt


@dataclass
class SolveStats:
    nodes: int = 0
    dead_states: int = 0
    solutions: int = 0
    truncated: bool = False


def iter_solve(profile, constraints, first=None, stats=None, max_nodes=None):
    """Lazily yield words with ``occ(x) = profile[x]`` meeting every constraint.

    ``constraints`` is a list of ``(letters, allowed_words)``.  With
    ``max_nodes`` the search stops after that many expansions and sets
    ``stats.truncated``.
    """
    stats = stats if stats is not None else SolveStats()
    letters = sorted((x for x, c in profile.items() if c > 0), key=letter_key)
    index = {x: i for i, x in enumerate(letters)}
    tries = []
    involving = [[] for _ in letters]
    for vars_, allowed in constraints:
        vars_ = tuple(vars_)
        if any(v not in profile for v in vars_):
            raise ValueError("constraint mentions a letter outside the profile")
        ok = [w for w in allowed
              if set(w) <= set(vars_) and all(occ(v, w) == profile[v] for v in vars_)]
        if not ok:
            return
        c = len(tries)
        tries.append(_Trie(ok).children)
        for v in vars_:
            if v in index:
                involving[index[v]].append(c)

    remaining = [profile[x] for x in letters]
    nodes = [0] * len(tries)
    total = sum(remaining)
    buf = []
    dead = set()

    def rec():
        if len(buf) == total:
            stats.solutions += 1
            yield tuple(buf)
            return
        key = (tuple(nodes), tuple(remaining))
        if key in dead:
            return
        before = stats.solutions
        choices = range(len(letters))
        if not buf and first is not None:
            choices = [index[first]] if first in index else []
        for i in choices:
            if not remaining[i]:
                continue
            moved = []
            blocked = False
            for c in involving[i]:
                child = tries[c][nodes[c]].get(letters[i])
                if child is None:
                    blocked = True
                    break
                moved.append((c, nodes[c]))
                nodes[c] = child
            if not blocked:
                if max_nodes is not None and stats.nodes >= max_nodes:
                    stats.truncated = True
                    for c, old in moved:
                        nodes[c] = old
                    return
                stats.nodes += 1
                remaining[i] -= 1
                buf.append(letters[i])
                yield from rec()
                buf.pop()
                remaining[i] += 1
            for c, old in moved:
                nodes[c] = old
        if stats.solutions == before and not stats.truncated and (buf or first is None):
            dead.add(key)
            stats.dead_states += 1

    yield from rec()


def solve(profile, constraints, first=None, limit=1, stats=None, max_nodes=None):
    """Up to ``limit`` solutions (all of them if ``limit`` is None)."""
    gen = iter_solve(profile, constraints, first, stats, max_nodes)
    return list(gen if limit is None else itertools.islice(gen, limit))


# pattern systems

def _pair_key(x, y):
    return tuple(sorted((x, y), key=letter_key))


@dataclass
class PatternSystem:
    """Directed graph on ``1..n`` with a required restriction on each edge.

    ``non_edge_allowed`` maps an unordered pair (sorted tuple) to the words
    its restriction may take; pairs missing from it are unconstrained.
    """
    n: int
    edge_pattern: dict = field(default_factory=dict)
    non_edge_allowed: dict = field(default_factory=dict)

    @property
    def edges(self):
        return set(self.edge_pattern)

    def constraints(self, letters=None):
        keep = None if letters is None else set(letters)
        out = []
        for (x, y), pattern in self.edge_pattern.items():
            if keep is None or (x in keep and y in keep):
                out.append((_pair_key(x, y), {pattern}))
        for pair, allowed in self.non_edge_allowed.items():
            if allowed and (keep is None or set(pair) <= keep):
                out.append((pair, set(allowed)))
        return out

    def check(self, w):
        """Does ``w`` meet every constraint of the system?"""
        for vars_, allowed in self.constraints():
            if restrict(w, vars_) not in allowed:
                return False
        return True

    def to_json(self):
        return {
            "n": self.n,
            "edges": [{"from": x, "to": y, "pattern": format_word(w)}
                      for (x, y), w in sorted(self.edge_pattern.items())],
            "non_edges": [{"pair": list(pair), "allowed": sorted(format_word(w) for w in allowed)}
                          for pair, allowed in sorted(self.non_edge_allowed.items()) if allowed],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        edges = {(int(e["from"]), int(e["to"])): as_word(e["pattern"]) for e in data.get("edges", [])}
        non_edges = {}
        for e in data.get("non_edges", []):
            x, y = (int(v) for v in e["pair"])
            non_edges[_pair_key(x, y)] = {as_word(w) for w in e["allowed"]}
        return cls(int(data["n"]), edges, non_edges)


def _chain2(x, y, p, q):
    return power(x, p) + power(y, p) + power(x, q) + power(y, q)


def _bracket(x, y, p, q):
    return power(x, p) + power(y, p + q) + power(x, q)


def chain_cycle_system(n, p, q):
    """Directed n-cycle, each edge requiring ``x^p y^p x^q y^q``."""
    edges = {}
    for i in range(1, n + 1):
        prev = n if i == 1 else i - 1
        edges[(prev, i)] = _chain2(prev, i, p, q)
    return PatternSystem(n, edges, {})


def interlock_edges(n):
    """Edges of the interlocking graph: odd to the even neighbours, plus 1 -> n."""
    if n % 2:
        raise ValueError("the interlocking graph needs an even number of vertices")
    E = set()
    for k in range(1, n // 2 + 1):
        E.add((2 * k - 1, 2 * k))
    for k in range(1, n // 2):
        E.add((2 * k + 1, 2 * k))
    E.add((1, n))
    return E


def island_words(x, y, p, q):
    return {_chain2(x, y, p, q), _chain2(y, x, p, q),
            power(x, p + q) + power(y, p + q), power(y, p + q) + power(x, p + q)}


def maelstrom_system(n, p, q):
    E = interlock_edges(n)
    edges = {(x, y): _chain2(x, y, p, q) for x, y in E}
    linked = {_pair_key(x, y) for x, y in E}
    non_edges = {}
    for x, y in itertools.combinations(range(1, n + 1), 2):
        if (x, y) not in linked:
            non_edges[(x, y)] = {_bracket(x, y, p, q), _bracket(y, x, p, q)}
    return PatternSystem(n, edges, non_edges)


def crown_system(n, p, q):
    E = interlock_edges(n)
    edges = {(x, y): _bracket(x, y, p, q) for x, y in E}
    linked = {_pair_key(x, y) for x, y in E}
    non_edges = {}
    for x, y in itertools.combinations(range(1, n + 1), 2):
        if (x, y) not in linked:
            non_edges[(x, y)] = island_words(x, y, p, q)
    return PatternSystem(n, edges, non_edges)


def remove_edge(sys, edge):
    edges = dict(sys.edge_pattern)
    del edges[edge]
    return PatternSystem(sys.n, edges, dict(sys.non_edge_allowed))


def exists_realizing_word(sys, profile, stats=None, max_nodes=None):
    """First word (in search order) realising ``sys`` with the given counts, or None."""
    if isinstance(profile, int):
        profile = {x: profile for x in range(1, sys.n + 1)}
    elif not isinstance(profile, dict):
        profile = {x: c for x, c in zip(range(1, sys.n + 1), profile)}
    if any(c < 1 for c in profile.values()):
        raise ValueError("profile counts must be positive")
    found = solve(profile, sys.constraints(), limit=1, stats=stats, max_nodes=max_nodes)
    return found[0] if found else None


# first-letter certificates

def _ring(i, d, n):
    return (i - 1 + d) % n + 1


def _neighbourhood(i, n, radius=2):
    return sorted({_ring(i, d, n) for d in range(-radius, radius + 1)})


def _sub_unrealizable(sys, letters, profile, first, extra=()):
    cons = sys.constraints(letters) + list(extra)
    sub = {x: profile[x] for x in letters}
    return not solve(sub, cons, first=first, limit=1)


def _smallest_killer(sys, i, pool, base, profile, extra=()):
    others = [x for x in pool if x not in base]
    for size in range(0, len(others) + 1):
        for add in itertools.combinations(others, size):
            letters = sorted(set(base) | set(add))
            if len(letters) >= 2 and _sub_unrealizable(sys, letters, profile, i, extra):
                return letters
    return None


def _system_for(kind, n, p, q):
    if kind == "chain":
        if n < 4:
            raise ValueError("the chain argument needs n >= 4")
        return chain_cycle_system(n, p, q)
    if kind == "maelstrom":
        if n < 4 or n % 2:
            raise ValueError("the maelstrom argument needs even n >= 4")
        return maelstrom_system(n, p, q)
    if kind == "crown":
        if n <= 4 or n % 2:
            raise ValueError("the crown argument needs even n > 4")
        return crown_system(n, p, q)
    raise ValueError(f"unknown family {kind!r}")


def first_letter_certificate(kind, n, p, q):
    """Case analysis on the first letter of a would-be realising word.

    For each candidate first letter ``x_i`` the certificate names a small set
    of letters around ``x_i`` whose constraints alone cannot be met by a word
    starting with ``x_i``.  When no set of at most three letters does this,
    the letters in a pivot set are split into cases (every realisation of the
    pivot that starts with ``x_i``), and each case gets its own small
    contradiction.  Every leaf is a solver call on at most five letters.
    """
    sys = _system_for(kind, n, p, q)
    profile = {x: p + q for x in range(1, n + 1)}
    entries = []
    lines = []
    for i in range(1, n + 1):
        pool = _neighbourhood(i, n)
        killer = None
        for size in (2, 3):
            for add in itertools.combinations([x for x in pool if x != i], size - 1):
                letters = sorted({i, *add})
                if _sub_unrealizable(sys, letters, profile, i):
                    killer = letters
                    break
            if killer:
                break
        if killer:
            entries.append({"first": i, "contradiction": killer})
            lines.append(f"x{i} first: constraints on {_names(killer)} cannot hold")
            continue
        if kind == "crown":
            pivot = sorted({_ring(i, -1, n), _ring(i, 1, n)})
            pivot_first = None
        else:
            pivot = sorted({_ring(i, -2, n), i, _ring(i, 2, n)})
            pivot_first = i
        cases = solve({x: profile[x] for x in pivot}, sys.constraints(pivot), first=pivot_first, limit=None)
        case_entries = []
        for case in cases:
            extra = [(tuple(pivot), {case})]
            k = _smallest_killer(sys, i, pool, sorted(set(pivot) | {i}), profile, extra)
            case_entries.append({"case": format_word(case), "contradiction": k})
            status = f"fails on {_names(k)}" if k else "NOT refuted"
            lines.append(f"x{i} first, {_names(pivot)} restricted to {format_word(case)}: {status}")
        entries.append({"first": i, "pivot": pivot, "cases": case_entries})
    ok = all(e.get("contradiction") or (e.get("cases") is not None and all(c["contradiction"] for c in e["cases"]))
             for e in entries)
    return {"kind": kind, "n": n, "p": p, "q": q, "refuted": ok, "entries": entries, "text": lines}


def _names(letters):
    return "{" + ", ".join(f"x{x}" for x in letters) + "}"


def profile_counts(w):
    return dict(Counter(w))
