"""Named end-to-end runs: build the monoid, check hypotheses, build and verify
the scheme, then search for or reconstruct a term."""

import random
import time

from .asabtb import equiv_asabtb, monoid as asabtb_monoid, reconstruct_term_asabtb
from .families import alternating_chain, build_family_scheme, check_theorem_conditions
from .identities import compare_identities
from .impossibility import chain_cycle_system, crown_system, exists_realizing_word, maelstrom_system, remove_edge
from .mak import equiv_mak, reconstruct_term_mak
from .monoid import build_M, build_M_Ak, direct_product, index_period
from .schemes import comes_from_term, scheme_from_term, verify_scheme
from .words import all_words, format_word


def _words(obj):
    return format_word(obj) if obj is not None else None


def family_pipeline(kind, W, n, p=1, q=1):
    M = build_M(W)
    cond = check_theorem_conditions(kind, M, p, q)
    F = build_family_scheme(kind, n, p, q)
    ver = verify_scheme(M, F)
    res = comes_from_term(M, F)
    cert = res.get("certificate")
    verdicts = {
        "conditions_ok": cond["ok"],
        "scheme_valid": ver["dependency_ok"] and ver["consistency_ok"],
        "comes_from_term": res["found"],
        "certificate_refuted": cert["refuted"] if cert else None,
    }
    details = {
        "monoid": M.description, "size": len(M), "index_period": list(index_period(M)),
        "alpha": ver["alpha"], "consistency_checked": ver["consistency_checked"],
        "conditions": {c: cond[c]["ok"] for c in ("i", "ii", "iii", "iv") if c in cond},
        "word": _words(res["word"]),
        "certificate": cert["text"] if cert else None,
    }
    bounded = {"condition_i_sizes": cond["i"]["sizes"]}
    stats = {k: v for k, v in res["stats"].items() if k in ("profiles", "nodes", "verified", "rejected")}
    return verdicts, details, bounded, stats


def sizes():
    mons = {"M(abab)": build_M(["abab"]), "M(abba)": build_M(["abba"]),
            "M(abab,aabb)": build_M(["abab", "aabb"]), "M({ab}_2)": build_M_Ak("ab", 2),
            "M(asabtb)": asabtb_monoid()}
    return {k: len(M) for k, M in mons.items()}, {}, {}, {}


def alternating(kappa=2):
    row = alternating_chain(kappa)[-1]
    verdicts = {k: row[k] for k in ("chain_limited", "B_scheme_ok", "B_comes_from_term",
                                    "A_scheme_ok", "A_comes_from_term")}
    details = {"kappa": kappa, "n": row["n"], "A_word": _words(row["A_word"]),
               "pattern_isoterm": row["pattern_isoterm"]}
    return verdicts, details, {}, {"B_search": {k: row["B_search"][k] for k in ("profiles", "nodes")}}


def random_mak_word(rng, n, kappa=2):
    w = []
    for x in range(1, n + 1):
        w += [x] * rng.choice(range(kappa + 1))
    rng.shuffle(w)
    tail = []
    for x in range(1, n + 1):
        if x not in w and rng.random() < 0.4:
            tail += [x] * rng.choice((kappa + 1, kappa + 2))
    return tuple(w + tail)


def mak_roundtrip(count=10, n=22, kappa=2, seed=0):
    rng = random.Random(seed)
    M = build_M_Ak("ab", kappa)
    ok = 0
    failures = []
    for _ in range(count):
        w = random_mak_word(rng, n, kappa)
        v = reconstruct_term_mak(scheme_from_term(w, n), kappa, M)
        if equiv_mak(v, w, kappa):
            ok += 1
        else:
            failures.append([format_word(w), format_word(v)])
    return {"reconstruction_ok": ok == count}, {"passed": ok, "count": count, "failures": failures}, \
        {"seed": seed}, {}


def random_asabtb_word(rng, n):
    """Spine, two-occurrence letters across segments, and primitive letters."""
    letters = list(range(1, n + 1))
    rng.shuffle(letters)
    m = rng.randint(3, 8)
    spine, rest = letters[:m], letters[m:]
    d = rng.randint(3, min(10, len(rest)))
    doubles, prims = rest[:d], rest[d:d + rng.randint(0, 3)]
    segs = [[] for _ in range(m + 1)]
    for x in doubles:
        a = rng.randint(0, m - 1)
        segs[a].append(x)
        segs[rng.randint(a + 1, m)].append(x)
    for x in prims:
        if rng.random() < 0.5:
            segs[rng.randint(0, m)] += [x, x]
        else:
            for _ in range(3):
                segs[rng.randint(0, m)].append(x)
    w = []
    for k, seg in enumerate(segs):
        rng.shuffle(seg)
        w += seg
        if k < m:
            w.append(spine[k])
    return tuple(w)


def asabtb_roundtrip(count=10, n=23, seed=0):
    rng = random.Random(seed)
    ok = 0
    failures = []
    for _ in range(count):
        w = random_asabtb_word(rng, n)
        v = reconstruct_term_asabtb(scheme_from_term(w, n))
        if equiv_asabtb(v, w, method="nf"):
            ok += 1
        else:
            failures.append([format_word(w), format_word(v)])
    return {"reconstruction_ok": ok == count}, {"passed": ok, "count": count, "failures": failures}, \
        {"seed": seed}, {}


def product_surrogate():
    P = direct_product(build_M(["abba"]), build_M(["abab", "aabb"]))
    A = build_M_Ak("ab", 2)
    words = all_words("xyz", 6)
    (c1, ex1), (c2, ex2) = compare_identities(P, A, words, list("xyz"))
    verdicts = {"product_implies_A2": c1 == 0, "A2_implies_product": c2 == 0}
    details = {"product_size": len(P), "words": len(words),
               "disagreements": [c1, c2],
               "examples": [[format_word(u), format_word(v)] for u, v in ex1 + ex2]}
    return verdicts, details, {"corpus": "all words over x, y, z of length <= 6"}, {}


def pattern_systems():
    chain_ok = True
    removal_ok = True
    for n in (4, 5, 6):
        for p in (1, 2):
            for q in (1, 2):
                sys = chain_cycle_system(n, p, q)
                if exists_realizing_word(sys, p + q) is not None:
                    chain_ok = False
                for e in sys.edges:
                    if exists_realizing_word(remove_edge(sys, e), p + q) is None:
                        removal_ok = False
    verdicts = {
        "chain_cycles_unrealizable": chain_ok,
        "single_removals_realizable": removal_ok,
        "maelstrom_n6_unrealizable": exists_realizing_word(maelstrom_system(6, 1, 1), 2) is None,
        "crown_n6_unrealizable": exists_realizing_word(crown_system(6, 1, 1), 2) is None,
    }
    return verdicts, {"n": [4, 5, 6], "p": [1, 2], "q": [1, 2]}, {}, {}


SUITE = {
    "sizes": sizes,
    "abab-chain-n5": lambda: family_pipeline("chain", ["abab"], 5),
    "abba-crown-n6": lambda: family_pipeline("crown", ["abba"], 6),
    "abab-aabb-maelstrom-n6": lambda: family_pipeline("maelstrom", ["abab", "aabb"], 6),
    "alternating-chain-k2": alternating,
    "mak-roundtrip": mak_roundtrip,
    "asabtb-roundtrip": asabtb_roundtrip,
    "product-surrogate": product_surrogate,
    "pattern-systems": pattern_systems,
}


def reproduce(name):
    """Run one named example; returns the report body."""
    if name not in SUITE:
        raise ValueError(f"unknown example {name!r}; known: {', '.join(SUITE)}")
    t0 = time.perf_counter()
    verdicts, details, bounded, stats = SUITE[name]()
    stats = dict(stats)
    stats["elapsed_s"] = round(time.perf_counter() - t0, 3)
    return {"name": name, "verdict": verdicts, "details": details, "bounded": bounded, "stats": stats}
