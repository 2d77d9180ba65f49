"""
Rees quotient monoids
=====================

Build M(W) for a few word sets, look at their sizes and a few identities.
"""

from nilrel.identities import equivalence_class, is_island, is_isoterm, minimal_A, satisfies
from nilrel.monoid import build_M, build_M_Ak, index_period
from nilrel.words import format_word

mons = {
    "abab": build_M(["abab"]),
    "abba": build_M(["abba"]),
    "abab,aabb": build_M(["abab", "aabb"]),
}
for name, M in mons.items():
    print(f"M({name}): {len(M)} elements, index/period {index_period(M)}, A = {minimal_A(M)}")

M = mons["abab"]
print("elements of M(abab):", [M.format_element(a) for a in range(len(M))])

# x^3 = x^4 holds everywhere here, xyx = yxx does not
print("x3 = x4 over M(abab):", satisfies(M, "xxx", "xxxx"))
print("xyx = yxx over M(abab):", satisfies(M, "xyx", "yxx"))

# isoterms: equivalent only to themselves
for w in ("xyxy", "xxyy", "xyyx"):
    print(w, "isoterm for M(abab)?", is_isoterm(M, w).verdict)

# the class of xxy is small
res = equivalence_class(M, "xxy")
print("class of xxy:", sorted(format_word(w) for w in res.words))

# an island for M(abab,aabb)
print("{xyyx, yxxy} is an island for M(abab,aabb):",
      is_island(mons["abab,aabb"], ["xyyx", "yxxy"]).verdict)

# the monoid of 2-limited words over {a, b}
A2 = build_M_Ak("ab", 2)
print(f"M(A_2) has {len(A2)} elements")
