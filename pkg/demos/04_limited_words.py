"""
Limited words: a monoid whose schemes all come from terms
=========================================================
"""

import random

from nilrel.families import alternating_chain
from nilrel.mak import equiv_mak, reconstruct_term_mak, strongly_primitive
from nilrel.monoid import build_M_Ak
from nilrel.reproduce import random_mak_word
from nilrel.schemes import scheme_from_term
from nilrel.words import format_word

# equivalence: same strongly primitive letters, same word once they are deleted
for u, v in (("xyxxx", "xxxxy"), ("xyxxx", "yxxxx"), ("xyzzz", "zzzxy")):
    print(f"{u} = {v} over M(A_2):", equiv_mak(u, v, 2))

row = alternating_chain(2)[0]
print("chain scheme with exponents (2, 1):")
print("  term over M(B_2):", row["B_comes_from_term"])
print("  term over M(A_2):", row["A_comes_from_term"], format_word(row["A_word"]))

# round trip: term -> scheme -> term
rng = random.Random(1)
M = build_M_Ak("ab", 2)
w = random_mak_word(rng, 22, 2)
v = reconstruct_term_mak(scheme_from_term(w, 22), 2, M)
print("generator:    ", format_word(w))
print("reconstructed:", format_word(v))
print("strongly primitive:", sorted(strongly_primitive(w, 2)), " equivalent:", equiv_mak(v, w, 2))
