"""
M(asabtb): normal forms and reconstruction
==========================================
"""

import random

from nilrel.asabtb import (block_structure, equiv_asabtb, monoid, normal_form,
                           reconstruct_term_asabtb, stable_semantic)
from nilrel.reproduce import random_asabtb_word
from nilrel.schemes import scheme_from_term
from nilrel.words import format_word

print("|M(asabtb)| =", len(monoid()))

u = "xyszxtyz"
bs = block_structure(u)
print("spine:", bs.spine, " primitive:", sorted(bs.primitive))
print("normal form of", u, "->", format_word(normal_form(u)))

# neighbours carrying the same tag commute, the rest keep their order
for v in ("yxszxtyz", "xyszxtzy", "xyszxtyzz"):
    print(f"{u} = {v}:", equiv_asabtb(u, v))
print("first x before second y is stable:", stable_semantic(u, ("x", 2), ("y", 2)))

rng = random.Random(3)
w = random_asabtb_word(rng, 23)
v = reconstruct_term_asabtb(scheme_from_term(w, 23))
print("generator:    ", format_word(w))
print("reconstructed:", format_word(v))
print("equivalent:", equiv_asabtb(v, w))
