"""
Crowns, maelstroms and their pattern systems
============================================
"""

from nilrel.families import build_family_scheme, check_theorem_conditions, crown, maelstrom
from nilrel.impossibility import (chain_cycle_system, crown_system, exists_realizing_word,
                                  maelstrom_system, remove_edge)
from nilrel.monoid import build_M
from nilrel.schemes import comes_from_term, verify_scheme
from nilrel.words import format_word

print("crown(6):    ", format_word(crown(6, 1, 1)))
print("maelstrom(6):", format_word(maelstrom(6, 1, 1)))

for kind, W in (("crown", ["abba"]), ("maelstrom", ["abab", "aabb"])):
    M = build_M(W)
    cond = check_theorem_conditions(kind, M, 1, 1)
    F = build_family_scheme(kind, 6, 1, 1)
    ver = verify_scheme(M, F)
    res = comes_from_term(M, F)
    print(f"{kind} over {M.description}: conditions {cond['ok']}, "
          f"scheme {ver['dependency_ok'] and ver['consistency_ok']}, term {res['found']}")

# the pairwise patterns behind the proofs, as graphs
cyc = chain_cycle_system(5, 1, 1)
print("5-cycle realizable:", exists_realizing_word(cyc, 2) is not None)
edge = sorted(cyc.edges)[0]
w = exists_realizing_word(remove_edge(cyc, edge), 2)
print(f"without edge {edge}:", format_word(w))

for name, s in (("maelstrom", maelstrom_system(6, 1, 1)), ("crown", crown_system(6, 1, 1))):
    print(name, "system at n = 6 realizable:", exists_realizing_word(s, 2) is not None)
