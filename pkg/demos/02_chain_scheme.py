"""
A scheme with no term
=====================

The chain scheme for M(abab) at n = 5 satisfies every identity a scheme must,
yet no word induces it.
"""

from nilrel.families import build_family_scheme, chain, check_theorem_conditions
from nilrel.monoid import build_M
from nilrel.schemes import comes_from_term, verify_scheme
from nilrel.words import format_word

M = build_M(["abab"])
n = 5
print("chain word:", format_word(chain(n, 1, 1)))

# the hypotheses, with the window used for the unbounded condition
cond = check_theorem_conditions("chain", M, 1, 1)
for c in ("i", "ii", "iii"):
    print(f"condition ({c}):", cond[c]["ok"])

F = build_family_scheme("chain", n, 1, 1)
for (i, j), t in list(F.terms.items())[:4]:
    print(f"t_{i}{j} =", format_word(t))

ver = verify_scheme(M, F)
print("dependency:", ver["dependency_ok"], " consistency:", ver["consistency_ok"],
      f"({ver['consistency_checked']} identities)")
print("variable exponents:", ver["variable_exponents"])

res = comes_from_term(M, F)
print("term found:", res["found"], " search:", res["stats"])
for line in res["certificate"]["text"]:
    print("  ", line)
