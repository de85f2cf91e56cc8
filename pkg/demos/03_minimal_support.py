"""How little the third state needs.

Every pair of complementary strings {s, reverse(s)} names one bipartition,
so the third state only needs weight on one string of each pair. For N=3
three strings suffice, and the resulting state is not even genuinely
entangled; the set is still certified everywhere.
"""
from nlw import Theorem2Coefficients, certify_all, check_theorem2_condition, gen_theorem2, is_genuinely_entangled
from nlw.model import CertificatePreconditionError

coeffs = Theorem2Coefficients.uniform(["001", "010", "011"])
check = check_theorem2_condition(coeffs)
for (a, b), w in check.pair_weights.items():
    print(f"pair {{{a},{b}}}: combined weight {w}")

s = gen_theorem2(3, coeffs)
print("certified:", certify_all(s).overall)
for name, state in zip(s.names, s.states):
    verdict = is_genuinely_entangled(state)
    ranks = ", ".join(f"{b}:{r}" for b, r in verdict.ranks.items())
    print(f"{name:8s} genuinely entangled={verdict.genuine}  Schmidt ranks {ranks}")

# drop one string and a pair goes empty
try:
    gen_theorem2(3, Theorem2Coefficients.uniform(["001", "010"]))
except CertificatePreconditionError as exc:
    print("rejected:", exc)
