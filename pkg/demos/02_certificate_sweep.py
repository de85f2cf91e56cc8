"""Corner-subspace certificates across every bipartition.

For a GHZ pair plus a third state, each bipartition S|S' gets a
certificate when the third state has weight on the four strings
0_S0_S', 0_S1_S', 1_S0_S', 1_S1_S'. Everything here is exact rational
arithmetic, so the overlaps print as fractions.
"""
import time

from nlw import certify_all, gen_example1, gen_theorem1

for s in (gen_example1(3), gen_example1(4)):
    rep = certify_all(s)
    print(s.label)
    for c in rep.certificates:
        print(f"  {str(c.bipartition):10s} overlap {c.overlap_sq}  {c.verdict}")
    print(f"  -> {rep.overall}, strong nonlocality {rep.strong_nonlocality}")

t0 = time.perf_counter()
for n in range(3, 11):
    rep = certify_all(gen_theorem1(n))
    overlaps = {c.overlap_sq for c in rep.certificates}
    print(f"N={n:2d}: {len(rep.certificates):4d} bipartitions, overlap {overlaps.pop()}, {rep.overall}")
print(f"sweep took {time.perf_counter() - t0:.3f}s")
