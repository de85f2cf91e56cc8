"""Sets the certificate does not cover.

A Bell triple on two of N parties (|0> elsewhere) is not a GHZ pair in
the N-party sense, so the certificate is inapplicable. At a bipartition
that keeps both Bell qubits on one side, PPT measurements discriminate
perfectly, which the SDP confirms.
"""
from nlw import Bipartition, certify_all, enumerate_bipartitions, gen_eq2, gen_eq3, ppt_value_for_split
from nlw.sdp import SdpOptions

s = gen_eq2(4, 1, 3, Bipartition.parse("1,2|3,4", 4))
print(certify_all(s).certificates[0].verdict)
opts = SdpOptions(gap_tol=1e-4)
for b in enumerate_bipartitions(4):
    rep = ppt_value_for_split(s, b, opts)
    together = b.side_of(1) == b.side_of(3)
    print(f"{str(b):10s} parties 1,3 together={together!s:5s}  primal {rep.primal_value:.6f}  perfect={rep.perfect}")

# a third state made only of one corner pair certifies exactly one bipartition
split = Bipartition.parse("1,3|2", 3)
rep = certify_all(gen_eq3(3, split))
for c in rep.certificates:
    print(f"{str(c.bipartition):8s} overlap {c.overlap_sq}  {c.verdict}")
