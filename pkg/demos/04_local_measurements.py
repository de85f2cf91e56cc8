"""Which local measurements keep the states orthogonal?

The admissible Hermitian operators on one side form a linear space that
always contains the identity. Dimension 1 means only trivial measurements
are possible on that side.
"""
from nlw import Bipartition, enumerate_bipartitions, gen_bell_triple, gen_theorem1, oplm_space, toplm_verdict
from nlw.model import StateSet, StateVector

split = Bipartition.parse("1|2", 2)
bell = gen_bell_triple()
cases = {
    "Bell triple": bell,
    "Bell pair": bell.subset([0, 1]),
    "|00>, |01>": StateSet.of([StateVector.exact({"00": 1}), StateVector.exact({"01": 1})]),
}
for label, s in cases.items():
    left = oplm_space(s, split, "left")
    exact = oplm_space(s, split, "left", exact=True)
    print(f"{label:12s} left-side space: float {left.dimension}, exact {exact.dimension}")

s = gen_theorem1(4)
for b in enumerate_bipartitions(4):
    v = toplm_verdict(s, b)
    print(f"{str(b):10s} left {v.left_dim:3d}  right {v.right_dim:3d}")
