"""Three two-qubit states that PPT measurements cannot tell apart.

The set {beta1, beta2, |01>} (two Bell states plus a product state) is
solved with the PPT discrimination SDP. Any two of the states can be
separated perfectly, but all three together cannot: the optimum is 3/4.
"""
import numpy as np

from nlw import Bipartition, gen_ghosh_set, ppt_value_for_split
from nlw.qcore import BipartiteShape, eigvalsh, partial_transpose, projector

s = gen_ghosh_set()
split = Bipartition.parse("1|2", 2)

rep = ppt_value_for_split(s, split)
print(f"three states : primal {rep.primal_value:.6f}  dual bound {rep.dual_bound:.6f}  ({rep.iterations} iterations)")
for pair in ([0, 1], [0, 2], [1, 2]):
    sub = ppt_value_for_split(s.subset(pair), split)
    names = " & ".join(s.names[i] for i in pair)
    print(f"{names:16s}: primal {sub.primal_value:.6f}  perfect={sub.perfect}")

# the step behind the 3/4 bound: a Bell projector's partial transpose is at most I/2
bell = projector(np.array([1, 0, 0, 1]) / np.sqrt(2))
print("spectrum of |beta1><beta1|^T_A:", np.round(eigvalsh(partial_transpose(bell, BipartiteShape(2, 2))), 12))
