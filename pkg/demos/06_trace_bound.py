"""A PPT element that identifies a Bell state must have trace about 2.

If Tr(rho1 M1) >= 1 - eps and M1^T_A >= 0, then Tr M1 >= 2(1 - eps),
because rho1^T_A <= I/2. Weighted solves that favour state 1 produce
such elements; the check confirms the bound on each, and the POVM's total
trace is the dimension, 4.
"""
import numpy as np

from nlw import Bipartition, DiscriminationInstance, gen_ghosh_set, solve_ppt, trace_bound_check

inst = DiscriminationInstance.from_state_set(gen_ghosh_set(), Bipartition.parse("1|2", 2))
eps = 1e-5
for w1 in (0.5, 0.7, 0.9):
    w = np.array([w1, (1 - w1) / 2, (1 - w1) / 2])
    rep = solve_ppt(inst, weights=w)
    r = trace_bound_check(rep.povm, inst, 0, eps)
    traces = [float(np.trace(m).real) for m in rep.povm.elements]
    print(f"weights {np.round(w, 3)}: Tr(rho1 M1)={r.state_success:.7f}  Tr M_k={np.round(traces, 4)}  "
          f"bound {r.bound:.5f}  passed={r.passed}")

# pushing state 3 out: when w3 is tiny the solver spends almost nothing on M3
rep = solve_ppt(inst, weights=[0.49, 0.49, 0.02])
print("Tr M3 with weights (0.49, 0.49, 0.02):", round(float(np.trace(rep.povm.elements[2]).real), 6))
