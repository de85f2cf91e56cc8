"""Offline reference values for the PPT discrimination SDP.

Development tool only: the package never imports it. The states are built by
hand here (independently of ``nlw.model`` / ``nlw.bipart``) and the SDP is
solved with cvxpy so the numbers frozen in ``tests/`` come from a second,
unrelated code path.

    python tools/reference_oracle.py
"""
import itertools

import cvxpy as cp
import numpy as np


def ket(amps, n_qubits):
    v = np.zeros(2**n_qubits, dtype=complex)
    for bits, a in amps.items():
        v[int(bits, 2)] = a
    return v / np.linalg.norm(v)


def permute_to_split(v, n_qubits, left):
    """Reorder qubits so the ``left`` parties (1-based) come first."""
    right = [p for p in range(1, n_qubits + 1) if p not in left]
    order = [p - 1 for p in list(left) + right]
    t = v.reshape([2] * n_qubits).transpose(order)
    return t.reshape(-1), 2 ** len(left), 2 ** len(right)


def pt_left(X, m, n):
    # transpose on the first factor, written with cvxpy atoms
    return cp.partial_transpose(X, dims=[m, n], axis=0)


def ppt_optimum(vectors, m, n):
    d = m * n
    K = len(vectors)
    Ms = [cp.Variable((d, d), hermitian=True) for _ in range(K)]
    cons = [sum(Ms) == np.eye(d)]
    for M in Ms:
        cons += [M >> 0, pt_left(M, m, n) >> 0]
    obj = sum(cp.real(cp.trace(np.outer(v, v.conj()) @ M)) for v, M in zip(vectors, Ms)) / K
    prob = cp.Problem(cp.Maximize(obj), cons)
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-10, tol_gap_rel=1e-10, tol_feas=1e-10)
    return prob.value


def ghz_pair(n):
    return (ket({"0" * n: 1, "1" * n: 1}, n), ket({"0" * n: 1, "1" * n: -1}, n))


def sets():
    b1 = ket({"00": 1, "11": 1}, 2)
    b2 = ket({"00": 1, "11": -1}, 2)
    b3 = ket({"01": 1, "10": 1}, 2)
    a3 = ket({"01": 1}, 2)
    yield "bell", 2, [b1, b2, b3]
    yield "bell_pair", 2, [b1, b2]
    yield "ghosh", 2, [b1, b2, a3]
    for n in (3, 4):
        g1, g2 = ghz_pair(n)
        if n == 3:
            w = ket({"001": 1, "010": 1, "100": 1}, 3)
        else:
            w = ket({s: 1 for s in ["0001", "0010", "0100", "1000", "0011", "0101", "0110"]}, 4)
        full = ket({"".join(b): 1 for b in itertools.product("01", repeat=n)
                    if len(set(b)) > 1}, n)
        yield f"example1_{n}", n, [g1, g2, w]
        yield f"theorem1_{n}", n, [g1, g2, full]
    g1, g2 = ghz_pair(3)
    yield "theorem2_min_3", 3, [g1, g2, ket({"001": 1, "010": 1, "011": 1}, 3)]


def splits(n):
    for r in range(1, n):
        for left in itertools.combinations(range(1, n + 1), r):
            if 1 in left:
                yield left


if __name__ == "__main__":
    for name, n, vecs in sets():
        for left in splits(n):
            flat = [permute_to_split(v, n, left) for v in vecs]
            m, nn = flat[0][1], flat[0][2]
            val = ppt_optimum([f[0] for f in flat], m, nn)
            print(f"{name:16s} {','.join(map(str, left)):8s} {val:.9f}")
    # negative control: eq2 with L=1, R=2 (others |0>), split grouping 1,2
    b = {"00": 1, "11": 1}
    vecs = [ket({"0000": 1, "1100": 1}, 4), ket({"0000": 1, "1100": -1}, 4),
            ket({"0100": 1, "1000": 1}, 4)]
    for left in [(1, 2), (1, 3)]:
        flat = [permute_to_split(v, 4, left) for v in vecs]
        val = ppt_optimum([f[0] for f in flat], flat[0][1], flat[0][2])
        print(f"{'eq2_L1R2':16s} {','.join(map(str, left)):8s} {val:.9f}")
