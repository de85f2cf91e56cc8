"""Dense complex linear algebra on bipartite operator spaces.

Matrices are plain ``numpy.ndarray`` objects (complex128). A bipartite
operator on C^m (x) C^n is indexed ``i * n + j`` with ``i`` the left factor,
matching ``numpy.kron`` ordering.
"""
from __future__ import annotations

import os
from typing import NamedTuple

import numpy as np

DEFAULT_DIM_CAP = 2**13
HERMITIAN_TOL = 1e-10


class ShapeError(ValueError):
    """Operator dimensions do not match the requested bipartite shape."""


class DimensionCapError(ValueError):
    """Operator dimension exceeds the configured cap."""


class NotHermitianError(ValueError):
    """Input was required to be Hermitian."""


def dim_cap() -> int:
    """Current dimension cap; ``NLW_DIM_CAP`` overrides the default."""
    env = os.environ.get("NLW_DIM_CAP")
    if env:
        return int(env)
    return DEFAULT_DIM_CAP


def check_dim(dim: int) -> None:
    cap = dim_cap()
    if dim > cap:
        raise DimensionCapError(f"dimension {dim} exceeds cap {cap} (set NLW_DIM_CAP to raise it)")


class BipartiteShape(NamedTuple):
    """Local dimensions ``(m, n)`` of a space C^m (x) C^n."""

    m: int
    n: int

    @property
    def dim(self) -> int:
        return self.m * self.n

    def validate(self, a: np.ndarray | None = None) -> None:
        if self.m < 2 or self.n < 2:
            raise ShapeError(f"bipartite factors must be >= 2, got {self.m}x{self.n}")
        if a is not None:
            if a.ndim != 2 or a.shape[0] != a.shape[1]:
                raise ShapeError(f"expected a square matrix, got shape {a.shape}")
            if a.shape[0] != self.dim:
                raise ShapeError(f"matrix dimension {a.shape[0]} != {self.m}*{self.n}")


class EigDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def kron(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    check_dim(a.shape[0] * b.shape[0])
    check_dim(a.shape[1] * b.shape[1])
    return np.kron(a, b)


def _side(side: str) -> int:
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return 0 if side == "left" else 1


def partial_transpose(a, shape: BipartiteShape, side: str = "left") -> np.ndarray:
    """Transpose the chosen tensor factor of ``a``."""
    shape = BipartiteShape(*shape)
    a = np.asarray(a)
    shape.validate(a)
    m, n = shape
    t = a.reshape(m, n, m, n)
    if _side(side) == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return t.reshape(m * n, m * n)


def partial_trace(a, shape: BipartiteShape, keep: str = "left") -> np.ndarray:
    """Trace out the factor not named by ``keep``."""
    shape = BipartiteShape(*shape)
    a = np.asarray(a)
    shape.validate(a)
    m, n = shape
    t = a.reshape(m, n, m, n)
    if _side(keep) == 0:
        return np.einsum("ijkj->ik", t)
    return np.einsum("ijil->jl", t)


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol)


def _require_hermitian(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if not is_hermitian(a):
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    return 0.5 * (a + a.conj().T)


def jacobi_eigh(a, tol: float = 1e-12, max_sweeps: int = 100) -> EigDecomposition:
    """Cyclic complex Jacobi eigendecomposition of a Hermitian matrix.

    Each rotation zeroes one off-diagonal pair; sweeps repeat until the
    off-diagonal Frobenius norm drops below ``tol * max(1, ||a||_F)``.
    Slow in pure Python but deterministic; used as a cross-check for the
    LAPACK path and for small matrices.
    """
    a = _require_hermitian(a).copy()
    d = a.shape[0]
    v = np.eye(d, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                # reduce to a real symmetric 2x2 problem, then rotate
                theta = 0.5 * np.arctan2(2.0 * mag, (a[q, q] - a[p, p]).real)
                c, s = np.cos(theta), np.sin(theta)
                sp, sm = s * phase, s * np.conj(phase)
                col_p = c * a[:, p] - sm * a[:, q]
                col_q = sp * a[:, p] + c * a[:, q]
                a[:, p], a[:, q] = col_p, col_q
                row_p = c * a[p, :] - sp * a[q, :]
                row_q = sm * a[p, :] + c * a[q, :]
                a[p, :], a[q, :] = row_p, row_q
                vp = c * v[:, p] - sm * v[:, q]
                vq = sp * v[:, p] + c * v[:, q]
                v[:, p], v[:, q] = vp, vq
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return EigDecomposition(w[order], v[:, order])


def hermitian_eig(a, method: str = "lapack") -> EigDecomposition:
    """Eigendecomposition with ascending eigenvalues.

    The input is symmetrized as ``(A + A^H)/2`` after the Hermitian check.
    ``method="jacobi"`` selects :func:`jacobi_eigh`.
    """
    if method == "jacobi":
        return jacobi_eigh(a)
    if method != "lapack":
        raise ValueError(f"unknown method {method!r}")
    h = _require_hermitian(a)
    w, v = np.linalg.eigh(h)
    return EigDecomposition(w, v)


def eigvalsh(a) -> np.ndarray:
    return np.linalg.eigvalsh(_require_hermitian(a))


def psd_project(a) -> np.ndarray:
    """Nearest positive semidefinite matrix in Frobenius norm."""
    w, v = hermitian_eig(a)
    w = np.clip(w, 0.0, None)
    out = (v * w) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def projector(vec) -> np.ndarray:
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    return np.outer(vec, vec.conj())
