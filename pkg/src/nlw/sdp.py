r"""Optimal success probability of PPT measurements on a state set.

Primal (uniform priors ``w_k = 1/K``)::

    maximize   sum_k w_k Tr(rho_k M_k)
    subject to sum_k M_k = I,  M_k >= 0,  M_k^{T_A} >= 0

Dual::

    minimize   Tr(Y)
    subject to Y - w_k rho_k = A_k + B_k^{T_A},  A_k >= 0,  B_k >= 0

Weak duality: for feasible points, ``sum_k w_k Tr(rho_k M_k) = Tr(Y) -
sum_k Tr(A_k M_k) - sum_k Tr(B_k M_k^{T_A}) <= Tr(Y)``.

The solver is scaled ADMM on the splitting ``P_k = M_k``, ``Q_k =
M_k^{T_A}``. The M-step is a closed-form projection onto the affine set
``sum M_k = I`` (partial transpose is an isometry, so both penalty terms
merge into one); the P/Q steps are PSD projections. Scaled multipliers
``U_k, V_k`` give ``B_k ~ -rho V_k``.

Both bounds returned are certified independently of convergence:

* primal: the affine-feasible iterate is mixed with the uniform POVM
  ``I/K`` just enough to clear the most negative eigenvalue of every
  ``M_k`` and ``M_k^{T_A}``; completeness is kept exactly.
* dual: ``B_k`` is projected to the PSD cone and ``Y0`` is the average of
  the stationarity estimates ``w_k rho_k - rho U_k - rho V_k^{T_A}``. With
  ``C_k = w_k rho_k + B_k^{T_A}``, both ``Y0 + t I`` (``t`` the largest
  eigenvalue of any ``C_k - Y0``) and ``Y0 + sum_k (C_k - Y0)_+`` dominate
  every ``C_k``, so ``A_k = Y - C_k >= 0``; the smaller trace is reported.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import bipart
from .bipart import Bipartition
from .model import StateSet
from .qcore import BipartiteShape, ShapeError, check_dim, partial_transpose


class SdpInputError(ValueError):
    pass


class TraceBoundPreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class SdpOptions:
    eps_feas: float = 1e-7
    eps_psd: float = 1e-8
    eps_perfect: float = 1e-6
    gap_tol: float = 1e-6
    max_iter: int = 50_000
    rho: float = 1.0
    check_every: int = 10


@dataclass(frozen=True)
class DiscriminationInstance:
    shape: BipartiteShape
    rhos: np.ndarray  # (K, d, d)
    names: tuple[str, ...] = ()

    def __post_init__(self):
        rhos = np.asarray(self.rhos, dtype=complex)
        object.__setattr__(self, "rhos", rhos)
        shape = BipartiteShape(*self.shape)
        object.__setattr__(self, "shape", shape)
        shape.validate()
        if rhos.ndim != 3 or rhos.shape[1:] != (shape.dim, shape.dim):
            raise ShapeError(f"density matrices of shape {rhos.shape[1:]} do not match {shape}")
        if rhos.shape[0] < 2:
            raise SdpInputError("need at least two states")
        check_dim(shape.dim)
        for k, r in enumerate(rhos):
            if np.max(np.abs(r - r.conj().T)) > 1e-10:
                raise SdpInputError(f"rho_{k + 1} is not Hermitian")
            if abs(np.trace(r) - 1) > 1e-10:
                raise SdpInputError(f"rho_{k + 1} does not have unit trace")
            if np.linalg.eigvalsh(r)[0] < -1e-10:
                raise SdpInputError(f"rho_{k + 1} is not PSD")

    @property
    def K(self) -> int:
        return self.rhos.shape[0]

    @property
    def dim(self) -> int:
        return self.shape.dim

    @classmethod
    def from_vectors(cls, vectors, shape, names=()) -> "DiscriminationInstance":
        rhos = np.array([np.outer(v, np.conj(v)) for v in vectors])
        return cls(BipartiteShape(*shape), rhos, tuple(names))

    @classmethod
    def from_state_set(cls, s: StateSet, b: Bipartition) -> "DiscriminationInstance":
        flats = [bipart.flatten(st, b) for st in s.states]
        return cls.from_vectors([f.vector for f in flats], flats[0].shape, s.names)


@dataclass(frozen=True)
class PovmCandidate:
    elements: np.ndarray  # (K, d, d)


@dataclass(frozen=True)
class SdpReport:
    primal_value: float
    dual_bound: float
    iterations: int
    primal_residual: float
    dual_residual: float
    completeness_residual: float
    status: str
    perfect: bool
    seconds: float
    povm: PovmCandidate = field(repr=False)

    def to_dict(self) -> dict:
        g = lambda x: float(f"{x:.12g}")  # noqa: E731
        return {
            "primal": g(self.primal_value),
            "dual_bound": g(self.dual_bound),
            "iters": self.iterations,
            "residuals": {
                "primal": g(self.primal_residual),
                "dual": g(self.dual_residual),
                "completeness": g(self.completeness_residual),
            },
            "status": self.status,
            "perfect": self.perfect,
        }


def _pt(stack: np.ndarray, shape: BipartiteShape) -> np.ndarray:
    """Left partial transpose of a (K, d, d) stack."""
    k = stack.shape[0]
    m, n = shape
    return stack.reshape(k, m, n, m, n).transpose(0, 3, 2, 1, 4).reshape(k, m * n, m * n)


def _herm(stack: np.ndarray) -> np.ndarray:
    return 0.5 * (stack + np.conj(np.swapaxes(stack, -1, -2)))


def _psd(stack: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(_herm(stack))
    w = np.clip(w, 0.0, None)
    return _herm((v * w[:, None, :]) @ np.conj(np.swapaxes(v, -1, -2)))


def _min_eigs(stack: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(_herm(stack))[:, 0]


def _success(rhos: np.ndarray, ms: np.ndarray, weights: np.ndarray) -> float:
    return float(np.sum(weights * np.einsum("kij,kji->k", rhos, ms).real))


def _repair(ms: np.ndarray, shape: BipartiteShape) -> np.ndarray:
    """Mix with I/K to make every element and its partial transpose PSD."""
    K, d = ms.shape[0], ms.shape[1]
    lam = min(_min_eigs(ms).min(), _min_eigs(_pt(ms, shape)).min())
    ident = np.eye(d)
    if lam >= 0:
        return ms
    # extra margin absorbs eigensolver roundoff
    t = K * (-lam) * (1 + 1e-9) + 1e-15
    return (ms + t * ident / K) / (1 + t)


def _dual_bound(rhos, weights, u, v, rho, shape) -> float:
    d = rhos.shape[1]
    w_rho = weights[:, None, None] * rhos
    # Y must dominate every C_k = w_k rho_k + B_k^{T_A}
    c = w_rho + _pt(_psd(-rho * v), shape)
    y0 = _herm((w_rho - rho * u - rho * _pt(v, shape)).mean(axis=0)[None])[0]
    excess = c - y0[None]
    base = float(np.trace(y0).real)
    t = max(0.0, float(np.linalg.eigvalsh(_herm(excess))[:, -1].max()))
    scalar_shift = base + t * d
    # Y0 + sum_k (C_k - Y0)_+ also dominates each C_k
    positive_parts = base + float(np.einsum("kii->", _psd(excess)).real)
    return min(scalar_shift, positive_parts)


def solve_ppt(inst: DiscriminationInstance, weights=None, opts: SdpOptions | None = None) -> SdpReport:
    """ADMM solve with arbitrary nonnegative ``weights``; see the module
    docstring for the formulation."""
    opts = opts or SdpOptions()
    t0 = time.perf_counter()
    K, d, shape = inst.K, inst.dim, inst.shape
    weights = np.full(K, 1.0 / K) if weights is None else np.asarray(weights, dtype=float)
    rhos = inst.rhos
    w_rho = weights[:, None, None] * rhos
    ident = np.eye(d)

    rho = opts.rho
    m = np.repeat(ident[None] / K, K, axis=0).astype(complex)
    p = m.copy()
    q = _pt(m, shape)
    u = np.zeros_like(m)
    v = np.zeros_like(m)

    best_primal, best_dual = -np.inf, np.inf
    best_m = m
    r_norm = s_norm = np.inf
    status = "max-iter"
    it = 0
    for it in range(1, opts.max_iter + 1):
        c = 0.5 * ((p - u) + _pt(q - v, shape)) + w_rho / (2 * rho)
        m = c - (c.sum(axis=0) - ident)[None] / K
        m_pt = _pt(m, shape)
        p_old, q_old = p, q
        p = _psd(m + u)
        q = _psd(m_pt + v)
        u = u + m - p
        v = v + m_pt - q

        if it % opts.check_every and it != opts.max_iter:
            continue
        r_norm = float(np.sqrt(np.linalg.norm(m - p) ** 2 + np.linalg.norm(m_pt - q) ** 2))
        s_norm = float(rho * np.sqrt(np.linalg.norm(p - p_old) ** 2 + np.linalg.norm(q - q_old) ** 2))
        # PSD-side iterates pulled back onto sum M_k = I are often better
        for raw in (m, p, _pt(q, shape), 0.5 * (p + _pt(q, shape))):
            raw = raw - (raw.sum(axis=0) - ident)[None] / K
            cand = _repair(_herm(raw), shape)
            val = _success(rhos, cand, weights)
            if val > best_primal:
                best_primal, best_m = val, cand
        best_dual = min(best_dual, _dual_bound(rhos, weights, u, v, rho, shape))
        # both bounds are certified, so the gap alone decides convergence
        if best_dual - best_primal <= opts.gap_tol:
            status = "converged"
            break
        # residual balancing; rescale the scaled multipliers with rho
        if r_norm > 10 * s_norm:
            rho *= 2.0
            u, v = u / 2.0, v / 2.0
        elif s_norm > 10 * r_norm:
            rho /= 2.0
            u, v = u * 2.0, v * 2.0

    completeness = float(np.linalg.norm(best_m.sum(axis=0) - ident))
    return SdpReport(
        primal_value=float(best_primal),
        dual_bound=float(best_dual),
        iterations=it,
        primal_residual=r_norm,
        dual_residual=s_norm,
        completeness_residual=completeness,
        status=status,
        perfect=bool(best_primal >= 1 - opts.eps_perfect),
        seconds=time.perf_counter() - t0,
        povm=PovmCandidate(best_m),
    )


def ppt_value(inst: DiscriminationInstance, opts: SdpOptions | None = None) -> SdpReport:
    """Best average success over PPT POVMs with uniform priors."""
    return solve_ppt(inst, None, opts)


def ppt_value_for_split(s: StateSet, b: Bipartition, opts: SdpOptions | None = None) -> SdpReport:
    return ppt_value(DiscriminationInstance.from_state_set(s, b), opts)


@dataclass(frozen=True)
class PovmValidation:
    completeness_residual: float
    min_eig: tuple[float, ...]
    min_eig_pt: tuple[float, ...]
    success: float
    feasible: bool


def validate_povm(c: PovmCandidate, inst: DiscriminationInstance, opts: SdpOptions | None = None) -> PovmValidation:
    opts = opts or SdpOptions()
    ms = np.asarray(c.elements, dtype=complex)
    if ms.shape != inst.rhos.shape:
        raise ShapeError(f"candidate shape {ms.shape} differs from instance {inst.rhos.shape}")
    ms = _herm(ms)
    resid = float(np.linalg.norm(ms.sum(axis=0) - np.eye(inst.dim)))
    me = _min_eigs(ms)
    mpt = _min_eigs(_pt(ms, inst.shape))
    feasible = resid <= opts.eps_feas and me.min() >= -opts.eps_psd and mpt.min() >= -opts.eps_psd
    return PovmValidation(
        resid,
        tuple(float(x) for x in me),
        tuple(float(x) for x in mpt),
        _success(inst.rhos, ms, np.full(inst.K, 1.0 / inst.K)),
        bool(feasible),
    )


@dataclass(frozen=True)
class TraceBoundResult:
    passed: bool
    trace: float
    bound: float
    state_success: float
    hypothesis_met: bool
    ppt_feasible: bool


def is_corner_bell(vec: np.ndarray, tol: float = 1e-12) -> bool:
    """Supported exactly on the first and last basis index with weight 1/2 each."""
    vec = np.asarray(vec).reshape(-1)
    mags = np.abs(vec)
    off = np.delete(mags, [0, vec.size - 1])
    return bool(np.all(off <= tol) and abs(mags[0] ** 2 - 0.5) <= tol and abs(mags[-1] ** 2 - 0.5) <= tol)


def trace_bound_check(
    c: PovmCandidate, inst: DiscriminationInstance, k: int, eps: float, opts: SdpOptions | None = None
) -> TraceBoundResult:
    """Check ``Tr(M_k) >= 2(1 - eps) - delta`` for a Bell-type state ``k``.

    For such a state ``rho_k^{T_A} <= I/2``; if ``Tr(rho_k M_k) >= 1 - eps``
    and ``M_k^{T_A} >= -e I`` then ``Tr(M_k) >= 2(1 - eps) - e (d - 2)``.
    ``delta`` uses ``e = eps_psd``. ``k`` is zero-based.
    """
    opts = opts or SdpOptions()
    rho_k = inst.rhos[k]
    w, vecs = np.linalg.eigh(rho_k)
    if abs(w[-1] - 1) > 1e-10 or not is_corner_bell(vecs[:, -1]):
        raise TraceBoundPreconditionError(f"state {k + 1} is not a corner Bell state under this flattening")
    ms = _herm(np.asarray(c.elements, dtype=complex))
    val = validate_povm(c, inst, opts)
    trace = float(np.trace(ms[k]).real)
    succ = float(np.trace(rho_k @ ms[k]).real)
    bound = 2 * (1 - eps) - opts.eps_psd * (inst.dim - 2)
    return TraceBoundResult(trace >= bound, trace, bound, succ, succ >= 1 - eps, val.feasible)
