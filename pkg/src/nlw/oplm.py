"""Orthogonality-preserving local measurements (OPLM).

A local POVM element ``E`` on one side keeps the post-measurement states
pairwise orthogonal iff ``<psi_i|(E (x) I)|psi_j> = 0`` for ``i != j``. The
condition is linear in the Hermitian operator, so the admissible operators
form a real vector space that always contains the identity. When that space
is one-dimensional every orthogonality-preserving measurement on that side
is trivial (TOPLM): a nontrivial solution ``H`` would give the nontrivial
PSD element ``I + eps H``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import bipart
from .bipart import Bipartition
from .model import NonOrthogonalError, StateSet, is_orthogonal
from .witness import NonlocalityReport, UnsupportedSetError

RANK_RTOL = 1e-9
# constraint entries are O(1); below this a singular value is roundoff
RANK_ATOL = 1e-12


def hermitian_basis(d: int, normalized: bool = True) -> list[np.ndarray]:
    """Real basis of d x d Hermitian matrices (Frobenius-orthonormal when
    ``normalized``; integer entries otherwise)."""
    out = []
    scale = 1 / np.sqrt(2) if normalized else 1.0
    for j in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[j, j] = 1
        out.append(e)
    for j, k in itertools.combinations(range(d), 2):
        e = np.zeros((d, d), dtype=complex)
        e[j, k] = e[k, j] = scale
        out.append(e)
        e = np.zeros((d, d), dtype=complex)
        e[j, k], e[k, j] = 1j * scale, -1j * scale
        out.append(e)
    return out


def _gram_blocks(mats: list[np.ndarray], side: str) -> list[np.ndarray]:
    """``G`` per ordered pair i < j with ``<psi_i|H|psi_j> = sum(H * G)``."""
    blocks = []
    for a, b in itertools.combinations(mats, 2):
        if side == "left":
            blocks.append(np.conj(a) @ b.T)
        else:
            blocks.append(np.conj(a).T @ b)
    return blocks


def _constraint_matrix(blocks: list[np.ndarray], basis: list[np.ndarray]) -> np.ndarray:
    rows = []
    for g in blocks:
        vals = np.array([np.sum(h * g) for h in basis])
        rows.append(vals.real)
        rows.append(vals.imag)
    return np.array(rows).reshape(len(rows), len(basis))


@dataclass(frozen=True)
class OplmSpace:
    bipartition: Bipartition
    side: str
    local_dim: int
    dimension: int
    basis: tuple[np.ndarray, ...]

    @property
    def trivial(self) -> bool:
        return self.dimension == 1


def _side_matrices(s: StateSet, b: Bipartition) -> list[np.ndarray]:
    return [bipart.flatten(st, b).matrix for st in s.states]


def _exact_rank(s: StateSet, b: Bipartition, side: str) -> tuple[int, list]:
    """Rank and rational nullspace of the integer constraint system.

    Each pair's constraint is the float one times sqrt(M_i M_j), so it can be
    built from the integer numerators alone.
    """
    import sympy

    shape = bipart.side_dims(s.local_dims, b)
    d = shape.m if side == "left" else shape.n
    nums = []
    for st in s.states:
        mat = [[0] * shape.n for _ in range(shape.m)]
        for bits, (re_, im_) in st.terms.items():
            r, c = bipart.split_index(bits, s.local_dims, b)
            mat[r][c] = sympy.Integer(re_) + sympy.I * im_
        nums.append(sympy.Matrix(mat))
    basis = []
    for j in range(d):
        e = sympy.zeros(d, d)
        e[j, j] = 1
        basis.append(e)
    for j, k in itertools.combinations(range(d), 2):
        e = sympy.zeros(d, d)
        e[j, k] = e[k, j] = 1
        basis.append(e)
        e = sympy.zeros(d, d)
        e[j, k], e[k, j] = sympy.I, -sympy.I
        basis.append(e)
    rows = []
    for a, bm in itertools.combinations(nums, 2):
        g = a.conjugate() * bm.T if side == "left" else a.H * bm
        vals = [sympy.expand(sum((h[i, j] * g[i, j] for i in range(d) for j in range(d)), sympy.Integer(0))) for h in basis]
        rows.append([sympy.re(v) for v in vals])
        rows.append([sympy.im(v) for v in vals])
    if not rows:
        return 0, [sympy.eye(len(basis))[:, i] for i in range(len(basis))]
    mat = sympy.Matrix(rows)
    return mat.rank(), mat.nullspace()


def oplm_space(s: StateSet, b: Bipartition, side: str = "left", exact: bool = False) -> OplmSpace:
    """Hermitian operators on one side of ``b`` preserving pairwise orthogonality.

    ``exact=True`` solves the linear system over the rationals (exact
    states only) and returns a basis built from the rational nullspace.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    for a, c in itertools.combinations(s.states, 2):
        if not is_orthogonal(a, c):
            raise NonOrthogonalError("OPLM analysis needs a pairwise orthogonal set")
    shape = bipart.side_dims(s.local_dims, b)
    d = shape.m if side == "left" else shape.n
    if exact:
        if not s.is_exact:
            raise ValueError("exact OPLM analysis needs exact-backend states")
        _, null = _exact_rank(s, b, side)
        raw = hermitian_basis(d, normalized=False)
        mats = [sum((complex(vec[t]) * raw[t] for t in range(len(raw))), np.zeros((d, d), complex)) for vec in null]
        return OplmSpace(b, side, d, len(null), _orthonormalize(mats))

    basis = hermitian_basis(d)
    blocks = _gram_blocks(_side_matrices(s, b), side)
    a = _constraint_matrix(blocks, basis) if blocks else np.zeros((0, len(basis)))
    _, sv, vt = np.linalg.svd(a) if a.size else (None, np.zeros(0), np.eye(len(basis)))
    top = sv[0] if sv.size else 0.0
    rank = int(np.sum(sv > max(RANK_RTOL * top, RANK_ATOL)))
    null = vt[rank:]
    mats = tuple(sum((c * h for c, h in zip(vec, basis)), np.zeros((d, d), complex)) for vec in null)
    return OplmSpace(b, side, d, len(mats), mats)


def _orthonormalize(mats: list[np.ndarray]) -> tuple[np.ndarray, ...]:
    if not mats:
        return ()
    d = mats[0].shape[0]
    basis = hermitian_basis(d)
    coords = np.array([[np.vdot(h, m).real for h in basis] for m in mats]).T
    q, _ = np.linalg.qr(coords)
    return tuple(sum((c * h for c, h in zip(col, basis)), np.zeros((d, d), complex)) for col in q.T)


def oplm_party_space(s: StateSet, party: int, exact: bool = False) -> OplmSpace:
    """OPLM space for a single party, all other parties joined."""
    b = Bipartition.from_parties(s.num_parties, [party])
    return oplm_space(s, b, b.side_of(party), exact=exact)


def constraint_residual(s: StateSet, space: OplmSpace) -> float:
    mats = _side_matrices(s, space.bipartition)
    worst = 0.0
    for h in space.basis:
        for g in _gram_blocks(mats, space.side):
            worst = max(worst, abs(np.sum(h * g)))
    return worst


@dataclass(frozen=True)
class ToplmVerdict:
    bipartition: Bipartition
    left_dim: int
    right_dim: int

    @property
    def trivial_left(self) -> bool:
        return self.left_dim == 1

    @property
    def trivial_right(self) -> bool:
        return self.right_dim == 1

    @property
    def irreducibility_evidence(self) -> bool:
        """Both sides admit only trivial OPLMs."""
        return self.trivial_left and self.trivial_right

    def to_dict(self) -> dict:
        return {
            "split": str(self.bipartition),
            "left_dim": self.left_dim,
            "right_dim": self.right_dim,
            "trivial_left": self.trivial_left,
            "trivial_right": self.trivial_right,
        }


def toplm_verdict(s: StateSet, b: Bipartition, exact: bool = False) -> ToplmVerdict:
    left = oplm_space(s, b, "left", exact=exact)
    right = oplm_space(s, b, "right", exact=exact)
    return ToplmVerdict(b, left.dimension, right.dimension)


@dataclass(frozen=True)
class StrongNonlocalityVerdict:
    genuinely_nonlocal: bool
    strongly_nonlocal: bool
    provenance: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "genuinely_nonlocal": self.genuinely_nonlocal,
            "strongly_nonlocal": self.strongly_nonlocal,
            "provenance": list(self.provenance),
        }


def lemma1_combiner(report: NonlocalityReport) -> StrongNonlocalityVerdict:
    """Lift an all-bipartition PPT-indistinguishability certificate of a
    three-state set to strong nonlocality."""
    if report.set_size != 3:
        raise UnsupportedSetError(f"the three-state lifting needs exactly 3 states, got {report.set_size}")
    if not report.certified:
        pending = [str(c.bipartition) for c in report.certificates if not c.certified]
        return StrongNonlocalityVerdict(
            False, False, (f"no claim: bipartitions without certificate: {', '.join(pending) or 'not swept'}",)
        )
    n = len(report.certificates)
    steps = (
        f"PPT-indistinguishable across all {n} bipartitions (corner-subspace certificates)",
        "PPT-indistinguishable => LOCC-indistinguishable across each bipartition => genuinely nonlocal",
        "three locally indistinguishable orthogonal pure states are locally irreducible",
        "locally irreducible across every bipartition => strongly nonlocal",
    )
    return StrongNonlocalityVerdict(True, True, steps)
