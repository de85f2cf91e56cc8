"""Exact PPT-indistinguishability certificates for GHZ-pair triples.

For a bipartition S|S', the GHZ pair (|0..0> +- |1..1>)/sqrt(2) flattens to
the Bell pair on the corner subspace span{0_S, 1_S} (x) span{0_S', 1_S'}.
Any third orthogonal state with nonzero weight on that subspace makes the
triple PPT-indistinguishable across S|S'. Certificates are one-sided: an
inapplicable certificate says nothing about distinguishability.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import bipart
from .bipart import Bipartition
from .model import ModelError, StateSet, StateVector, Theorem2Coefficients

OVERLAP_FLOAT_TOL = 1e-12
BELL_FLOAT_TOL = 1e-12

CERTIFIED = "certified-PPT-indistinguishable"
NOT_BELL_PAIR = "inapplicable(not-bell-pair)"
ZERO_OVERLAP = "inapplicable(zero-overlap)"

OVERALL_CERTIFIED = "genuinely-nonlocal-certified"
OVERALL_UNDETERMINED = "undetermined"


class UnsupportedSetError(ModelError):
    """Certificates need exactly three states."""


@dataclass(frozen=True)
class Certificate:
    bipartition: Bipartition
    bell_pair_ok: bool
    overlap_sq: Fraction | float
    verdict: str

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def to_dict(self) -> dict:
        ov = self.overlap_sq
        if isinstance(ov, Fraction):
            ov_out = f"{ov.numerator}/{ov.denominator}"
        else:
            ov_out = float(f"{ov:.12g}")
        return {
            "split": str(self.bipartition),
            "bell_pair_ok": self.bell_pair_ok,
            "overlap_sq": ov_out,
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class NonlocalityReport:
    set_name: str
    set_size: int
    certificates: tuple[Certificate, ...]
    overall: str
    strong_nonlocality: bool

    @property
    def certified(self) -> bool:
        return self.overall == OVERALL_CERTIFIED

    def to_dict(self) -> dict:
        return {
            "set": self.set_name,
            "bipartitions": [c.to_dict() for c in self.certificates],
            "overall": self.overall,
            "strong_nonlocality": self.strong_nonlocality,
        }


def corner_overlap(third: StateVector, b: Bipartition) -> Fraction | float:
    """Squared norm of the projection of ``third`` onto the corner subspace."""
    corners = bipart.corner_subspace(b).strings
    if third.is_exact:
        return sum((third.weight(s) for s in corners), Fraction(0))
    return float(sum(third.weight(s) for s in corners))


def is_ghz_pair(a: StateVector, b: StateVector) -> bool:
    """True iff {a, b} = {(|0..0> + |1..1>)/sqrt2, (|0..0> - |1..1>)/sqrt2}."""
    n = a.num_parties
    zeros, ones = "0" * n, "1" * n
    signs = []
    for s in (a, b):
        if set(s.support) != {zeros, ones}:
            return False
        if s.is_exact:
            z, o = s.terms[zeros], s.terms[ones]
            # amplitude on 0^N must be +1/sqrt2 exactly: z real positive, z^2 = M/2
            if z[1] != 0 or z[0] <= 0 or 2 * z[0] * z[0] != s.norm_sq:
                return False
            if o == z:
                signs.append(1)
            elif o == (-z[0], 0):
                signs.append(-1)
            else:
                return False
        else:
            z, o = s.amplitude(zeros), s.amplitude(ones)
            h = 1 / math.sqrt(2)
            if abs(z - h) > BELL_FLOAT_TOL:
                return False
            if abs(o - h) <= BELL_FLOAT_TOL:
                signs.append(1)
            elif abs(o + h) <= BELL_FLOAT_TOL:
                signs.append(-1)
            else:
                return False
    return sorted(signs) == [-1, 1]


def _require_three(s: StateSet) -> None:
    if len(s) != 3:
        raise UnsupportedSetError(f"certificates need exactly 3 states, got {len(s)}")


def lemma2_certificate(s: StateSet, b: Bipartition) -> Certificate:
    _require_three(s)
    if b.n_parties != s.num_parties:
        raise ModelError("bipartition size differs from the set's party count")
    pair_ok = is_ghz_pair(s[0], s[1])
    ov = corner_overlap(s[2], b)
    positive = ov > 0 if isinstance(ov, Fraction) else ov > OVERLAP_FLOAT_TOL
    if not pair_ok:
        verdict = NOT_BELL_PAIR
    elif not positive:
        verdict = ZERO_OVERLAP
    else:
        verdict = CERTIFIED
    return Certificate(b, pair_ok, ov, verdict)


def certify_all(s: StateSet, splits=None, jobs: int = 1) -> NonlocalityReport:
    """Sweep :func:`lemma2_certificate` over ``splits`` (default: all).

    The verdict is genuine nonlocality only when every bipartition of the
    parties was swept and certified; a three-state genuinely nonlocal set is
    then also strongly nonlocal.
    """
    _require_three(s)
    all_splits = bipart.enumerate_bipartitions(s.num_parties)
    splits = all_splits if splits is None else list(splits)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            certs = tuple(ex.map(lambda b: lemma2_certificate(s, b), splits))
    else:
        certs = tuple(lemma2_certificate(s, b) for b in splits)
    complete = set(splits) == set(all_splits)
    ok = complete and all(c.certified for c in certs)
    return NonlocalityReport(
        s.label,
        len(s),
        certs,
        OVERALL_CERTIFIED if ok else OVERALL_UNDETERMINED,
        ok and len(s) == 3,
    )


@dataclass(frozen=True)
class Theorem2Check:
    passed: bool
    pair_weights: dict[tuple[str, str], Fraction | float]
    violating_pairs: list[tuple[str, str]]


def check_theorem2_condition(coeffs: Theorem2Coefficients) -> Theorem2Check:
    """Combined weight of every reverse pair; passes iff all are positive."""
    weights = {
        (s, t): coeffs.weight(s) + coeffs.weight(t) for s, t in bipart.reverse_pairs(coeffs.num_parties)
    }
    bad = coeffs.violations()
    return Theorem2Check(not bad, weights, bad)
