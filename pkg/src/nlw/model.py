"""N-party pure states, orthogonal state sets, and the named set families.

Two backends share one class:

* exact: Gaussian-integer numerators ``c_s`` with one squared norm
  ``M = sum |c_s|^2``; the state is ``(1/sqrt(M)) sum_s c_s |s>``.
* float: complex amplitudes normalized to 1 within ``1e-12``.

Basis strings are big-endian: party 1 is the leftmost digit.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import bipart
from .bipart import Bipartition, reverse_pairs

NORM_TOL = 1e-12
ORTHO_TOL = 1e-10
RANK_TOL = 1e-8
PAIR_WEIGHT_FLOAT_TOL = 1e-18


class ModelError(ValueError):
    pass


class DimensionMismatchError(ModelError):
    pass


class NotNormalizedError(ModelError):
    pass


class NonOrthogonalError(ModelError):
    pass


class CertificatePreconditionError(ModelError):
    """Third-state coefficients violate the reverse-pair support condition."""

    def __init__(self, message: str, pairs: Sequence[tuple[str, str]] = ()):
        super().__init__(message)
        self.pairs = list(pairs)


def _gauss(c) -> tuple[int, int]:
    if isinstance(c, tuple):
        re_, im_ = c
    elif isinstance(c, complex):
        re_, im_ = c.real, c.imag
    else:
        re_, im_ = c, 0
    if int(re_) != re_ or int(im_) != im_:
        raise ModelError(f"exact numerator {c!r} is not a Gaussian integer")
    return int(re_), int(im_)


@dataclass(frozen=True)
class StateVector:
    """A pure state on ``len(local_dims)`` parties.

    Use :meth:`exact` or :meth:`from_amplitudes` rather than the raw
    constructor.
    """

    local_dims: tuple[int, ...]
    terms: Mapping[str, object]
    norm_sq: int | None = None

    def __post_init__(self):
        n = len(self.local_dims)
        if n < 1 or any(d < 2 for d in self.local_dims):
            raise ModelError(f"invalid local dims {self.local_dims}")
        if any(d > 10 for d in self.local_dims):
            raise ModelError("local dimensions above 10 have no single-digit basis labels")
        for bits in self.terms:
            if len(bits) != n:
                raise DimensionMismatchError(f"basis string {bits!r} has length {len(bits)}, expected {n}")
            for p, ch in enumerate(bits):
                if not ch.isdigit() or int(ch) >= self.local_dims[p]:
                    raise ModelError(f"digit {ch!r} of {bits!r} out of range for party {p + 1}")
        if self.norm_sq is None:
            total = sum(abs(a) ** 2 for a in self.terms.values())
            if abs(total - 1.0) > NORM_TOL:
                raise NotNormalizedError(f"squared norm {total!r} differs from 1")
        else:
            total = sum(re_ * re_ + im_ * im_ for re_, im_ in self.terms.values())
            if total != self.norm_sq or total == 0:
                raise NotNormalizedError(f"numerators have squared norm {total}, declared {self.norm_sq}")

    @classmethod
    def exact(cls, numerators: Mapping[str, object], local_dims: Sequence[int] | None = None) -> "StateVector":
        """Exact state from integer (or Gaussian-integer) numerators; the
        normalization is inferred."""
        terms = {}
        for bits, c in sorted(numerators.items()):
            g = _gauss(c)
            if g != (0, 0):
                terms[bits] = g
        if not terms:
            raise NotNormalizedError("zero vector")
        dims = tuple(local_dims) if local_dims is not None else (2,) * len(next(iter(terms)))
        norm_sq = sum(a * a + b * b for a, b in terms.values())
        return cls(dims, terms, norm_sq)

    @classmethod
    def from_amplitudes(
        cls, amplitudes: Mapping[str, complex], local_dims: Sequence[int] | None = None, normalize: bool = False
    ) -> "StateVector":
        terms = {bits: complex(a) for bits, a in sorted(amplitudes.items()) if a != 0}
        if not terms:
            raise NotNormalizedError("zero vector")
        if normalize:
            nrm = math.sqrt(sum(abs(a) ** 2 for a in terms.values()))
            terms = {k: a / nrm for k, a in terms.items()}
        dims = tuple(local_dims) if local_dims is not None else (2,) * len(next(iter(terms)))
        return cls(dims, terms, None)

    @property
    def num_parties(self) -> int:
        return len(self.local_dims)

    @property
    def is_exact(self) -> bool:
        return self.norm_sq is not None

    @property
    def backend(self) -> str:
        return "exact" if self.is_exact else "float"

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(self.terms)

    @property
    def dim(self) -> int:
        return math.prod(self.local_dims)

    def amplitude(self, bits: str) -> complex:
        if bits not in self.terms:
            return 0j
        if self.is_exact:
            re_, im_ = self.terms[bits]
            return complex(re_, im_) / math.sqrt(self.norm_sq)
        return self.terms[bits]

    def weight(self, bits: str):
        """|amplitude|^2, as a Fraction on the exact backend."""
        if self.is_exact:
            re_, im_ = self.terms.get(bits, (0, 0))
            return Fraction(re_ * re_ + im_ * im_, self.norm_sq)
        return abs(self.amplitude(bits)) ** 2

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.dim, dtype=complex)
        for bits in self.terms:
            idx = 0
            for ch, d in zip(bits, self.local_dims):
                idx = idx * d + int(ch)
            out[idx] = self.amplitude(bits)
        return out

    def to_float(self) -> "StateVector":
        if not self.is_exact:
            return self
        return StateVector(self.local_dims, {k: self.amplitude(k) for k in self.terms}, None)

    def embed(self, local_dims: Sequence[int]) -> "StateVector":
        """Same amplitudes viewed in larger local dimensions (zero padded)."""
        local_dims = tuple(local_dims)
        if len(local_dims) != self.num_parties or any(a < b for a, b in zip(local_dims, self.local_dims)):
            raise DimensionMismatchError(f"cannot embed {self.local_dims} into {local_dims}")
        return StateVector(local_dims, dict(self.terms), self.norm_sq)


def _check_compatible(a: StateVector, b: StateVector) -> None:
    if a.local_dims != b.local_dims:
        raise DimensionMismatchError(f"local dims {a.local_dims} vs {b.local_dims}")


def exact_inner_numerator(a: StateVector, b: StateVector) -> tuple[int, int]:
    """Gaussian-integer numerator of <a|b> for two exact states."""
    _check_compatible(a, b)
    re_sum = im_sum = 0
    for bits, (br, bi) in b.terms.items():
        if bits in a.terms:
            ar, ai = a.terms[bits]
            # conj(a) * b
            re_sum += ar * br + ai * bi
            im_sum += ar * bi - ai * br
    return re_sum, im_sum


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b> (conjugate-linear in ``a``)."""
    _check_compatible(a, b)
    if a.is_exact and b.is_exact:
        re_, im_ = exact_inner_numerator(a, b)
        return complex(re_, im_) / math.sqrt(a.norm_sq * b.norm_sq)
    return sum((a.amplitude(k).conjugate() * b.amplitude(k) for k in b.terms if k in a.terms), 0j)


def is_orthogonal(a: StateVector, b: StateVector, tol: float = ORTHO_TOL) -> bool:
    if a.is_exact and b.is_exact:
        return exact_inner_numerator(a, b) == (0, 0)
    return abs(inner_product(a, b)) <= tol


@dataclass(frozen=True)
class StateSet:
    states: tuple[StateVector, ...]
    names: tuple[str, ...]
    label: str = "set"

    def __post_init__(self):
        if not self.states:
            raise ModelError("empty state set")
        if len(self.names) != len(self.states):
            raise ModelError("one name per state required")
        dims = self.states[0].local_dims
        for s in self.states[1:]:
            if s.local_dims != dims:
                raise DimensionMismatchError("states in a set must share local dimensions")
        for (i, a), (j, b) in itertools.combinations(enumerate(self.states), 2):
            if not is_orthogonal(a, b):
                raise NonOrthogonalError(f"states {self.names[i]} and {self.names[j]} are not orthogonal")

    @classmethod
    def of(cls, states: Iterable[StateVector], names: Iterable[str] | None = None, label: str = "set") -> "StateSet":
        states = tuple(states)
        names = tuple(names) if names is not None else tuple(f"s{i + 1}" for i in range(len(states)))
        return cls(states, names, label)

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, i) -> StateVector:
        return self.states[i]

    @property
    def num_parties(self) -> int:
        return self.states[0].num_parties

    @property
    def local_dims(self) -> tuple[int, ...]:
        return self.states[0].local_dims

    @property
    def is_exact(self) -> bool:
        return all(s.is_exact for s in self.states)

    def subset(self, indices: Sequence[int], label: str | None = None) -> "StateSet":
        return StateSet(
            tuple(self.states[i] for i in indices),
            tuple(self.names[i] for i in indices),
            label or f"{self.label}[{','.join(str(i + 1) for i in indices)}]",
        )


# ---------------------------------------------------------------- generators


def _ghz_pair(n: int) -> tuple[StateVector, StateVector]:
    zeros, ones = "0" * n, "1" * n
    return StateVector.exact({zeros: 1, ones: 1}), StateVector.exact({zeros: 1, ones: -1})


def gen_bell_triple() -> StateSet:
    b1, b2 = _ghz_pair(2)
    b3 = StateVector.exact({"01": 1, "10": 1})
    return StateSet((b1, b2, b3), ("beta1", "beta2", "beta3"), "bell")


def gen_ghosh_set() -> StateSet:
    b1, b2 = _ghz_pair(2)
    return StateSet((b1, b2, StateVector.exact({"01": 1})), ("beta1", "beta2", "alpha3"), "ghosh")


def gen_eq2(n: int, left_party: int, right_party: int, split: Bipartition) -> StateSet:
    """Bell triple on parties ``(left_party, right_party)``, |0> elsewhere.

    The two parties must sit on opposite sides of ``split``; since ``split``
    is canonical, either may be the one in S.
    """
    if n < 3:
        raise ModelError("eq2 sets need N >= 3")
    if split.n_parties != n:
        raise DimensionMismatchError("bipartition size differs from N")
    if left_party == right_party or split.side_of(left_party) == split.side_of(right_party):
        raise ModelError(f"parties {left_party} and {right_party} must lie on opposite sides of {split}")

    def place(pattern: Mapping[str, int]) -> StateVector:
        out = {}
        for two, c in pattern.items():
            bits = ["0"] * n
            bits[left_party - 1], bits[right_party - 1] = two[0], two[1]
            out["".join(bits)] = c
        return StateVector.exact(out)

    states = (place({"00": 1, "11": 1}), place({"00": 1, "11": -1}), place({"01": 1, "10": 1}))
    return StateSet(states, ("beta1_LR", "beta2_LR", "beta3_LR"), f"eq2_n{n}_L{left_party}R{right_party}")


def gen_eq3(n: int, split: Bipartition) -> StateSet:
    if n < 3:
        raise ModelError("eq3 sets need N >= 3")
    if split.n_parties != n:
        raise DimensionMismatchError("bipartition size differs from N")
    g1, g2 = _ghz_pair(n)
    s = "".join("0" if split.side_of(p) == "left" else "1" for p in range(1, n + 1))
    psi3 = StateVector.exact({s: 1, bipart.reverse(s): 1})
    return StateSet((g1, g2, psi3), ("psi1", "psi2", "psi3"), f"eq3_n{n}_{split}")


_W_LIKE_4 = ("0001", "0010", "0100", "1000", "0011", "0101", "0110")


def gen_example1(n: int) -> StateSet:
    g1, g2 = _ghz_pair(n)
    if n == 3:
        third = StateVector.exact({"001": 1, "010": 1, "100": 1})
        names = ("varphi1", "varphi2", "varphi3")
    elif n == 4:
        third = StateVector.exact({s: 1 for s in _W_LIKE_4})
        names = ("phi1", "phi2", "phi3")
    else:
        raise ModelError("example1 is defined for N = 3 or 4")
    return StateSet((g1, g2, third), names, f"example1_n{n}")


def gen_example2(n: int) -> StateSet:
    if n not in (3, 4):
        raise ModelError("example2 is defined for N = 3 or 4")
    s = gen_theorem1(n)
    names = ("varphi1", "varphi2", "varphi3'") if n == 3 else ("phi1", "phi2", "phi3'")
    return StateSet(s.states, names, f"example2_n{n}")


def gen_theorem1(n: int) -> StateSet:
    """GHZ pair plus the uniform superposition over all nonconstant strings."""
    if n < 3:
        raise ModelError("theorem1 sets need N >= 3")
    g1, g2 = _ghz_pair(n)
    third = StateVector.exact({s: 1 for s in bipart.nonconstant_strings(n)})
    return StateSet((g1, g2, third), ("Gamma1", "Gamma2", "Gamma3"), f"theorem1_n{n}")


@dataclass(frozen=True)
class Theorem2Coefficients:
    """Coefficients of the third state over nonconstant strings.

    With ``norm_sq`` set, ``values`` are Gaussian-integer numerators and the
    coefficients are ``value / sqrt(norm_sq)``; otherwise they are complex
    floats whose squared magnitudes sum to 1.
    """

    values: Mapping[str, object]
    norm_sq: int | None = None
    num_parties: int = field(init=False)

    def __post_init__(self):
        if not self.values:
            raise ModelError("no coefficients given")
        lengths = {len(k) for k in self.values}
        if len(lengths) != 1:
            raise DimensionMismatchError("coefficient strings of mixed length")
        n = lengths.pop()
        object.__setattr__(self, "num_parties", n)
        for bits in self.values:
            if set(bits) - {"0", "1"}:
                raise ModelError(f"{bits!r} is not a qubit basis string")
            if len(set(bits)) == 1:
                raise ModelError(f"coefficient on constant string {bits!r}; the third state must avoid 0^N and 1^N")
        # normalization is checked when the state is built
        self.to_state()

    @classmethod
    def uniform(cls, strings: Iterable[str]) -> "Theorem2Coefficients":
        strings = list(dict.fromkeys(strings))
        return cls({s: 1 for s in strings}, len(strings))

    def weight(self, bits: str):
        if self.norm_sq is not None:
            re_, im_ = _gauss(self.values.get(bits, 0))
            return Fraction(re_ * re_ + im_ * im_, self.norm_sq)
        return abs(complex(self.values.get(bits, 0))) ** 2

    def to_state(self) -> StateVector:
        if self.norm_sq is not None:
            state = StateVector.exact(self.values)
            if state.norm_sq != self.norm_sq:
                raise NotNormalizedError(
                    f"numerators have squared norm {state.norm_sq}, declared {self.norm_sq}"
                )
            return state
        return StateVector.from_amplitudes({k: complex(v) for k, v in self.values.items()})

    def violations(self) -> list[tuple[str, str]]:
        """Reverse pairs whose combined weight is zero."""
        out = []
        for s, t in reverse_pairs(self.num_parties):
            total = self.weight(s) + self.weight(t)
            if (total == 0) if self.norm_sq is not None else (total <= PAIR_WEIGHT_FLOAT_TOL):
                out.append((s, t))
        return out


def gen_theorem2(n: int, coeffs: Theorem2Coefficients) -> StateSet:
    if n < 3:
        raise ModelError("theorem2 sets need N >= 3")
    if coeffs.num_parties != n:
        raise DimensionMismatchError(f"coefficients are on {coeffs.num_parties} parties, expected {n}")
    bad = coeffs.violations()
    if bad:
        listed = ", ".join("{%s,%s}" % p for p in bad)
        raise CertificatePreconditionError(f"reverse pairs with zero weight: {listed}", bad)
    g1, g2 = _ghz_pair(n)
    return StateSet((g1, g2, coeffs.to_state()), ("Gamma1", "Gamma2", "Gamma3'"), f"theorem2_n{n}")


# -------------------------------------------------------- genuine entanglement


@dataclass(frozen=True)
class EntanglementVerdict:
    genuine: bool
    ranks: dict[Bipartition, int]


def schmidt_rank(state: StateVector, b: Bipartition, tol: float = RANK_TOL) -> int:
    sv = np.linalg.svd(bipart.flatten(state, b).matrix, compute_uv=False)
    return int(np.sum(sv > tol))


def is_genuinely_entangled(state: StateVector, tol: float = RANK_TOL) -> EntanglementVerdict:
    """Entangled across every bipartition (reduced-state rank >= 2 on each)."""
    ranks = {b: schmidt_rank(state, b, tol) for b in bipart.enumerate_bipartitions(state.num_parties)}
    return EntanglementVerdict(all(r >= 2 for r in ranks.values()), ranks)


# ------------------------------------------------------------------ file I/O


def state_set_to_dict(s: StateSet) -> dict:
    states = []
    for name, st in zip(s.names, s.states):
        if st.is_exact:
            terms = [{"bits": k, "num_re": re_, "num_im": im_} for k, (re_, im_) in st.terms.items()]
            states.append({"name": name, "terms": terms, "norm_sq": st.norm_sq})
        else:
            terms = [{"bits": k, "amp": [a.real, a.imag]} for k, a in st.terms.items()]
            states.append({"name": name, "terms": terms})
    return {"name": s.label, "num_parties": s.num_parties, "local_dims": list(s.local_dims), "states": states}


def state_set_from_dict(doc: Mapping) -> StateSet:
    try:
        n = int(doc["num_parties"])
        dims = tuple(int(d) for d in doc.get("local_dims", [2] * n))
        raw_states = doc["states"]
    except (KeyError, TypeError) as exc:
        raise ModelError(f"malformed state-set document: {exc}") from None
    if len(dims) != n:
        raise DimensionMismatchError("local_dims length differs from num_parties")
    states, names = [], []
    for i, entry in enumerate(raw_states):
        terms = entry.get("terms", [])
        for t in terms:
            if len(t["bits"]) != n:
                raise DimensionMismatchError(f"basis string {t['bits']!r} has wrong length")
        if "norm_sq" in entry:
            nums = {t["bits"]: (int(t.get("num_re", 0)), int(t.get("num_im", 0))) for t in terms}
            nums = {k: v for k, v in nums.items() if v != (0, 0)}
            st = StateVector(dims, dict(sorted(nums.items())), int(entry["norm_sq"]))
        else:
            amps = {t["bits"]: complex(*t["amp"]) for t in terms}
            st = StateVector(dims, {k: v for k, v in sorted(amps.items()) if v != 0}, None)
        states.append(st)
        names.append(entry.get("name", f"s{i + 1}"))
    return StateSet(tuple(states), tuple(names), doc.get("name", "set"))


def save_state_set(s: StateSet, path) -> None:
    Path(path).write_text(json.dumps(state_set_to_dict(s), indent=2) + "\n")


def load_state_set(path) -> StateSet:
    return state_set_from_dict(json.loads(Path(path).read_text()))

