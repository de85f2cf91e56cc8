"""Bipartitions of N parties and bipartite views of N-party states.

Parties are numbered from 1. A bipartition S|S' is stored as a bitmask with
party ``p`` at bit ``p - 1``; the canonical form always keeps party 1 in S,
so each split is represented exactly once.

Flattening convention: the row index of a basis string is the mixed-radix,
big-endian number formed by its digits on the S parties (ascending party
order); the column index is formed the same way from the S' parties.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .qcore import BipartiteShape


class BipartitionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Bipartition:
    n_parties: int
    mask: int

    def __post_init__(self):
        full = (1 << self.n_parties) - 1
        if self.n_parties < 2:
            raise BipartitionError("a bipartition needs at least 2 parties")
        if not 0 < self.mask < full:
            raise BipartitionError(f"mask {self.mask:#b} is not a proper nonempty subset")
        if not self.mask & 1:
            raise BipartitionError("canonical bipartitions keep party 1 on the left")

    @classmethod
    def from_parties(cls, n_parties: int, parties: Sequence[int]) -> "Bipartition":
        """Build from either side's party list, canonicalizing orientation."""
        mask = 0
        for p in parties:
            if not 1 <= p <= n_parties:
                raise BipartitionError(f"party {p} out of range 1..{n_parties}")
            mask |= 1 << (p - 1)
        full = (1 << n_parties) - 1
        if 0 < mask < full and not mask & 1:
            mask = full ^ mask
        return cls(n_parties, mask)

    @classmethod
    def parse(cls, text: str, n_parties: int) -> "Bipartition":
        """Parse ``"1,2|3,4"``, ``"1,2"`` (left side only), or a mask literal
        such as ``"0b0011"`` / ``"mask:3"``."""
        text = text.strip()
        if text.startswith("mask:"):
            mask = int(text[5:], 0)
            return cls.from_parties(n_parties, [p for p in range(1, n_parties + 1) if mask >> (p - 1) & 1])
        if re.fullmatch(r"0[bBxX][0-9a-fA-F]+", text):
            mask = int(text, 0)
            return cls.from_parties(n_parties, [p for p in range(1, n_parties + 1) if mask >> (p - 1) & 1])
        left_text, _, right_text = text.partition("|")
        try:
            left = [int(t) for t in left_text.split(",") if t.strip()]
            right = [int(t) for t in right_text.split(",") if t.strip()]
        except ValueError:
            raise BipartitionError(f"cannot parse bipartition {text!r}") from None
        b = cls.from_parties(n_parties, left)
        if right_text and sorted(set(left) | set(right)) != list(range(1, n_parties + 1)):
            raise BipartitionError(f"{text!r} does not split parties 1..{n_parties}")
        if right_text and set(left) & set(right):
            raise BipartitionError(f"{text!r} lists a party on both sides")
        return b

    @property
    def left(self) -> tuple[int, ...]:
        return tuple(p for p in range(1, self.n_parties + 1) if self.mask >> (p - 1) & 1)

    @property
    def right(self) -> tuple[int, ...]:
        return tuple(p for p in range(1, self.n_parties + 1) if not self.mask >> (p - 1) & 1)

    def side_of(self, party: int) -> str:
        return "left" if self.mask >> (party - 1) & 1 else "right"

    def __str__(self) -> str:
        return ",".join(map(str, self.left)) + "|" + ",".join(map(str, self.right))

    def letters(self) -> str:
        """Party-letter form, e.g. ``AB|C``."""
        abc = lambda ps: "".join(chr(ord("A") + p - 1) for p in ps)  # noqa: E731
        return f"{abc(self.left)}|{abc(self.right)}"


def enumerate_bipartitions(n_parties: int) -> list[Bipartition]:
    """All ``2**(N-1) - 1`` canonical bipartitions in ascending mask order."""
    if n_parties < 2:
        raise BipartitionError("need N >= 2")
    full = (1 << n_parties) - 1
    return [Bipartition(n_parties, mask) for mask in range(1, full, 2)]


def reverse(bits: str) -> str:
    """Bit-wise reverse (complement) of a binary string."""
    if set(bits) - {"0", "1"}:
        raise BipartitionError(f"{bits!r} is not a binary string")
    return bits.translate(str.maketrans("01", "10"))


def nonconstant_strings(n_parties: int) -> list[str]:
    """The set P: binary strings of length N other than 0...0 and 1...1."""
    return ["".join(t) for t in itertools.product("01", repeat=n_parties) if len(set(t)) == 2]


def reverse_pairs(n_parties: int) -> list[tuple[str, str]]:
    """Pairs ``(s, reverse(s))`` of P with ``s`` starting with 0, ordered by
    the bipartition each pair names."""
    pairs = [(s, reverse(s)) for s in nonconstant_strings(n_parties) if s[0] == "0"]
    return sorted(pairs, key=lambda pr: pair_to_bipartition(pr[0]).mask)


def pair_to_bipartition(bits: str) -> Bipartition:
    """The bipartition separating the zeros of ``bits`` from its ones.

    ``bits`` and its reverse map to the same bipartition.
    """
    if set(bits) - {"0", "1"}:
        raise BipartitionError(f"{bits!r} is not a binary string")
    if len(set(bits)) != 2:
        raise BipartitionError(f"{bits!r} is constant; it names no bipartition")
    same_as_first = [i + 1 for i, c in enumerate(bits) if c == bits[0]]
    return Bipartition.from_parties(len(bits), same_as_first)


@dataclass(frozen=True)
class FlattenedState:
    shape: BipartiteShape
    matrix: np.ndarray

    @property
    def vector(self) -> np.ndarray:
        """Row-major vectorization; matches ``kron(left, right)`` ordering."""
        return self.matrix.reshape(-1)


def _radix_index(digits: Sequence[int], dims: Sequence[int]) -> int:
    idx = 0
    for d, base in zip(digits, dims):
        idx = idx * base + d
    return idx


def side_dims(local_dims: Sequence[int], b: Bipartition) -> BipartiteShape:
    m = math.prod(local_dims[p - 1] for p in b.left)
    n = math.prod(local_dims[p - 1] for p in b.right)
    return BipartiteShape(m, n)


def split_index(bits: str, local_dims: Sequence[int], b: Bipartition) -> tuple[int, int]:
    """(row, column) of a basis string under the flattening for ``b``."""
    left, right = b.left, b.right
    row = _radix_index([int(bits[p - 1]) for p in left], [local_dims[p - 1] for p in left])
    col = _radix_index([int(bits[p - 1]) for p in right], [local_dims[p - 1] for p in right])
    return row, col


def side_labels(local_dims: Sequence[int], parties: Sequence[int]) -> list[str]:
    """Digit strings labelling one side's basis, in flattening order."""
    ranges = [range(local_dims[p - 1]) for p in parties]
    return ["".join(map(str, t)) for t in itertools.product(*ranges)]


def flatten(state, b: Bipartition) -> FlattenedState:
    """Coefficient matrix of ``state`` with rows on S and columns on S'."""
    if state.num_parties != b.n_parties:
        raise BipartitionError(
            f"state has {state.num_parties} parties, bipartition has {b.n_parties}"
        )
    shape = side_dims(state.local_dims, b)
    mat = np.zeros(shape, dtype=complex)
    for bits in state.support:
        r, c = split_index(bits, state.local_dims, b)
        mat[r, c] = state.amplitude(bits)
    return FlattenedState(shape, mat)


@dataclass(frozen=True)
class CornerSubspace:
    """The embedded 2x2 subspace span{0_S, 1_S} (x) span{0_S', 1_S'}.

    ``strings`` is ordered (0_S 0_S', 0_S 1_S', 1_S 0_S', 1_S 1_S').
    """

    bipartition: Bipartition
    strings: tuple[str, str, str, str]


def corner_subspace(b: Bipartition) -> CornerSubspace:
    out = []
    for x, y in ((0, 0), (0, 1), (1, 0), (1, 1)):
        out.append("".join(str(x if b.side_of(p) == "left" else y) for p in range(1, b.n_parties + 1)))
    return CornerSubspace(b, tuple(out))


def iter_splits(n_parties: int, split: str | None = None) -> Iterator[Bipartition]:
    """Either the single parsed ``split`` or every bipartition."""
    if split is None:
        yield from enumerate_bipartitions(n_parties)
    else:
        yield Bipartition.parse(split, n_parties)
