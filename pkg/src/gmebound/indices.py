"""Multi-index arithmetic, bipartitions, and the pair-permutation operator.

Conventions used throughout the package:

* parties are 1-based, ``1 .. n``;
* a basis index is a length-``n`` digit tuple over ``{0 .. d-1}``, big-endian
  (leftmost digit = party 1), written as a bare digit string like ``"0011"``;
* a bipartition gamma|gamma-bar is canonically represented by the side that
  contains party 1, so there are ``2**(n-1) - 1`` of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidInputError


@dataclass(frozen=True, order=True)
class MultiIndex:
    """A computational-basis label: n digits, each in [0, d)."""

    digits: tuple[int, ...]
    d: int

    def __post_init__(self) -> None:
        if self.d < 2:
            raise InvalidInputError(f"local dimension must be >= 2, got {self.d}")
        if not self.digits:
            raise InvalidInputError("empty digit tuple")
        if any(not (0 <= x < self.d) for x in self.digits):
            raise InvalidInputError(f"digits {self.digits} out of range for d={self.d}")

    @property
    def n(self) -> int:
        return len(self.digits)

    @property
    def rank(self) -> int:
        """Integer position in [0, d**n) under big-endian base-d encoding."""
        r = 0
        for x in self.digits:
            r = r * self.d + x
        return r

    @classmethod
    def from_rank(cls, rank: int, n: int, d: int) -> "MultiIndex":
        if not (0 <= rank < d**n):
            raise InvalidInputError(f"rank {rank} out of range for n={n}, d={d}")
        digits = []
        for _ in range(n):
            digits.append(rank % d)
            rank //= d
        return cls(tuple(reversed(digits)), d)

    @classmethod
    def from_string(cls, text: str, d: int, n: int | None = None) -> "MultiIndex":
        """Parse a bare digit string such as "0011"."""
        if n is not None and len(text) != n:
            raise InvalidInputError(f"index '{text}' has length {len(text)}, expected {n}")
        try:
            digits = tuple(int(ch) for ch in text)
        except ValueError as exc:
            raise InvalidInputError(f"index '{text}' contains a non-digit") from exc
        return cls(digits, d)

    def __str__(self) -> str:
        return "".join(str(x) for x in self.digits)


@dataclass(frozen=True)
class Bipartition:
    """A nonempty proper subset of parties {1..n}, identified with its complement."""

    parties: frozenset[int]
    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidInputError(f"need at least 2 parties, got n={self.n}")
        if not self.parties or len(self.parties) >= self.n:
            raise InvalidInputError("gamma must be a nonempty proper subset of the parties")
        if any(not (1 <= p <= self.n) for p in self.parties):
            raise InvalidInputError(f"party labels {sorted(self.parties)} out of range for n={self.n}")

    @classmethod
    def of(cls, parties: Iterable[int], n: int) -> "Bipartition":
        return cls(frozenset(parties), n)

    @property
    def is_canonical(self) -> bool:
        return 1 in self.parties

    def complement(self) -> "Bipartition":
        return Bipartition(frozenset(range(1, self.n + 1)) - self.parties, self.n)

    def canonical(self) -> "Bipartition":
        return self if self.is_canonical else self.complement()

    def sorted_parties(self) -> tuple[int, ...]:
        return tuple(sorted(self.parties))

    def __str__(self) -> str:
        inside = ",".join(str(p) for p in self.sorted_parties())
        return "{" + inside + "}"


@dataclass(frozen=True)
class IndexPair:
    """An unordered pair of distinct basis indices, stored with first < second."""

    first: MultiIndex
    second: MultiIndex

    def __post_init__(self) -> None:
        if self.first.d != self.second.d or self.first.n != self.second.n:
            raise InvalidInputError("pair members must share n and d")
        if self.first == self.second:
            raise InvalidInputError(f"pair members must differ, got ({self.first}, {self.first})")
        if self.first.digits > self.second.digits:
            raise InvalidInputError("pair not canonical; use IndexPair.of")

    @classmethod
    def of(cls, a: MultiIndex, b: MultiIndex) -> "IndexPair":
        if a.digits > b.digits:
            a, b = b, a
        return cls(a, b)

    @property
    def n(self) -> int:
        return self.first.n

    @property
    def d(self) -> int:
        return self.first.d

    def as_tuple(self) -> tuple[MultiIndex, MultiIndex]:
        return (self.first, self.second)

    def __str__(self) -> str:
        return f"({self.first},{self.second})"


def permute_pair(
    gamma: Bipartition, pair: Sequence[MultiIndex]
) -> tuple[MultiIndex, MultiIndex]:
    """Exchange the digits at positions in gamma between the two indices.

    The returned pair preserves the input order (no canonicalization); applying
    the same gamma twice restores the input.
    """
    eta1, eta2 = pair
    if eta1.n != eta2.n or eta1.d != eta2.d:
        raise InvalidInputError("pair members must share n and d")
    if gamma.n != eta1.n:
        raise InvalidInputError(f"gamma is over n={gamma.n} parties, indices over n={eta1.n}")
    a = list(eta1.digits)
    b = list(eta2.digits)
    for p in gamma.parties:
        i = p - 1
        a[i], b[i] = b[i], a[i]
    return MultiIndex(tuple(a), eta1.d), MultiIndex(tuple(b), eta1.d)


def enumerate_bipartitions(n: int) -> list[Bipartition]:
    """All 2**(n-1) - 1 canonical bipartitions, ordered by size then lexicographically."""
    if n < 2:
        raise InvalidInputError(f"need at least 2 parties, got n={n}")
    out: list[Bipartition] = []
    rest = list(range(2, n + 1))
    for size in range(1, n):
        for extra in combinations(rest, size - 1):
            gamma = frozenset((1,) + extra)
            if len(gamma) >= n:
                continue
            out.append(Bipartition(gamma, n))
    return out


def differing_positions(pair: Sequence[MultiIndex]) -> frozenset[int]:
    """1-based party positions where the two indices disagree."""
    eta1, eta2 = pair
    return frozenset(
        p for p, (x, y) in enumerate(zip(eta1.digits, eta2.digits), start=1) if x != y
    )


def pair_is_fixed(gamma: Bipartition, pair: IndexPair) -> bool:
    """True iff permuting the pair under gamma returns the same unordered pair.

    Fixed pairs do not contribute to the gamma-subsystem entropy.  The test
    reduces to gamma intersecting the differing positions trivially (in the
    empty set or in all of them).
    """
    diff = differing_positions(pair.as_tuple())
    inter = gamma.parties & diff
    return not inter or inter == diff
