"""Ground sets and root subsets.

A ground set has 2n elements indexed 0..2n-1. Index i < n carries a
printable label and pairs with index i+n (its involute), which carries
the same label prefixed by "-". Subsets are RootSet values wrapping a
bitmask, so involution is a word rotation and all set algebra is int
arithmetic. Everything here is immutable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from . import _kernels
from .errors import GroundCapExceeded, NotHalfSet

_DEFAULT_MAX_PAIRS = 32


def max_pairs() -> int:
    """Configured cap on involution pairs (env ROOTOID_MAX_GROUND)."""
    raw = os.environ.get("ROOTOID_MAX_GROUND", "")
    if not raw:
        return _DEFAULT_MAX_PAIRS
    try:
        value = int(raw)
    except ValueError:
        return _DEFAULT_MAX_PAIRS
    return value if value > 0 else _DEFAULT_MAX_PAIRS


@dataclass(frozen=True)
class GroundSet:
    """A strictly involuted set of 2n root labels."""

    n: int
    base_labels: tuple[str, ...]

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("ground set needs at least one involution pair")
        if self.n > max_pairs():
            raise GroundCapExceeded(
                f"{self.n} pairs exceeds the cap of {max_pairs()} "
                "(raise ROOTOID_MAX_GROUND to override)"
            )
        if len(self.base_labels) != self.n:
            raise ValueError("need exactly one label per involution pair")
        if len(set(self.base_labels)) != self.n:
            raise ValueError("labels must be pairwise distinct")
        for lab in self.base_labels:
            if not lab or lab.startswith("-"):
                raise ValueError(f"bad base label {lab!r}")

    @staticmethod
    def standard(n: int) -> "GroundSet":
        return GroundSet(n, tuple(f"e{i + 1}" for i in range(n)))

    @property
    def size(self) -> int:
        return 2 * self.n

    @cached_property
    def full_mask(self) -> int:
        return (1 << (2 * self.n)) - 1

    def involution(self, i: int) -> int:
        if not 0 <= i < 2 * self.n:
            raise IndexError(i)
        return i + self.n if i < self.n else i - self.n

    def label(self, i: int) -> str:
        if i < self.n:
            return self.base_labels[i]
        return "-" + self.base_labels[i - self.n]

    @cached_property
    def _index_of(self) -> dict[str, int]:
        return {self.label(i): i for i in range(2 * self.n)}

    def index(self, label: str) -> int:
        try:
            return self._index_of[label]
        except KeyError:
            raise KeyError(f"unknown root label {label!r}") from None

    def set_of(self, labels: Iterable[str] = ()) -> "RootSet":
        mask = 0
        for lab in labels:
            mask |= 1 << self.index(lab)
        return RootSet(self, mask)

    def from_mask(self, mask: int) -> "RootSet":
        return RootSet(self, mask)

    def empty(self) -> "RootSet":
        return RootSet(self, 0)

    def full(self) -> "RootSet":
        return RootSet(self, self.full_mask)

    def subsets(self) -> Iterator["RootSet"]:
        for mask in range(self.full_mask + 1):
            yield RootSet(self, mask)


@dataclass(frozen=True)
class RootSet:
    """An immutable subset of a ground set, stored as a bitmask."""

    ground: GroundSet
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask <= self.ground.full_mask:
            raise ValueError("mask outside the ground set")

    def __contains__(self, item) -> bool:
        i = item if isinstance(item, int) else self.ground.index(item)
        return bool(self.mask >> i & 1)

    def __iter__(self) -> Iterator[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def _check_same_ground(self, other: "RootSet") -> None:
        if self.ground != other.ground:
            raise ValueError("root sets live on different ground sets")

    def __or__(self, other: "RootSet") -> "RootSet":
        self._check_same_ground(other)
        return RootSet(self.ground, self.mask | other.mask)

    def __and__(self, other: "RootSet") -> "RootSet":
        self._check_same_ground(other)
        return RootSet(self.ground, self.mask & other.mask)

    def __sub__(self, other: "RootSet") -> "RootSet":
        self._check_same_ground(other)
        return RootSet(self.ground, self.mask & ~other.mask)

    def __xor__(self, other: "RootSet") -> "RootSet":
        self._check_same_ground(other)
        return RootSet(self.ground, self.mask ^ other.mask)

    def __le__(self, other: "RootSet") -> bool:
        self._check_same_ground(other)
        return self.mask & ~other.mask == 0

    def complement(self) -> "RootSet":
        return RootSet(self.ground, self.ground.full_mask & ~self.mask)

    def labels(self) -> tuple[str, ...]:
        return tuple(self.ground.label(i) for i in self)

    def sort_key(self) -> tuple[int, ...]:
        """Member indices, ascending; the canonical comparison key."""
        return tuple(self)

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"


def involute(s: RootSet) -> RootSet:
    return RootSet(s.ground, _kernels.involute_mask(s.mask, s.ground.n))


def is_half_set(s: RootSet) -> bool:
    return _kernels.is_half_set_mask(s.mask, s.ground.n)


def half_set_distance(a: RootSet, b: RootSet) -> int:
    """Half the symmetric difference of two half sets."""
    a._check_same_ground(b)
    if not is_half_set(a) or not is_half_set(b):
        raise NotHalfSet("half_set_distance needs two half sets")
    return a.ground.n - (a.mask & b.mask).bit_count()
