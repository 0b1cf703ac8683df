"""Bit-parallel set representation and the shared set-cover data model."""
from __future__ import annotations

from typing import Iterable, Iterator, List, Sequence

WORD_BITS = 64


class SuccinctSet:
    """Fixed-capacity set of small integers backed by a single big-int bitmask.

    Bit ``b`` is set iff element ``b`` is a member.  CPython stores big
    integers in machine-word limbs, so union, intersection, difference and
    popcount all run word-parallel in C; correctness never depends on the
    word size.  Bits at positions >= capacity are always zero.

    Sets held by an :class:`Instance` are immutable by convention and safe
    to share across workers; scratch sets (e.g. the uncovered mask during
    construction) are mutated in place by their single owner.
    """

    __slots__ = ("capacity", "_bits")

    def __init__(self, capacity: int, bits: int = 0) -> None:
        if capacity < 0:
            raise ValueError(f"capacity must be >= 0, got {capacity}")
        if bits < 0 or (bits >> capacity) != 0:
            raise ValueError("bit pattern has members outside the capacity")
        self.capacity = capacity
        self._bits = bits

    @classmethod
    def from_indices(cls, capacity: int, indices: Iterable[int]) -> "SuccinctSet":
        bits = 0
        for i in indices:
            if not 0 <= i < capacity:
                raise ValueError(f"element {i} outside universe of size {capacity}")
            bits |= 1 << i
        return cls(capacity, bits)

    @classmethod
    def full(cls, capacity: int) -> "SuccinctSet":
        """The set {0, .., capacity-1}."""
        return cls(capacity, (1 << capacity) - 1)

    def copy(self) -> "SuccinctSet":
        return SuccinctSet(self.capacity, self._bits)

    def cardinality(self) -> int:
        return self._bits.bit_count()

    def words(self) -> List[int]:
        """The mask chunked into 64-bit words, LSB word first."""
        mask = (1 << WORD_BITS) - 1
        nwords = (self.capacity + WORD_BITS - 1) // WORD_BITS
        bits = self._bits
        return [(bits >> (w * WORD_BITS)) & mask for w in range(nwords)]

    def add(self, index: int) -> None:
        if not 0 <= index < self.capacity:
            raise ValueError(f"element {index} outside universe of size {self.capacity}")
        self._bits |= 1 << index

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.capacity and (self._bits >> index) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        bits = self._bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __bool__(self) -> bool:
        return self._bits != 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuccinctSet):
            return NotImplemented
        return self.capacity == other.capacity and self._bits == other._bits

    def __repr__(self) -> str:
        members = list(self)
        shown = members if len(members) <= 12 else members[:12] + ["..."]
        return f"SuccinctSet(capacity={self.capacity}, members={shown})"

    def _check_capacity(self, other: "SuccinctSet") -> None:
        if self.capacity != other.capacity:
            raise ValueError(
                f"capacity mismatch: {self.capacity} vs {other.capacity}"
            )

    def union(self, other: "SuccinctSet") -> "SuccinctSet":
        self._check_capacity(other)
        return SuccinctSet(self.capacity, self._bits | other._bits)

    def intersection(self, other: "SuccinctSet") -> "SuccinctSet":
        self._check_capacity(other)
        return SuccinctSet(self.capacity, self._bits & other._bits)

    def difference(self, other: "SuccinctSet") -> "SuccinctSet":
        self._check_capacity(other)
        return SuccinctSet(self.capacity, self._bits & ~other._bits)

    def union_inplace(self, other: "SuccinctSet") -> None:
        self._check_capacity(other)
        self._bits |= other._bits

    def difference_inplace(self, other: "SuccinctSet") -> None:
        self._check_capacity(other)
        self._bits &= ~other._bits

    def intersection_count(self, other: "SuccinctSet") -> int:
        self._check_capacity(other)
        return (self._bits & other._bits).bit_count()

    def is_subset_of(self, other: "SuccinctSet") -> bool:
        self._check_capacity(other)
        return self._bits & ~other._bits == 0


def set_intersection_count(a: SuccinctSet, b: SuccinctSet) -> int:
    """|a ∩ b| without materialising the intersection."""
    return a.intersection_count(b)


def set_difference_inplace(target: SuccinctSet, remove: SuccinctSet) -> None:
    """Turn ``target`` into ``target \\ remove``."""
    target.difference_inplace(remove)


def is_subset(a: SuccinctSet, b: SuccinctSet) -> bool:
    """True iff a is contained in b."""
    return a.is_subset_of(b)


class Instance:
    """A unicost covering instance: universe {0..n-1} and subsets with dense ids.

    Subset ids are positions in ``subsets`` (insertion order of the source
    file).  The family must cover the universe and contain no empty subset.
    Instances are immutable after construction and safe to share.
    """

    __slots__ = ("n", "subsets")

    def __init__(self, n: int, subsets: Iterable[SuccinctSet]) -> None:
        subsets = tuple(subsets)
        if n < 0:
            raise ValueError(f"universe size must be >= 0, got {n}")
        union = 0
        for sid, s in enumerate(subsets):
            if s.capacity != n:
                raise ValueError(
                    f"subset {sid} has capacity {s.capacity}, expected {n}"
                )
            if not s:
                raise ValueError(f"subset {sid} is empty")
            union |= s._bits
        if union != (1 << n) - 1:
            missing = next(e for e in range(n) if not (union >> e) & 1)
            raise ValueError(f"family does not cover element {missing}")
        self.n = n
        self.subsets = subsets

    @property
    def m(self) -> int:
        return len(self.subsets)

    def coverers(self) -> List[List[int]]:
        """Per element, the ascending list of subset ids containing it."""
        lists: List[List[int]] = [[] for _ in range(self.n)]
        for sid, s in enumerate(self.subsets):
            for e in s:
                lists[e].append(sid)
        return lists

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return self.n == other.n and self.subsets == other.subsets

    def __repr__(self) -> str:
        return f"Instance(n={self.n}, m={self.m})"


class Cover:
    """A (partial) cover: ordered chosen subset ids plus their coverage mask.

    Single-owner mutable state; transfer between workers, never share.
    """

    __slots__ = ("chosen", "covered")

    def __init__(self, chosen: Sequence[int], covered: SuccinctSet) -> None:
        if len(set(chosen)) != len(chosen):
            raise ValueError("cover contains duplicate subset ids")
        self.chosen = list(chosen)
        self.covered = covered

    @classmethod
    def empty(cls, capacity: int) -> "Cover":
        return cls([], SuccinctSet(capacity))

    def add(self, subset_id: int, members: SuccinctSet) -> None:
        if subset_id in self.chosen:
            raise ValueError(f"subset {subset_id} already chosen")
        self.chosen.append(subset_id)
        self.covered.union_inplace(members)

    def copy(self) -> "Cover":
        return Cover(list(self.chosen), self.covered.copy())

    def __len__(self) -> int:
        return len(self.chosen)

    def __repr__(self) -> str:
        return f"Cover(size={len(self.chosen)}, covered={self.covered.cardinality()})"


def cover_is_feasible(c: Cover, inst: Instance) -> bool:
    """True iff the cover's coverage mask equals the instance universe."""
    for sid in c.chosen:
        if not 0 <= sid < inst.m:
            raise ValueError(f"unknown subset id {sid} for instance with m={inst.m}")
    if c.covered.capacity != inst.n:
        raise ValueError(
            f"cover capacity {c.covered.capacity} does not match universe {inst.n}"
        )
    return c.covered._bits == (1 << inst.n) - 1
