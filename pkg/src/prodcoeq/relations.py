"""Partitions of a carrier and congruences on finite algebras."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import AlgebraError


class Partition:
    """Equivalence relation on ``0..n-1`` stored as least-element representatives.

    Two partitions are equal iff their representative arrays are equal.
    """

    __slots__ = ("rep",)

    def __init__(self, rep: Sequence[int]):
        self.rep = tuple(int(r) for r in rep)

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        first: dict = {}
        return cls([first.setdefault(lab, i) for i, lab in enumerate(labels)])

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        labels = list(range(n))
        for block in blocks:
            block = sorted(block)
            for e in block:
                labels[e] = block[0]
        return cls.from_labels(labels)

    @classmethod
    def diagonal(cls, n: int) -> "Partition":
        return cls(range(n))

    @classmethod
    def full(cls, n: int) -> "Partition":
        return cls([0] * n)

    def __len__(self) -> int:
        return len(self.rep)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.rep == other.rep

    def __hash__(self) -> int:
        return hash(self.rep)

    def __repr__(self) -> str:
        return f"Partition({self.blocks()})"

    def related(self, a: int, b: int) -> bool:
        return self.rep[a] == self.rep[b]

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i, r in enumerate(self.rep):
            out.setdefault(r, []).append(i)
        return list(out.values())

    def num_blocks(self) -> int:
        return sum(1 for i, r in enumerate(self.rep) if i == r)

    def class_index(self) -> list[int]:
        """Map each element to the index of its block, blocks ordered by least element."""
        order = {r: k for k, r in enumerate(sorted(set(self.rep)))}
        return [order[r] for r in self.rep]

    def pairs(self):
        """All related pairs (a, b) with a != b, lexicographic."""
        n = len(self.rep)
        return [(a, b) for a in range(n) for b in range(n) if a != b and self.rep[a] == self.rep[b]]

    def __le__(self, other: "Partition") -> bool:
        # refinement: every block of self lies inside a block of other
        return all(other.rep[i] == other.rep[r] for i, r in enumerate(self.rep))

    def meet(self, other: "Partition") -> "Partition":
        return Partition.from_labels(list(zip(self.rep, other.rep)))

    def join(self, other: "Partition") -> "Partition":
        parent = list(range(len(self.rep)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for rep in (self.rep, other.rep):
            for i, r in enumerate(rep):
                a, b = find(i), find(r)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return Partition.from_labels([find(i) for i in range(len(parent))])


def is_compatible(alg, partition: Partition) -> bool:
    """True iff ``partition`` is preserved by every operation of ``alg``."""
    cls = np.asarray(partition.class_index(), dtype=np.int64)
    rep = np.asarray(partition.rep, dtype=np.int64)
    for sym, arity in alg.signature.symbols:
        if arity == 0:
            continue
        table = alg.table(sym)
        # result class must equal the class of the value at the representatives
        lifted = cls[table]
        at_reps = cls[table[np.ix_(*([rep] * arity))]]
        if not np.array_equal(lifted, at_reps):
            return False
    return True


@dataclass(frozen=True, eq=False)
class Congruence:
    algebra: object
    partition: Partition

    def __post_init__(self):
        if len(self.partition) != self.algebra.size:
            raise AlgebraError("partition size does not match the carrier")

    @classmethod
    def checked(cls, algebra, partition: Partition) -> "Congruence":
        if not is_compatible(algebra, partition):
            raise AlgebraError("partition is not compatible with the operations")
        return cls(algebra, partition)

    @classmethod
    def diagonal(cls, algebra) -> "Congruence":
        return cls(algebra, Partition.diagonal(algebra.size))

    @classmethod
    def full(cls, algebra) -> "Congruence":
        return cls(algebra, Partition.full(algebra.size))

    def __contains__(self, pair) -> bool:
        a, b = pair
        return self.partition.related(a, b)

    def related(self, a: int, b: int) -> bool:
        return self.partition.related(a, b)

    def blocks(self) -> list[list[int]]:
        return self.partition.blocks()

    def __eq__(self, other) -> bool:
        return (isinstance(other, Congruence) and self.partition == other.partition
                and self.algebra == other.algebra)

    def __hash__(self) -> int:
        return hash(self.partition)

    def __le__(self, other: "Congruence") -> bool:
        return self.partition <= other.partition

    def meet(self, other: "Congruence") -> "Congruence":
        return Congruence(self.algebra, self.partition.meet(other.partition))

    def join(self, other: "Congruence") -> "Congruence":
        # the equivalence join of two congruences is again a congruence
        return Congruence(self.algebra, self.partition.join(other.partition))

    def __repr__(self) -> str:
        return f"Congruence({self.algebra.name}, {self.blocks()})"
