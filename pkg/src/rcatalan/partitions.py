"""Integer partitions and the small amount of combinatorics built on them."""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Ordinary tuple comparison is lexicographic, which is a linear extension of
    dominance order.
    """

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def n(self) -> int:
        """Sum of (i-1) * part_i."""
        return sum(i * p for i, p in enumerate(self))

    def multiplicities(self) -> Counter:
        return Counter(self)

    def z(self) -> int:
        """Size of the centralizer of a permutation of cycle type self."""
        out = 1
        for part, mult in Counter(self).items():
            out *= part**mult * factorial(mult)
        return out

    def sign(self) -> int:
        """Sign of a permutation of this cycle type."""
        return -1 if (self.size - len(self)) % 2 else 1

    def dominates(self, other: "Partition") -> bool:
        if self.size != other.size:
            return False
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self[i] if i < len(self) else 0
            b += other[i] if i < len(other) else 0
            if a < b:
                return False
        return True

    def cells(self):
        """Cells ``(row, col)``, both zero-based, in English notation."""
        return [(i, j) for i, p in enumerate(self) for j in range(p)]

    def arm(self, i: int, j: int) -> int:
        return self[i] - j - 1

    def leg(self, i: int, j: int) -> int:
        return self.conjugate()[j] - i - 1

    def __repr__(self):
        return f"Partition({list(self)})"

    def __str__(self):
        return "[" + ",".join(map(str, self)) + "]"


def partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in increasing lexicographic order."""
    return list(_partitions(n))


@lru_cache(maxsize=None)
def _partitions(n: int) -> tuple[Partition, ...]:
    if n < 0:
        raise ValueError("n must be nonnegative")
    out: list[Partition] = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(remaining - part, part, prefix + [part])

    rec(n, n, [])
    return tuple(sorted(out))


def parse_partition(text: str) -> Partition:
    """Parse ``"2,1"``, ``"[2,1]"`` or ``"(2, 1)"``; ``"[]"`` is the empty partition."""
    body = text.strip().strip("[]()").strip()
    if not body:
        return Partition()
    return Partition(sorted((int(x) for x in body.split(",")), reverse=True))
