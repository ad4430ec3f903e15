"""Dyck paths, parking functions and their q,t-statistics.

A classical Dyck path of size n is stored by its area vector
``(a_1, ..., a_n)`` (row i counted from the bottom, ``a_1 = 0``,
``a_{i+1} <= a_i + 1``).  Rows i and i+1 lie in the same column exactly when
``a_{i+1} = a_i + 1``.  Labels sit on north steps and strictly increase up
each column.

    area(pf) = sum a_i
    dinv(pf) = #{i < j : a_i = a_j, l_i < l_j} + #{i < j : a_i = a_j + 1, l_i > l_j}

Labels may repeat (word parking functions); the monomial attached to a
parking function is ``prod x_{l_i}``.
"""
from __future__ import annotations

import json
import warnings
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, gcd

from ._config import BudgetError, max_dyck, max_parking
from .partitions import Partition, partitions
from .qt import QTCoeff
from .symfunc import SymFunc


@dataclass(frozen=True, order=True)
class DyckPath:
    area_vector: tuple

    def __post_init__(self):
        a = self.area_vector
        if a and a[0] != 0:
            raise ValueError(f"area vector must start at 0: {a}")
        for x, y in zip(a, a[1:]):
            if y < 0 or y > x + 1:
                raise ValueError(f"invalid area vector {a}")

    @property
    def size(self) -> int:
        return len(self.area_vector)

    def area(self) -> int:
        return sum(self.area_vector)

    def columns(self) -> list[list[int]]:
        """Row indices grouped into vertical runs, bottom to top."""
        runs: list[list[int]] = []
        for i, a in enumerate(self.area_vector):
            if i and a == self.area_vector[i - 1] + 1:
                runs[-1].append(i)
            else:
                runs.append([i])
        return runs

    def run_lengths(self) -> list[int]:
        return [len(c) for c in self.columns()]

    def x_coordinates(self) -> tuple:
        """Column index of each north step."""
        return tuple(i - a for i, a in enumerate(self.area_vector))


@dataclass(frozen=True, order=True)
class ParkingFunction:
    path: DyckPath
    labels: tuple

    def __post_init__(self):
        if len(self.labels) != self.path.size:
            raise ValueError("one label per north step")
        for col in self.path.columns():
            vals = [self.labels[i] for i in col]
            if any(x >= y for x, y in zip(vals, vals[1:])):
                raise ValueError(f"labels must increase up each column: {self.labels}")

    def area(self) -> int:
        return self.path.area()

    def dinv(self) -> int:
        a, lab = self.path.area_vector, self.labels
        n = len(a)
        out = 0
        for i in range(n):
            for j in range(i + 1, n):
                if a[i] == a[j] and lab[i] < lab[j]:
                    out += 1
                elif a[i] == a[j] + 1 and lab[i] > lab[j]:
                    out += 1
        return out

    def content(self) -> Partition:
        return Partition(sorted(Counter(self.labels).values(), reverse=True))

    def to_dict(self) -> dict:
        return {"area_vector": list(self.path.area_vector), "labels": list(self.labels)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "ParkingFunction":
        return cls(DyckPath(tuple(d["area_vector"])), tuple(d["labels"]))


area = ParkingFunction.area
dinv = ParkingFunction.dinv


def enumerate_dyck(n: int) -> list[DyckPath]:
    """All Dyck paths of size n, lexicographic in the area vector."""
    if n > max_dyck():
        raise BudgetError(f"n={n} exceeds the Dyck path budget {max_dyck()} (MAX_DYCK)")
    return [DyckPath(a) for a in _area_vectors(n)]


@lru_cache(maxsize=None)
def _area_vectors(n: int) -> tuple:
    if n == 0:
        return ((),)
    out = []

    def rec(prefix):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for nxt in range(0, prefix[-1] + 2):
            rec(prefix + [nxt])

    rec([0])
    return tuple(out)


def _labelings(runs: list[int], pool: Counter):
    """Assign to each run a strictly increasing block drawn from the multiset ``pool``."""
    if not runs:
        yield ()
        return
    first, rest = runs[0], runs[1:]
    for block in combinations(sorted(pool), first):
        left = pool.copy()
        left.subtract(block)
        left = +left
        for tail in _labelings(rest, left):
            yield block + tail


def enumerate_parking_functions(n: int) -> list[ParkingFunction]:
    """All (n+1)^(n-1) parking functions with labels 1..n."""
    if n > max_parking():
        raise BudgetError(f"n={n} exceeds the parking function budget {max_parking()} (MAX_PARKING)")
    out = []
    for path in enumerate_dyck(n):
        for labels in _labelings(path.run_lengths(), Counter(range(1, n + 1))):
            out.append(ParkingFunction(path, labels))
    return out


def word_parking_functions(lam) -> list[ParkingFunction]:
    """Parking functions whose labels use ``i`` exactly ``lam[i-1]`` times."""
    lam = Partition(lam)
    n = lam.size
    if n > max_parking():
        raise BudgetError(f"n={n} exceeds the parking function budget {max_parking()} (MAX_PARKING)")
    pool = Counter({i + 1: k for i, k in enumerate(lam)})
    out = []
    for path in enumerate_dyck(n):
        for labels in _labelings(path.run_lengths(), pool):
            out.append(ParkingFunction(path, labels))
    return out


def qt_enumerator(pfs) -> QTCoeff:
    """Sum of q^area t^dinv."""
    counts = Counter((pf.area(), pf.dinv()) for pf in pfs)
    return QTCoeff.from_dict(dict(counts))


def shuffle_sum(n: int) -> SymFunc:
    """Sum over parking functions of q^area t^dinv x_pf, in the monomial basis."""
    terms = {lam: qt_enumerator(word_parking_functions(lam)) for lam in partitions(n)}
    return SymFunc("m", terms, n)


def q_catalan_area(n: int) -> QTCoeff:
    """Carlitz q-Catalan number: sum over Dyck paths of q^area."""
    return QTCoeff.from_dict(dict(Counter((p.area(), 0) for p in enumerate_dyck(n))))


# -- rational paths and run structures ---------------------------------------


@dataclass(frozen=True)
class RationalDyckPath:
    """Lattice path from (0,0) to (m,n) weakly above the line of slope n/m.

    ``xs[i]`` is the x-coordinate of the i-th north step (bottom to top).
    """

    m: int
    n: int
    xs: tuple

    def __post_init__(self):
        if len(self.xs) != self.n:
            raise ValueError("one x-coordinate per north step")
        for i, x in enumerate(self.xs):
            if x < 0 or x * self.n > i * self.m:
                raise ValueError(f"path dips below the diagonal at step {i}")
            if i and x < self.xs[i - 1]:
                raise ValueError("x-coordinates must be weakly increasing")

    def run_lengths(self) -> list[int]:
        return list(Counter(self.xs).values())

    def run_structure(self) -> "RunStructure":
        return RunStructure.from_runs(self.run_lengths(), self.m, self.n)


@dataclass(frozen=True)
class RunStructure:
    """``counts[j]`` = number of vertical runs of length j (``counts[0]`` makes the total m)."""

    counts: tuple

    @classmethod
    def from_runs(cls, runs, m: int, n: int) -> "RunStructure":
        c = Counter(runs)
        counts = [0] * (n + 1)
        for length, k in c.items():
            counts[length] = k
        counts[0] = m - sum(counts[1:])
        return cls(tuple(counts))

    @classmethod
    def from_partition(cls, lam, m: int) -> "RunStructure":
        lam = Partition(lam)
        return cls.from_runs(list(lam), m, lam.size)

    def partition(self) -> Partition:
        return Partition(sorted((j for j, k in enumerate(self.counts) if j for _ in range(k)), reverse=True))


def enumerate_rational_dyck(m: int, n: int) -> list[RationalDyckPath]:
    if n > max_dyck():
        raise BudgetError(f"n={n} exceeds the Dyck path budget {max_dyck()} (MAX_DYCK)")
    out = []

    def rec(prefix):
        i = len(prefix)
        if i == n:
            out.append(RationalDyckPath(m, n, tuple(prefix)))
            return
        lo = prefix[-1] if prefix else 0
        for x in range(lo, i * m // n + 1):
            rec(prefix + [x])

    rec([])
    return out


def kreweras_typeA(n: int, ell: int, lam) -> int | Fraction:
    """``(ell-1)! / (m_0! m_1! ... m_n!)`` with ``m_i`` the multiplicity of i in lam."""
    lam = Partition(lam)
    if lam.size != n:
        raise ValueError(f"{lam} is not a partition of {n}")
    if ell < 1:
        raise ValueError("ell must be positive")
    m0 = ell - len(lam)
    if m0 < 0:
        raise ValueError(f"ell={ell} is smaller than the number of parts of {lam}")
    denom = factorial(m0)
    for k in Counter(lam).values():
        denom *= factorial(k)
    value = Fraction(factorial(ell - 1), denom)
    if value.denominator != 1:
        warnings.warn(f"non-integral Kreweras number for n={n}, ell={ell} (gcd {gcd(n, ell)})", stacklevel=2)
        return value
    return int(value)


def rational_catalan(m: int, n: int) -> Fraction:
    """``binom(m+n, n) / (m+n)``."""
    return Fraction(comb(m + n, n), m + n)
