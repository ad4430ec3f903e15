"""The W-action on the finite torus Q/mQ.

Two independent routes are offered for every count: explicit enumeration of
the m^rank points (with stabilizer typing) and Burnside averages of
fixed-point counts obtained from Smith normal forms.
"""
from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Sequence

import numpy as np

from ._config import BudgetError, max_points
from .root_systems import (
    ParabolicType,
    RootSystemData,
    WeylElement,
    WeylGroup,
    catalan_product,
    classify_indices,
    weyl_group,
)
from .snf import elementary_divisors


@dataclass(frozen=True)
class TorusPoint:
    coords: tuple
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if any(not 0 <= c < self.modulus for c in self.coords):
            raise ValueError(f"coordinates {self.coords} not reduced mod {self.modulus}")

    @classmethod
    def reduce(cls, coords: Iterable[int], modulus: int) -> "TorusPoint":
        return cls(tuple(int(c) % modulus for c in coords), modulus)


def act(w: WeylElement, p: TorusPoint) -> TorusPoint:
    if w.rank != len(p.coords):
        raise ValueError(f"rank {w.rank} element cannot act on a point with {len(p.coords)} coordinates")
    img = w.array @ np.array(p.coords, dtype=np.int64)
    return TorusPoint.reduce(img, p.modulus)


# -- fixed points -----------------------------------------------------------


@lru_cache(maxsize=None)
def _divisors_of(matrix: tuple) -> tuple[int, ...]:
    r = len(matrix)
    shifted = [[matrix[i][j] - (i == j) for j in range(r)] for i in range(r)]
    return tuple(elementary_divisors(shifted))


def _fixed_from_divisors(divs: Sequence[int], m: int) -> int:
    out = 1
    for d in divs:
        out *= m if d == 0 else gcd(m, d)
    return out


def fixed_point_count(w: WeylElement, m: int) -> int:
    """``#{p in (Z/m)^r : w p = p}`` via the elementary divisors of ``w - I``."""
    if m < 1:
        raise ValueError("m must be positive")
    return _fixed_from_divisors(_divisors_of(w.matrix), m)


@lru_cache(maxsize=None)
def _group_divisors(group: WeylGroup) -> list[tuple[int, ...]]:
    return [_divisors_of(tuple(tuple(int(x) for x in row) for row in mat)) for mat in group.mats]


def fixed_point_counts(rs: RootSystemData, m: int, indices: Iterable[int] | None = None) -> list[int]:
    group = weyl_group(rs)
    divs = _group_divisors(group)
    idx = range(len(group)) if indices is None else indices
    return [_fixed_from_divisors(divs[i], m) for i in idx]


def brute_force_fixed_count(w: WeylElement, m: int) -> int:
    """Count fixed points by scanning all m^r points (test oracle)."""
    r = w.rank
    grid = np.indices((m,) * r).reshape(r, -1)
    diff = ((w.array - np.eye(r, dtype=np.int64)) @ grid) % m
    return int(np.count_nonzero(~diff.any(axis=0)))


def burnside_orbit_count(rs: RootSystemData, m: int) -> int:
    """Number of W-orbits on Q/mQ, as the group average of fixed-point counts."""
    return isotypic_multiplicity(rs, m, "trivial")


def _resolve_subgroup(group: WeylGroup, subgroup) -> list[int]:
    if subgroup is None:
        return list(range(len(group)))
    out = []
    for w in subgroup:
        if isinstance(w, WeylElement):
            out.append(group.lookup(np.array(w.matrix, dtype=np.int64)))
        else:
            out.append(int(w))
    return sorted(set(out))


def isotypic_multiplicity(rs: RootSystemData, m: int, character: str = "trivial", subgroup=None) -> int:
    """Multiplicity of the trivial or sign character of H in C[Q/mQ].

    ``subgroup`` is an iterable of :class:`WeylElement` or element indices
    (default: all of W).
    """
    if m < 1:
        raise ValueError("m must be positive")
    if character not in ("trivial", "sign"):
        raise ValueError(f"character must be 'trivial' or 'sign', got {character!r}")
    group = weyl_group(rs)
    idx = _resolve_subgroup(group, subgroup)
    counts = fixed_point_counts(rs, m, idx)
    if character == "sign":
        total = sum(int(group.dets[i]) * c for i, c in zip(idx, counts))
    else:
        total = sum(counts)
    value = Fraction(total, len(idx))
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"character average {value} is not a nonnegative integer")
    return int(value)


def regular_orbit_count(rs: RootSystemData, m: int) -> int | Fraction:
    """``prod(m - e_i) / |W|`` (exponent convention)."""
    h = rs.coxeter_number
    if gcd(m, h) != 1:
        warnings.warn(f"gcd(m={m}, h={h}) != 1 for {rs.cartan_type}", stacklevel=2)
    value = Fraction(prod(m - e for e in rs.exponents), rs.weyl_order)
    if value < 0:
        raise ValueError(f"negative regular orbit count {value} for m={m}")
    return int(value) if value.denominator == 1 else value


def crt_check(rs: RootSystemData, a: int, b: int) -> bool:
    """Elementwise ``fix(w, ab) == fix(w, a) * fix(w, b)`` for coprime a, b."""
    if gcd(a, b) != 1:
        raise ValueError("a and b must be coprime")
    fa, fb, fab = (fixed_point_counts(rs, k) for k in (a, b, a * b))
    return all(x * y == z for x, y, z in zip(fa, fb, fab))


# -- enumeration ------------------------------------------------------------


@dataclass
class OrbitCensus:
    cartan_type: str
    modulus: int
    entries: dict
    total_orbits: int
    regular_orbits: int
    representatives: dict = field(default_factory=dict, repr=False)
    stabilizers: dict = field(default_factory=dict, repr=False)
    orbit_size_sum: int = 0

    def merged(self) -> dict[str, int]:
        """Counts summed over conjugacy classes with equal labels."""
        out: dict[str, int] = {}
        for ptype, n in self.entries.items():
            out[ptype.label] = out.get(ptype.label, 0) + n
        return out

    def count(self, label: str) -> int:
        return self.merged().get(label, 0)

    def sorted_entries(self) -> list[tuple[ParabolicType, int]]:
        return sorted(self.entries.items(), key=lambda kv: (_rank_of(kv[0]), kv[0].label, kv[0].class_id))

    def to_dict(self) -> dict:
        return {
            "type": self.cartan_type,
            "m": self.modulus,
            "entries": [
                {"stabilizer": str(pt), "conjugacy_class_id": pt.class_id, "count": n} for pt, n in self.sorted_entries()
            ],
            "total": self.total_orbits,
            "regular": self.regular_orbits,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["type", "m", "stabilizer", "conjugacy_class_id", "count"])
        for pt, n in self.sorted_entries():
            writer.writerow([self.cartan_type, self.modulus, str(pt), pt.class_id, n])
        return buf.getvalue()


def _rank_of(pt: ParabolicType) -> int:
    if pt.quasi:
        return 99
    if pt.label == "empty":
        return 0
    return sum(int(part[1:]) for part in pt.label.split("+"))


def _encode(coords: np.ndarray, m: int) -> np.ndarray:
    r = coords.shape[0]
    weights = m ** np.arange(r - 1, -1, -1, dtype=np.int64)
    return weights @ coords


def _decode(codes: np.ndarray, m: int, r: int) -> np.ndarray:
    out = np.empty((r, len(codes)), dtype=np.int64)
    rest = codes.copy()
    for i in range(r - 1, -1, -1):
        out[i] = rest % m
        rest //= m
    return out


def enumerate_orbits(rs: RootSystemData, m: int, budget: int | None = None, chunk: int = 1 << 18) -> OrbitCensus:
    """Partition Q/mQ into W-orbits and type each stabilizer.

    Orbit representatives are the lexicographically smallest coordinate
    vectors.
    """
    if m < 1:
        raise ValueError("m must be positive")
    budget = max_points() if budget is None else budget
    r = rs.rank
    npoints = m**r
    if npoints > budget:
        raise BudgetError(
            f"{m}^{r} = {npoints} points exceeds the point budget {budget} (MAX_POINTS); use burnside_orbit_count"
        )
    group = weyl_group(rs)
    mats = group.mats
    # canonical representative of every point: min code over its orbit
    canon = np.empty(npoints, dtype=np.int64)
    for start in range(0, npoints, chunk):
        codes = np.arange(start, min(start + chunk, npoints), dtype=np.int64)
        pts = _decode(codes, m, r)
        best = codes.copy()
        for w in mats:
            np.minimum(best, _encode((w @ pts) % m, m), out=best)
        canon[codes] = best
    reps, sizes = np.unique(canon, return_counts=True)
    rep_pts = _decode(reps, m, r)

    # stabilizer membership, one boolean column per representative
    stab_cache: dict[bytes, ParabolicType] = {}
    entries: dict[ParabolicType, int] = {}
    representatives: dict[ParabolicType, list] = {}
    stabilizers: dict[ParabolicType, tuple] = {}
    size_sum = 0
    for start in range(0, len(reps), 4096):
        block = rep_pts[:, start : start + 4096]
        fixed = np.all(((mats @ block) - block[None, :, :]) % m == 0, axis=1)
        for col in range(block.shape[1]):
            members = np.flatnonzero(fixed[:, col])
            key = members.tobytes()
            ptype = stab_cache.get(key)
            if ptype is None:
                ptype = classify_indices(group, members)
                stab_cache[key] = ptype
                if not ptype.parabolic:
                    warnings.warn(f"non-parabolic stabilizer {ptype} in {rs.cartan_type} on Q/{m}Q", stacklevel=2)
            size = int(sizes[start + col])
            if size * len(members) != len(mats):
                raise AssertionError("orbit-stabilizer violated")
            size_sum += size
            entries[ptype] = entries.get(ptype, 0) + 1
            if ptype not in stabilizers:
                stabilizers[ptype] = tuple(int(i) for i in members)
                representatives[ptype] = []
            representatives[ptype].append(tuple(int(x) for x in block[:, col]))
    if size_sum != npoints:
        raise AssertionError("orbit sizes do not sum to the number of points")
    regular = sum(n for pt, n in entries.items() if pt.label == "empty")
    return OrbitCensus(
        cartan_type=str(rs.cartan_type),
        modulus=m,
        entries=entries,
        total_orbits=len(reps),
        regular_orbits=regular,
        representatives=representatives,
        stabilizers=stabilizers,
        orbit_size_sum=size_sum,
    )


def stabilizer_indices(rs: RootSystemData, point: TorusPoint) -> tuple[int, ...]:
    group = weyl_group(rs)
    v = np.array(point.coords, dtype=np.int64)
    fixed = np.all(((group.mats @ v) - v) % point.modulus == 0, axis=1)
    return tuple(int(i) for i in np.flatnonzero(fixed))


def catalan_number(rs: RootSystemData, m: int) -> Fraction:
    return catalan_product(rs, m)
