"""Finite root systems, their Weyl groups, and reflection subgroups.

Conventions
-----------
* ``cartan_matrix[i][j] = <alpha_i^vee, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)``
  with Bourbaki node numbering (B_n: alpha_n short; C_n: alpha_n long;
  G2: alpha_1 short).
* Positive roots are integer vectors in simple-root coordinates.
* Weyl group elements are integer matrices acting on the coroot lattice Q in
  simple-coroot coordinates; the simple reflection ``s_i`` sends
  ``alpha_j^vee`` to ``alpha_j^vee - cartan_matrix[j][i] * alpha_i^vee``.
"""
from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import gcd, prod
from typing import Iterable

import numpy as np

from ._config import BudgetError, max_weyl

FAMILIES = "ABCDEFG"

_EXPONENTS = {
    "E6": (1, 4, 5, 7, 8, 11),
    "E7": (1, 5, 7, 9, 11, 13, 17),
    "E8": (1, 7, 11, 13, 17, 19, 23, 29),
    "F4": (1, 5, 7, 11),
    "G2": (1, 5),
}


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        fam = self.family.upper() if isinstance(self.family, str) else self.family
        object.__setattr__(self, "family", fam)
        if fam not in tuple(FAMILIES):
            raise ValueError(f"unknown Cartan family {self.family!r}")
        r = self.rank
        if not isinstance(r, int) or r < 1:
            raise ValueError(f"rank must be a positive integer, got {r!r}")
        ok = {
            "A": r >= 1,
            "B": r >= 2,
            "C": r >= 2,
            "D": r >= 4,
            "E": 6 <= r <= 8,
            "F": r == 4,
            "G": r == 2,
        }[fam]
        if not ok:
            hint = " (D3 is A3; use 'A3')" if fam == "D" and r == 3 else ""
            raise ValueError(f"invalid Cartan type {fam}{r}{hint}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        match = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", text)
        if match is None:
            raise ValueError(f"cannot parse Cartan type {text!r}")
        return cls(match.group(1).upper(), int(match.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"


def _node_lengths(ct: CartanType) -> list[int]:
    """Squared lengths of the simple roots (shortest = 1 in non simply-laced types)."""
    r, fam = ct.rank, ct.family
    if fam == "B":
        return [2] * (r - 1) + [1]
    if fam == "C":
        return [1] * (r - 1) + [2]
    if fam == "F":
        return [2, 2, 1, 1]
    if fam == "G":
        return [1, 3]
    return [2] * r


def _edges(ct: CartanType) -> list[tuple[int, int]]:
    r, fam = ct.rank, ct.family
    if fam in "ABCFG":
        return [(i, i + 1) for i in range(r - 1)]
    if fam == "D":
        return [(i, i + 1) for i in range(r - 2)] + [(r - 3, r - 1)]
    # E_n, Bourbaki: 1-3-4-5-...-n with 2 attached to 4
    return [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, r - 1)]


def cartan_matrix(ct: CartanType) -> tuple[tuple[int, ...], ...]:
    gram = _gram(ct)
    r = ct.rank
    return tuple(tuple(2 * gram[i][j] // gram[i][i] for j in range(r)) for i in range(r))


def _gram(ct: CartanType) -> list[list[int]]:
    """Twice the Euclidean Gram matrix of the simple roots (an integer matrix)."""
    lengths = _node_lengths(ct)
    r = ct.rank
    g = [[0] * r for _ in range(r)]
    for i in range(r):
        g[i][i] = 2 * lengths[i]
    for i, j in _edges(ct):
        g[i][j] = g[j][i] = -max(lengths[i], lengths[j])
    return g


def exponents_of(ct: CartanType) -> tuple[int, ...]:
    r, fam = ct.rank, ct.family
    if fam == "A":
        return tuple(range(1, r + 1))
    if fam in "BC":
        return tuple(range(1, 2 * r, 2))
    if fam == "D":
        return tuple(sorted(list(range(1, 2 * r - 2, 2)) + [r - 1]))
    return _EXPONENTS[str(ct)]


@dataclass(frozen=True)
class RootSystemData:
    cartan_type: CartanType
    cartan_matrix: tuple
    positive_roots: tuple
    exponents: tuple
    degrees: tuple
    coxeter_number: int
    weyl_order: int
    gram: tuple = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    def root_norm(self, root) -> int:
        """Twice the squared length of ``root`` (simple-root coordinates)."""
        g = self.gram
        r = self.rank
        return sum(root[i] * root[j] * g[i][j] for i in range(r) for j in range(r))

    def pairing(self, a, b) -> int:
        """Twice the Euclidean product of two roots given in simple-root coordinates."""
        g = self.gram
        r = self.rank
        return sum(a[i] * b[j] * g[i][j] for i in range(r) for j in range(r))

    def coroot(self, root) -> tuple[Fraction, ...]:
        """``root^vee`` in simple-coroot coordinates."""
        norm = self.root_norm(root)
        return tuple(Fraction(root[i] * self.gram[i][i], norm) for i in range(self.rank))

    def to_dict(self) -> dict:
        return {
            "type": str(self.cartan_type),
            "rank": self.rank,
            "cartan_matrix": [list(row) for row in self.cartan_matrix],
            "exponents": list(self.exponents),
            "degrees": list(self.degrees),
            "coxeter_number": self.coxeter_number,
            "weyl_order": self.weyl_order,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def _positive_roots(cm, r) -> tuple[tuple[int, ...], ...]:
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(r):
                pair = sum(beta[j] * cm[i][j] for j in range(r))
                img = tuple(beta[j] - (pair if j == i else 0) for j in range(r))
                if all(x >= 0 for x in img) and img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return tuple(sorted(seen, key=lambda v: (sum(v), v)))


@lru_cache(maxsize=None)
def build_root_system(t: CartanType | str) -> RootSystemData:
    if isinstance(t, str):
        t = CartanType.parse(t)
    cm = cartan_matrix(t)
    r = t.rank
    roots = _positive_roots(cm, r)
    exps = exponents_of(t)
    degs = tuple(e + 1 for e in exps)
    h = exps[-1] + 1
    rs = RootSystemData(
        cartan_type=t,
        cartan_matrix=cm,
        positive_roots=roots,
        exponents=exps,
        degrees=degs,
        coxeter_number=h,
        weyl_order=prod(degs),
        gram=tuple(tuple(row) for row in _gram(t)),
    )
    if len(roots) * 2 != r * h:
        raise AssertionError(f"{t}: {len(roots)} positive roots, expected {r * h // 2}")
    return rs


# -- Weyl group elements ----------------------------------------------------


@dataclass(frozen=True)
class WeylElement:
    matrix: tuple
    length_parity: int

    @classmethod
    def from_array(cls, a) -> "WeylElement":
        a = np.asarray(a, dtype=np.int64)
        det = int(round(np.linalg.det(a))) if a.size else 1
        return cls(tuple(tuple(int(x) for x in row) for row in a), det)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64).reshape(len(self.matrix), len(self.matrix))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def __matmul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(
            tuple(tuple(int(x) for x in row) for row in self.array @ other.array),
            self.length_parity * other.length_parity,
        )

    def sign(self) -> int:
        return self.length_parity

    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == (i == j) for i in range(self.rank) for j in range(self.rank))


def simple_reflection_matrices(rs: RootSystemData) -> list[np.ndarray]:
    r = rs.rank
    cm = rs.cartan_matrix
    mats = []
    for i in range(r):
        s = np.eye(r, dtype=np.int64)
        for j in range(r):
            s[i, j] -= cm[j][i]
        mats.append(s)
    return mats


def reflection_matrix(rs: RootSystemData, root) -> np.ndarray:
    """Matrix of ``s_root`` on the coroot lattice: ``x -> x - <root, x> root^vee``."""
    r = rs.rank
    cm = rs.cartan_matrix
    row = [sum(root[i] * cm[j][i] for i in range(r)) for j in range(r)]
    cov = rs.coroot(root)
    if any(c.denominator != 1 for c in cov):
        raise AssertionError("coroot is not integral")
    out = np.eye(r, dtype=np.int64)
    for a in range(r):
        for b in range(r):
            out[a, b] -= int(cov[a]) * row[b]
    return out


class WeylGroup:
    """All elements of W as a stacked integer array, with lookup tables."""

    def __init__(self, rs: RootSystemData, budget: int | None = None):
        budget = max_weyl() if budget is None else budget
        if rs.weyl_order > budget:
            raise BudgetError(
                f"|W({rs.cartan_type})| = {rs.weyl_order} exceeds the Weyl group budget {budget} (MAX_WEYL)"
            )
        self.rs = rs
        r = rs.rank
        gens = simple_reflection_matrices(rs)
        ident = np.eye(r, dtype=np.int64)
        index = {ident.tobytes(): 0}
        mats = [ident]
        frontier = np.stack([ident])
        while len(frontier):
            new = []
            for g in gens:
                prods = frontier @ g
                for m in prods:
                    key = m.tobytes()
                    if key not in index:
                        index[key] = len(mats)
                        mats.append(m)
                        new.append(m)
            frontier = np.stack(new) if new else np.empty((0, r, r), dtype=np.int64)
        self.mats = np.stack(mats)
        if len(self.mats) != rs.weyl_order:
            raise AssertionError(f"closure produced {len(self.mats)} elements, expected {rs.weyl_order}")
        self.index = index
        self.dets = np.rint(np.linalg.det(self.mats.astype(float))).astype(np.int64) if r else np.ones(1, np.int64)

    def __len__(self):
        return len(self.mats)

    def lookup(self, mat) -> int:
        return self.index[np.ascontiguousarray(mat, dtype=np.int64).tobytes()]

    def element(self, i: int) -> WeylElement:
        return WeylElement(tuple(tuple(int(x) for x in row) for row in self.mats[i]), int(self.dets[i]))

    def elements(self) -> list[WeylElement]:
        return [self.element(i) for i in range(len(self))]

    @cached_property
    def reflection_indices(self) -> np.ndarray:
        """Element index of ``s_alpha`` for each positive root, in root order."""
        return np.array([self.lookup(reflection_matrix(self.rs, a)) for a in self.rs.positive_roots], dtype=np.int64)

    @cached_property
    def all_coroots(self) -> np.ndarray:
        """Coroots of the positive roots, then of their negatives."""
        pos = np.array([[int(c) for c in self.rs.coroot(a)] for a in self.rs.positive_roots], dtype=np.int64)
        return np.vstack([pos, -pos])

    @cached_property
    def root_permutations(self) -> np.ndarray:
        """``perm[w, k]`` = index of ``w(root_k)`` among all roots (negatives offset by N)."""
        cor = self.all_coroots
        bound = int(np.abs(cor).max()) + 1
        radix = (2 * bound + 1) ** np.arange(self.rs.rank, dtype=np.int64)
        codes = (cor + bound) @ radix
        order = np.argsort(codes)
        imgs = np.einsum("wij,kj->wki", self.mats, cor)
        img_codes = (imgs + bound) @ radix
        pos = np.searchsorted(codes[order], img_codes)
        return order[pos]

    @cached_property
    def parabolic_classes(self) -> dict[tuple, "ParabolicType"]:
        """Conjugacy key -> type, for every standard parabolic subgroup W_I."""
        rs = self.rs
        r = rs.rank
        found: dict[tuple, tuple] = {}
        for k in range(r + 1):
            for subset in combinations(range(r), k):
                roots = frozenset(
                    idx for idx, a in enumerate(rs.positive_roots) if all(a[i] == 0 for i in range(r) if i not in subset)
                )
                key = self.conjugacy_key(roots)
                if key not in found:
                    found[key] = _subsystem_type(self, roots)
        by_label: dict[str, list] = {}
        for key, (label, lengths, _) in found.items():
            by_label.setdefault(label, []).append(key)
        out = {}
        for label, keys in by_label.items():
            for cid, key in enumerate(sorted(keys)):
                out[key] = ParabolicType(label, cid, root_lengths=found[key][1])
        return out

    def conjugacy_key(self, roots: Iterable[int]) -> tuple:
        """Lexicographically least image of a positive-root index set under W."""
        roots = sorted(roots)
        if not roots:
            return ()
        n = len(self.rs.positive_roots)
        imgs = np.sort(self.root_permutations[:, roots] % n, axis=1)
        return tuple(int(x) for x in np.unique(imgs, axis=0)[0])


@lru_cache(maxsize=None)
def weyl_group(rs: RootSystemData) -> WeylGroup:
    return WeylGroup(rs)


def weyl_group_elements(rs: RootSystemData, budget: int | None = None) -> list[WeylElement]:
    """Every element of W; refuses groups larger than the budget."""
    if budget is not None:
        return WeylGroup(rs, budget).elements()
    return weyl_group(rs).elements()


# -- reflection subgroups ---------------------------------------------------


@dataclass(frozen=True, order=True)
class ParabolicType:
    """Type of a torus-point stabilizer.

    ``label`` is the Cartan type of its root subsystem ("empty", "A1",
    "A1+A1", "B2", ...).  ``class_id`` separates W-conjugacy classes sharing
    a label (B2 and G2 each have a long and a short A1 class).  Reflection
    subgroups that are not parabolic get ``class_id = -1``; stabilizers not
    generated by reflections are ``quasi``.
    """

    label: str
    class_id: int = 0
    quasi: bool = False
    root_lengths: tuple = field(default=(), compare=False)

    @property
    def parabolic(self) -> bool:
        return not self.quasi and self.class_id >= 0

    def __str__(self):
        if self.quasi:
            return "quasi-parabolic"
        if self.root_lengths and any(x != "mixed" for x in self.root_lengths):
            return f"{self.label}({','.join(self.root_lengths)})"
        return self.label


QUASI_PARABOLIC = ParabolicType("quasi-parabolic", -1, True)

_FAMILY_RANK_ORDER = {f: i for i, f in enumerate(FAMILIES)}


def _component_type(cm: list[list[int]], norms: list[int]) -> str:
    k = len(cm)
    if k == 1:
        return "A1"
    bonds = {(i, j): cm[i][j] * cm[j][i] for i in range(k) for j in range(i + 1, k) if cm[i][j]}
    mult = set(bonds.values())
    degree = [sum(1 for j in range(k) if j != i and cm[i][j]) for i in range(k)]
    if 3 in mult:
        return "G2"
    if 2 in mult:
        if k == 2:
            return "B2"
        if k == 4 and all(d <= 2 for d in degree):
            (i, j), = [e for e, b in bonds.items() if b == 2]
            if degree[i] == 2 and degree[j] == 2:
                return "F4"
        shortest = min(norms)
        n_short = sum(1 for x in norms if x == shortest)
        return f"B{k}" if n_short == 1 else f"C{k}"
    if max(degree) <= 2:
        return f"A{k}"
    center = degree.index(3)
    arms = []
    for nb in (j for j in range(k) if j != center and cm[center][j]):
        length, prev, cur = 1, center, nb
        while True:
            nxt = [j for j in range(k) if j not in (prev, cur) and cm[cur][j]]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{k}"
    return {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}[tuple(arms)]


def _subsystem_type(group: WeylGroup, roots: frozenset) -> tuple[str, tuple, int]:
    """(label, per-component root lengths, order of the reflection group)."""
    if not roots:
        return "empty", (), 1
    rs = group.rs
    n = len(rs.positive_roots)
    perm = group.root_permutations
    refl = group.reflection_indices
    roots = sorted(roots)
    simple = []
    for a in roots:
        images = perm[refl[a], [b for b in roots if b != a]]
        if np.all(images < n):
            simple.append(a)
    vecs = [rs.positive_roots[a] for a in simple]
    norms = [rs.root_norm(v) for v in vecs]
    k = len(vecs)
    cm = [[2 * rs.pairing(vecs[i], vecs[j]) // norms[i] for j in range(k)] for i in range(k)]
    # connected components
    comp = [-1] * k
    comps = []
    for s0 in range(k):
        if comp[s0] >= 0:
            continue
        stack, members = [s0], []
        comp[s0] = len(comps)
        while stack:
            i = stack.pop()
            members.append(i)
            for j in range(k):
                if cm[i][j] and comp[j] < 0:
                    comp[j] = len(comps)
                    stack.append(j)
        comps.append(sorted(members))
    ambient_norms = {rs.root_norm(a) for a in rs.positive_roots}
    two_lengths = len(ambient_norms) > 1
    long_norm = max(ambient_norms)
    parts = []
    for members in comps:
        sub = [[cm[i][j] for j in members] for i in members]
        label = _component_type(sub, [norms[i] for i in members])
        lens = {norms[i] for i in members}
        if not two_lengths:
            tag = ""
        elif len(lens) > 1:
            tag = "mixed"
        else:
            tag = "long" if lens == {long_norm} else "short"
        parts.append((label, tag))
    parts.sort(key=lambda x: (-int(x[0][1:]), _FAMILY_RANK_ORDER[x[0][0]], x[1]))
    label = "+".join(p[0] for p in parts)
    lengths = tuple(p[1] for p in parts) if two_lengths else ()
    order = prod(build_root_system(CartanType.parse(p[0])).weyl_order for p in parts)
    return label, lengths, order


def classify_indices(group: WeylGroup, members: Iterable[int]) -> ParabolicType:
    """Classify a subgroup given by element indices (assumed closed)."""
    members = set(int(i) for i in members)
    refl = group.reflection_indices
    roots = frozenset(k for k, idx in enumerate(refl) if int(idx) in members)
    label, lengths, order = _subsystem_type(group, roots)
    if order != len(members):
        return QUASI_PARABOLIC
    key = group.conjugacy_key(roots)
    found = group.parabolic_classes.get(key)
    if found is not None:
        return found
    return ParabolicType(label, -1, root_lengths=lengths)


class NotASubgroupError(ValueError):
    pass


def classify_reflection_subgroup(rs: RootSystemData, elements: Iterable[WeylElement]) -> ParabolicType:
    """Cartan type of the root subsystem ``{alpha : s_alpha in H}``, or the
    quasi-parabolic marker when H is not generated by its reflections."""
    group = weyl_group(rs)
    idx = set()
    for w in elements:
        try:
            idx.add(group.lookup(np.array(w.matrix, dtype=np.int64)))
        except KeyError:
            raise NotASubgroupError(f"{w.matrix} is not an element of W({rs.cartan_type})") from None
    if not idx:
        raise NotASubgroupError("empty set is not a subgroup")
    members = sorted(idx)
    mats = group.mats[members]
    for i in members:
        for prod_ in group.mats[i] @ mats:
            if group.index.get(prod_.tobytes()) not in idx:
                raise NotASubgroupError("elements are not closed under composition")
    return classify_indices(group, members)


# -- Coxeter-Catalan numbers ------------------------------------------------


def catalan_product(rs: RootSystemData, m: int) -> Fraction:
    """``prod(m + e_i) / |W|`` for any integer m (exponent convention)."""
    return Fraction(prod(m + e for e in rs.exponents), rs.weyl_order)


def coxeter_catalan(rs: RootSystemData, m: int) -> int | Fraction:
    """Rational Coxeter-Catalan number ``Cat_W(m, h) = prod(m + e_i) / |W|``.

    For ``gcd(m, h) != 1`` a warning is emitted; the value is returned as a
    :class:`~fractions.Fraction` when it is not an integer.
    """
    if m <= 0:
        raise ValueError(f"m must be positive, got {m}")
    h = rs.coxeter_number
    if gcd(m, h) != 1:
        warnings.warn(f"gcd(m={m}, h={h}) != 1 for {rs.cartan_type}", stacklevel=2)
    value = catalan_product(rs, m)
    return int(value) if value.denominator == 1 else value


def classical_catalan(rs: RootSystemData) -> Fraction:
    """``prod (h + d_i) / d_i``."""
    h = rs.coxeter_number
    return Fraction(prod(h + d for d in rs.degrees), prod(rs.degrees))
