"""Homogeneous symmetric functions with coefficients in Q(q, t).

All classical bases (``e``, ``h``, ``m``, ``p``, ``s``) are related through
the power-sum basis, whose transition tables are computed once per degree with
exact :class:`fractions.Fraction` arithmetic.  The modified Macdonald basis
``Htilde`` is handled in :mod:`rcatalan.macdonald`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from ._config import BudgetError, PoleError, max_degree
from .partitions import Partition, parse_partition, partitions
from .qt import ONE, ZERO, QTCoeff

BASES = ("e", "h", "m", "p", "s", "Htilde")
CLASSICAL = ("e", "h", "m", "p", "s")


class SymFunc:
    """A homogeneous symmetric function ``sum c_lambda * b[lambda]``.

    ``terms`` never stores zero coefficients.  Instances are treated as
    immutable.
    """

    __slots__ = ("basis", "terms", "degree")

    def __init__(self, basis: str, terms: Mapping | None = None, degree: int | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}")
        clean: dict[Partition, QTCoeff] = {}
        for lam, c in (terms or {}).items():
            lam = lam if isinstance(lam, Partition) else Partition(lam)
            c = c if isinstance(c, QTCoeff) else QTCoeff(c) if isinstance(c, int) else QTCoeff() + c
            if c:
                clean[lam] = clean.get(lam, ZERO) + c
                if not clean[lam]:
                    del clean[lam]
        sizes = {lam.size for lam in clean}
        if len(sizes) > 1:
            raise ValueError(f"inhomogeneous symmetric function: degrees {sorted(sizes)}")
        if sizes:
            (d,) = sizes
            if degree is not None and degree != d:
                raise ValueError(f"declared degree {degree} but terms have degree {d}")
            degree = d
        self.basis = basis
        self.terms = clean
        self.degree = 0 if degree is None else degree

    @classmethod
    def basis_element(cls, basis: str, lam) -> "SymFunc":
        lam = Partition(lam)
        return cls(basis, {lam: ONE}, lam.size)

    @classmethod
    def zero(cls, basis: str = "s", degree: int = 0) -> "SymFunc":
        return cls(basis, {}, degree)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "SymFunc") -> "SymFunc":
        if not isinstance(other, SymFunc):
            return NotImplemented
        other = _align(self, other)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, ZERO) + c
        return SymFunc(self.basis, out, self.degree if self.terms else other.degree)

    def __neg__(self) -> "SymFunc":
        return SymFunc(self.basis, {lam: -c for lam, c in self.terms.items()}, self.degree)

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        return SymFunc(self.basis, {lam: a * c for lam, a in self.terms.items()}, self.degree)

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, SymFunc):
            return NotImplemented
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        if self.degree != other.degree:
            return False
        if other.basis != self.basis:
            other = convert(other, self.basis)
        return self.terms == other.terms

    __hash__ = None

    def __getitem__(self, lam) -> QTCoeff:
        return self.terms.get(Partition(lam), ZERO)

    def coefficient(self, lam) -> QTCoeff:
        return self[lam]

    def map_coefficients(self, fn: Callable[[QTCoeff], QTCoeff]) -> "SymFunc":
        return SymFunc(self.basis, {lam: fn(c) for lam, c in self.terms.items()}, self.degree)

    def swap_qt(self) -> "SymFunc":
        return self.map_coefficients(QTCoeff.swap)

    def __iter__(self):
        return iter(sorted(self.terms.items(), reverse=True))

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return to_string(self)

    def __repr__(self):
        return f"SymFunc({to_string(self)!r})"


def e(*parts) -> SymFunc:
    return SymFunc.basis_element("e", _parts(parts))


def h(*parts) -> SymFunc:
    return SymFunc.basis_element("h", _parts(parts))


def m(*parts) -> SymFunc:
    return SymFunc.basis_element("m", _parts(parts))


def p(*parts) -> SymFunc:
    return SymFunc.basis_element("p", _parts(parts))


def s(*parts) -> SymFunc:
    return SymFunc.basis_element("s", _parts(parts))


def _parts(parts) -> Partition:
    if len(parts) == 1 and not isinstance(parts[0], int):
        parts = tuple(parts[0])
    return Partition(sorted(parts, reverse=True))


def _align(a: SymFunc, b: SymFunc) -> SymFunc:
    if not b.terms or b.basis == a.basis:
        return b
    if a.terms and a.degree != b.degree:
        raise ValueError(f"cannot add degree {a.degree} and degree {b.degree}")
    return convert(b, a.basis)


# -- transition tables ------------------------------------------------------


def _check_degree(n: int) -> None:
    if n > max_degree():
        raise BudgetError(f"degree {n} exceeds the symmetric function budget {max_degree()} (MAX_DEGREE)")


@lru_cache(maxsize=None)
def _p_in_m(lam: Partition) -> dict[Partition, int]:
    """Coefficients of p_lam in the monomial basis."""
    out: dict[Partition, int] = {}
    n = lam.size
    for mu in partitions(n):
        if mu.dominates(lam):
            c = _count_fillings(tuple(lam), tuple(mu))
            if c:
                out[mu] = c
    return out


@lru_cache(maxsize=None)
def _count_fillings(parts: tuple, bins: tuple) -> int:
    # ways to drop each part into a bin so that every bin is filled exactly
    if not parts:
        return 1 if not any(bins) else 0
    first, rest = parts[0], parts[1:]
    total = 0
    for i, cap in enumerate(bins):
        if cap >= first:
            nb = bins[:i] + (cap - first,) + bins[i + 1 :]
            total += _count_fillings(rest, nb)
    return total


@lru_cache(maxsize=None)
def kostka(lam: Partition, mu: tuple) -> int:
    """Number of semistandard tableaux of shape ``lam`` and content ``mu``."""
    mu = tuple(x for x in mu if x)
    if not mu:
        return 1 if not lam else 0
    if sum(lam) != sum(mu):
        return 0
    k = mu[-1]
    total = 0
    for nu in _horizontal_strips_removed(tuple(lam), k):
        total += kostka(Partition(nu), mu[:-1])
    return total


def _horizontal_strips_removed(lam: tuple, k: int):
    """Shapes nu with lam/nu a horizontal strip of size k."""
    rows = len(lam)

    def rec(i, remaining, acc):
        if i == rows:
            if remaining == 0:
                yield tuple(x for x in acc if x)
            return
        lower = lam[i + 1] if i + 1 < rows else 0
        for new in range(lam[i], lower - 1, -1):
            take = lam[i] - new
            if take > remaining:
                break
            yield from rec(i + 1, remaining - take, acc + [new])

    yield from rec(0, k, [])


def _power_sum_expansion_of_single(basis: str, k: int) -> dict[Partition, Fraction]:
    out = {}
    for rho in partitions(k):
        c = Fraction(1, rho.z())
        if basis == "e":
            c *= rho.sign()
        out[rho] = c
    return out


def _multiply_p(a: dict, b: dict) -> dict:
    out: dict[Partition, Fraction] = {}
    for r1, c1 in a.items():
        for r2, c2 in b.items():
            key = Partition(sorted(r1 + r2, reverse=True))
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _invert(rows: list[Partition], cols: list[Partition], mat: dict) -> dict:
    """Given ``b_row = sum_col mat[row][col] * c_col``, return the inverse
    expansions ``c_col = sum_row out[col][row] * b_row`` (exact Gauss-Jordan)."""
    n = len(rows)
    cidx = {c: j for j, c in enumerate(cols)}
    a = [[Fraction(0)] * n + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i, r in enumerate(rows):
        for c, v in mat[r].items():
            a[i][cidx[c]] = Fraction(v)
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = {}
    for j, c in enumerate(cols):
        out[c] = {rows[i]: a[j][n + i] for i in range(n) if a[j][n + i] != 0}
    return out


@lru_cache(maxsize=None)
def to_p_table(basis: str, n: int) -> dict[Partition, dict[Partition, Fraction]]:
    """``table[lam]`` is the p-expansion of ``basis[lam]``."""
    _check_degree(n)
    parts = partitions(n)
    if basis == "p":
        return {lam: {lam: Fraction(1)} for lam in parts}
    if basis in ("e", "h"):
        out = {}
        for lam in parts:
            acc = {Partition(): Fraction(1)}
            for k in lam:
                acc = _multiply_p(acc, _power_sum_expansion_of_single(basis, k))
            out[lam] = acc
        return out
    if basis == "m":
        # invert p_lam = sum_mu P[lam][mu] m_mu
        return _invert(parts, parts, {lam: _p_in_m(lam) for lam in parts})
    if basis == "s":
        m_to_p = to_p_table("m", n)
        out = {}
        for lam in parts:
            acc: dict[Partition, Fraction] = {}
            for mu in parts:
                k = kostka(lam, tuple(mu))
                if k:
                    for rho, c in m_to_p[mu].items():
                        acc[rho] = acc.get(rho, 0) + k * c
            out[lam] = {r: c for r, c in acc.items() if c}
        return out
    raise ValueError(f"no classical power-sum table for basis {basis!r}")


@lru_cache(maxsize=None)
def from_p_table(basis: str, n: int) -> dict[Partition, dict[Partition, Fraction]]:
    """``table[rho]`` is the ``basis``-expansion of ``p[rho]``."""
    _check_degree(n)
    parts = partitions(n)
    if basis == "m":
        return {lam: {mu: Fraction(c) for mu, c in _p_in_m(lam).items()} for lam in parts}
    fwd = to_p_table(basis, n)
    return _invert(parts, parts, fwd)


# -- conversion -------------------------------------------------------------


def _apply_table(f: SymFunc, table: dict, basis: str) -> SymFunc:
    acc: dict[Partition, list] = {}
    for lam, c in f.terms.items():
        for rho, a in table[lam].items():
            acc.setdefault(rho, []).append(c * a)
    out = {}
    for rho, items in acc.items():
        total = ZERO
        for x in items:
            total = total + x
        if total:
            out[rho] = total
    return SymFunc(basis, out, f.degree)


def to_p(f: SymFunc) -> SymFunc:
    if f.basis == "p" or not f.terms:
        return SymFunc("p", f.terms, f.degree)
    if f.basis == "Htilde":
        from .macdonald import htilde_to_p

        return htilde_to_p(f)
    return _apply_table(f, to_p_table(f.basis, f.degree), "p")


def convert(f: SymFunc, target: str) -> SymFunc:
    """Express ``f`` in the ``target`` basis."""
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if f.basis == target:
        return f
    if not f.terms:
        return SymFunc(target, {}, f.degree)
    _check_degree(f.degree)
    # direct tables avoid the p detour for the common m <-> classical moves
    if f.basis == "s" and target == "m":
        return _apply_table(f, _kostka_table(f.degree), "m")
    fp = to_p(f)
    if target == "p":
        return fp
    if target == "Htilde":
        from .macdonald import p_to_htilde

        return p_to_htilde(fp)
    return _apply_table(fp, from_p_table(target, f.degree), target)


@lru_cache(maxsize=None)
def _kostka_table(n: int):
    parts = partitions(n)
    return {lam: {mu: Fraction(kostka(lam, tuple(mu))) for mu in parts if kostka(lam, tuple(mu))} for lam in parts}


# -- products ---------------------------------------------------------------

_DUAL = {("h", "m"), ("m", "h"), ("s", "s"), ("p", "p")}


def hall_inner(f: SymFunc, g: SymFunc) -> QTCoeff:
    """Hall scalar product; zero when the degrees differ."""
    if not f.terms or not g.terms or f.degree != g.degree:
        return ZERO
    if (f.basis, g.basis) in _DUAL:
        weight = (lambda lam: lam.z()) if f.basis == "p" else (lambda lam: 1)
        total = ZERO
        for lam, c in f.terms.items():
            d = g.terms.get(lam)
            if d is not None:
                total = total + c * d * weight(lam)
        return total
    if f.basis == "h":
        return hall_inner(f, convert(g, "m"))
    if g.basis == "h":
        return hall_inner(convert(f, "m"), g)
    if f.basis == "m":
        return hall_inner(f, convert(g, "h"))
    if g.basis == "m":
        return hall_inner(convert(f, "h"), g)
    return hall_inner(to_p(f), to_p(g))


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    """Product, returned in the basis of ``f``."""
    n = f.degree + g.degree
    fp, gp = to_p(f), to_p(g)
    out: dict[Partition, QTCoeff] = {}
    for r1, c1 in fp.terms.items():
        for r2, c2 in gp.terms.items():
            key = Partition(sorted(r1 + r2, reverse=True))
            out[key] = out.get(key, ZERO) + c1 * c2
    return convert(SymFunc("p", out, n), f.basis)


def omega(f: SymFunc) -> SymFunc:
    """The involution with p_k -> (-1)^(k-1) p_k."""
    if f.basis in ("e", "h"):
        return SymFunc("h" if f.basis == "e" else "e", f.terms, f.degree)
    if f.basis == "s":
        return SymFunc("s", {lam.conjugate(): c for lam, c in f.terms.items()}, f.degree)
    fp = to_p(f)
    out = SymFunc("p", {lam: c * lam.sign() for lam, c in fp.terms.items()}, f.degree)
    return convert(out, f.basis)


def plethystic_scale(f: SymFunc, rule: Callable[[int], QTCoeff]) -> SymFunc:
    """Rescale ``p_k -> rule(k) * p_k`` multiplicatively; result in ``f``'s basis."""
    fp = to_p(f)
    cache: dict[int, QTCoeff] = {}

    def c(k: int) -> QTCoeff:
        if k not in cache:
            try:
                val = rule(k)
            except ZeroDivisionError as exc:
                raise PoleError(f"plethystic rule has a pole at k={k}") from exc
            cache[k] = val if isinstance(val, QTCoeff) else QTCoeff() + val
        return cache[k]

    out = {}
    for lam, a in fp.terms.items():
        factor = ONE
        for k in lam:
            factor = factor * c(k)
        out[lam] = a * factor
    return convert(SymFunc("p", out, f.degree), f.basis)


def scalar_alphabet(a: QTCoeff) -> Callable[[int], QTCoeff]:
    """Rule for the substitution X -> X * A with A a rational expression in q, t.

    ``p_k[X A] = p_k[X] * A(q^k, t^k)``; e.g. ``A = 1/(1-t)`` gives ``X/(1-t)``.
    """
    a = a if isinstance(a, QTCoeff) else QTCoeff() + a
    return lambda k: a.scale_powers(k)


def evaluate_qt(x, q0, t0):
    """Exact specialization of a :class:`QTCoeff` or every coefficient of a
    :class:`SymFunc` at ``q = q0, t = t0``."""
    if isinstance(x, QTCoeff):
        return x.evaluate(q0, t0)
    if isinstance(x, SymFunc):
        out = {}
        for lam, c in x.terms.items():
            v = c.evaluate(q0, t0)
            if v:
                out[lam] = QTCoeff() + v
        return SymFunc(x.basis, out, x.degree)
    raise TypeError(f"cannot evaluate {type(x).__name__}")


# -- text format ------------------------------------------------------------


def to_string(f: SymFunc) -> str:
    """``"1*s[2] + (q+t)*s[1,1]"``; terms in decreasing lexicographic order."""
    if not f.terms:
        return "0"
    return " + ".join(f"{c.as_factor()}*{f.basis}{lam}" for lam, c in sorted(f.terms.items(), reverse=True))


_TERM = re.compile(r"^(?P<coeff>.*?)\s*\*\s*(?P<basis>Htilde|[ehmps])\[(?P<parts>[0-9,\s]*)\]$", re.S)


def _split_top_level(text: str) -> Iterable[str]:
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "+" and depth == 0:
            yield text[start:i]
            start = i + 1
    yield text[start:]


def parse_symfunc(text: str) -> SymFunc:
    """Inverse of :func:`to_string`."""
    text = text.strip()
    if text == "0":
        return SymFunc.zero()
    basis = None
    terms: dict[Partition, QTCoeff] = {}
    for chunk in _split_top_level(text):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"empty term in {text!r}")
        match = _TERM.match(chunk)
        if match is None:
            raise ValueError(f"cannot parse term {chunk!r}")
        b = match["basis"]
        if basis is not None and b != basis:
            raise ValueError(f"mixed bases {basis!r} and {b!r} in {text!r}")
        basis = b
        lam = parse_partition(match["parts"])
        coeff = QTCoeff.parse(match["coeff"]) if match["coeff"].strip() else ONE
        terms[lam] = terms.get(lam, ZERO) + coeff
    return SymFunc(basis, terms)
