"""Modified Macdonald polynomials and the nabla operator.

Construction: Gram-Schmidt on the monomial basis against the (q,t)-deformed
Hall product ``<p_lam, p_mu>_{q,t} = delta * z_lam * prod (1-q^lam_i)/(1-t^lam_i)``
yields ``P_mu``; then ``J_mu = c_mu(q,t) P_mu``, ``H_mu = J_mu[X/(1-t)]`` and
``Htilde_mu(X;q,t) = t^{n(mu)} H_mu(X;q,1/t)``.

Expansions in the ``Htilde`` basis use its orthogonality for the star product
``<p_lam, p_mu>_* = delta * (-1)^{|mu|-l(mu)} z_mu prod (1-q^mu_i)(1-t^mu_i)``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from ._config import BudgetError, max_macdonald
from .partitions import Partition, partitions
from .qt import ONE, ZERO, QTCoeff
from .symfunc import SymFunc, convert, to_p, to_p_table

_q = QTCoeff.q()
_t = QTCoeff.t()


def _check(n: int) -> None:
    if n > max_macdonald():
        raise BudgetError(f"degree {n} exceeds the Macdonald budget {max_macdonald()} (MAX_MACDONALD)")


def _one_minus(x: QTCoeff, k: int) -> QTCoeff:
    return ONE - x**k


def qt_weight(lam: Partition) -> QTCoeff:
    w = QTCoeff(lam.z())
    for k in lam:
        w = w * _one_minus(_q, k) / _one_minus(_t, k)
    return w


def star_weight(lam: Partition) -> QTCoeff:
    w = QTCoeff(lam.z() * lam.sign())
    for k in lam:
        w = w * _one_minus(_q, k) * _one_minus(_t, k)
    return w


def _inner(u: dict, v: dict, weight) -> QTCoeff:
    if len(v) < len(u):
        u, v = v, u
    total = ZERO
    for lam, a in u.items():
        b = v.get(lam)
        if b is not None:
            total = total + a * b * weight(lam)
    return total


@lru_cache(maxsize=None)
def _m_in_p_qt(n: int) -> dict:
    return {mu: {rho: QTCoeff() + c for rho, c in row.items()} for mu, row in to_p_table("m", n).items()}


def macdonald_P_table(n: int, order: Sequence[Partition] | None = None) -> dict[Partition, dict]:
    """Macdonald ``P_mu`` for every ``mu`` of ``n``, as power-sum coefficient maps.

    ``order`` must be a linear extension of dominance order, smallest first;
    the default is increasing lexicographic order.
    """
    _check(n)
    if order is None:
        return _P_table_default(n)
    return _gram_schmidt(n, tuple(order))


@lru_cache(maxsize=None)
def _P_table_default(n: int) -> dict:
    return _gram_schmidt(n, tuple(partitions(n)))


def _gram_schmidt(n: int, order: tuple) -> dict:
    if sorted(order) != partitions(n):
        raise ValueError("order must list every partition of n exactly once")
    for i, mu in enumerate(order):
        for nu in order[i + 1 :]:
            if mu != nu and mu.dominates(nu):
                raise ValueError(f"order is not a linear extension of dominance: {mu} before {nu}")
    weights = {lam: qt_weight(lam) for lam in partitions(n)}
    w = weights.__getitem__
    m_in_p = _m_in_p_qt(n)
    done: list[tuple[Partition, dict, QTCoeff]] = []
    out = {}
    for mu in order:
        vec = dict(m_in_p[mu])
        base = m_in_p[mu]
        for nu, pnu, norm in done:
            c = _inner(base, pnu, w)
            if not c:
                continue
            c = c / norm
            for lam, a in pnu.items():
                vec[lam] = vec.get(lam, ZERO) - c * a
        vec = {lam: a for lam, a in vec.items() if a}
        done.append((mu, vec, _inner(vec, vec, w)))
        out[mu] = vec
    return out


def c_mu(mu: Partition) -> QTCoeff:
    """Integral-form normalizer prod over cells of (1 - q^arm t^(leg+1))."""
    out = ONE
    conj = mu.conjugate()
    for i, j in mu.cells():
        arm = mu[i] - j - 1
        leg = conj[j] - i - 1
        out = out * (ONE - QTCoeff.monomial(arm, leg + 1))
    return out


def nabla_eigenvalue(mu: Partition) -> QTCoeff:
    """q^{n(mu')} t^{n(mu)}."""
    return QTCoeff.monomial(mu.conjugate().n(), mu.n())


@lru_cache(maxsize=None)
def _htilde_p(mu: Partition) -> dict:
    n = mu.size
    P = macdonald_P_table(n)[mu]
    c = c_mu(mu)
    tn = QTCoeff.monomial(0, mu.n())
    out = {}
    for rho, a in P.items():
        coeff = a * c
        for k in rho:
            coeff = coeff / _one_minus(_t, k)
        coeff = coeff.invert_t() * tn
        if coeff:
            out[rho] = coeff
    return out


def macdonald_modified(mu, basis: str = "s") -> SymFunc:
    """The modified Macdonald polynomial ``Htilde_mu(X; q, t)``."""
    mu = Partition(mu)
    _check(mu.size)
    if mu.size == 0:
        return SymFunc(basis, {Partition(): ONE}, 0)
    return convert(SymFunc("p", _htilde_p(mu), mu.size), basis)


@lru_cache(maxsize=None)
def _star_norm(mu: Partition) -> QTCoeff:
    return _inner(_htilde_p(mu), _htilde_p(mu), star_weight)


def star_inner(f: SymFunc, g: SymFunc) -> QTCoeff:
    if f.degree != g.degree:
        return ZERO
    return _inner(to_p(f).terms, to_p(g).terms, star_weight)


def htilde_to_p(f: SymFunc) -> SymFunc:
    _check(f.degree)
    out: dict[Partition, QTCoeff] = {}
    for mu, c in f.terms.items():
        for rho, a in _htilde_p(mu).items():
            out[rho] = out.get(rho, ZERO) + c * a
    return SymFunc("p", out, f.degree)


def p_to_htilde(fp: SymFunc) -> SymFunc:
    n = fp.degree
    _check(n)
    out = {}
    for mu in partitions(n):
        num = _inner(fp.terms, _htilde_p(mu), star_weight)
        if num:
            out[mu] = num / _star_norm(mu)
    return SymFunc("Htilde", out, n)


def nabla(f: SymFunc, power: int = 1) -> SymFunc:
    """Apply ``nabla**power`` (``power`` may be negative); result in ``f``'s basis."""
    if not f.terms:
        return f
    _check(f.degree)
    expanded = f if f.basis == "Htilde" else convert(f, "Htilde")
    scaled = SymFunc(
        "Htilde",
        {mu: c * nabla_eigenvalue(mu) ** power for mu, c in expanded.terms.items()},
        f.degree,
    )
    return convert(scaled, f.basis)
