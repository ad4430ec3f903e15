import pytest
from hypothesis import given
from hypothesis import strategies as st

from rcatalan import BudgetError, Partition, QTCoeff, SymFunc, convert, hall_inner, nabla, partitions
from rcatalan.macdonald import (
    htilde_to_p,
    macdonald_modified,
    macdonald_P_table,
    nabla_eigenvalue,
    p_to_htilde,
    star_inner,
)
from rcatalan.qt import ONE, ZERO
from rcatalan.symfunc import e, h, p, s

q, t = QTCoeff.q(), QTCoeff.t()
UP_TO_6 = [mu for n in range(1, 7) for mu in partitions(n)]


def test_htilde_examples():
    assert macdonald_modified((1,)) == s(1)
    assert macdonald_modified((2,)) == s(2) + q * s(1, 1)
    assert macdonald_modified((1, 1)) == s(2) + t * s(1, 1)
    assert macdonald_modified((2, 1)) == s(3) + (q + t) * s(2, 1) + q * t * s(1, 1, 1)
    assert macdonald_modified((3,)) == s(3) + (q + q**2) * s(2, 1) + q**3 * s(1, 1, 1)


@pytest.mark.parametrize("mu", UP_TO_6, ids=str)
def test_specialization_battery(mu):
    mu = Partition(mu)
    n = mu.size
    hmu = macdonald_modified(mu)
    assert macdonald_modified(mu.conjugate()) == hmu.swap_qt()
    at_one = convert(hmu.map_coefficients(lambda c: QTCoeff() + c.evaluate(1, 1)), "p")
    assert at_one == p(*([1] * n))
    assert hmu[(n,)] == ONE
    assert hmu[(1,) * n] == QTCoeff.monomial(mu.conjugate().n(), mu.n())
    assert all(c.nonnegative_integer_polynomial() for c in hmu.terms.values())


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_gram_schmidt_triangularity(n):
    table = macdonald_P_table(n)
    m_basis = {mu: convert(SymFunc("p", table[mu]), "m") for mu in partitions(n)}
    for mu, f in m_basis.items():
        assert f[mu] == ONE
        assert all(mu.dominates(lam) for lam in f.terms)


def test_gram_schmidt_order_independence():
    lex = list(partitions(6))
    alt = lex[:]
    for a, b in [((2, 2, 2), (3, 1, 1, 1)), ((3, 3), (4, 1, 1))]:
        i, j = alt.index(Partition(a)), alt.index(Partition(b))
        alt[i], alt[j] = alt[j], alt[i]
    assert alt != lex
    assert macdonald_P_table(6, alt) == macdonald_P_table(6, lex)


def test_gram_schmidt_rejects_bad_order():
    bad = list(reversed(partitions(4)))
    with pytest.raises(ValueError, match="dominance"):
        macdonald_P_table(4, bad)
    with pytest.raises(ValueError):
        macdonald_P_table(4, partitions(4)[:-1])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_star_orthogonality(n):
    basis = {mu: macdonald_modified(mu) for mu in partitions(n)}
    for mu in partitions(n):
        for nu in partitions(n):
            value = star_inner(basis[mu], basis[nu])
            assert (value == ZERO) == (mu != nu)


def test_htilde_expansion_round_trip():
    f = s(3) + q * s(2, 1) - e(1, 1, 1)
    expanded = p_to_htilde(convert(f, "p"))
    assert expanded.basis == "Htilde"
    assert convert(htilde_to_p(expanded), "s") == f
    assert convert(macdonald_modified((2, 1), "p"), "Htilde") == SymFunc("Htilde", {(2, 1): 1})


def test_nabla_examples():
    assert nabla(e(1)) == e(1)
    assert convert(nabla(e(2)), "s") == s(2) + (q + t) * s(1, 1)
    assert hall_inner(nabla(e(3)), e(3)) == q**3 + q**2 * t + q * t**2 + t**3 + q * t
    assert nabla_eigenvalue(Partition((2, 1))) == q * t


def test_nabla_keeps_basis():
    out = nabla(e(3))
    assert out.basis == "e" and out.degree == 3


@st.composite
def small_symfuncs(draw):
    n = draw(st.integers(1, 4))
    support = draw(st.lists(st.sampled_from(partitions(n)), min_size=1, max_size=3, unique=True))
    cs = [ONE, q, t - 1, ONE / 2, q * t + 3]
    return SymFunc(draw(st.sampled_from("ehmps")), {lam: draw(st.sampled_from(cs)) for lam in support}, n)


@given(small_symfuncs())
def test_nabla_is_invertible(f):
    g = nabla(f)
    assert g.degree == f.degree
    assert nabla(g, -1) == f
    assert nabla(nabla(f, 2), -2) == f


@pytest.mark.parametrize("n", range(1, 7))
def test_dimension_of_diagonal_coinvariants(n):
    value = hall_inner(nabla(e(n)), p(*([1] * n)))
    assert value.evaluate(1, 1) == (n + 1) ** (n - 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_frobenius_pairings_are_positive_and_symmetric(n):
    ne = nabla(e(n))
    for lam in partitions(n):
        value = hall_inner(h(*lam), ne)
        assert value.nonnegative_integer_polynomial()
        assert value.swap() == value


def test_budget():
    with pytest.raises(BudgetError):
        macdonald_modified((5, 4))
