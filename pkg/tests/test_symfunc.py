from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rcatalan import (
    BudgetError,
    Partition,
    PoleError,
    QTCoeff,
    SymFunc,
    convert,
    evaluate_qt,
    hall_inner,
    omega,
    parse_symfunc,
    partitions,
    plethystic_scale,
    to_string,
)
from rcatalan.qt import ONE, ZERO
from rcatalan.symfunc import e, h, kostka, m, multiply, p, s, scalar_alphabet

q, t = QTCoeff.q(), QTCoeff.t()
SMALL_COEFFS = [ONE, -ONE, 2 * ONE, q, t, q + t, 1 - q * t, ONE / 3, q / (1 - t)]


@st.composite
def symfuncs(draw, max_degree=5, bases="ehmps"):
    n = draw(st.integers(1, max_degree))
    basis = draw(st.sampled_from(bases))
    support = draw(st.lists(st.sampled_from(partitions(n)), min_size=1, max_size=4, unique=True))
    return SymFunc(basis, {lam: draw(st.sampled_from(SMALL_COEFFS)) for lam in support}, n)


def test_convert_examples():
    assert convert(e(2), "m") == SymFunc("m", {(1, 1): 1})
    assert convert(s(2), "m") == SymFunc("m", {(2,): 1, (1, 1): 1})
    assert convert(h(2), "p") == SymFunc("p", {(2,): ONE / 2, (1, 1): ONE / 2})
    assert convert(p(2), "s") == SymFunc("s", {(2,): 1, (1, 1): -1})


@given(symfuncs(), st.sampled_from("ehmps"))
def test_round_trip(f, basis):
    g = convert(f, basis)
    assert g.basis == basis
    back = convert(g, f.basis)
    assert back.basis == f.basis and back.terms == f.terms


def test_kostka_numbers():
    assert kostka(Partition((2, 1)), (1, 1, 1)) == 2
    assert kostka(Partition((3, 2)), (2, 2, 1)) == 2
    assert kostka(Partition((2, 2)), (3, 1)) == 0
    # sum_lambda K_{lambda,1^n} * f^lambda = n!, with f^lambda = K_{lambda,1^n}
    for n in range(1, 7):
        ones = (1,) * n
        total = sum(kostka(lam, ones) ** 2 for lam in partitions(n))
        assert total == [1, 2, 6, 24, 120, 720][n - 1]


def test_hall_examples():
    assert hall_inner(h(2, 1), m(2, 1)) == ONE
    assert hall_inner(p(1, 1), p(1, 1)) == 2 * ONE
    assert hall_inner(p(2), p(1, 1)) == ZERO
    assert hall_inner(s(2), e(3)) == ZERO


@pytest.mark.parametrize("n", range(1, 6))
def test_dual_bases(n):
    ps = partitions(n)
    for lam in ps:
        for mu in ps:
            delta = ONE if lam == mu else ZERO
            assert hall_inner(s(*lam), s(*mu)) == delta
            assert hall_inner(h(*lam), m(*mu)) == delta
            assert hall_inner(p(*lam), p(*mu)) == (lam.z() * ONE if lam == mu else ZERO)


@given(symfuncs(), symfuncs())
def test_hall_is_symmetric(f, g):
    assert hall_inner(f, g) == hall_inner(g, f)


def test_omega_examples():
    assert omega(e(3)) == h(3)
    assert omega(s(2, 1)) == s(2, 1)
    for lam in partitions(5):
        assert omega(s(*lam)) == s(*lam.conjugate())


@given(symfuncs(max_degree=6))
def test_omega_is_involution(f):
    assert omega(omega(f)) == f


@given(symfuncs(max_degree=6), symfuncs(max_degree=6))
def test_omega_is_isometry(f, g):
    assert hall_inner(omega(f), omega(g)) == hall_inner(f, g)


def test_multiplication():
    assert multiply(e(1), e(1)) == e(1, 1)
    assert h(1) * h(1) == s(2) + s(1, 1)
    assert s(1) * s(1, 1) == s(2, 1) + s(1, 1, 1)


def test_plethystic_examples():
    f = s(2, 1) + q * s(3)
    assert plethystic_scale(f, lambda k: ONE) == f
    over = plethystic_scale(p(2), lambda k: 1 / (1 - t**k))
    assert over == SymFunc("p", {(2,): 1 / (1 - t**2)})
    times = plethystic_scale(h(1), scalar_alphabet(1 - q))
    assert times == (1 - q) * h(1)


@given(symfuncs(max_degree=4))
def test_plethystic_inverse(f):
    there = plethystic_scale(f, lambda k: 1 / (1 - t**k))
    back = plethystic_scale(there, lambda k: 1 - t**k)
    assert back == f


def test_plethystic_pole():
    with pytest.raises(PoleError):
        plethystic_scale(p(2, 1), lambda k: 1 / (q**k - q))


def test_evaluate_examples():
    assert evaluate_qt(q + t, 1, 1) == 2
    assert evaluate_qt((1 - q**2) / (1 - q), 1, 1) == 2
    with pytest.raises(PoleError):
        evaluate_qt(1 / (1 - q), 1, 1)
    special = evaluate_qt(s(2) + (q + t) * s(1, 1), 1, 1)
    assert special == s(2) + 2 * s(1, 1)


def test_string_format():
    f = s(2) + (q + t) * s(1, 1)
    assert to_string(f) == "1*s[2] + (q+t)*s[1,1]"
    assert parse_symfunc("(q+t)*s[1,1] + 1*s[2]") == f
    assert parse_symfunc("(q^2+1)/(1-t)*m[2,1] + 3*m[3]") == SymFunc("m", {(2, 1): (q**2 + 1) / (1 - t), (3,): 3})
    assert to_string(SymFunc.zero("s", 3)) == "0"
    with pytest.raises(ValueError):
        parse_symfunc("1*s[2] + q*m[1,1]")
    with pytest.raises(ValueError):
        parse_symfunc("s[2]]")


@given(symfuncs())
def test_string_round_trip(f):
    assert parse_symfunc(to_string(f)).terms == f.terms


def test_homogeneity_and_zeros():
    with pytest.raises(ValueError):
        SymFunc("s", {(2,): 1, (1,): 1})
    f = SymFunc("s", {(2,): q, (1, 1): 0})
    assert list(f.terms) == [Partition((2,))]
    assert (f - f).terms == {}
    with pytest.raises(ValueError):
        SymFunc("x", {})


def test_degree_budget():
    with pytest.raises(BudgetError):
        convert(e(10), "s")


def test_equality_across_bases():
    assert e(2) == SymFunc("s", {(1, 1): 1})
    assert h(2) != e(2)
    assert h(2, 1)[(2, 1)] == ONE
    assert Fraction(1, 2) * p(2) == SymFunc("p", {(2,): ONE / 2})
