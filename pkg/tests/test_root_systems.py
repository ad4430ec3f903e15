import json
from fractions import Fraction
from math import comb, gcd, prod

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rcatalan import (
    BudgetError,
    CartanType,
    WeylElement,
    build_root_system,
    classify_reflection_subgroup,
    coxeter_catalan,
    weyl_group_elements,
)
from rcatalan.root_systems import (
    NotASubgroupError,
    classical_catalan,
    reflection_matrix,
    simple_reflection_matrices,
    weyl_group,
)

SMALL = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "G2", "B4", "C4", "D4", "F4"]
ALL = SMALL + ["A5", "A6", "B5", "C5", "D5", "D6", "E6", "E7", "E8"]

# classical tables (Bourbaki)
EXPONENTS = {
    "E6": (1, 4, 5, 7, 8, 11),
    "E7": (1, 5, 7, 9, 11, 13, 17),
    "E8": (1, 7, 11, 13, 17, 19, 23, 29),
    "F4": (1, 5, 7, 11),
    "G2": (1, 5),
    "D4": (1, 3, 3, 5),
    "D5": (1, 3, 4, 5, 7),
}


def test_parse_and_validation():
    assert CartanType.parse("b2") == CartanType("B", 2)
    assert str(CartanType.parse(" g2 ")) == "G2"
    for bad in ["D3", "E9", "F3", "G3", "B1", "A0", "X2", "A"]:
        with pytest.raises(ValueError):
            CartanType.parse(bad)
    with pytest.raises(ValueError, match="A3"):
        CartanType("D", 3)


@pytest.mark.parametrize(
    "name,h,exps,order",
    [("A1", 2, (1,), 2), ("B2", 4, (1, 3), 8), ("G2", 6, (1, 5), 12), ("F4", 12, (1, 5, 7, 11), 1152)],
)
def test_build_examples(name, h, exps, order):
    rs = build_root_system(name)
    assert rs.coxeter_number == h
    assert rs.exponents == exps
    assert rs.weyl_order == order


@pytest.mark.parametrize("name", ALL)
def test_root_system_invariants(name):
    rs = build_root_system(name)
    r, hh = rs.rank, rs.coxeter_number
    assert rs.weyl_order == prod(rs.degrees)
    assert rs.degrees == tuple(e + 1 for e in rs.exponents)
    assert all(rs.exponents[i] + rs.exponents[r - 1 - i] == hh for i in range(r))
    assert len(rs.positive_roots) * 2 == r * hh
    assert hh == rs.exponents[-1] + 1 == max(rs.degrees)
    if name in EXPONENTS:
        assert rs.exponents == EXPONENTS[name]


@pytest.mark.parametrize("name", ALL)
def test_exponents_from_root_heights(name):
    """Exponents are the dual partition of the root-height distribution."""
    rs = build_root_system(name)
    heights = [sum(a) for a in rs.positive_roots]
    counts = [heights.count(k) for k in range(1, max(heights) + 1)]
    dual = sorted(sum(1 for c in counts if c > j) for j in range(counts[0]))
    assert tuple(dual) == tuple(sorted(rs.exponents))


def test_json_schema():
    d = json.loads(build_root_system("B2").to_json())
    assert d == {
        "type": "B2",
        "rank": 2,
        "cartan_matrix": [[2, -1], [-2, 2]],
        "exponents": [1, 3],
        "degrees": [2, 4],
        "coxeter_number": 4,
        "weyl_order": 8,
    }


def _closure_order(rs):
    """Independent closure oracle: BFS over products of simple reflections using tuples."""
    gens = [tuple(map(tuple, g)) for g in simple_reflection_matrices(rs)]
    r = rs.rank
    ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))

    def mul(a, b):
        return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(r)) for j in range(r)) for i in range(r))

    seen, frontier = {ident}, [ident]
    while frontier:
        frontier = [x for x in {mul(f, g) for f in frontier for g in gens} if x not in seen]
        seen.update(frontier)
    return len(seen)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4"])
def test_weyl_order_by_closure(name):
    rs = build_root_system(name)
    assert _closure_order(rs) == rs.weyl_order == len(weyl_group_elements(rs))


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3", "B3", "C3"])
def test_group_axioms(name):
    rs = build_root_system(name)
    els = weyl_group_elements(rs)
    mats = {w.matrix for w in els}
    assert len(mats) == rs.weyl_order
    assert any(w.is_identity() for w in els)
    for g in simple_reflection_matrices(rs):
        assert tuple(map(tuple, g)) in mats
    for u in els:
        inv = WeylElement.from_array(np.rint(np.linalg.inv(u.array)).astype(np.int64))
        assert inv.matrix in mats
        assert (u @ inv).is_identity()
        assert u.sign() == round(np.linalg.det(u.array))


def test_small_groups():
    a1 = weyl_group_elements(build_root_system("A1"))
    assert sorted(w.matrix for w in a1) == [((-1,),), ((1,),)]
    assert len(weyl_group_elements(build_root_system("A2"))) == 6
    assert len(weyl_group_elements(build_root_system("G2"))) == 12


def test_budget_refusal_names_order():
    with pytest.raises(BudgetError, match="696729600"):
        weyl_group_elements(build_root_system("E8"))
    with pytest.raises(BudgetError, match="51840"):
        weyl_group_elements(build_root_system("E6"), budget=1000)


@pytest.mark.parametrize("name", ["B3", "G2", "C3", "D4", "F4"])
def test_elements_permute_coroots(name):
    rs = build_root_system(name)
    group = weyl_group(rs)
    coroots = {tuple(c) for c in group.all_coroots}
    for mat in group.mats[:: max(1, len(group) // 60)]:
        assert {tuple(mat @ np.array(c)) for c in coroots} == coroots


@given(st.data())
def test_sign_is_multiplicative(data):
    rs = build_root_system(data.draw(st.sampled_from(["B3", "F4", "A4", "G2"])))
    group = weyl_group(rs)
    i = data.draw(st.integers(0, len(group) - 1))
    j = data.draw(st.integers(0, len(group) - 1))
    u, v = group.element(i), group.element(j)
    assert (u @ v).sign() == u.sign() * v.sign()
    assert round(np.linalg.det((u @ v).array)) == u.sign() * v.sign()


@given(st.data())
def test_element_orders_divide_group_order(data):
    rs = build_root_system(data.draw(st.sampled_from(["B3", "A3", "G2", "D4"])))
    group = weyl_group(rs)
    w = group.mats[data.draw(st.integers(0, len(group) - 1))]
    power, k = w.copy(), 1
    while not np.array_equal(power, np.eye(rs.rank, dtype=np.int64)):
        power, k = power @ w, k + 1
    assert rs.weyl_order % k == 0


def test_reflections_are_involutions():
    rs = build_root_system("G2")
    for root in rs.positive_roots:
        s = reflection_matrix(rs, root)
        assert np.array_equal(s @ s, np.eye(2, dtype=np.int64))
        assert round(np.linalg.det(s)) == -1


# -- classification ---------------------------------------------------------


def _generated(rs, gens):
    group = weyl_group(rs)
    idx = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for g in gens:
                k = group.lookup(group.mats[i] @ g)
                if k not in idx:
                    idx.add(k)
                    nxt.append(k)
        frontier = nxt
    return [group.element(i) for i in sorted(idx)]


def test_classify_examples():
    rs = build_root_system("B2")
    ident = [WeylElement.from_array(np.eye(2, dtype=np.int64))]
    assert classify_reflection_subgroup(rs, ident).label == "empty"
    assert classify_reflection_subgroup(rs, weyl_group_elements(rs)).label == "B2"
    s1, s2 = simple_reflection_matrices(rs)
    a = classify_reflection_subgroup(rs, _generated(rs, [s1]))
    b = classify_reflection_subgroup(rs, _generated(rs, [s2]))
    assert a.label == b.label == "A1"
    assert a != b
    assert {str(a), str(b)} == {"A1(long)", "A1(short)"}


def test_classify_rejects_non_subgroup():
    rs = build_root_system("B2")
    s1, s2 = simple_reflection_matrices(rs)
    with pytest.raises(NotASubgroupError):
        classify_reflection_subgroup(rs, [WeylElement.from_array(s1), WeylElement.from_array(s2)])


def test_classify_non_parabolic_reflection_subgroup():
    # the long roots of G2 form an A2 subsystem, which is not parabolic
    rs = build_root_system("G2")
    long_roots = [a for a in rs.positive_roots if rs.root_norm(a) == max(rs.root_norm(b) for b in rs.positive_roots)]
    ptype = classify_reflection_subgroup(rs, _generated(rs, [reflection_matrix(rs, a) for a in long_roots]))
    assert ptype.label == "A2" and ptype.class_id == -1 and not ptype.parabolic


def test_d4_has_three_classes_of_a1_squared_and_a3():
    group = weyl_group(build_root_system("D4"))
    labels = [pt.label for pt in group.parabolic_classes.values()]
    assert labels.count("A1+A1") == 3
    assert labels.count("A3") == 3


def test_label_is_conjugation_invariant():
    rs = build_root_system("B3")
    group = weyl_group(rs)
    s = simple_reflection_matrices(rs)
    sub = _generated(rs, [s[0], s[2]])
    base = classify_reflection_subgroup(rs, sub)
    for k in range(0, len(group), 7):
        g = group.mats[k]
        ginv = np.rint(np.linalg.inv(g)).astype(np.int64)
        conj = [WeylElement.from_array(g @ w.array @ ginv) for w in sub]
        assert classify_reflection_subgroup(rs, conj) == base


# -- Catalan numbers --------------------------------------------------------


@pytest.mark.parametrize("name,m,value", [("B2", 7, 10), ("B2", 31, 136), ("G2", 43, 176), ("A2", 4, 5)])
def test_catalan_examples(name, m, value):
    assert coxeter_catalan(build_root_system(name), m) == value


def test_catalan_errors_and_flags():
    rs = build_root_system("B2")
    with pytest.raises(ValueError):
        coxeter_catalan(rs, 0)
    with pytest.warns(UserWarning):
        value = coxeter_catalan(rs, 6)
    assert value == Fraction(7 * 9, 8)


@pytest.mark.parametrize("name", ALL)
def test_catalan_at_h_plus_one_is_classical(name):
    rs = build_root_system(name)
    assert coxeter_catalan(rs, rs.coxeter_number + 1) == classical_catalan(rs)


def test_type_a_rational_catalan():
    for n in range(1, 10):
        rs = build_root_system(f"A{n - 1}") if n > 1 else None
        for m in range(1, 101):
            if gcd(m, n) != 1 or rs is None:
                continue
            assert coxeter_catalan(rs, m) == Fraction(comb(m + n, n), m + n)
