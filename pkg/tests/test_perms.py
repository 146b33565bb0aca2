"""Tests for the permutation engine and stabilizer chain."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelmax import CapacityError
from abelmax.perms import PermGroup, Permutation


def cycles(degree, *cs):
    return Permutation.from_cycles(degree, cs)


@pytest.fixture(scope="module")
def s3():
    return PermGroup([cycles(3, (0, 1)), cycles(3, (0, 1, 2))])


@pytest.fixture(scope="module")
def s4():
    return PermGroup([cycles(4, (0, 1)), cycles(4, (0, 1, 2, 3))])


@pytest.fixture(scope="module")
def d8():
    # dihedral of order 8 on the square 0-1-2-3
    return PermGroup([cycles(4, (0, 1, 2, 3)), cycles(4, (1, 3))])


# ── permutation algebra ─────────────────────────────────────────────

def test_compose_transposition_squares_to_identity():
    t = cycles(3, (0, 1))
    assert (t * t).is_identity()


def test_invert_three_cycle():
    assert cycles(3, (0, 1, 2)).inverse() == cycles(3, (0, 2, 1))


def test_order_of_element():
    assert cycles(5, (0, 1, 2, 3, 4)).order() == 5
    assert cycles(6, (0, 1), (2, 3, 4)).order() == 6
    assert Permutation.identity(4).order() == 1


def test_degree_mismatch_rejected():
    with pytest.raises(ValueError):
        cycles(3, (0, 1)) * cycles(4, (0, 1))


def test_not_a_permutation_rejected():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_cycle_roundtrip():
    p = cycles(7, (0, 3, 5), (1, 2))
    assert p.cycle_string() == "(0,3,5)(1,2)"
    assert p.cycle_string(one_indexed=True) == "(1,4,6)(2,3)"
    assert Permutation.from_cycles(7, p.cycles()) == p


@given(st.permutations(list(range(7))), st.permutations(list(range(7))))
@settings(max_examples=50)
def test_algebra_properties(a_imgs, b_imgs):
    a, b = Permutation(a_imgs), Permutation(b_imgs)
    assert (a * a.inverse()).is_identity()
    assert (a * b).inverse() == b.inverse() * a.inverse()
    assert a ** a.order() == Permutation.identity(7)


# ── group construction and order ────────────────────────────────────

def test_symmetric_and_alternating_orders():
    s5 = PermGroup([cycles(5, (0, 1)), cycles(5, (0, 1, 2, 3, 4))])
    a5 = PermGroup([cycles(5, (0, 1, 2)), cycles(5, (0, 1, 2, 3, 4))])
    assert s5.order_value == 120
    assert a5.order_value == 60


def test_empty_generators_rejected():
    with pytest.raises(ValueError):
        PermGroup([])
    assert PermGroup.trivial(5).order_value == 1


def test_mixed_degrees_rejected():
    with pytest.raises(ValueError):
        PermGroup([cycles(3, (0, 1)), cycles(4, (0, 1))])


def test_membership(s4):
    assert s4.contains(cycles(4, (0, 2), (1, 3)))
    v = cycles(4, (0, 1, 2))
    assert s4.contains(v)
    a4 = PermGroup([cycles(4, (0, 1, 2)), cycles(4, (1, 2, 3))])
    assert not a4.contains(cycles(4, (0, 1)))


def test_chain_is_deterministic(s4):
    again = PermGroup(s4.generators)
    assert again.chain.base == s4.chain.base
    assert [len(t) for t in again.chain._transversals] == [
        len(t) for t in s4.chain._transversals
    ]


# ── enumeration ─────────────────────────────────────────────────────

def test_enumerate_s3(s3):
    elems = s3.enumerate_elements()
    assert len(elems) == 6
    assert len(set(elems)) == 6
    assert elems[0].is_identity()


def test_enumerate_d8(d8):
    assert d8.order_value == 8
    assert len(d8.enumerate_elements()) == 8


def test_enumeration_cap_is_explicit(s4):
    with pytest.raises(CapacityError):
        PermGroup(
            [cycles(9, (0, 1)), cycles(9, tuple(range(9)))]
        ).element_table(cap=1000)


def test_enumeration_closed_under_product(s4):
    elems = s4.enumerate_elements()
    rng = np.random.default_rng(7)
    for _ in range(200):
        i, j = rng.integers(0, len(elems), 2)
        assert s4.contains(elems[int(i)] * elems[int(j)])


def test_build_order_equals_enumeration_length():
    for gens in [
        [cycles(6, (0, 1, 2), (3, 4, 5)), cycles(6, (0, 3))],
        [cycles(7, (0, 1, 2, 3, 4, 5, 6)), cycles(7, (1, 2, 4))],
    ]:
        g = PermGroup(gens)
        assert g.order_value == len(g.enumerate_elements())


# ── centralizers ────────────────────────────────────────────────────

def test_centralizer_examples(s3, d8):
    assert s3.centralizer([cycles(3, (0, 1))]).order == 2
    assert s3.centralizer([Permutation.identity(3)]).order == 6
    rot = cycles(4, (0, 1, 2, 3))
    c = d8.centralizer([rot])
    assert c.order == 4
    assert c.group().is_abelian()


def test_centralizer_brute_force_agreement(d8):
    rot = cycles(4, (0, 1, 2, 3))
    brute = [x for x in d8.enumerate_elements() if x * rot == rot * x]
    assert d8.centralizer([rot]).order == len(brute)


def test_centralizer_is_subgroup(s4):
    c = s4.centralizer([cycles(4, (0, 1))])
    elems = c.elements()
    eset = set(elems)
    for a in elems:
        assert a.inverse() in eset
        for b in elems:
            assert a * b in eset


def test_centralizer_rejects_non_member():
    with pytest.raises(ValueError):
        PermGroup([cycles(4, (0, 1, 2))]).centralizer([cycles(4, (0, 1))])


def test_center_of_d8(d8):
    z = d8.center()
    assert z.order == 2
    assert z.group().contains(cycles(4, (0, 2), (1, 3)))


# ── normality ───────────────────────────────────────────────────────

def test_a3_normal_in_s3(s3):
    a3 = s3.centralizer([cycles(3, (0, 1, 2))])
    assert a3.order == 3
    assert s3.is_normal(a3)


def test_two_cycle_subgroup_not_normal(s3):
    from abelmax.perms import SubgroupHandle

    h = SubgroupHandle(s3, [cycles(3, (0, 1))], 2)
    assert not s3.is_normal(h)


def test_normal_closure_v4(s4):
    v4 = s4.normal_closure([cycles(4, (0, 1), (2, 3))])
    assert v4.order == 4
    assert s4.is_normal(v4)
    # brute check: the closure is exactly the set of conjugates' span
    elems = {e for e in v4.elements()}
    assert all(e.order() in (1, 2) for e in elems)


def test_minimal_normal_subgroups(s3, s4):
    assert [m.order for m in s4.minimal_normal_subgroups()] == [4]
    assert [m.order for m in s3.minimal_normal_subgroups()] == [3]
    a5 = PermGroup([cycles(5, (0, 1, 2)), cycles(5, (0, 1, 2, 3, 4))])
    assert [m.order for m in a5.minimal_normal_subgroups()] == [60]


def test_minimal_normal_subgroups_brute(s4):
    # brute-force reference: all normal subgroups of S4 are 1, V4, A4, S4
    table = s4.element_table()
    normal_orders = set()
    for r, cls in zip(*s4.conjugacy_classes()):
        n = s4.normal_closure([table.permutation(r)])
        normal_orders.add(n.order)
    assert normal_orders == {1, 4, 12, 24}


def test_is_simple():
    a5 = PermGroup([cycles(5, (0, 1, 2)), cycles(5, (0, 1, 2, 3, 4))])
    s4 = PermGroup([cycles(4, (0, 1)), cycles(4, (0, 1, 2, 3))])
    c7 = PermGroup([cycles(7, tuple(range(7)))])
    assert a5.is_simple()
    assert not s4.is_simple()
    assert c7.is_simple()  # simple abelian; callers distinguish


def test_minimal_normal_subgroups_against_closure_lattice():
    # brute reference: minimal elements among all normal closures
    from abelmax import catalog as cat

    for spec in ["sym:4", "dihedral:12", "frobenius:5:4", "agammal1:3", "cyclic:12"]:
        g = cat.build_group(spec)
        table = g.element_table()
        closures = []
        for r in g.conjugacy_classes()[0]:
            if r == 0:
                continue
            n = g.normal_closure([table.permutation(r)])
            if not any(
                m.order == n.order and all(m.group().contains(x) for x in n.generators)
                for m in closures
            ):
                closures.append(n)
        brute_minimal = sorted(
            n.order
            for n in closures
            if not any(
                m.order < n.order and all(n.group().contains(x) for x in m.generators)
                for m in closures
            )
        )
        got = [h.order for h in g.minimal_normal_subgroups()]
        assert sorted(got) == brute_minimal
        for h in g.minimal_normal_subgroups():
            assert h.order > 1
            assert g.is_normal(h)


# ── conjugacy classes ───────────────────────────────────────────────

def test_conjugacy_classes_s4(s4):
    reps, classes = s4.conjugacy_classes()
    assert sorted(len(c) for c in classes) == [1, 3, 6, 6, 8]
    assert sum(len(c) for c in classes) == 24
    # class function sanity: all members share the element order
    table = s4.element_table()
    for cls in classes:
        assert len({int(table.orders[i]) for i in cls}) == 1


# ── Sylow subgroups ─────────────────────────────────────────────────

def test_sylow_s4(s4):
    p2 = s4.sylow_subgroup(2)
    assert p2.order == 8
    g = p2.group()
    orders = sorted(e.order() for e in g.enumerate_elements())
    assert orders == [1, 2, 2, 2, 2, 2, 4, 4]  # dihedral profile
    assert s4.sylow_subgroup(3).order == 3


def test_sylow_s6_three():
    s6 = PermGroup([cycles(6, (0, 1)), cycles(6, tuple(range(6)))])
    p3 = s6.sylow_subgroup(3)
    assert p3.order == 9
    assert p3.group().is_abelian()
    # elementary abelian: every non-identity element has order 3
    assert sorted(e.order() for e in p3.elements()) == [1] + [3] * 8


def test_sylow_rejects_non_divisor(s4):
    with pytest.raises(ValueError):
        s4.sylow_subgroup(5)


def test_sylow_orders_match_p_part():
    g = PermGroup([cycles(7, (0, 1, 2, 3, 4, 5, 6)), cycles(7, (1, 2, 4))])
    for p in g.order.factors:
        assert g.sylow_subgroup(p).order == g.order.p_part(p)


# ── subgroup handles ────────────────────────────────────────────────

def test_subgroup_handle_validates_membership(s3):
    from abelmax.perms import SubgroupHandle

    with pytest.raises(ValueError):
        SubgroupHandle(
            PermGroup([cycles(4, (0, 1, 2))]), [cycles(4, (0, 1))], 2
        )
