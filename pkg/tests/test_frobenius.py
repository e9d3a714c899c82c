import itertools
import random

import pytest
from hypothesis import given, settings

from relcat import fixtures
from relcat.errors import CapExceeded, MultiValued, NonAssociativeProduct
from relcat.frobenius import (
    FrobCandidate,
    HStarCandidate,
    apply_star,
    canonical_star,
    check_A,
    check_F,
    check_frobenius,
    check_H,
    check_hstar,
    check_M,
    check_U,
    composable,
    mult,
    replay,
    unit_candidates,
)
from relcat.relcore import FinSet, Rel, product_set
from relcat.report import all_pass

from helpers import carrier, magmas, random_involution, table_candidate

EA = FinSet("X", ["e", "a"])
AB = FinSet("X", ["a", "b"])


def Z2():
    return fixtures.frob(fixtures.z2_table)


def SL2():
    return fixtures.frob(fixtures.sl2_table)


def rel_on(X, pairs):
    return FrobCandidate(X, Rel.from_pairs(product_set(X, X), X, pairs))


def test_mult_and_composable():
    assert mult(Z2(), "a", "a") == "e"
    assert mult(SL2(), "e", "a") == "a"
    d2 = fixtures.frob(fixtures.d2_table)
    assert not composable(d2, "u", "v")
    assert mult(d2, "u", "v") is None
    c = rel_on(EA, [(("e", "e"), "e"), (("e", "e"), "a")])
    with pytest.raises(MultiValued):
        mult(c, "e", "e")


def test_candidate_typing():
    with pytest.raises(ValueError):
        FrobCandidate(EA, Rel.empty(EA, EA))


class TestM:
    def test_group_passes(self):
        assert check_M(Z2()).passed

    def test_multi_valued(self):
        r = check_M(rel_on(EA, [(("e", "e"), "e"), (("e", "e"), "a")]))
        assert not r.passed
        assert r.witness == ("multi-valued", "e", "e", "e", "a")

    def test_not_a_product(self):
        r = check_M(rel_on(EA, [(("e", "e"), "e")]))
        assert r.witness == ("not-a-product", "a")


class TestF:
    def test_passes_on_groups(self):
        assert check_F(Z2()).passed
        assert check_F(fixtures.frob(fixtures.z1_table)).passed

    def test_semilattice_fails(self):
        r = check_F(SL2())
        assert not r.passed
        # a·a = e·a but no x with a = x·a and e = a·x
        assert ("right", "a", "a", "e", "a") in r.extra["violations"]
        assert r.witness == r.extra["violations"][0]
        assert all(replay(SL2(), type(r)("F", False, v)) for v in r.extra["violations"])


class TestA:
    def test_group_and_empty(self):
        assert check_A(Z2()).passed
        assert check_A(rel_on(AB, [])).passed

    def test_witness(self):
        c = table_candidate(AB, {("a", "a"): "b", ("a", "b"): "b", ("b", "a"): "b", ("b", "b"): "a"})
        r = check_A(c)
        assert r.witness == ("a", "a", "b")
        assert replay(c, r)


class TestU:
    def test_units(self):
        assert check_U(Z2()).unit.sorted() == ("e",)
        assert check_U(fixtures.frob(fixtures.d2_table)).unit.sorted() == ("u", "v")

    def test_missing_right_unit(self):
        c = rel_on(AB, [(("a", "a"), "a"), (("a", "b"), "b")])
        r = check_U(c)
        assert not r.passed
        assert r.witness == ("no-right-unit", "b")
        assert replay(c, r)
        assert unit_candidates(c) == []


def test_check_frobenius_verdicts():
    assert all_pass(check_frobenius(Z2()))
    assert all_pass(check_frobenius(fixtures.p2_frob()))
    verdicts = {r.axiom: r.passed for r in check_frobenius(SL2())}
    assert verdicts == {"M": True, "F": False, "A": True, "U": True}
    assert check_frobenius(SL2())[3].unit.sorted() == ("e",)


def _disjoint_cycles(sizes):
    """Disjoint union of cyclic groups, as one multiplication table."""
    X = FinSet("X", [f"c{i}_{k}" for i, n in enumerate(sizes) for k in range(n)])
    table = {}
    for i, n in enumerate(sizes):
        for j, k in itertools.product(range(n), repeat=2):
            table[(f"c{i}_{j}", f"c{i}_{k}")] = f"c{i}_{(j + k) % n}"
    return table_candidate(X, table)


@pytest.mark.parametrize("sizes", [(8,), (1,) * 8, (2, 2, 4), (3, 5)])
def test_unit_is_unique_up_to_eight_elements(sizes):
    c = _disjoint_cycles(sizes)
    reports = check_frobenius(c)
    assert all_pass(reports)
    assert reports[3].extra["qualifying"] == 1
    assert len(reports[3].unit) == len(sizes)


class TestStar:
    def test_group_inverse(self):
        assert canonical_star(Z2(), {"a"}).sorted() == ("a",)

    def test_semilattice(self):
        assert canonical_star(SL2(), {"a"}).sorted() == ("a",)

    def test_empty_set(self):
        # the "for all" reading is vacuous on the empty set, the default reading is not
        assert canonical_star(SL2(), set(), reading="forall").sorted() == ("e", "a")
        assert canonical_star(SL2(), set()).sorted() == ()

    def test_non_associative_products_are_reported(self):
        # (ab)a = b but a(ba) = a
        c = table_candidate(AB, {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "b"})
        with pytest.raises(NonAssociativeProduct):
            canonical_star(c, {"b"})

    def test_supplied_star_is_applied_setwise(self):
        star = Rel.from_pairs(EA, EA, [("e", "a"), ("a", "e")])
        c = HStarCandidate(EA, Z2().m, star)
        assert apply_star(c, {"e"}).sorted() == ("a",)


class TestH:
    def test_group_passes(self):
        assert check_H(Z2()).passed
        assert all_pass(check_hstar(Z2()))

    def test_semilattice_fails(self):
        r = check_H(SL2())
        assert r.witness == ("eq1", ("a",), "e", "a")
        assert replay(SL2(), r)
        assert [x.axiom for x in check_hstar(SL2()) if not x.passed] == ["H"]

    def test_empty(self):
        E = FinSet("E", [])
        assert check_H(rel_on(E, [])).passed

    def test_cap(self):
        X = carrier(13)
        with pytest.raises(CapExceeded):
            check_H(FrobCandidate(X, Rel.empty(product_set(X, X), X)))

    def test_non_involutive_star(self):
        star = Rel.from_pairs(EA, EA, [("e", "e"), ("a", "e")])
        c = HStarCandidate(EA, Z2().m, star)
        r = check_H(c)
        assert r.witness[0] == "not-involutive"
        assert replay(c, r)

    def test_hstar_skips_h_without_m_and_a(self):
        c = table_candidate(AB, {("a", "a"): "b", ("a", "b"): "b", ("b", "a"): "b", ("b", "b"): "a"})
        assert [r.axiom for r in check_hstar(c)] == ["M", "A"]


@settings(max_examples=150, deadline=None)
@given(magmas(1, 3))
def test_failure_witnesses_replay(c):
    for r in check_frobenius(c):
        if not r.passed:
            assert replay(c, r), r
    rng = random.Random(len(c.m))
    h = HStarCandidate(c.X, c.m, random_involution(rng, c.X))
    r = check_H(h)
    if not r.passed:
        assert replay(h, r)


@settings(max_examples=150, deadline=None)
@given(magmas(1, 3, single_valued=True))
def test_single_valued_witnesses_replay(c):
    for r in check_frobenius(c) + check_hstar(c):
        if not r.passed:
            assert replay(c, r), r
