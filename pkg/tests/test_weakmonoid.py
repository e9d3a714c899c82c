import itertools

import pytest
from hypothesis import given, settings, strategies as st

from relcat import fixtures
from relcat.census import enumerate_frobenius, enumerate_groupoids
from relcat.correspond import groupoid_to_frob
from relcat.errors import NotCommutative, NotProjector
from relcat.frobenius import check_U
from relcat.relcore import FinSet, PtSubset, Rel, graph_of, identity, product_set
from relcat.report import all_pass
from relcat.weakmonoid import (
    CyclicCandidate,
    FiniteMonoid,
    WeakMonoidCandidate,
    WeakStarCandidate,
    check_cyclic,
    check_monoid,
    check_weak_monoid,
    check_weak_star,
    derive_L2,
    derived_unit,
    monoid_as_weak,
    monoid_projector_to_weak,
    quotient_by_projector,
    replay,
    rotation,
)

from helpers import relations

AB = FinSet("X", ["a", "b"])
ABC = FinSet("X", ["a", "b", "c"])


def z2():
    return fixtures.frob(fixtures.z2_table)


def sub(X, *xs):
    return PtSubset(X, frozenset(xs))


def rel3(X, pairs):
    return Rel.from_pairs(product_set(X, X), X, pairs)


class TestDeriveL2:
    def test_group_unit(self):
        c = z2()
        left, right = derive_L2(WeakMonoidCandidate(c.X, sub(c.X, "e"), c.m))
        assert left == right == identity(c.X)

    def test_semilattice_unit(self):
        c = fixtures.frob(fixtures.sl2_table)
        left, right = derive_L2(WeakMonoidCandidate(c.X, sub(c.X, "e"), c.m))
        assert left == right == identity(c.X)

    def test_empty_unit(self):
        c = z2()
        left, right = derive_L2(WeakMonoidCandidate(c.X, sub(c.X), c.m))
        assert len(left) == len(right) == 0


class TestWeakMonoid:
    def test_two_point_example(self):
        L3 = rel3(AB, [(("a", "a"), "a")])
        reports = check_weak_monoid(WeakMonoidCandidate(AB, sub(AB, "b"), L3))
        # both composites are empty, so every law holds
        assert [r.passed for r in reports] == [True, True, True]
        assert len(reports[2].extra["L2"]) == 0
        flipped = check_weak_monoid(WeakMonoidCandidate(AB, sub(AB, "a"), L3))
        assert all_pass(flipped)
        assert flipped[2].extra["L2"].pairs == (("a", "a"),)

    def test_unequal_composites(self):
        # a acts as a unit only from the left
        L3 = rel3(AB, [(("a", "a"), "a"), (("a", "b"), "b")])
        c = WeakMonoidCandidate(AB, sub(AB, "a"), L3)
        r = check_weak_monoid(c)[1]
        assert not r.passed and r.witness == ("b", "b") and replay(c, r)

    def test_non_idempotent_projector(self):
        # the unit b swaps a and b, so L2∘L2 is the identity but L2 is not
        L3 = rel3(AB, [(("b", "a"), "b"), (("a", "b"), "b"), (("b", "b"), "a"), (("a", "a"), "a")])
        c = WeakMonoidCandidate(AB, sub(AB, "b"), L3)
        reports = check_weak_monoid(c)
        assert reports[2].witness == ("a", "a") and replay(c, reports[2])

    def test_non_associative(self):
        L3 = rel3(AB, [(("a", "a"), "b"), (("a", "b"), "b"), (("b", "a"), "b"), (("b", "b"), "a")])
        c = WeakMonoidCandidate(AB, sub(AB, "a"), L3)
        r = check_weak_monoid(c)[0]
        assert not r.passed and replay(c, r)

    @pytest.mark.parametrize("n", range(4))
    def test_frobenius_algebras_are_weak_monoids(self, n):
        for c in enumerate_frobenius(n).structures:
            reports = check_weak_monoid(WeakMonoidCandidate(c.X, check_U(c).unit, c.m))
            assert all_pass(reports)
            assert reports[2].extra["L2"] == identity(c.X)

    @pytest.mark.parametrize("M", [fixtures.m5_monoid(), fixtures.u2_monoid()])
    def test_monoids_are_weak_monoids(self, M):
        reports = check_weak_monoid(monoid_as_weak(M))
        assert all_pass(reports) and reports[2].extra["L2"] == identity(M.X)


class TestWeakStar:
    def test_group_with_identity_psi(self):
        c = z2()
        w = WeakStarCandidate(c.X, identity(c.X), c.m)
        assert derived_unit(w).sorted() == ("e",)
        assert all_pass(check_weak_star(w))

    def test_swap_with_empty_multiplication(self):
        swap = Rel.from_pairs(AB, AB, [("a", "b"), ("b", "a")])
        w = WeakStarCandidate(AB, swap, rel3(AB, []))
        reports = {r.axiom: r for r in check_weak_star(w)}
        assert reports["involutivity"].passed
        assert len(derived_unit(w)) == 0

    def test_non_involutive_psi(self):
        psi = Rel.from_pairs(AB, AB, [("a", "a"), ("a", "b")])
        w = WeakStarCandidate(AB, psi, z2_like())
        r = check_weak_star(w)[0]
        assert not r.passed and replay(w, r)

    @pytest.mark.parametrize("n", range(5))
    def test_groupoid_inverse_as_psi(self, n):
        for g in enumerate_groupoids(n).structures:
            c = groupoid_to_frob(g)
            w = WeakStarCandidate(c.X, graph_of(g.inv, c.X, c.X), c.m)
            reports = check_weak_star(w)
            assert reports[0].passed
            assert derived_unit(w) == check_U(c).unit


def z2_like():
    return rel3(AB, [(("a", "a"), "a"), (("a", "b"), "b"), (("b", "a"), "b"), (("b", "b"), "a")])


class TestCyclic:
    def test_rotation_has_order_three(self):
        s = rotation(AB)
        assert s != identity(s.source)
        assert s.image(("a", "a", "b")) == (("b", "a", "a"),)

    def test_group(self):
        c = z2()
        assert all_pass(check_cyclic(CyclicCandidate(c.X, identity(c.X), c.m)))

    def test_singleton_not_rotation_closed(self):
        cand = CyclicCandidate(ABC, identity(ABC), rel3(ABC, [(("a", "b"), "c")]))
        r = check_cyclic(cand)[0]
        assert r.witness == ("a", "b", "c") and replay(cand, r)

    def test_empty(self):
        reports = check_cyclic(CyclicCandidate(AB, identity(AB), rel3(AB, [])))
        # with no products every downstream law holds vacuously
        assert all_pass(reports)
        assert len(reports[-1].extra["L2"]) == 0


class TestProjector:
    def test_m5_projector_four(self):
        M = fixtures.m5_monoid()
        c = monoid_projector_to_weak(M, "4")
        left, right = derive_L2(c)
        assert left == right == graph_of(lambda x: str(4 * int(x) % 5), M.X, M.X)
        verdicts = check_weak_monoid(c)
        assert verdicts[0].passed and verdicts[1].passed
        # 4·4 = 1, so L2 is an involution rather than an idempotent
        assert not verdicts[2].passed and verdicts[2].witness == ("1", "1")
        assert replay(c, verdicts[2])

    def test_unit_projector_reduces_to_monoid(self):
        M = fixtures.m5_monoid()
        assert all_pass(check_weak_monoid(monoid_projector_to_weak(M, "1")))

    def test_errors(self):
        M = fixtures.m5_monoid()
        with pytest.raises(NotProjector):
            monoid_projector_to_weak(M, "2")
        X = FinSet("S", ["1", "l", "r"])
        op = {(a, b): (a if b == "1" else b if a == "1" else a) for a, b in itertools.product(X, repeat=2)}
        with pytest.raises(NotCommutative):
            monoid_projector_to_weak(FiniteMonoid(X, op, "1"), "1")

    def test_m5_quotient(self):
        Q = quotient_by_projector(fixtures.m5_monoid(), "4")
        assert Q.X.elements == ("0", "1~4", "2~3")
        assert Q.one == "1~4"
        assert all_pass(check_monoid(Q))
        assert Q("2~3", "2~3") == "1~4"

    def test_unit_projector_quotient(self):
        M = fixtures.m5_monoid()
        Q = quotient_by_projector(M, "1")
        assert Q.X.elements == M.X.elements and dict(Q.op) == dict(M.op)

    def test_sign_quotient(self):
        Q = quotient_by_projector(fixtures.u2_monoid(), "n")
        assert Q.X.elements == ("u~n",) and Q.one == "u~n"


def test_finite_monoid_requires_total_operation():
    with pytest.raises(ValueError):
        FiniteMonoid(AB, {("a", "a"): "a"}, "a")


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_weak_witnesses_replay(data):
    X = FinSet("X", ["a", "b"][: data.draw(st.integers(1, 2))])
    L3 = data.draw(relations(product_set(X, X), X))
    psi = data.draw(relations(X, X))
    L1 = sub(X, *data.draw(st.sets(st.sampled_from(X.elements))))
    for cand, reports in ((WeakMonoidCandidate(X, L1, L3), None),
                          (WeakStarCandidate(X, psi, L3), None),
                          (CyclicCandidate(X, psi, L3), None)):
        if isinstance(cand, WeakMonoidCandidate):
            reports = check_weak_monoid(cand)
        elif isinstance(cand, WeakStarCandidate):
            reports = check_weak_star(cand)
        else:
            reports = check_cyclic(cand)
        for r in reports:
            if not r.passed:
                assert replay(cand, r), r
