
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relcat.errors import NotTotal, TypeMismatch
from relcat.relcore import (
    PT,
    POINT,
    FinSet,
    ProductSet,
    PtSubset,
    Rel,
    classify,
    compose,
    compose_pairs,
    dagger,
    graph_of,
    identity,
    morphism_as_subset,
    name_of,
    product,
    product_set,
    subset_as_morphism,
)

from helpers import finsets, relations

A = FinSet("A", ["a", "b"])
B = FinSet("B", ["p", "q", "r"])


def test_finset_rejects_duplicates():
    with pytest.raises(ValueError):
        FinSet("S", ["a", "a"])


def test_product_flattens_and_drops_point():
    assert product_set(PT, A) == A
    assert product_set(A, PT, B) == ProductSet((A, B))
    assert product_set(product_set(A, B), A) == product_set(A, product_set(B, A))
    assert product_set() == PT
    assert len(product_set(A, B, A)) == 12
    assert product_set(A, B).elements[1] == ("a", "q")


def test_compose_is_g_after_f():
    f = Rel.from_pairs(A, B, [("a", "p"), ("b", "q")])
    g = Rel.from_pairs(B, A, [("p", "b"), ("r", "a")])
    assert compose(f, g).pairs == (("a", "b"),)
    with pytest.raises(TypeMismatch):
        compose(f, f)


def test_identity_and_empty_compose():
    f = Rel.from_pairs(A, B, [("a", "p"), ("a", "r")])
    assert compose(identity(A), f) == f == compose(f, identity(B))
    E = FinSet("E", [])
    assert compose(Rel.empty(A, E), Rel.empty(E, B)) == Rel.empty(A, B)


def test_product_pairs():
    f = Rel.from_pairs(A, A, [("a", "b")])
    g = Rel.from_pairs(B, B, [("p", "p"), ("q", "r")])
    assert product(f, g).pair_set == {(("a", "p"), ("b", "p")), (("a", "q"), ("b", "r"))}


def test_graph_of_requires_total_map():
    assert graph_of({"a": "p", "b": "p"}, A, B).pairs == (("a", "p"), ("b", "p"))
    with pytest.raises(NotTotal):
        graph_of({"a": "p"}, A, B)
    with pytest.raises(NotTotal):
        graph_of(lambda x: "zz", A, B)


def test_subsets_round_trip_through_point():
    u = PtSubset(B, frozenset({"q", "r"}))
    r = subset_as_morphism(u)
    assert r.source == PT and r.pairs == ((POINT, "q"), (POINT, "r"))
    assert morphism_as_subset(r) == u
    with pytest.raises(ValueError):
        PtSubset(B, frozenset({"zz"}))


def test_name_of_lists_pairs():
    f = Rel.from_pairs(A, B, [("b", "q"), ("a", "p")])
    r = name_of(f)
    assert r.source == PT
    assert {x for _, x in r.pairs} == {("a", "p"), ("b", "q")}


def test_classify():
    f = graph_of({"a": "p", "b": "q"}, A, B)
    assert classify(f) == (True, True, False, True)
    assert classify(dagger(f)) == (True, False, True, True)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_matrix_and_pair_composition_agree(data):
    X = data.draw(finsets(0, 5, "X"))
    Y = data.draw(finsets(0, 5, "Y"))
    Z = data.draw(finsets(0, 5, "Z"))
    f = data.draw(relations(X, Y))
    g = data.draw(relations(Y, Z))
    assert compose(f, g) == compose_pairs(f, g)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_category_laws(data):
    X, Y, Z, W = (data.draw(finsets(0, 3, n)) for n in "XYZW")
    f, g, h = data.draw(relations(X, Y)), data.draw(relations(Y, Z)), data.draw(relations(Z, W))
    assert compose(compose(f, g), h) == compose(f, compose(g, h))
    assert dagger(dagger(f)) == f
    assert dagger(compose(f, g)) == compose(dagger(g), dagger(f))
    assert compose(identity(X), f) == f


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_product_is_functorial(data):
    X, Y, Z = (data.draw(finsets(1, 2, n)) for n in "XYZ")
    f, g = data.draw(relations(X, Y)), data.draw(relations(Y, Z))
    f2, g2 = data.draw(relations(Z, X)), data.draw(relations(X, Y))
    assert compose(product(f, f2), product(g, g2)) == product(compose(f, g), compose(f2, g2))
    assert dagger(product(f, f2)) == product(dagger(f), dagger(f2))


def test_large_dense_composition_matches_reference_on_sample():
    rng = np.random.default_rng(1)
    S = FinSet("S", [str(i) for i in range(200)])
    f = Rel(S, S, rng.random((200, 200)) < 0.02)
    g = Rel(S, S, rng.random((200, 200)) < 0.02)
    assert compose(f, g) == compose_pairs(f, g)


def test_relations_are_immutable():
    f = Rel.from_pairs(A, B, [("a", "p")])
    with pytest.raises(ValueError):
        f.matrix[0, 0] = False
    assert hash(f) == hash(Rel.from_pairs(A, B, [("a", "p")]))
