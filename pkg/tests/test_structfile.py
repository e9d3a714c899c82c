import pytest
from hypothesis import given, settings

from helpers import magmas
from relcat import fixtures
from relcat.frobenius import FrobCandidate, HStarCandidate
from relcat.groupoid import Groupoid, Semigroupoid
from relcat.relcore import FinSet, PtSubset, Rel, identity, product_set
from relcat.structfile import ParseError, dumps, load, parse
from relcat.weakmonoid import CyclicCandidate, WeakMonoidCandidate, WeakStarCandidate

Z2_TEXT = """
# the two-element group
set X = { e, a }
rel m : X * X -> X {
  (e, e) -> e ; (e, a) -> a ;
  (a, e) -> a ; (a, a) -> e
}
frob Z2 { carrier = X  mult = m }
"""


def test_z2_file_has_three_declarations():
    sf = parse(Z2_TEXT)
    assert list(sf.decls) == ["X", "m", "Z2"]
    z2 = sf["Z2"]
    assert isinstance(z2, FrobCandidate)
    assert z2 == fixtures.frob(fixtures.z2_table)
    assert sf.of_kind("frob") == [("Z2", z2)]
    assert sf.locations["Z2"] == (8, 6)


def _error(text):
    with pytest.raises(ParseError) as info:
        parse(text)
    return info.value.diagnostic


@pytest.mark.parametrize("text, line, col, fragment", [
    ("set X = { a, a }", 1, 14, "duplicate label"),
    ("set X = { a }\nrel r : X -> X { a -> b }", 2, 23, "unknown label 'b'"),
    ("set X = { a }\nrel r : X * X -> X { a -> a }", 2, 22, "X*X needs 2 labels, got 1"),
    ("rel r : Y -> Y { }", 1, 9, "undeclared set 'Y'"),
    ("set X = { a }\nset X = { b }", 2, 5, "duplicate declaration"),
    ("set X = { a }\nrel r : X -> X { a -> a ; a -> a }", 2, 27, "duplicate pair"),
    ("set X = { a } $", 1, 15, "unexpected character"),
    ("set X = { a }\nfrob F { carrier = X }", 2, 6, "missing field 'mult'"),
    ("set X = { a }\nwidget W { }", 2, 1, "unknown declaration"),
    ("set X = { a", 1, 12, "end of file"),
])
def test_diagnostics(text, line, col, fragment):
    d = _error(text)
    assert (d.line, d.column) == (line, col), str(d)
    assert fragment in d.message
    assert str(d).startswith(f"{line}:{col}: error: ")


def test_wrong_kind_reference():
    d = _error("set X = { a }\nrel m : X * X -> X { (a, a) -> a }\nfrob F { carrier = m  mult = m }")
    assert "is a rel, expected a set" in d.message


def test_typing_errors_become_diagnostics():
    text = "set O = { o }\nset A = { f }\nsgpd G { objects = O arrows = A s { } t { f -> o } comp { } }"
    d = _error(text)
    assert (d.line, d.column) == (3, 6)
    assert "s is undefined at 'f'" in d.message


def test_comments_and_separators():
    text = "set X = { a, b } # trailing\nrel r : X -> X { a -> b, b -> a }\nrel q : X -> X { a -> b b -> a }"
    sf = parse(text)
    assert sf["r"] == sf["q"]


def test_point_set_and_subsets():
    text = "set X = { a, b }\nsubset U of X = { b }\nrel d : X -> X { a -> a ; b -> b }"
    sf = parse(text)
    assert sf["U"] == PtSubset(sf["X"], frozenset({"b"}))
    assert sf["d"] == identity(sf["X"])


def test_hstar_star_is_optional():
    text = Z2_TEXT + "\nrel s : X -> X { e -> e ; a -> a }\nhstar H { carrier = X mult = m star = s }\nhstar K { carrier = X mult = m }"
    sf = parse(text)
    assert sf["H"].star == identity(sf["X"])
    assert sf["K"].star is None


@pytest.mark.parametrize("name", sorted(fixtures.corpus()))
def test_corpus_roundtrip(name):
    decls = fixtures.corpus()[name]
    text = dumps(decls)
    sf = parse(text)
    assert sf.decls == decls
    assert dumps(sf.decls) == text


def test_dumps_adds_dependencies_with_fresh_names():
    X = FinSet("X", ["a", "b"])
    psi = identity(X)
    L3 = Rel.from_pairs(product_set(X, X), X, [(("a", "a"), "a")])
    decls = {
        "W": WeakStarCandidate(X, psi, L3),
        "C": CyclicCandidate(X, psi, Rel.from_pairs(product_set(X, X), X, [])),
        "V": WeakMonoidCandidate(X, PtSubset(X, frozenset({"a"})), L3),
    }
    sf = parse(dumps(decls))
    for k, v in decls.items():
        assert sf[k] == v
    assert {"X", "W", "C", "V"} <= set(sf.decls)


def test_semigroupoid_roundtrip():
    g = fixtures.rb2_sgpd()
    sf = parse(dumps({"RB2": g}))
    assert sf["RB2"] == g and type(sf["RB2"]) is Semigroupoid
    p = fixtures.p2_groupoid()
    assert isinstance(parse(dumps({"P2": p}))["P2"], Groupoid)


@settings(max_examples=60, deadline=None)
@given(magmas(0, 3, single_valued=False))
def test_random_relations_roundtrip(c):
    X, m = c.X, c.m
    decls = {"F": FrobCandidate(X, m), "H": HStarCandidate(X, m)}
    sf = parse(dumps(decls))
    assert sf["F"] == decls["F"] and sf["H"] == decls["H"]


def test_load(tmp_path):
    path = tmp_path / "z2.struct"
    path.write_text(Z2_TEXT)
    assert list(load(path).decls) == ["X", "m", "Z2"]
