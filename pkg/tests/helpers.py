"""Hypothesis strategies and small builders shared by the test modules."""

import itertools
import random

from hypothesis import strategies as st

from relcat.relcore import FinSet, Rel, product_set
from relcat.frobenius import FrobCandidate


def carrier(n, name="X"):
    return FinSet(name, [f"x{i}" for i in range(n)])


@st.composite
def finsets(draw, min_size=0, max_size=4, name="X"):
    return carrier(draw(st.integers(min_size, max_size)), name)


@st.composite
def relations(draw, source, target):
    cells = list(itertools.product(source.elements, target.elements))
    chosen = draw(st.lists(st.booleans(), min_size=len(cells), max_size=len(cells)))
    return Rel.from_pairs(source, target, [c for c, keep in zip(cells, chosen) if keep])


@st.composite
def magmas(draw, min_size=1, max_size=3, single_valued=False):
    """A (possibly partial, possibly multi-valued) multiplication on a small carrier."""
    X = draw(finsets(min_size, max_size))
    XX = product_set(X, X)
    if single_valued:
        vals = draw(st.lists(st.integers(-1, len(X) - 1), min_size=len(X) ** 2, max_size=len(X) ** 2))
        pairs = [(hg, X.elements[v]) for hg, v in zip(XX.elements, vals) if v >= 0]
        return FrobCandidate(X, Rel.from_pairs(XX, X, pairs))
    return FrobCandidate(X, draw(relations(XX, X)))


def random_relation(rng: random.Random, source, target, density=0.3):
    return Rel.from_pairs(source, target, [(a, b) for a in source.elements for b in target.elements
                                           if rng.random() < density])


def random_involution(rng: random.Random, X):
    """Graph of a random involutive permutation of X."""
    xs = list(X.elements)
    rng.shuffle(xs)
    pairs = []
    while xs:
        a = xs.pop()
        if xs and rng.random() < 0.5:
            b = xs.pop()
            pairs += [(a, b), (b, a)]
        else:
            pairs.append((a, a))
    return Rel.from_pairs(X, X, pairs)


def table_candidate(X, table, cls=FrobCandidate):
    return cls(X, Rel.from_pairs(product_set(X, X), X, [((h, g), f) for (h, g), f in table.items()]))
