"""Finite sets and binary relations: the category of sets and relations.

Relations are stored as dense boolean matrices indexed by the stable element
order of their source and target.  ``compose(f, g)`` applies ``f`` first, so it
is ``g ∘ f`` in right-to-left notation.

Products of sets are flattened: ``(A*B)*C`` and ``A*(B*C)`` are the same
:class:`ProductSet` with triples as elements, and the one-point set :data:`PT`
is dropped from products, so ``PT * X`` is just ``X``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Mapping, NamedTuple, Union

import numpy as np

from .errors import NotTotal, TypeMismatch

Element = Hashable


@dataclass(frozen=True)
class FinSet:
    name: str
    elements: tuple[str, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        index = {x: i for i, x in enumerate(elements)}
        if len(index) != len(elements):
            dup = next(x for x in elements if elements.count(x) > 1)
            raise ValueError(f"duplicate element {dup!r} in set {self.name!r}")
        object.__setattr__(self, "_index", index)

    @property
    def factors(self) -> tuple["FinSet", ...]:
        return (self,)

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise KeyError(f"{x!r} is not an element of {self.name}") from None

    def __contains__(self, x) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __str__(self) -> str:
        return self.name


PT = FinSet("1", ("•",))
POINT = "•"


@dataclass(frozen=True)
class ProductSet:
    """Cartesian product of two or more finite sets, elements in lexicographic order."""

    factors: tuple[FinSet, ...]

    @cached_property
    def elements(self) -> tuple[tuple[str, ...], ...]:
        return tuple(itertools.product(*(f.elements for f in self.factors)))

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides, acc = [], 1
        for f in reversed(self.factors):
            strides.append(acc)
            acc *= len(f)
        return tuple(reversed(strides))

    @property
    def name(self) -> str:
        return "*".join(f.name for f in self.factors)

    def index(self, x) -> int:
        if not isinstance(x, tuple) or len(x) != len(self.factors):
            raise KeyError(f"{x!r} is not an element of {self.name}")
        return sum(f.index(c) * s for f, c, s in zip(self.factors, x, self._strides))

    def __contains__(self, x) -> bool:
        try:
            self.index(x)
        except (KeyError, TypeError):
            return False
        return True

    def __len__(self) -> int:
        n = 1
        for f in self.factors:
            n *= len(f)
        return n

    def __iter__(self):
        return iter(self.elements)

    def __str__(self) -> str:
        return self.name


Carrier = Union[FinSet, ProductSet]


def product_set(*sets: Carrier) -> Carrier:
    """Flattened product; drops one-point factors, collapses unary products."""
    factors: list[FinSet] = []
    for s in sets:
        factors.extend(f for f in s.factors if f != PT)
    if not factors:
        return PT
    if len(factors) == 1:
        return factors[0]
    return ProductSet(tuple(factors))


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=bool)
    a.setflags(write=False)
    return a


class Rel:
    """A relation ``source -> target`` backed by a boolean matrix."""

    def __init__(self, source: Carrier, target: Carrier, matrix):
        matrix = _frozen(matrix)
        if matrix.shape != (len(source), len(target)):
            raise ValueError(
                f"matrix shape {matrix.shape} does not match "
                f"{source.name} -> {target.name} ({len(source)}x{len(target)})"
            )
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def from_pairs(cls, source: Carrier, target: Carrier, pairs: Iterable[tuple]) -> "Rel":
        mat = np.zeros((len(source), len(target)), dtype=bool)
        for a, b in pairs:
            if a not in source:
                raise ValueError(f"{a!r} is not an element of {source.name}")
            if b not in target:
                raise ValueError(f"{b!r} is not an element of {target.name}")
            mat[source.index(a), target.index(b)] = True
        return cls(source, target, mat)

    @classmethod
    def empty(cls, source: Carrier, target: Carrier) -> "Rel":
        return cls(source, target, np.zeros((len(source), len(target)), dtype=bool))

    @cached_property
    def pairs(self) -> tuple[tuple, ...]:
        """Related pairs, sorted by (source index, target index)."""
        src, tgt = self.source.elements, self.target.elements
        rows, cols = np.nonzero(self.matrix)
        return tuple((src[i], tgt[j]) for i, j in zip(rows.tolist(), cols.tolist()))

    @cached_property
    def pair_set(self) -> frozenset:
        return frozenset(self.pairs)

    def image(self, a) -> tuple:
        """Elements related to ``a``, in target order."""
        row = self.matrix[self.source.index(a)]
        tgt = self.target.elements
        return tuple(tgt[j] for j in np.flatnonzero(row).tolist())

    def __contains__(self, pair) -> bool:
        a, b = pair
        if a not in self.source or b not in self.target:
            return False
        return bool(self.matrix[self.source.index(a), self.target.index(b)])

    def __len__(self) -> int:
        return int(self.matrix.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rel):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.matrix.tobytes()))

    def __repr__(self) -> str:
        body = ", ".join(f"{a}->{b}" for a, b in self.pairs[:8])
        more = ", ..." if len(self.pairs) > 8 else ""
        return f"Rel({self.source.name} -> {self.target.name}: {{{body}{more}}})"


@dataclass(frozen=True)
class PtSubset:
    """A subset of a carrier, i.e. a relation from the one-point set."""

    carrier: FinSet
    members: frozenset

    def __post_init__(self):
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        stray = [x for x in members if x not in self.carrier]
        if stray:
            raise ValueError(f"{stray[0]!r} is not an element of {self.carrier.name}")

    def sorted(self) -> tuple[str, ...]:
        return tuple(x for x in self.carrier.elements if x in self.members)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted())


def same_set(a: Carrier, b: Carrier) -> bool:
    return a == b


def compose(f: Rel, g: Rel) -> Rel:
    """``g ∘ f``: relate ``a`` to ``c`` when some ``b`` has ``a f b`` and ``b g c``."""
    if not same_set(f.target, g.source):
        raise TypeMismatch(f"cannot compose {f.source.name} -> {f.target.name} "
                           f"with {g.source.name} -> {g.target.name}")
    inner = f.matrix.shape[1]
    if inner == 0 or f.matrix.shape[0] == 0 or g.matrix.shape[1] == 0:
        return Rel.empty(f.source, g.target)
    # float32 matmul goes through BLAS; counts stay exact below 2**24
    dtype = np.float32 if inner < (1 << 24) else np.float64
    prod = f.matrix.astype(dtype) @ g.matrix.astype(dtype)
    return Rel(f.source, g.target, prod > 0)


def compose_pairs(f: Rel, g: Rel) -> Rel:
    """Set-of-pairs composition; reference path for the matrix kernel."""
    if not same_set(f.target, g.source):
        raise TypeMismatch(f"cannot compose {f.target.name} with {g.source.name}")
    forward: dict = {}
    for b, c in g.pairs:
        forward.setdefault(b, []).append(c)
    out = {(a, c) for a, b in f.pairs for c in forward.get(b, ())}
    return Rel.from_pairs(f.source, g.target, out)


def dagger(r: Rel) -> Rel:
    return Rel(r.target, r.source, r.matrix.T)


def product(r: Rel, s: Rel) -> Rel:
    """Monoidal product ``r × s : A×C -> B×D``."""
    return Rel(product_set(r.source, s.source), product_set(r.target, s.target),
               np.kron(r.matrix, s.matrix))


def identity(x: Carrier) -> Rel:
    return Rel(x, x, np.eye(len(x), dtype=bool))


def graph_of(f: Union[Mapping, Callable], source: Carrier, target: Carrier) -> Rel:
    """Graph ``{(a, f(a))}`` of a total map given as a mapping or a callable."""
    pairs = []
    for a in source.elements:
        try:
            b = f[a] if isinstance(f, Mapping) else f(a)
        except (KeyError, IndexError):
            raise NotTotal(f"map is undefined at {a!r}") from None
        if b is None:
            raise NotTotal(f"map is undefined at {a!r}")
        if b not in target:
            raise NotTotal(f"value {b!r} at {a!r} is outside {target.name}")
        pairs.append((a, b))
    return Rel.from_pairs(source, target, pairs)


def subset_as_morphism(u: PtSubset) -> Rel:
    return Rel.from_pairs(PT, u.carrier, ((POINT, x) for x in u.members))


def morphism_as_subset(r: Rel) -> PtSubset:
    if r.source != PT or not isinstance(r.target, FinSet):
        raise TypeMismatch(f"expected a relation 1 -> X, got {r.source.name} -> {r.target.name}")
    return PtSubset(r.target, frozenset(b for _, b in r.pairs))


def name_of(r: Rel) -> Rel:
    """The relation ``r : A -> B`` viewed as a subset of ``A×B``, i.e. ``1 -> A×B``."""
    ab = product_set(r.source, r.target)
    return Rel(PT, ab, r.matrix.reshape(1, -1))


class Classification(NamedTuple):
    single_valued: bool
    total: bool
    surjective: bool
    injective: bool


def classify(r: Rel) -> Classification:
    m = r.matrix
    out_deg = m.sum(axis=1)
    in_deg = m.sum(axis=0)
    return Classification(
        single_valued=bool((out_deg <= 1).all()),
        total=bool((out_deg >= 1).all()),
        surjective=bool((in_deg >= 1).all()),
        injective=bool((in_deg <= 1).all()),
    )
