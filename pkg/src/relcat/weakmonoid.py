"""Weak monoids, weak *-monoids and cyclic weak *-monoids in Rel, and the
commutative-monoid-with-projector construction with its quotient.

In Rel the dagger is the identity on objects, so ``X†`` is ``X``.  The
"induced" morphisms ``ψ_R : 1 -> X×X`` and ``L_R : 1 -> X³`` are the names of
``ψ`` and ``L`` (their pair sets read as subsets).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .errors import IllDefined, NotCommutative, NotProjector, NotTotal
from .relcore import (
    FinSet,
    PtSubset,
    Rel,
    compose,
    dagger,
    graph_of,
    identity,
    morphism_as_subset,
    name_of,
    product,
    product_set,
    subset_as_morphism,
)
from .report import CheckReport


@dataclass(frozen=True)
class WeakMonoidCandidate:
    X: FinSet
    L1: PtSubset
    L3: Rel


@dataclass(frozen=True)
class WeakStarCandidate:
    X: FinSet
    psi: Rel
    L3: Rel


@dataclass(frozen=True)
class CyclicCandidate:
    X: FinSet
    psi: Rel
    L: Rel


@dataclass(frozen=True)
class FiniteMonoid:
    X: FinSet
    op: Mapping[tuple, str]
    one: str

    def __post_init__(self):
        op = dict(self.op)
        for a, b in itertools.product(self.X, repeat=2):
            if (a, b) not in op:
                raise NotTotal(f"operation undefined at ({a}, {b})")
            if op[(a, b)] not in self.X:
                raise NotTotal(f"{a}·{b} = {op[(a, b)]!r} is outside {self.X.name}")
        if len(op) != len(self.X) ** 2:
            raise ValueError("operation has keys outside X × X")
        if self.one not in self.X:
            raise ValueError(f"unit {self.one!r} is not in {self.X.name}")
        object.__setattr__(self, "op", op)

    def __hash__(self):
        return hash((self.X, frozenset(self.op.items()), self.one))

    def __call__(self, a, b) -> str:
        return self.op[(a, b)]


def _first_diff(lhs: Rel, rhs: Rel):
    diff = lhs.pair_set ^ rhs.pair_set
    if not diff:
        return None
    src, tgt = lhs.source, lhs.target
    a, b = min(diff, key=lambda p: (src.index(p[0]), tgt.index(p[1])))
    return a, b, (a, b) in lhs.pair_set


# -- weak monoids ----------------------------------------------------------

def derive_L2(c: WeakMonoidCandidate) -> tuple[Rel, Rel]:
    """``L3 ∘ (L1 × Id)`` and ``L3 ∘ (Id × L1)`` as relations ``X -> X``."""
    u = subset_as_morphism(c.L1)
    one = identity(c.X)
    return compose(product(u, one), c.L3), compose(product(one, u), c.L3)


def _associativity(L3: Rel, X: FinSet) -> tuple[Rel, Rel]:
    one = identity(X)
    return compose(product(L3, one), L3), compose(product(one, L3), L3)


def check_weak_monoid(c: WeakMonoidCandidate) -> list[CheckReport]:
    """Associativity, equality of the two unit composites, idempotence of ``L2``.

    ``L2`` is the left composite ``L3 ∘ (L1 × Id)``.
    """
    reports = []
    lhs, rhs = _associativity(c.L3, c.X)
    d = _first_diff(lhs, rhs)
    if d is None:
        reports.append(CheckReport("associativity", True))
    else:
        (a, b, cc), z, in_left = d
        where = "(ab)c" if in_left else "a(bc)"
        reports.append(CheckReport("associativity", False, (a, b, cc, z),
                                   detail=f"{z} is a value of {where} only, for a, b, c = {a}, {b}, {cc}"))
    left, right = derive_L2(c)
    d = _first_diff(left, right)
    if d is None:
        reports.append(CheckReport("weak-unitality", True))
    else:
        x, y, in_left = d
        side = "L3∘(L1×Id)" if in_left else "L3∘(Id×L1)"
        reports.append(CheckReport("weak-unitality", False, (x, y),
                                   detail=f"only {side} relates {x} to {y}"))
    d = _first_diff(compose(left, left), left)
    if d is None:
        reports.append(CheckReport("projector", True, extra={"L2": left}))
    else:
        x, y, in_sq = d
        side = "L2∘L2" if in_sq else "L2"
        reports.append(CheckReport("projector", False, (x, y),
                                   detail=f"only {side} relates {x} to {y}"))
    return reports


# -- weak *-monoids --------------------------------------------------------

def derived_unit(c: WeakStarCandidate) -> PtSubset:
    """``L1 = L3 ∘ ψ_R``: all products ``xy`` with ``(x, y) ∈ ψ``."""
    return morphism_as_subset(compose(name_of(c.psi), c.L3))


def check_weak_star(c: WeakStarCandidate) -> list[CheckReport]:
    """``ψ†ψ = Id``, then the weak-monoid laws for ``(X, L3 ∘ ψ_R, L3)``.

    ``ψ†ψ`` is ``compose(psi, dagger(psi))``.  The opposite orientation
    ``ψψ†`` is reported too, as informational.
    """
    one = identity(c.X)
    reports = []
    for axiom, composite, info in (
        ("involutivity", compose(c.psi, dagger(c.psi)), False),
        ("involutivity-co", compose(dagger(c.psi), c.psi), True),
    ):
        d = _first_diff(composite, one)
        if d is None:
            reports.append(CheckReport(axiom, True, informational=info))
        else:
            x, y, extra_pair = d
            what = "relates" if extra_pair else "does not relate"
            reports.append(CheckReport(axiom, False, (x, y), informational=info,
                                       detail=f"the composite {what} {x} to {y}"))
    L1 = derived_unit(c)
    inner = check_weak_monoid(WeakMonoidCandidate(c.X, L1, c.L3))
    return reports + [
        CheckReport(r.axiom, r.passed, r.witness, unit=L1, detail=r.detail, extra=r.extra)
        for r in inner
    ]


# -- cyclic weak *-monoids -------------------------------------------------

def rotation(X: FinSet) -> Rel:
    """``σ(a, b, c) = (c, a, b)`` on ``X³``."""
    X3 = product_set(X, X, X)
    return graph_of(lambda abc: (abc[2], abc[0], abc[1]), X3, X3)


def check_cyclic(c: CyclicCandidate) -> list[CheckReport]:
    """Invariance of ``L_R`` under ``σ`` and ``σ²``, then the weak *-monoid
    laws for ``(X, ψ, ψ† ∘ L)``."""
    X = c.X
    sigma = rotation(X)
    sigma2 = compose(sigma, sigma)
    assert compose(sigma2, sigma) == identity(product_set(X, X, X)), "σ³ must be the identity"
    LR = name_of(c.L)
    triples = {abc for _, abc in LR.pairs}
    report = CheckReport("cyclicity", True)
    for rot in (sigma, sigma2):
        moved = compose(LR, rot)
        if moved != LR:
            for abc in (t for _, t in LR.pairs):
                image = rot.image(abc)[0]
                if image not in triples:
                    report = CheckReport("cyclicity", False, abc,
                                         detail=f"{abc} is in L_R but its rotation {image} is not")
                    break
            break
    L3 = compose(c.L, dagger(c.psi))
    return [report] + check_weak_star(WeakStarCandidate(X, c.psi, L3))


# -- monoids with a projector ----------------------------------------------

def check_monoid(M: FiniteMonoid) -> list[CheckReport]:
    reports = []
    bad = next(((a, b, c) for a, b, c in itertools.product(M.X, repeat=3)
                if M(M(a, b), c) != M(a, M(b, c))), None)
    reports.append(CheckReport("associativity", bad is None, bad))
    bad = next(((x,) for x in M.X if M(M.one, x) != x or M(x, M.one) != x), None)
    reports.append(CheckReport("unit", bad is None, bad))
    return reports


def monoid_graph(M: FiniteMonoid) -> Rel:
    return graph_of(M.op, product_set(M.X, M.X), M.X)


def monoid_as_weak(M: FiniteMonoid) -> WeakMonoidCandidate:
    """A monoid viewed as a weak monoid with its genuine unit."""
    return WeakMonoidCandidate(M.X, PtSubset(M.X, frozenset({M.one})), monoid_graph(M))


def _require_projector(M: FiniteMonoid, p):
    if p not in M.X:
        raise ValueError(f"{p!r} is not an element of {M.X.name}")
    for a, b in itertools.combinations(M.X, 2):
        if M(a, b) != M(b, a):
            raise NotCommutative(f"{a}·{b} = {M(a, b)} but {b}·{a} = {M(b, a)}")
    if M(p, p) != M.one:
        raise NotProjector(f"{p}·{p} = {M(p, p)}, not the unit {M.one}")


def monoid_projector_to_weak(M: FiniteMonoid, p) -> WeakMonoidCandidate:
    """``L3 = m``, ``L1 = {p}``; the induced ``L2`` is ``x ↦ p·x``."""
    _require_projector(M, p)
    return WeakMonoidCandidate(M.X, PtSubset(M.X, frozenset({p})), monoid_graph(M))


def quotient_by_projector(M: FiniteMonoid, p) -> FiniteMonoid:
    """Quotient by the orbits ``{x, p·x}``; class labels join members with ``~``."""
    _require_projector(M, p)
    cls_of, classes = {}, []
    for x in M.X:
        if x in cls_of:
            continue
        members = tuple(y for y in M.X if y in (x, M(p, x)))
        label = "~".join(members)
        classes.append(label)
        for y in members:
            cls_of[y] = label
    reps = {}
    for x in M.X:
        reps.setdefault(cls_of[x], []).append(x)
    op = {}
    for A, B in itertools.product(classes, repeat=2):
        results = {}
        for a, b in itertools.product(reps[A], reps[B]):
            results.setdefault(cls_of[M(a, b)], (a, b))
        if len(results) > 1:
            (c1, w1), (c2, w2) = list(results.items())[:2]
            raise IllDefined(f"{A}·{B}: representatives {w1} give {c1} but {w2} give {c2}")
        op[(A, B)] = next(iter(results))
    return FiniteMonoid(FinSet(f"{M.X.name}_q", classes), op, cls_of[M.one])


# -- witness replay --------------------------------------------------------

def replay(c, report: CheckReport) -> bool:
    """True when the witness reproduces the violation on ``c``.

    ``c`` is any of the three candidate kinds.
    """
    if report.passed or report.witness is None:
        return False
    w = report.witness
    if isinstance(c, CyclicCandidate):
        if report.axiom == "cyclicity":
            triples = {abc for _, abc in name_of(c.L).pairs}
            a, b, cc = w
            return w in triples and ((cc, a, b) not in triples or (b, cc, a) not in triples)
        return replay(WeakStarCandidate(c.X, c.psi, compose(c.L, dagger(c.psi))), report)
    if isinstance(c, WeakStarCandidate):
        one = identity(c.X)
        if report.axiom == "involutivity":
            return (tuple(w) in compose(c.psi, dagger(c.psi))) != (tuple(w) in one)
        if report.axiom == "involutivity-co":
            return (tuple(w) in compose(dagger(c.psi), c.psi)) != (tuple(w) in one)
        return replay(WeakMonoidCandidate(c.X, derived_unit(c), c.L3), report)
    if report.axiom == "associativity":
        a, b, cc, z = w
        lhs, rhs = _associativity(c.L3, c.X)
        return (((a, b, cc), z) in lhs) != (((a, b, cc), z) in rhs)
    left, right = derive_L2(c)
    if report.axiom == "weak-unitality":
        return (tuple(w) in left) != (tuple(w) in right)
    if report.axiom == "projector":
        return (tuple(w) in compose(left, left)) != (tuple(w) in left)
    raise ValueError(f"no replay rule for axiom {report.axiom!r}")
