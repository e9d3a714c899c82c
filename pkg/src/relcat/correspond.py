"""Constructions between Frobenius algebras and groupoids, H*-algebras and
semigroupoids, plus round-trip and morphism checks.

Objects of a groupoid rebuilt from a Frobenius algebra are its unit
elements, so ``frob_to_groupoid`` names its object set ``<X>_ob`` and reuses
the unit labels.  The unit map is the diagonal inclusion ``U -> X``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    DomainMismatch,
    IsoFailure,
    NonUniqueWitness,
    NotSingleValued,
    PreconditionError,
)
from .frobenius import (
    FrobCandidate,
    HStarCandidate,
    check_frobenius,
    check_hstar,
    is_pseudoinverse,
    mult,
)
from .groupoid import Groupoid, Semigroupoid, check_groupoid, check_lcr
from .relcore import FinSet, Rel, product_set
from .report import CheckReport, all_pass, first_failure


def objects_name(X: FinSet) -> str:
    return f"{X.name}_ob"


def _require(reports, what: str):
    if not all_pass(reports):
        bad = first_failure(reports)
        raise PreconditionError(f"{what}: {bad.axiom} fails ({bad.detail})", reports)


def _unique(f, found: list, what: str):
    if len(found) != 1:
        raise NonUniqueWitness(f"{what}({f}) should be unique, found {found}")
    return found[0]


# -- Frobenius <-> groupoid ------------------------------------------------

def frob_to_groupoid(c: FrobCandidate) -> Groupoid:
    reports = check_frobenius(c)
    _require(reports, "frob_to_groupoid needs a relative Frobenius algebra")
    U = reports[3].unit.sorted()
    X = c.X
    objects = FinSet(objects_name(X), U)
    s, t, inv = {}, {}, {}
    for f in X:
        s[f] = _unique(f, [x for x in U if mult(c, f, x) is not None], "s")
        t[f] = _unique(f, [y for y in U if mult(c, y, f) is not None], "t")
        inv[f] = _unique(f, [g for g in X
                             if mult(c, g, f) in objects and mult(c, f, g) in objects], "inv")
    comp = {}
    for g, f in itertools.product(X, repeat=2):
        h = mult(c, g, f)
        if h is not None:
            comp[(g, f)] = h
    return Groupoid(objects, X, s, t, comp, unit={u: u for u in U}, inv=inv)


def literal_unit_relation(c: FrobCandidate) -> CheckReport:
    """Is the full product ``U × U`` usable as the unit map ``G0 -> G1``?

    It is a function with ``s ∘ ε = id`` only when ``|U| <= 1``.
    """
    U = check_frobenius(c)[3].unit
    if U is None or len(U) <= 1:
        return CheckReport("literal-epsilon", True, informational=True,
                           detail="U × U coincides with the diagonal")
    u, v = U.sorted()[:2]
    return CheckReport("literal-epsilon", False, (u, v), informational=True,
                       detail=f"U × U relates object {u} to arrow {v}, so it is not the "
                              f"unit inclusion; the diagonal is used instead")


def groupoid_to_frob(g: Groupoid) -> FrobCandidate:
    _require(check_groupoid(g), "groupoid_to_frob needs a groupoid")
    return FrobCandidate(g.arrows, _graph_of_comp(g))


def _graph_of_comp(g: Semigroupoid) -> Rel:
    X = g.arrows
    return Rel.from_pairs(product_set(X, X), X, (((a, b), c) for (a, b), c in g.comp.items()))


def roundtrip_frob(c: FrobCandidate) -> bool:
    return groupoid_to_frob(frob_to_groupoid(c)) == c


@dataclass(frozen=True)
class GroupoidIso:
    domain: Groupoid
    codomain: Groupoid
    object_map: Mapping[str, str]
    arrow_map: Mapping[str, str]

    def __hash__(self):
        return hash((self.domain, self.codomain, frozenset(self.object_map.items()),
                     frozenset(self.arrow_map.items())))

    def failures(self) -> list[str]:
        """Commutation squares that do not close; empty for a genuine isomorphism."""
        G, H, ob, ar = self.domain, self.codomain, self.object_map, self.arrow_map
        out = []
        if sorted(ob.values()) != sorted(H.objects) or set(ob) != set(G.objects):
            out.append("object map is not a bijection")
        if sorted(ar.values()) != sorted(H.arrows) or set(ar) != set(G.arrows):
            out.append("arrow map is not a bijection")
        if out:
            return out
        for f in G.arrows:
            if ob[G.s[f]] != H.s[ar[f]]:
                out.append(f"s: {f}")
            if ob[G.t[f]] != H.t[ar[f]]:
                out.append(f"t: {f}")
            if ar[G.inv[f]] != H.inv[ar[f]]:
                out.append(f"inv: {f}")
        for x in G.objects:
            if ar[G.unit[x]] != H.unit[ob[x]]:
                out.append(f"unit: {x}")
        for a, b in itertools.product(G.arrows, repeat=2):
            lhs = G.m(a, b)
            rhs = H.m(ar[a], ar[b])
            if (ar[lhs] if lhs is not None else None) != rhs:
                out.append(f"comp: ({a}, {b})")
        return out


def roundtrip_groupoid(g: Groupoid) -> GroupoidIso:
    back = frob_to_groupoid(groupoid_to_frob(g))
    iso = GroupoidIso(g, back, {x: g.unit[x] for x in g.objects}, {f: f for f in g.arrows})
    bad = iso.failures()
    if bad:
        raise IsoFailure(f"round trip does not commute: {bad[0]}")
    return iso


# -- semigroupoid <-> H* ---------------------------------------------------

def sgpd_to_hstar(g: Semigroupoid) -> HStarCandidate:
    """Graph of composition on the pullback, with the canonical involution."""
    _require(check_lcr(g), "sgpd_to_hstar needs a locally cancellative regular semigroupoid")
    return HStarCandidate(g.arrows, _graph_of_comp(g))


def hstar_to_sgpd(c: HStarCandidate) -> Semigroupoid:
    """Objects are the idempotents; ``s(f) = f*f`` and ``t(f) = ff*``."""
    _require(check_hstar(c), "hstar_to_sgpd needs a relative H*-algebra")
    X = c.X
    idempotents = tuple(f for f in X if mult(c, f, f) == f)
    objects = FinSet(objects_name(X), idempotents)
    s, t = {}, {}
    for f in X:
        stars = [fs for fs in X if is_pseudoinverse(c, fs, f, assume_associative=True)]
        sources = sorted({mult(c, fs, f) for fs in stars})
        targets = sorted({mult(c, f, fs) for fs in stars})
        if len(sources) != 1 or sources[0] not in objects:
            raise NotSingleValued(f"s({f}) from pseudoinverses {stars}: {sources}")
        if len(targets) != 1 or targets[0] not in objects:
            raise NotSingleValued(f"t({f}) from pseudoinverses {stars}: {targets}")
        s[f], t[f] = sources[0], targets[0]
    comp = {}
    for a, b in itertools.product(X, repeat=2):
        ab = mult(c, a, b)
        if (ab is not None) != (s[a] == t[b]):
            raise DomainMismatch(f"({a}, {b}): product {'undefined' if ab is None else 'defined'} "
                                 f"but s({a}) = {s[a]}, t({b}) = {t[b]}")
        if ab is not None:
            comp[(a, b)] = ab
    return Semigroupoid(objects, X, s, t, comp)


def roundtrip_sgpd(g: Semigroupoid) -> CheckReport:
    """Compare ``g`` with ``hstar_to_sgpd(sgpd_to_hstar(g))``.

    Arrows and composition must survive unchanged.  Objects are rebuilt as
    idempotent arrows, so the report records the induced object map
    ``s(f) -> s'(f)``, ``t(f) -> t'(f)`` and checks that it is well defined
    and onto the rebuilt objects.
    """
    back = hstar_to_sgpd(sgpd_to_hstar(g))
    arrows_ok = back.arrows == g.arrows
    comp_ok = dict(back.comp) == dict(g.comp)
    obmap: dict = {}
    clash = None
    for f in g.arrows:
        for old, new in ((g.s[f], back.s[f]), (g.t[f], back.t[f])):
            if obmap.setdefault(old, new) != new and clash is None:
                clash = (f, old, obmap[old], new)
    onto = set(obmap.values()) == set(back.objects)
    passed = arrows_ok and comp_ok and clash is None and onto
    extra = {"object_map": obmap, "arrows_preserved": arrows_ok, "comp_preserved": comp_ok,
             "well_defined": clash is None, "onto": onto}
    if passed:
        return CheckReport("roundtrip-sgpd", True, extra=extra,
                           detail=", ".join(f"{k} -> {v}" for k, v in obmap.items()))
    if clash is not None:
        witness = ("object-map",) + clash
    elif not comp_ok:
        diff = sorted(set(back.comp.items()) ^ set(g.comp.items()))
        witness = ("comp",) + tuple(diff[0])
    elif not arrows_ok:
        witness = ("arrows",)
    else:
        witness = ("not-onto",) + tuple(sorted(set(back.objects) - set(obmap.values())))
    return CheckReport("roundtrip-sgpd", False, witness, extra=extra)


# -- morphisms -------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupoidMorphism:
    domain: Groupoid
    codomain: Groupoid
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        for f, h in self.pairs:
            if f not in self.domain.arrows or h not in self.codomain.arrows:
                raise ValueError(f"({f}, {h}) is not an arrow of the product groupoid")


def _closure_report(axiom: str, G: Semigroupoid, H: Semigroupoid, r: frozenset,
                    units: bool) -> CheckReport:
    order = sorted(r, key=lambda p: (G.arrows.index(p[0]), H.arrows.index(p[1])))
    for (f, h), (f2, h2) in itertools.product(order, repeat=2):
        a, b = G.m(f, f2), H.m(h, h2)
        if a is not None and b is not None and (a, b) not in r:
            return CheckReport(axiom, False, ("comp", f, h, f2, h2),
                               detail=f"({f}, {h})({f2}, {h2}) = ({a}, {b}) is missing")
    if units:
        for f, h in order:
            if (G.inv[f], H.inv[h]) not in r:
                return CheckReport(axiom, False, ("inv", f, h),
                                   detail=f"inverse ({G.inv[f]}, {H.inv[h]}) is missing")
            for end in ("s", "t"):
                x, y = getattr(G, end)[f], getattr(H, end)[h]
                pair = (G.unit[x], H.unit[y])
                if pair not in r:
                    return CheckReport(axiom, False, ("unit", end, f, h),
                                       detail=f"unit pair {pair} at {end}({f}, {h}) is missing")
    return CheckReport(axiom, True)


def is_subgroupoid_morphism(mor: SubgroupoidMorphism) -> CheckReport:
    """Is the relation a subgroupoid of the product ``G × H``?

    Closed under componentwise composition and inverses, and containing the
    unit pairs at both ends of every member.
    """
    for g in (mor.domain, mor.codomain):
        _require(check_groupoid(g), "is_subgroupoid_morphism needs groupoids")
    return _closure_report("subgroupoid", mor.domain, mor.codomain, mor.pairs, units=True)


def is_subsemigroupoid(G: Semigroupoid, H: Semigroupoid, pairs: Iterable) -> CheckReport:
    """Closure of a relation ``G1 -> H1`` under componentwise composition."""
    return _closure_report("subsemigroupoid", G, H, frozenset(pairs), units=False)


def is_frobenius_morphism(c1: FrobCandidate, c2: FrobCandidate, r: Rel) -> CheckReport:
    """A relation between Frobenius algebras is a morphism exactly when it is a
    subgroupoid of the product of the associated groupoids."""
    if r.source != c1.X or r.target != c2.X:
        raise ValueError("relation must run between the two carriers")
    return is_subgroupoid_morphism(
        SubgroupoidMorphism(frob_to_groupoid(c1), frob_to_groupoid(c2), r.pair_set))


def comparison_relation(g: Semigroupoid) -> CheckReport:
    """The identity-on-arrows relation from ``g`` to its H* round trip is a
    locally cancellative regular subsemigroupoid of the product."""
    back = hstar_to_sgpd(sgpd_to_hstar(g))
    diag = {(f, f) for f in g.arrows}
    report = is_subsemigroupoid(g, back, diag)
    if not report.passed:
        return report
    prod = product_semigroupoid(g, back, diag)
    bad = first_failure(check_lcr(prod))
    if bad is not None:
        return CheckReport("comparison", False, ("lcr",) + tuple(bad.witness), detail=bad.detail)
    return CheckReport("comparison", True)


def product_semigroupoid(G: Semigroupoid, H: Semigroupoid, pairs: Iterable) -> Semigroupoid:
    """The sub-semigroupoid of ``G × H`` spanned by ``pairs`` (assumed closed)."""
    pairs = sorted(set(pairs), key=lambda p: (G.arrows.index(p[0]), H.arrows.index(p[1])))
    label = {p: f"{p[0]}~{p[1]}" for p in pairs}
    ends = sorted({(G.s[f], H.s[h]) for f, h in pairs} | {(G.t[f], H.t[h]) for f, h in pairs},
                  key=lambda p: (G.objects.index(p[0]), H.objects.index(p[1])))
    oblabel = {p: f"{p[0]}~{p[1]}" for p in ends}
    arrows = FinSet(f"{G.arrows.name}_x_{H.arrows.name}", [label[p] for p in pairs])
    objects = FinSet(f"{G.objects.name}_x_{H.objects.name}", [oblabel[p] for p in ends])
    s = {label[(f, h)]: oblabel[(G.s[f], H.s[h])] for f, h in pairs}
    t = {label[(f, h)]: oblabel[(G.t[f], H.t[h])] for f, h in pairs}
    comp = {}
    for p, q in itertools.product(pairs, repeat=2):
        a, b = G.m(p[0], q[0]), H.m(p[1], q[1])
        if a is not None and b is not None:
            comp[(label[p], label[q])] = label[(a, b)]
    return Semigroupoid(objects, arrows, s, t, comp)
