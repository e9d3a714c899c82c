"""Relative Frobenius algebras and relative H*-algebras in Rel.

Every checker evaluates its law twice: once by composing relations with
:mod:`relcat.relcore`, once elementwise over the multiplication table.  The two
evaluations must produce the same relations; a disagreement raises
:class:`~relcat.errors.InternalInconsistency`.

Notation: ``hg`` is the set of ``f`` with ``((h, g), f) ∈ m``.  Axiom
equations are written right-to-left as usual; in code ``compose(f, g)`` is
``g ∘ f``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .errors import CapExceeded, InternalInconsistency, MultiValued, NonAssociativeProduct
from .relcore import (
    FinSet,
    PtSubset,
    Rel,
    compose,
    dagger,
    identity,
    product,
    product_set,
    subset_as_morphism,
)
from .report import CheckReport, all_pass

H_CAP = 12
U_RELATIONAL_CAP = 12


class _Magma:
    X: FinSet
    m: Rel

    def _validate(self):
        if self.m.source != product_set(self.X, self.X) or self.m.target != self.X:
            raise ValueError(
                f"multiplication must be {self.X.name}*{self.X.name} -> {self.X.name}, "
                f"got {self.m.source.name} -> {self.m.target.name}"
            )

    @cached_property
    def table(self) -> dict:
        """``(h, g) -> tuple of products``; every pair of X is a key."""
        out = {hg: () for hg in itertools.product(self.X.elements, repeat=2)}
        for hg, f in self.m.pairs:
            out[hg] = out[hg] + (f,)
        return out

    def values(self, h, g) -> tuple:
        return self.table[(h, g)]


@dataclass(frozen=True, eq=True)
class FrobCandidate(_Magma):
    X: FinSet
    m: Rel

    def __post_init__(self):
        self._validate()


@dataclass(frozen=True, eq=True)
class HStarCandidate(_Magma):
    """``star``, when given, is a relation ``X -> X`` applied setwise to subsets."""

    X: FinSet
    m: Rel
    star: Optional[Rel] = None

    def __post_init__(self):
        self._validate()
        if self.star is not None and (self.star.source != self.X or self.star.target != self.X):
            raise ValueError("star must be a relation X -> X")


def mult(c: _Magma, h, g):
    """The product ``hg``, or ``None`` when undefined."""
    vals = c.values(h, g)
    if len(vals) > 1:
        raise MultiValued(h, g, vals)
    return vals[0] if vals else None


def composable(c: _Magma, h, g) -> bool:
    return bool(c.values(h, g))


def _subsets(elements: tuple) -> Iterable[tuple]:
    """All subsets in bitmask order (element 0 is the low bit)."""
    n = len(elements)
    for mask in range(1 << n):
        yield tuple(x for i, x in enumerate(elements) if mask >> i & 1)


def _agree(axiom: str, relational: Rel, elementwise: set):
    if relational.pair_set != elementwise:
        extra = sorted(relational.pair_set ^ elementwise, key=str)[:3]
        raise InternalInconsistency(
            f"{axiom}: relational and elementwise evaluations differ at {extra}")


# -- (M) -------------------------------------------------------------------

def _m_relational(c) -> Rel:
    return compose(dagger(c.m), c.m)


def _m_elementwise(c) -> set:
    # x ~ y iff some (h, g) has both x and y among its products
    out = set()
    for vals in c.table.values():
        out.update(itertools.product(vals, repeat=2))
    return out


def check_M(c) -> CheckReport:
    """``m ∘ m† = 1_X``: m is single-valued and every element is a product."""
    _agree("M", _m_relational(c), _m_elementwise(c))
    for (h, g), vals in c.table.items():
        if len(vals) > 1:
            return CheckReport("M", False, ("multi-valued", h, g, vals[0], vals[1]),
                               detail=f"m({h}, {g}) = {{{', '.join(vals)}}} is not single-valued")
    hit = {f for vals in c.table.values() for f in vals}
    for f in c.X.elements:
        if f not in hit:
            return CheckReport("M", False, ("not-a-product", f),
                               detail=f"{f} is not of the form hg for any h, g")
    return CheckReport("M", True)


# -- (F) -------------------------------------------------------------------

def _f_relational(c) -> tuple[Rel, Rel, Rel]:
    X, m = c.X, c.m
    one = identity(X)
    mid = compose(m, dagger(m))                                  # m† ∘ m
    left = compose(product(dagger(m), one), product(one, m))     # (1×m) ∘ (m†×1)
    right = compose(product(one, dagger(m)), product(m, one))    # (m×1) ∘ (1×m†)
    return left, mid, right


def _f_elementwise(c) -> tuple[set, set, set]:
    xs = c.X.elements
    sets = {k: set(v) for k, v in c.table.items()}
    left, mid, right = set(), set(), set()
    for a, b, cc, d in itertools.product(xs, repeat=4):
        if sets[(a, b)] & sets[(cc, d)]:
            mid.add(((a, b), (cc, d)))
        if any(a in sets[(cc, e)] and d in sets[(e, b)] for e in xs):
            left.add(((a, b), (cc, d)))
        if any(b in sets[(e, d)] and cc in sets[(a, e)] for e in xs):
            right.add(((a, b), (cc, d)))
    return left, mid, right


def check_F(c) -> CheckReport:
    """``(1×m)(m†×1) = m†m = (m×1)(1×m†)``.

    Elementwise: ``ab`` meets ``cd`` iff some ``e`` has ``a ∈ ce, d ∈ eb``
    (left equation) iff some ``e`` has ``b ∈ ed, c ∈ ae`` (right equation).
    """
    rel = _f_relational(c)
    elt = _f_elementwise(c)
    for tag, r, e in zip(("left", "mid", "right"), rel, elt):
        _agree(f"F/{tag}", r, e)
    left, mid, right = elt
    violations = []
    # the b = ed, c = ae form is scanned first, then the a = ce, d = eb form
    for side, other in (("right", right), ("left", left)):
        for quad in itertools.product(c.X.elements, repeat=4):
            key = ((quad[0], quad[1]), (quad[2], quad[3]))
            if (key in other) != (key in mid):
                violations.append((side,) + quad)
    if not violations:
        return CheckReport("F", True, extra={"violations": ()})
    side, *quad = violations[0]
    key = ((quad[0], quad[1]), (quad[2], quad[3]))
    return CheckReport("F", False, violations[0], detail=_f_detail(side, tuple(quad), key in mid),
                       extra={"violations": tuple(violations)})


def _f_detail(side, quad, products_meet) -> str:
    a, b, c, d = quad
    if side == "left":
        mediator = f"x with {a} = {c}·x and {d} = x·{b}"
    else:
        mediator = f"x with {b} = x·{d} and {c} = {a}·x"
    if products_meet:
        return f"{a}·{b} = {c}·{d} but there is no {mediator}"
    return f"there is an {mediator} but {a}·{b} and {c}·{d} do not meet"


# -- (A) -------------------------------------------------------------------

def _a_relational(c) -> tuple[Rel, Rel]:
    one = identity(c.X)
    return compose(product(one, c.m), c.m), compose(product(c.m, one), c.m)


def _a_elementwise(c) -> tuple[set, set]:
    t = c.table
    inner_right, inner_left = set(), set()
    for f, g, h in itertools.product(c.X.elements, repeat=3):
        for y in t[(g, h)]:
            inner_right.update(((f, g, h), z) for z in t[(f, y)])
        for x in t[(f, g)]:
            inner_left.update(((f, g, h), z) for z in t[(x, h)])
    return inner_right, inner_left


def check_A(c) -> CheckReport:
    """``m(1×m) = m(m×1)``: the value sets of ``f(gh)`` and ``(fg)h`` coincide."""
    r_right, r_left = _a_relational(c)
    e_right, e_left = _a_elementwise(c)
    _agree("A/f(gh)", r_right, e_right)
    _agree("A/(fg)h", r_left, e_left)
    t = c.table
    for f, g, h in itertools.product(c.X.elements, repeat=3):
        lhs = {z for x in t[(f, g)] for z in t[(x, h)]}
        rhs = {z for y in t[(g, h)] for z in t[(f, y)]}
        if lhs != rhs:
            return CheckReport("A", False, (f, g, h),
                               detail=f"({f}·{g})·{h} = {_fmt(lhs)} but {f}·({g}·{h}) = {_fmt(rhs)}")
    return CheckReport("A", True)


def _fmt(vals) -> str:
    vals = sorted(vals)
    if not vals:
        return "undefined"
    return vals[0] if len(vals) == 1 else "{" + ", ".join(vals) + "}"


# -- (U) -------------------------------------------------------------------

def _unit_allowed(c) -> tuple:
    """Elements that never act non-trivially: ``fu ⊆ {f}`` and ``uf ⊆ {f}`` for all f."""
    t, xs = c.table, c.X.elements
    return tuple(u for u in xs
                 if all(set(t[(f, u)]) <= {f} and set(t[(u, f)]) <= {f} for f in xs))


def _unit_covers(c, units) -> Optional[tuple]:
    """None if every f has a right and a left unit in ``units``; else the first gap."""
    t = c.table
    for f in c.X.elements:
        if not any(f in t[(f, u)] for u in units):
            return ("no-right-unit", f)
        if not any(f in t[(u, f)] for u in units):
            return ("no-left-unit", f)
    return None


def _u_holds_relational(c, units) -> bool:
    u = subset_as_morphism(PtSubset(c.X, frozenset(units)))
    one = identity(c.X)
    return (compose(product(u, one), c.m) == one
            and compose(product(one, u), c.m) == one)


def unit_candidates(c) -> list[tuple]:
    """All subsets U satisfying the four elementwise unit assertions, in bitmask order."""
    allowed = _unit_allowed(c)
    return [s for s in _subsets(allowed) if _unit_covers(c, s) is None]


def check_U(c) -> CheckReport:
    """There is a subset U with ``m(u×1) = 1 = m(1×u)``.

    Elementwise this says every f has some u in U with ``fu = f`` and some
    with ``uf = f``, and no u in U composes non-trivially with anything.
    """
    found = unit_candidates(c)
    n = len(c.X)
    if n <= U_RELATIONAL_CAP:
        rel_found = [s for s in _subsets(c.X.elements) if _u_holds_relational(c, s)]
        if set(rel_found) != set(found):
            raise InternalInconsistency(f"U: relational {rel_found} vs elementwise {found}")
    elif found and not _u_holds_relational(c, found[0]):
        raise InternalInconsistency(f"U: elementwise unit {found[0]} fails relationally")
    extra = {"qualifying": len(found)}
    if found:
        return CheckReport("U", True, unit=PtSubset(c.X, frozenset(found[0])), extra=extra)
    witness = _unit_covers(c, _unit_allowed(c))
    f = witness[1]
    product_ = f"{f}u" if witness[0] == "no-right-unit" else f"u{f}"
    return CheckReport("U", False, witness, extra=extra,
                       detail=f"no u that acts trivially on every element has {product_} = {f}")


def check_frobenius(c) -> list[CheckReport]:
    """Run M, F, A, U in that order."""
    reports = [check_M(c), check_F(c), check_A(c), check_U(c)]
    if all_pass(reports[:3]) and reports[3].extra["qualifying"] > 1:
        raise InternalInconsistency("unit subset is not unique although (F), (M), (A) hold")
    return reports


def unit_of(c) -> PtSubset:
    return check_U(c).unit


# -- involution and (H) ----------------------------------------------------

def is_pseudoinverse(c, b, a, assume_associative: bool = False) -> bool:
    """``bab = b`` and ``aba = a`` with all products defined.

    Products are read ``(ba)b``.  Unless associativity is known, ``b(ab)`` is
    computed as well and a mismatch raises NonAssociativeProduct.
    """
    for x, y in ((b, a), (a, b)):
        left = _triple(c, x, y, x, assume_associative)
        if left != x:
            return False
    return True


def _triple(c, x, y, z, assume_associative):
    xy = mult(c, x, y)
    lhs = mult(c, xy, z) if xy is not None else None
    if not assume_associative:
        yz = mult(c, y, z)
        rhs = mult(c, x, yz) if yz is not None else None
        if lhs != rhs:
            raise NonAssociativeProduct(
                f"({x}·{y})·{z} = {lhs} but {x}·({y}·{z}) = {rhs}")
    return lhs


def canonical_star(c, A, reading: str = "exists", assume_associative: bool = False) -> PtSubset:
    """Canonical involution on subsets.

    With ``reading="exists"`` (the default) ``A*`` is the set of all
    pseudoinverses of members of A; this is the reading under which groups
    and groupoids satisfy (H).  ``reading="forall"`` keeps only elements that
    are pseudoinverses of every member of A, so ``∅* = X``.
    """
    members = A.members if isinstance(A, PtSubset) else frozenset(A)
    if reading not in ("exists", "forall"):
        raise ValueError(f"unknown reading {reading!r}")
    quant = any if reading == "exists" else all
    out = frozenset(
        b for b in c.X.elements
        if quant(is_pseudoinverse(c, b, a, assume_associative) for a in sorted(members))
    )
    return PtSubset(c.X, out)


def apply_star(c, A, assume_associative: bool = False) -> PtSubset:
    members = A.members if isinstance(A, PtSubset) else frozenset(A)
    star = getattr(c, "star", None)
    if star is None:
        return canonical_star(c, members, assume_associative=assume_associative)
    return PtSubset(c.X, frozenset(b for a in members for b in star.image(a)))


def _h_sides(c, x: tuple, xs: tuple):
    """Relational and elementwise forms of both (H) equations for one subset."""
    X, m = c.X, c.m
    one = identity(X)
    x_rel = subset_as_morphism(PtSubset(X, frozenset(x)))
    xs_rel = subset_as_morphism(PtSubset(X, frozenset(xs)))
    relational = (
        compose(product(one, xs_rel), m),                 # m ∘ (1 × x*)
        compose(dagger(m), product(one, dagger(x_rel))),  # (1 × x†) ∘ m†
        compose(product(xs_rel, one), m),                 # m ∘ (x* × 1)
        compose(dagger(m), product(dagger(x_rel), one)),  # (x† × 1) ∘ m†
    )
    t, elts = c.table, X.elements
    elementwise = (
        {(a, z) for a in elts for b in xs for z in t[(a, b)]},
        {(z, p) for p in elts for q in x for z in t[(p, q)]},
        {(a, z) for a in elts for b in xs for z in t[(b, a)]},
        {(z, q) for q in elts for p in x for z in t[(p, q)]},
    )
    return relational, elementwise


def check_H(c, cap: int = H_CAP, assume_associative: bool = False) -> CheckReport:
    """``m(1×x*) = (1×x)m†`` and ``m(x*×1) = (x×1)m†`` for every subset x.

    The involution is ``c.star`` when supplied, otherwise the canonical one;
    it is also required to be involutive on every subset.
    """
    if len(c.X) > cap:
        raise CapExceeded(f"(H) quantifies over 2^{len(c.X)} subsets; cap is {cap}")
    for x in _subsets(c.X.elements):
        xs = apply_star(c, x, assume_associative).sorted()
        back = apply_star(c, xs, assume_associative).sorted()
        if back != x:
            return CheckReport("H", False, ("not-involutive", x),
                               detail=f"x = {_fmt_set(x)} has x* = {_fmt_set(xs)} "
                                      f"but x** = {_fmt_set(back)}")
        relational, elementwise = _h_sides(c, x, xs)
        for i, (r, e) in enumerate(zip(relational, elementwise)):
            _agree(f"H/side{i}", r, e)
        for eq, (lhs, rhs) in enumerate(((elementwise[0], elementwise[1]),
                                         (elementwise[2], elementwise[3])), start=1):
            diff = lhs ^ rhs
            if diff:
                p, q = min(diff, key=lambda pq: (c.X.index(pq[0]), c.X.index(pq[1])))
                in_lhs = (p, q) in lhs
                names = _H_NAMES[eq]
                holder, other = (names[0], names[1]) if in_lhs else (names[1], names[0])
                return CheckReport(
                    "H", False, (f"eq{eq}", x, p, q),
                    detail=f"for x = {_fmt_set(x)}, x* = {_fmt_set(xs)}: {holder} relates "
                           f"{p} to {q} but {other} does not")
    return CheckReport("H", True)


_H_NAMES = {1: ("m∘(1×x*)", "(1×x†)∘m†"), 2: ("m∘(x*×1)", "(x†×1)∘m†")}


def _fmt_set(x) -> str:
    return "{" + ", ".join(x) + "}"


def check_hstar(c, cap: int = H_CAP) -> list[CheckReport]:
    """Run M, A, H.

    The canonical involution is only defined once m is a single-valued
    associative partial operation, so without a supplied ``star`` the (H)
    report is omitted when (M) or (A) fails.
    """
    if len(c.X) > cap:
        raise CapExceeded(f"(H) quantifies over 2^{len(c.X)} subsets; cap is {cap}")
    reports = [check_M(c), check_A(c)]
    if getattr(c, "star", None) is not None or all_pass(reports):
        reports.append(check_H(c, cap, assume_associative=all_pass(reports)))
    return reports


def as_hstar(c) -> HStarCandidate:
    if isinstance(c, HStarCandidate):
        return c
    return HStarCandidate(c.X, c.m)


# -- witness replay --------------------------------------------------------

def replay(c, report: CheckReport) -> bool:
    """True when the report's witness, re-evaluated on ``c``, violates its law."""
    w = report.witness
    if report.passed or w is None:
        return False
    t = c.table
    axiom = report.axiom
    if axiom == "M":
        if w[0] == "multi-valued":
            _, h, g, v1, v2 = w
            return v1 != v2 and v1 in t[(h, g)] and v2 in t[(h, g)]
        f = w[1]
        return all(f not in vals for vals in t.values())
    if axiom == "F":
        side, a, b, cc, d = w
        mid = bool(set(t[(a, b)]) & set(t[(cc, d)]))
        if side == "left":
            other = any(a in t[(cc, e)] and d in t[(e, b)] for e in c.X.elements)
        else:
            other = any(b in t[(e, d)] and cc in t[(a, e)] for e in c.X.elements)
        return mid != other
    if axiom == "A":
        f, g, h = w
        lhs = {z for x in t[(f, g)] for z in t[(x, h)]}
        rhs = {z for y in t[(g, h)] for z in t[(f, y)]}
        return lhs != rhs
    if axiom == "U":
        tag, f = w
        # every element able to serve as a unit fails to fix f on the named side
        for u in c.X.elements:
            fixes = f in (t[(f, u)] if tag == "no-right-unit" else t[(u, f)])
            if fixes and all(set(t[(g, u)]) <= {g} and set(t[(u, g)]) <= {g}
                             for g in c.X.elements):
                return False
        return True
    if axiom == "H":
        if w[0] == "not-involutive":
            x = w[1]
            xs = apply_star(c, x).sorted()
            return apply_star(c, xs).sorted() != tuple(x)
        tag, x, p, q = w
        xs = apply_star(c, x).sorted()
        _, elementwise = _h_sides(c, tuple(x), xs)
        lhs, rhs = (elementwise[0], elementwise[1]) if tag == "eq1" else (elementwise[2], elementwise[3])
        return ((p, q) in lhs) != ((p, q) in rhs)
    raise ValueError(f"no replay rule for axiom {axiom!r}")
