"""Finite groupoids and semigroupoids with law checkers.

Composition ``comp[(g, f)]`` is "g after f" and is meant to be defined exactly
when ``s(g) == t(f)``.  Laws that mention partial products are only tested
when every product they mention is defined, except that an equation with one
side defined and the other undefined counts as a violation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import PreconditionError
from .relcore import FinSet
from .report import CheckReport, all_pass


def _freeze_map(name: str, mapping: Mapping, keys, codomain: FinSet) -> dict:
    out = dict(mapping)
    for k in keys:
        if k not in out:
            raise ValueError(f"{name} is undefined at {k!r}")
    for k, v in out.items():
        if k not in keys:
            raise ValueError(f"{name} has stray key {k!r}")
        if v not in codomain:
            raise ValueError(f"{name}({k}) = {v!r} is not in {codomain.name}")
    return out


def _check_comp(comp: Mapping, arrows: FinSet) -> dict:
    out = dict(comp)
    for (g, f), h in out.items():
        for x in (g, f, h):
            if x not in arrows:
                raise ValueError(f"composition mentions {x!r}, not an arrow of {arrows.name}")
    return out


def _map_hash(d: dict) -> int:
    return hash(frozenset(d.items()))


@dataclass(frozen=True)
class Semigroupoid:
    objects: FinSet
    arrows: FinSet
    s: Mapping[str, str]
    t: Mapping[str, str]
    comp: Mapping[tuple, str]

    def __post_init__(self):
        object.__setattr__(self, "s", _freeze_map("s", self.s, set(self.arrows), self.objects))
        object.__setattr__(self, "t", _freeze_map("t", self.t, set(self.arrows), self.objects))
        object.__setattr__(self, "comp", _check_comp(self.comp, self.arrows))

    def __hash__(self):
        return hash((self.objects, self.arrows, _map_hash(self.s), _map_hash(self.t),
                     _map_hash(self.comp)))

    def m(self, g, f) -> Optional[str]:
        return self.comp.get((g, f))

    def composable_pairs(self):
        return [(g, f) for g, f in itertools.product(self.arrows, repeat=2)
                if self.s[g] == self.t[f]]


@dataclass(frozen=True)
class Groupoid(Semigroupoid):
    unit: Mapping[str, str] = None
    inv: Mapping[str, str] = None

    def __post_init__(self):
        super().__post_init__()
        if self.unit is None or self.inv is None:
            raise ValueError("a groupoid needs unit and inverse maps")
        object.__setattr__(self, "unit", _freeze_map("unit", self.unit, set(self.objects), self.arrows))
        object.__setattr__(self, "inv", _freeze_map("inv", self.inv, set(self.arrows), self.arrows))

    def __hash__(self):
        return hash((super().__hash__(), _map_hash(self.unit), _map_hash(self.inv)))


@dataclass(frozen=True)
class PseudoinverseSet:
    arrow: str
    inverses: tuple


# -- semigroupoid laws -----------------------------------------------------

def _domain_report(g: Semigroupoid) -> CheckReport:
    for a, b in itertools.product(g.arrows, repeat=2):
        should = g.s[a] == g.t[b]
        has = (a, b) in g.comp
        if should and not has:
            return CheckReport("composition-domain", False, ("missing", a, b),
                               detail=f"s({a}) = t({b}) = {g.s[a]} but {a}·{b} is undefined")
        if has and not should:
            return CheckReport("composition-domain", False, ("extra", a, b),
                               detail=f"{a}·{b} is defined but s({a}) = {g.s[a]} != t({b}) = {g.t[b]}")
    return CheckReport("composition-domain", True)


def _typing_report(g: Semigroupoid) -> CheckReport:
    for (a, b), c in sorted(g.comp.items(), key=lambda kv: (g.arrows.index(kv[0][0]),
                                                            g.arrows.index(kv[0][1]))):
        if g.s[c] != g.s[b] or g.t[c] != g.t[a]:
            return CheckReport("composition-typing", False, (a, b),
                               detail=f"{a}·{b} = {c} runs {g.s[c]} -> {g.t[c]}, "
                                      f"expected {g.s[b]} -> {g.t[a]}")
    return CheckReport("composition-typing", True)


def _assoc_report(g: Semigroupoid) -> CheckReport:
    for h, k, f in itertools.product(g.arrows, repeat=3):
        if g.s[h] != g.t[k] or g.s[k] != g.t[f]:
            continue
        hk, kf = g.m(h, k), g.m(k, f)
        lhs = g.m(hk, f) if hk is not None else None
        rhs = g.m(h, kf) if kf is not None else None
        if lhs != rhs or lhs is None:
            return CheckReport("associativity", False, (h, k, f),
                               detail=f"({h}·{k})·{f} = {lhs} but {h}·({k}·{f}) = {rhs}")
    return CheckReport("associativity", True)


def check_semigroupoid(g: Semigroupoid) -> list[CheckReport]:
    return [_domain_report(g), _typing_report(g), _assoc_report(g)]


# -- groupoid laws ---------------------------------------------------------

def _unit_typing_report(g: Groupoid) -> CheckReport:
    for x in g.objects:
        e = g.unit[x]
        if g.s[e] != x or g.t[e] != x:
            return CheckReport("unit-typing", False, (x,),
                               detail=f"unit({x}) = {e} runs {g.s[e]} -> {g.t[e]}")
    return CheckReport("unit-typing", True)


def _unit_law_report(g: Groupoid) -> CheckReport:
    for f in g.arrows:
        left = g.m(g.unit[g.t[f]], f)
        right = g.m(f, g.unit[g.s[f]])
        if left != f or right != f:
            return CheckReport("unit-law", False, (f,),
                               detail=f"unit(t {f})·{f} = {left}, {f}·unit(s {f}) = {right}")
    return CheckReport("unit-law", True)


def _inverse_report(g: Groupoid) -> CheckReport:
    for f in g.arrows:
        i = g.inv[f]
        ok = (g.s[i] == g.t[f] and g.t[i] == g.s[f]
              and g.m(i, f) == g.unit[g.s[f]] and g.m(f, i) == g.unit[g.t[f]])
        if not ok:
            return CheckReport("inverse", False, (f,),
                               detail=f"inv({f}) = {i}: inv·f = {g.m(i, f)}, f·inv = {g.m(f, i)}, "
                                      f"expected {g.unit[g.s[f]]} and {g.unit[g.t[f]]}")
    return CheckReport("inverse", True)


def check_groupoid(g: Groupoid) -> list[CheckReport]:
    return [
        _domain_report(g),
        _typing_report(g),
        _unit_typing_report(g),
        _unit_law_report(g),
        _assoc_report(g),
        _inverse_report(g),
    ]


def underlying_semigroupoid(g: Groupoid) -> Semigroupoid:
    reports = check_groupoid(g)
    if not all_pass(reports):
        raise PreconditionError("not a groupoid", reports)
    return Semigroupoid(g.objects, g.arrows, g.s, g.t, g.comp)


# -- regularity and cancellation -------------------------------------------

def _is_pseudoinverse(g: Semigroupoid, f, fs) -> bool:
    if g.s[f] != g.t[fs] or g.t[f] != g.s[fs]:
        return False
    ffs = g.m(f, fs)
    fsf = g.m(fs, f)
    return (ffs is not None and g.m(ffs, f) == f
            and fsf is not None and g.m(fsf, fs) == fs)


def pseudoinverses(g: Semigroupoid, f) -> PseudoinverseSet:
    """Every ``f*`` with swapped ends and ``ff*f = f``, ``f*ff* = f*``."""
    if f not in g.arrows:
        raise KeyError(f"{f!r} is not an arrow")
    return PseudoinverseSet(f, tuple(x for x in g.arrows if _is_pseudoinverse(g, f, x)))


def is_regular(g: Semigroupoid) -> CheckReport:
    for f in g.arrows:
        if not pseudoinverses(g, f).inverses:
            return CheckReport("regular", False, (f,), detail=f"{f} has no pseudoinverse")
    return CheckReport("regular", True)


def _lc_violation(g: Semigroupoid, f, k, h, hs, literal: bool) -> Optional[str]:
    """Which cancellation clause fails for (f, g=k, h, h*), if any."""
    m = g.m
    fh = m(f, h)
    if literal:
        fhs, khs = m(f, hs), m(k, hs)
        if fhs is not None and khs is not None and fhs == khs and fh != k:
            return f"{f}·{hs} = {k}·{hs} = {fhs} but {f}·{h} = {fh} != {k}"
    elif fh is not None:
        lhs, khs = m(fh, hs), m(k, hs)
        if lhs is not None and khs is not None and lhs == khs and fh != k:
            return f"({f}·{h})·{hs} = {k}·{hs} = {lhs} but {f}·{h} = {fh} != {k}"
    hf = m(h, f)
    if hf is not None:
        lhs, hsk = m(hs, hf), m(hs, k)
        if lhs is not None and hsk is not None and lhs == hsk and hf != k:
            return f"{hs}·({h}·{f}) = {hs}·{k} = {lhs} but {h}·{f} = {hf} != {k}"
    return None


def check_local_cancellativity(g: Semigroupoid, literal: bool = False) -> CheckReport:
    """``(fh)h* = gh* ⟹ fh = g`` and ``h*(hf) = h*g ⟹ hf = g``.

    ``literal=True`` replaces the first clause by ``fh* = gh* ⟹ fh = g``.
    The first violating quadruple ``(f, g, h, h*)`` in lexicographic arrow
    order is the witness.
    """
    axiom = "local-cancellativity-literal" if literal else "local-cancellativity"
    pinv = {h: pseudoinverses(g, h).inverses for h in g.arrows}
    for f, k, h in itertools.product(g.arrows, repeat=3):
        for hs in pinv[h]:
            why = _lc_violation(g, f, k, h, hs, literal)
            if why:
                return CheckReport(axiom, False, (f, k, h, hs), detail=why,
                                   informational=literal)
    return CheckReport(axiom, True, informational=literal)


def check_lcr(g: Semigroupoid) -> list[CheckReport]:
    """Semigroupoid laws, regularity and local cancellativity."""
    return check_semigroupoid(g) + [is_regular(g), check_local_cancellativity(g)]


# -- witness replay --------------------------------------------------------

def replay(g: Semigroupoid, report: CheckReport) -> bool:
    """True when the report's witness, re-evaluated on ``g``, violates its law."""
    w = report.witness
    if report.passed or w is None:
        return False
    axiom = report.axiom
    if axiom == "composition-domain":
        tag, a, b = w
        has = (a, b) in g.comp
        should = g.s[a] == g.t[b]
        return (should and not has) if tag == "missing" else (has and not should)
    if axiom == "composition-typing":
        a, b = w
        c = g.comp[(a, b)]
        return g.s[c] != g.s[b] or g.t[c] != g.t[a]
    if axiom == "associativity":
        h, k, f = w
        hk, kf = g.m(h, k), g.m(k, f)
        lhs = g.m(hk, f) if hk is not None else None
        rhs = g.m(h, kf) if kf is not None else None
        return lhs != rhs or lhs is None
    if axiom == "unit-typing":
        (x,) = w
        e = g.unit[x]
        return g.s[e] != x or g.t[e] != x
    if axiom == "unit-law":
        (f,) = w
        return g.m(g.unit[g.t[f]], f) != f or g.m(f, g.unit[g.s[f]]) != f
    if axiom == "inverse":
        (f,) = w
        i = g.inv[f]
        return not (g.s[i] == g.t[f] and g.t[i] == g.s[f]
                    and g.m(i, f) == g.unit[g.s[f]] and g.m(f, i) == g.unit[g.t[f]])
    if axiom == "regular":
        (f,) = w
        return not any(_is_pseudoinverse(g, f, x) for x in g.arrows)
    if axiom.startswith("local-cancellativity"):
        f, k, h, hs = w
        return (_is_pseudoinverse(g, h, hs)
                and _lc_violation(g, f, k, h, hs, axiom.endswith("literal")) is not None)
    raise ValueError(f"no replay rule for axiom {axiom!r}")
