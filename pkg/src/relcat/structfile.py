"""Reader and writer for the textual structure format.

    set NAME = { lbl, lbl, ... }
    rel NAME : S1 * S2 -> T { (a, b) -> c ; ... }
    subset NAME of S = { lbl, ... }
    frob NAME { carrier = S  mult = REL }
    hstar NAME { carrier = S  mult = REL  [star = REL] }
    groupoid NAME { objects = S  arrows = T  s {...}  t {...}  unit {...}  inv {...}  comp {...} }
    sgpd NAME { objects = S  arrows = T  s {...}  t {...}  comp {...} }
    monoid NAME { carrier = S  one = lbl  op { (a, b) -> c ... } }
    weak NAME { carrier = S  L1 = SUBSET  L3 = REL }
    weakstar NAME { carrier = S  psi = REL  L3 = REL }
    cyclic NAME { carrier = S  psi = REL  L = REL }

``#`` starts a comment that runs to the end of the line.  Whitespace,
including newlines, only separates tokens.  Map entries may be separated by
``;``, ``,`` or nothing.  A set must be declared before it is used, and every
name is unique within a file.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import RelcatError
from .frobenius import FrobCandidate, HStarCandidate
from .groupoid import Groupoid, Semigroupoid
from .relcore import PT, FinSet, ProductSet, PtSubset, Rel, product_set
from .weakmonoid import CyclicCandidate, FiniteMonoid, WeakMonoidCandidate, WeakStarCandidate

KINDS = {
    FinSet: "set",
    Rel: "rel",
    PtSubset: "subset",
    FrobCandidate: "frob",
    HStarCandidate: "hstar",
    Groupoid: "groupoid",
    Semigroupoid: "sgpd",
    FiniteMonoid: "monoid",
    WeakMonoidCandidate: "weak",
    WeakStarCandidate: "weakstar",
    CyclicCandidate: "cyclic",
}


def kind_of(obj) -> str:
    return KINDS[type(obj)]


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


class ParseError(RelcatError):
    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic
        super().__init__(str(diagnostic))


@dataclass
class StructureFile:
    decls: dict = field(default_factory=dict)
    locations: dict = field(default_factory=dict, compare=False, repr=False)

    def of_kind(self, kind: str) -> list[tuple[str, object]]:
        return [(n, o) for n, o in self.decls.items() if kind_of(o) == kind]

    def __getitem__(self, name):
        return self.decls[name]


# -- lexer -----------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<punct>[{}(),;=:*])
  | (?P<word>[\w.~']+)
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens, line, line_start, pos = [], 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(Diagnostic("error", line, col, f"unexpected character {text[pos]!r}"))
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("arrow", "punct", "word"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -- parser ----------------------------------------------------------------

_FIELDS = {
    "frob": ({"carrier": "set", "mult": "rel"}, {}),
    "hstar": ({"carrier": "set", "mult": "rel"}, {"star": "rel"}),
    "groupoid": ({"objects": "set", "arrows": "set", "s": "map", "t": "map",
                  "unit": "map", "inv": "map", "comp": "map"}, {}),
    "sgpd": ({"objects": "set", "arrows": "set", "s": "map", "t": "map", "comp": "map"}, {}),
    "monoid": ({"carrier": "set", "one": "label", "op": "map"}, {}),
    "weak": ({"carrier": "set", "L1": "subset", "L3": "rel"}, {}),
    "weakstar": ({"carrier": "set", "psi": "rel", "L3": "rel"}, {}),
    "cyclic": ({"carrier": "set", "psi": "rel", "L": "rel"}, {}),
}


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.out = StructureFile()

    # token helpers
    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, tok: Token, message: str):
        raise ParseError(Diagnostic("error", tok.line, tok.col, message))

    def expect(self, value: str) -> Token:
        tok = self.next()
        if tok.value != value or tok.kind == "eof":
            self.fail(tok, f"expected {value!r}, found {tok.value or 'end of file'!r}")
        return tok

    def word(self, what: str = "a name") -> Token:
        tok = self.next()
        if tok.kind != "word":
            self.fail(tok, f"expected {what}, found {tok.value or 'end of file'!r}")
        return tok

    def accept(self, value: str) -> bool:
        if self.peek().kind != "eof" and self.peek().value == value:
            self.i += 1
            return True
        return False

    # name table
    def declare(self, tok: Token, obj):
        if tok.value in self.out.decls:
            self.fail(tok, f"duplicate declaration of {tok.value!r}")
        self.out.decls[tok.value] = obj
        self.out.locations[tok.value] = (tok.line, tok.col)

    def lookup(self, tok: Token, kind: str):
        obj = self.out.decls.get(tok.value)
        if obj is None:
            self.fail(tok, f"undeclared {kind} {tok.value!r}")
        if kind_of(obj) != kind:
            self.fail(tok, f"{tok.value!r} is a {kind_of(obj)}, expected a {kind}")
        return obj

    def label_in(self, tok: Token, S) -> str:
        if tok.value not in S:
            self.fail(tok, f"unknown label {tok.value!r} in {S.name}")
        return tok.value

    # grammar
    def parse(self) -> StructureFile:
        while self.peek().kind != "eof":
            tok = self.word("a declaration keyword")
            handler = getattr(self, f"p_{tok.value}", None)
            if tok.value in _FIELDS:
                self.p_block(tok.value)
            elif handler is not None:
                handler()
            else:
                self.fail(tok, f"unknown declaration {tok.value!r}")
        return self.out

    def labels(self) -> list[Token]:
        self.expect("{")
        out = []
        while not self.accept("}"):
            out.append(self.word("a label"))
            self.accept(",")
        return out

    def p_set(self):
        name = self.word()
        self.expect("=")
        toks = self.labels()
        seen = set()
        for t in toks:
            if t.value in seen:
                self.fail(t, f"duplicate label {t.value!r}")
            seen.add(t.value)
        self.declare(name, FinSet(name.value, [t.value for t in toks]))

    def p_subset(self):
        name = self.word()
        self.expect("of")
        S = self.lookup(self.word(), "set")
        self.expect("=")
        members = [self.label_in(t, S) for t in self.labels()]
        self.declare(name, PtSubset(S, frozenset(members)))

    def setexpr(self):
        sets = [self.lookup(self.word("a set name"), "set")]
        while self.accept("*"):
            sets.append(self.lookup(self.word("a set name"), "set"))
        return product_set(*sets)

    def term(self) -> tuple[Token, list[Token]]:
        start = self.peek()
        if self.accept("("):
            parts = [self.word("a label")]
            while self.accept(","):
                parts.append(self.word("a label"))
            self.expect(")")
            return start, parts
        return start, [self.word("a label or tuple")]

    def element(self, start: Token, parts: list[Token], S):
        factors = S.factors
        if len(parts) != len(factors):
            self.fail(start, f"arity mismatch: {S.name} needs {len(factors)} labels, got {len(parts)}")
        labels = tuple(self.label_in(p, f) for p, f in zip(parts, factors))
        return labels if isinstance(S, ProductSet) else labels[0]

    def entries(self, source, target) -> list[tuple[Token, object, object]]:
        self.expect("{")
        out = []
        while not self.accept("}"):
            start, parts = self.term()
            a = self.element(start, parts, source)
            self.expect("->")
            tstart, tparts = self.term()
            b = self.element(tstart, tparts, target)
            out.append((start, a, b))
            if not self.accept(";"):
                self.accept(",")
        return out

    def p_rel(self):
        name = self.word()
        self.expect(":")
        source = self.setexpr()
        self.expect("->")
        target = self.setexpr()
        seen = set()
        for tok, a, b in self.entries(source, target):
            if (a, b) in seen:
                self.fail(tok, f"duplicate pair {_fmt(a)} -> {_fmt(b)}")
            seen.add((a, b))
        self.declare(name, Rel.from_pairs(source, target, seen))

    def mapping(self, source, target) -> dict:
        out = {}
        for tok, a, b in self.entries(source, target):
            if a in out:
                self.fail(tok, f"duplicate entry for {a}")
            out[a] = b
        return out

    def p_block(self, kind: str):
        name = self.word()
        self.expect("{")
        required, optional = _FIELDS[kind]
        allowed = {**required, **optional}
        values: dict = {}
        while not self.accept("}"):
            key = self.word("a field name")
            if key.value not in allowed:
                self.fail(key, f"unknown field {key.value!r} for {kind}")
            if key.value in values:
                self.fail(key, f"field {key.value!r} given twice")
            ftype = allowed[key.value]
            if ftype == "map":
                values[key.value] = self.map_field(kind, key, values)
            else:
                self.expect("=")
                tok = self.word()
                if ftype == "label":
                    carrier = values.get("carrier")
                    if carrier is None:
                        self.fail(tok, "carrier must be given before one")
                    values[key.value] = self.label_in(tok, carrier)
                else:
                    values[key.value] = self.lookup(tok, ftype)
        missing = [k for k in required if k not in values]
        if missing:
            self.fail(name, f"{kind} {name.value!r} is missing field {missing[0]!r}")
        try:
            obj = self.build(kind, values)
        except ValueError as exc:
            self.fail(name, str(exc))
        self.declare(name, obj)

    def map_field(self, kind, key: Token, values: dict) -> dict:
        def need(k):
            if k not in values:
                self.fail(key, f"{k} must be given before {key.value}")
            return values[k]

        if kind == "monoid":
            X = need("carrier")
            return self.mapping(product_set(X, X), X)
        G0, G1 = need("objects"), need("arrows")
        if key.value in ("s", "t"):
            return self.mapping(G1, G0)
        if key.value == "unit":
            return self.mapping(G0, G1)
        if key.value == "inv":
            return self.mapping(G1, G1)
        return self.mapping(product_set(G1, G1), G1)

    @staticmethod
    def build(kind: str, v: dict):
        def typed(rel, src, tgt, what):
            if rel.source != src or rel.target != tgt:
                raise ValueError(f"arity mismatch: {what} must be {src.name} -> {tgt.name}")
            return rel

        if kind in ("frob", "hstar"):
            X = v["carrier"]
            m = typed(v["mult"], product_set(X, X), X, "mult")
            if kind == "frob":
                return FrobCandidate(X, m)
            star = v.get("star")
            return HStarCandidate(X, m, typed(star, X, X, "star") if star is not None else None)
        if kind == "groupoid":
            return Groupoid(v["objects"], v["arrows"], v["s"], v["t"], v["comp"],
                            unit=v["unit"], inv=v["inv"])
        if kind == "sgpd":
            return Semigroupoid(v["objects"], v["arrows"], v["s"], v["t"], v["comp"])
        if kind == "monoid":
            return FiniteMonoid(v["carrier"], v["op"], v["one"])
        X = v["carrier"]
        if kind == "weak":
            if v["L1"].carrier != X:
                raise ValueError("L1 must be a subset of the carrier")
            return WeakMonoidCandidate(X, v["L1"], typed(v["L3"], product_set(X, X), X, "L3"))
        psi = typed(v["psi"], X, X, "psi")
        if kind == "weakstar":
            return WeakStarCandidate(X, psi, typed(v["L3"], product_set(X, X), X, "L3"))
        return CyclicCandidate(X, psi, typed(v["L"], product_set(X, X), X, "L"))


def parse(text: str) -> StructureFile:
    return _Parser(text).parse()


def load(path) -> StructureFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# -- printer ---------------------------------------------------------------

def _fmt(x) -> str:
    return "(" + ", ".join(x) + ")" if isinstance(x, tuple) else x


def _entries(pairs, sep=" ; ") -> str:
    pairs = list(pairs)
    if not pairs:
        return "{ }"
    return "{ " + sep.join(f"{_fmt(a)} -> {_fmt(b)}" for a, b in pairs) + " }"


class _Printer:
    def __init__(self, reserved=()):
        self.reserved = set(reserved)
        self.lines: list[str] = []
        self.sets: dict[str, FinSet] = {}
        self.rels: list[tuple[Rel, str]] = []
        self.subsets: list[tuple[PtSubset, str]] = []
        self.names: set[str] = set()

    def fresh(self, hint: str) -> str:
        name, k = hint, 1
        while name in self.names or name in self.reserved:
            k += 1
            name = f"{hint}{k}"
        self.names.add(name)
        return name

    def emit(self, text: str):
        self.lines.append(text)

    def set_(self, S: FinSet) -> str:
        if S.name in self.sets:
            if self.sets[S.name] != S:
                raise ValueError(f"two different sets are both named {S.name!r}")
            return S.name
        if S.name in self.names:
            raise ValueError(f"set name {S.name!r} is already used")
        self.sets[S.name] = S
        self.names.add(S.name)
        self.emit(f"set {S.name} = {{ {', '.join(S.elements)} }}" if len(S) else f"set {S.name} = {{ }}")
        return S.name

    def setexpr(self, S) -> str:
        if S == PT:
            raise ValueError("relations out of the one-point set are written as subsets")
        return " * ".join(self.set_(f) for f in S.factors)

    def rel(self, r: Rel, hint: str, name: Optional[str] = None) -> str:
        if name is None:
            for other, n in self.rels:
                if other == r:
                    return n
            name = self.fresh(hint)
        else:
            self.names.add(name)
        src, tgt = self.setexpr(r.source), self.setexpr(r.target)
        if r.pairs:
            body = "{\n" + " ;\n".join(f"  {_fmt(a)} -> {_fmt(b)}" for a, b in r.pairs) + "\n}"
        else:
            body = "{ }"
        self.emit(f"rel {name} : {src} -> {tgt} {body}")
        self.rels.append((r, name))
        return name

    def subset(self, u: PtSubset, hint: str, name: Optional[str] = None) -> str:
        if name is None:
            for other, n in self.subsets:
                if other == u:
                    return n
            name = self.fresh(hint)
        else:
            self.names.add(name)
        S = self.set_(u.carrier)
        self.emit(f"subset {name} of {S} = {{ {', '.join(u.sorted())} }}" if len(u)
                  else f"subset {name} of {S} = {{ }}")
        self.subsets.append((u, name))
        return name

    def structure(self, name: str, obj):
        kind = kind_of(obj)
        if kind == "set":
            if obj.name != name:
                raise ValueError(f"set {obj.name!r} is listed under the name {name!r}")
            self.set_(obj)
            return
        if kind == "rel":
            self.rel(obj, name, name)
            return
        if kind == "subset":
            self.subset(obj, name, name)
            return
        if name in self.names:
            raise ValueError(f"name {name!r} is already used")
        fields: list[str] = []
        maps: list[str] = []
        if kind in ("frob", "hstar"):
            fields += [f"carrier = {self.set_(obj.X)}", f"mult = {self.rel(obj.m, f'{name}_mult')}"]
            if kind == "hstar" and obj.star is not None:
                fields.append(f"star = {self.rel(obj.star, f'{name}_star')}")
        elif kind in ("groupoid", "sgpd"):
            G0, G1 = self.set_(obj.objects), self.set_(obj.arrows)
            fields += [f"objects = {G0}", f"arrows = {G1}"]
            A = obj.arrows.elements
            maps.append("s " + _entries((f, obj.s[f]) for f in A))
            maps.append("t " + _entries((f, obj.t[f]) for f in A))
            if kind == "groupoid":
                maps.append("unit " + _entries((x, obj.unit[x]) for x in obj.objects))
                maps.append("inv " + _entries((f, obj.inv[f]) for f in A))
            maps.append("comp " + _entries(((a, b), obj.comp[(a, b)])
                                           for a, b in itertools.product(A, repeat=2)
                                           if (a, b) in obj.comp))
        elif kind == "monoid":
            fields += [f"carrier = {self.set_(obj.X)}", f"one = {obj.one}"]
            maps.append("op " + _entries(((a, b), obj(a, b))
                                         for a, b in itertools.product(obj.X, repeat=2)))
        elif kind == "weak":
            fields += [f"carrier = {self.set_(obj.X)}", f"L1 = {self.subset(obj.L1, f'{name}_L1')}",
                       f"L3 = {self.rel(obj.L3, f'{name}_L3')}"]
        elif kind == "weakstar":
            fields += [f"carrier = {self.set_(obj.X)}", f"psi = {self.rel(obj.psi, f'{name}_psi')}",
                       f"L3 = {self.rel(obj.L3, f'{name}_L3')}"]
        else:
            fields += [f"carrier = {self.set_(obj.X)}", f"psi = {self.rel(obj.psi, f'{name}_psi')}",
                       f"L = {self.rel(obj.L, f'{name}_L')}"]
        self.names.add(name)
        if maps:
            body = "\n".join("  " + x for x in ["  ".join(fields)] + maps)
            self.emit(f"{kind} {name} {{\n{body}\n}}")
        else:
            self.emit(f"{kind} {name} {{ {'  '.join(fields)} }}")


def dumps(decls) -> str:
    """Canonical text for an ordered mapping of names to structures.

    Sets and relations a structure depends on are written first when they
    are not already in the mapping.
    """
    if isinstance(decls, StructureFile):
        decls = decls.decls
    p = _Printer(reserved=set(decls))
    for name, obj in decls.items():
        p.structure(name, obj)
    return "\n\n".join(p.lines) + "\n"


def iter_structures(sf: StructureFile, kinds) -> Iterator[tuple[str, object]]:
    for name, obj in sf.decls.items():
        if kind_of(obj) in kinds:
            yield name, obj
