"""Named fixture structures and the manifest of their expected CLI verdicts.

Z1, Z2   trivial and two-element groups
D2       discrete groupoid on two objects
P2       pair groupoid on objects {1, 2}; arrow ``ij`` runs j -> i
SL2      two-element semilattice {e, a} with a absorbing
RB2      2×2 rectangular band, ``(ij)(kl) = il``
M5       multiplicative monoid of integers mod 5
U2       the monoid {1, -1} written {u, n}
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path

from .frobenius import FrobCandidate, HStarCandidate
from .groupoid import Groupoid, Semigroupoid
from .relcore import FinSet, Rel, product_set
from .weakmonoid import FiniteMonoid


def table_rel(X: FinSet, table: dict) -> Rel:
    return Rel.from_pairs(product_set(X, X), X, (((h, g), f) for (h, g), f in table.items()))


def group_table(X: FinSet, op) -> dict:
    return {(a, b): op(a, b) for a, b in itertools.product(X, repeat=2)}


def z1_table():
    X = FinSet("X", ["e"])
    return X, {("e", "e"): "e"}


def z2_table():
    X = FinSet("X", ["e", "a"])
    return X, group_table(X, lambda h, g: "e" if h == g else "a")


def d2_table():
    X = FinSet("X", ["u", "v"])
    return X, {("u", "u"): "u", ("v", "v"): "v"}


def sl2_table():
    X = FinSet("X", ["e", "a"])
    return X, group_table(X, lambda h, g: "e" if h == g == "e" else "a")


def frob(table_fn) -> FrobCandidate:
    X, table = table_fn()
    return FrobCandidate(X, table_rel(X, table))


def one_object_sgpd(X: FinSet, table: dict, obj: str = "o") -> Semigroupoid:
    objects = FinSet(f"{X.name}_ob", [obj])
    return Semigroupoid(objects, X, {f: obj for f in X}, {f: obj for f in X}, table)


def z2_groupoid() -> Groupoid:
    X, table = z2_table()
    objects = FinSet("X_ob", ["o"])
    return Groupoid(objects, X, {f: "o" for f in X}, {f: "o" for f in X}, table,
                    unit={"o": "e"}, inv={"e": "e", "a": "a"})


def d2_groupoid() -> Groupoid:
    X, table = d2_table()
    objects = FinSet("X_ob", ["x", "y"])
    st = {"u": "x", "v": "y"}
    return Groupoid(objects, X, st, st, table, unit={"x": "u", "y": "v"},
                    inv={"u": "u", "v": "v"})


def p2_groupoid() -> Groupoid:
    objects = FinSet("P2_ob", ["1", "2"])
    arrows = FinSet("P2_arr", ["11", "12", "21", "22"])
    s = {f: f[1] for f in arrows}
    t = {f: f[0] for f in arrows}
    comp = {(g, f): g[0] + f[1] for g, f in itertools.product(arrows, repeat=2) if g[1] == f[0]}
    return Groupoid(objects, arrows, s, t, comp, unit={i: i + i for i in objects},
                    inv={f: f[::-1] for f in arrows})


def p2_frob() -> FrobCandidate:
    g = p2_groupoid()
    return FrobCandidate(g.arrows, table_rel(g.arrows, g.comp))


def rb2_sgpd() -> Semigroupoid:
    X = FinSet("RB2_arr", ["11", "12", "21", "22"])
    return one_object_sgpd(X, group_table(X, lambda a, b: a[0] + b[1]))


def m5_monoid() -> FiniteMonoid:
    X = FinSet("M5", [str(i) for i in range(5)])
    return FiniteMonoid(X, group_table(X, lambda a, b: str(int(a) * int(b) % 5)), "1")


def u2_monoid() -> FiniteMonoid:
    X = FinSet("U2", ["u", "n"])
    return FiniteMonoid(X, group_table(X, lambda a, b: "u" if a == b else "n"), "u")


def corpus() -> dict[str, dict[str, object]]:
    """Fixture name -> ordered declarations, as they appear in the fixture files."""
    out: dict[str, dict[str, object]] = {}
    for name, fn in (("Z1", z1_table), ("Z2", z2_table), ("D2", d2_table)):
        c = frob(fn)
        out[name.lower()] = {"X": c.X, "m": c.m, name: c}
    sl2 = frob(sl2_table)
    out["sl2"] = {"X": sl2.X, "m": sl2.m, "SL2": sl2, "SL2_h": HStarCandidate(sl2.X, sl2.m),
                  "X_ob": FinSet("X_ob", ["o"]),
                  "SL2_s": one_object_sgpd(sl2.X, dict(_table_of(sl2)))}
    g = p2_groupoid()
    pf = p2_frob()
    out["p2"] = {"P2_ob": g.objects, "P2_arr": g.arrows, "P2": g, "m": pf.m, "P2_frob": pf}
    rb = rb2_sgpd()
    out["rb2"] = {"RB2_arr_ob": rb.objects, "RB2_arr": rb.arrows, "RB2": rb}
    m5 = m5_monoid()
    out["m5"] = {"M5": m5.X, "M5_mon": m5}
    u2 = u2_monoid()
    out["u2"] = {"U2": u2.X, "U2_mon": u2}
    return out


def _table_of(c) -> dict:
    return {hg: f for hg, f in c.m.pairs}


# fixture -> list of (command with "{file}" placeholder, expected exit code)
MANIFEST: dict[str, list[tuple[list[str], int]]] = {
    "z1": [(["check", "frob", "{file}"], 0), (["check", "hstar", "{file}"], 0)],
    "z2": [(["check", "frob", "{file}"], 0), (["check", "hstar", "{file}"], 0),
           (["roundtrip", "frob", "{file}"], 0)],
    "d2": [(["check", "frob", "{file}"], 0), (["check", "hstar", "{file}"], 0)],
    "p2": [(["check", "frob", "{file}"], 0), (["check", "groupoid", "{file}"], 0),
           (["roundtrip", "gpd", "{file}"], 0)],
    "sl2": [(["check", "frob", "{file}"], 1), (["check", "hstar", "{file}"], 1),
            (["check", "sgpd", "{file}"], 1)],
    "rb2": [(["check", "sgpd", "{file}"], 1)],
    "m5": [(["quotient", "{file}", "--projector", "4"], 0),
           (["quotient", "{file}", "--projector", "2"], 1)],
    "u2": [(["quotient", "{file}", "--projector", "n"], 0)],
}


def emit(directory) -> list[Path]:
    """Write every fixture as ``<name>.struct`` plus ``manifest.json``."""
    from .structfile import dumps

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    manifest = {}
    for name, decls in corpus().items():
        path = directory / f"{name}.struct"
        path.write_text(dumps(decls), encoding="utf-8")
        written.append(path)
        manifest[name] = {
            "file": path.name,
            "expect": [{"command": cmd, "exit": code} for cmd, code in MANIFEST[name]],
        }
    mpath = directory / "manifest.json"
    mpath.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    written.append(mpath)
    return written
