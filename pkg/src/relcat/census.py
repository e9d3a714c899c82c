"""Exhaustive enumeration of small structures, used as a brute-force oracle.

Every enumeration works on a fixed labeled carrier ``X = {0, ..., n-1}`` and
returns structures in a deterministic order.  Magmas (Frobenius and H*
candidates) are searched over single-valued partial tables only, because a
multi-valued ``m`` already violates (M); survivors of a cheap surjectivity and
associativity prefilter then go through the full checkers.

The groupoid and semigroupoid searches are independent backtracking searches
that never touch the Frobenius-side code.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import CapExceeded
from .groupoid import Groupoid, Semigroupoid, check_groupoid, check_lcr
from .relcore import FinSet, Rel, product_set
from .report import all_pass

DEFAULT_CAPS = {"frob": 3, "hstar": 3, "gpd": 4, "lcr-sgpd": 3}
VECTOR_LIMIT = 1 << 22


@dataclass
class CensusResult:
    kind: str
    n: int
    structures: list
    count: int = field(init=False)
    elapsed: float = 0.0
    stats: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        self.count = len(self.structures)


def cap_for(kind: str) -> int:
    env = os.environ.get("RELCAT_MAX_SIZE")
    if env:
        return int(env)
    return DEFAULT_CAPS[kind]


def _check_cap(kind: str, n: int, max_size: Optional[int]):
    cap = cap_for(kind) if max_size is None else max_size
    if n < 0:
        raise ValueError("size must be non-negative")
    if n > cap:
        raise CapExceeded(f"{kind} census is capped at n = {cap} (asked for {n}); "
                          f"set RELCAT_MAX_SIZE to raise it")


def carrier(n: int) -> FinSet:
    return FinSet("X", [str(i) for i in range(n)])


# -- single-valued partial tables ------------------------------------------

def _tables_vectorized(n: int) -> tuple[np.ndarray, dict]:
    """Rows are flattened tables (cell ``h*n + g``); value ``n`` means undefined.

    Returns the surjective associative tables and the counts at each stage.
    """
    cells = n * n
    total = (n + 1) ** cells
    idx = np.arange(total, dtype=np.int64)
    T = np.empty((total, cells), dtype=np.int8)
    for k in range(cells - 1, -1, -1):
        T[:, k] = idx % (n + 1)
        idx //= n + 1
    stats = {"partial": total}
    if n:
        onto = np.ones(total, dtype=bool)
        for v in range(n):
            onto &= (T == v).any(axis=1)
        T = T[onto]
    stats["surjective"] = len(T)
    # extended table where anything involving "undefined" stays undefined
    ext = np.full((len(T), n + 1, n + 1), n, dtype=np.int8)
    ext[:, :n, :n] = T.reshape(len(T), n, n)
    rows = np.arange(len(T))
    ok = np.ones(len(T), dtype=bool)
    for a, b, c in itertools.product(range(n), repeat=3):
        lhs = ext[rows, ext[:, a, b], c]
        rhs = ext[rows, a, ext[:, b, c]]
        ok &= lhs == rhs
    T = T[ok]
    stats["associative"] = len(T)
    return T, stats


def _tables_backtracking(n: int) -> tuple[np.ndarray, dict]:
    """Same output as the vectorized search, for sizes too large to materialise."""
    cells = n * n
    table = [None] * cells
    found = []

    def assoc_ok() -> bool:
        for a, b, c in itertools.product(range(n), repeat=3):
            ab, bc = table[a * n + b], table[b * n + c]
            if ab is None or bc is None:
                continue
            lhs = n if ab == n else table[ab * n + c]
            rhs = n if bc == n else table[a * n + bc]
            if lhs is None or rhs is None:
                continue
            if lhs != rhs:
                return False
        return True

    def go(k: int):
        if k == cells:
            if set(range(n)) <= set(table):
                found.append(list(table))
            return
        for v in range(n + 1):
            table[k] = v
            if assoc_ok():
                go(k + 1)
        table[k] = None

    go(0)
    T = np.array(found, dtype=np.int8).reshape(len(found), cells)
    return T, {"partial": (n + 1) ** cells, "associative": len(T)}


def prefiltered_tables(n: int) -> tuple[np.ndarray, dict]:
    """Surjective, associative single-valued partial tables in lexicographic order."""
    if (n + 1) ** (n * n) <= VECTOR_LIMIT:
        return _tables_vectorized(n)
    return _tables_backtracking(n)


def table_to_rel(X: FinSet, row) -> Rel:
    n = len(X)
    labels = X.elements
    pairs = [((labels[k // n], labels[k % n]), labels[v]) for k, v in enumerate(row) if v < n]
    return Rel.from_pairs(product_set(X, X), X, pairs)


def _frob_filter(args):
    from .frobenius import FrobCandidate, HStarCandidate, check_frobenius, check_hstar

    kind, X, rows = args
    out = []
    for row in rows:
        m = table_to_rel(X, row)
        if kind == "frob":
            c = FrobCandidate(X, m)
            ok = all_pass(check_frobenius(c))
        else:
            c = HStarCandidate(X, m)
            ok = all_pass(check_hstar(c))
        if ok:
            out.append(c)
    return out


def _run_chunks(fn: Callable, jobs: list, workers: int) -> list:
    """Apply ``fn`` to every job and concatenate the outputs in job order."""
    if workers <= 1 or len(jobs) <= 1:
        results = [fn(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, jobs))
    return [x for part in results for x in part]


def _chunks(seq, k: int) -> list:
    size = max(1, -(-len(seq) // max(k, 1)))
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def _enumerate_magmas(kind: str, n: int, workers: int, max_size) -> CensusResult:
    _check_cap(kind, n, max_size)
    start = time.perf_counter()
    X = carrier(n)
    T, stats = prefiltered_tables(n)
    rows = [tuple(int(v) for v in r) for r in T]
    structures = _run_chunks(_frob_filter, [(kind, X, ch) for ch in _chunks(rows, workers * 4)],
                             workers)
    return CensusResult(kind, n, structures, time.perf_counter() - start, stats)


def enumerate_frobenius(n: int, workers: int = 1, max_size: Optional[int] = None) -> CensusResult:
    """Every relation ``m`` on ``X x X -> X`` passing (M), (F), (A), (U)."""
    return _enumerate_magmas("frob", n, workers, max_size)


def enumerate_hstar(n: int, workers: int = 1, max_size: Optional[int] = None) -> CensusResult:
    """Every relation ``m`` passing (M), (A), (H) with the canonical involution."""
    return _enumerate_magmas("hstar", n, workers, max_size)


def pruning_sample(n: int, fraction: float = 0.01, seed: int = 0,
                   multivalued: int = 50) -> dict:
    """Re-run the full checkers on a random sample of pruned candidates.

    Pruned candidates are the partial tables rejected by the surjectivity or
    associativity prefilter, plus random multi-valued relations (never
    enumerated at all).  Returns counts and every sampled candidate that the
    full checkers would have accepted, which must be none.
    """
    from .frobenius import FrobCandidate, HStarCandidate, check_frobenius, check_hstar

    X = carrier(n)
    kept = {tuple(int(v) for v in r) for r in prefiltered_tables(n)[0]}
    total = (n + 1) ** (n * n)
    rng = random.Random(seed)
    k = max(1, int((total - len(kept)) * fraction)) if total > len(kept) else 0
    sampled, accepted = 0, []
    seen = set()
    while sampled < k:
        i = rng.randrange(total)
        row = tuple((i // (n + 1) ** (n * n - 1 - j)) % (n + 1) for j in range(n * n))
        if row in kept or row in seen:
            continue
        seen.add(row)
        sampled += 1
        m = table_to_rel(X, row)
        if all_pass(check_frobenius(FrobCandidate(X, m))) or all_pass(check_hstar(HStarCandidate(X, m))):
            accepted.append(m)
    cells = [(h, g, f) for (h, g) in itertools.product(X, repeat=2) for f in X]
    for _ in range(multivalued if n >= 2 else 0):
        pairs = {((h, g), f) for h, g, f in cells if rng.random() < 0.4}
        h, g = rng.choice(list(itertools.product(X, repeat=2)))
        pairs |= {((h, g), X.elements[0]), ((h, g), X.elements[1])}
        m = Rel.from_pairs(product_set(X, X), X, pairs)
        sampled += 1
        if all_pass(check_frobenius(FrobCandidate(X, m))) or all_pass(check_hstar(HStarCandidate(X, m))):
            accepted.append(m)
    return {"sampled": sampled, "wrongly_pruned": accepted}


# -- groupoids -------------------------------------------------------------

def _fill_compositions(arrows: tuple, s: dict, t: dict, forced: dict,
                       cancellative: bool) -> Iterable[dict]:
    """Every associative composition on the composable pairs, extending ``forced``.

    ``cancellative`` adds the groupoid-only pruning rule that ``g∘-`` and
    ``-∘f`` are injective.
    """
    pairs = [(g, f) for g, f in itertools.product(arrows, repeat=2) if s[g] == t[f]]
    free = [p for p in pairs if p not in forced]
    options = {(g, f): [h for h in arrows if s[h] == s[f] and t[h] == t[g]] for g, f in free}
    comp = dict(forced)

    def consistent(g, f) -> bool:
        h = comp[(g, f)]
        if cancellative:
            for (g2, f2), h2 in comp.items():
                if h2 == h and (g2, f2) != (g, f) and (g2 == g or f2 == f):
                    return False
        # every triple with all four products known must associate
        for a, b, c in itertools.product(arrows, repeat=3):
            if s[a] != t[b] or s[b] != t[c]:
                continue
            ab, bc = comp.get((a, b)), comp.get((b, c))
            if ab is None or bc is None:
                continue
            lhs, rhs = comp.get((ab, c)), comp.get((a, bc))
            if lhs is not None and rhs is not None and lhs != rhs:
                return False
        return True

    def go(k: int):
        if k == len(free):
            yield dict(comp)
            return
        key = free[k]
        for h in options[key]:
            comp[key] = h
            if consistent(*key):
                yield from go(k + 1)
        comp.pop(key, None)

    if all(consistent(*p) for p in forced):
        yield from go(0)


def _typings(arrows: tuple, units: tuple) -> Iterable[tuple[dict, dict]]:
    others = [f for f in arrows if f not in units]
    for ends in itertools.product(units, repeat=2 * len(others)):
        s = {u: u for u in units}
        t = {u: u for u in units}
        for i, f in enumerate(others):
            s[f], t[f] = ends[2 * i], ends[2 * i + 1]
        yield s, t


def enumerate_groupoids(n: int, max_size: Optional[int] = None) -> CensusResult:
    """Every groupoid whose arrow set is ``X = {0, ..., n-1}``.

    Objects are identified with their unit arrows: the object set is named
    ``X_ob`` and lists the unit arrows in carrier order, and the unit map is
    the diagonal.  Each choice of unit arrows, ends, composition table and
    inverse map is kept when it passes :func:`check_groupoid`.
    """
    _check_cap("gpd", n, max_size)
    start = time.perf_counter()
    X = carrier(n)
    arrows = X.elements
    found = []
    for r in range(1, n + 1) if n else [0]:
        for units in itertools.combinations(arrows, r):
            objects = FinSet("X_ob", units)
            for s, t in _typings(arrows, units):
                forced = {}
                for f in arrows:
                    forced[(t[f], f)] = f
                    forced[(f, s[f])] = f
                for comp in _fill_compositions(arrows, s, t, forced, cancellative=True):
                    unit = {u: u for u in units}
                    inverse_options = [
                        [i for i in arrows if comp.get((i, f)) == s[f] and comp.get((f, i)) == t[f]]
                        for f in arrows
                    ]
                    for choice in itertools.product(*inverse_options):
                        g = Groupoid(objects, X, s, t, comp, unit=unit, inv=dict(zip(arrows, choice)))
                        if all_pass(check_groupoid(g)):
                            found.append(g)
    return CensusResult("gpd", n, found, time.perf_counter() - start)


# -- locally cancellative regular semigroupoids ----------------------------

def _restricted_growth(length: int) -> Iterable[tuple]:
    """Sequences where each new value is one more than the largest seen so far."""
    def go(prefix, top):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            yield from go(prefix + [v], max(top, v))
    yield from go([], -1)


def canonical_objects(g: Semigroupoid) -> Semigroupoid:
    """Relabel objects ``o0, o1, ...`` by first appearance in ``s(f0), t(f0), s(f1), ...``

    Objects that no arrow touches are dropped.
    """
    order = {}
    for f in g.arrows:
        for x in (g.s[f], g.t[f]):
            order.setdefault(x, f"o{len(order)}")
    objects = FinSet(f"{g.arrows.name}_ob", list(order.values()))
    return Semigroupoid(objects, g.arrows, {f: order[g.s[f]] for f in g.arrows},
                        {f: order[g.t[f]] for f in g.arrows}, g.comp)


def enumerate_lcr_semigroupoids(n: int, max_size: Optional[int] = None) -> CensusResult:
    """Every locally cancellative regular semigroupoid on arrows ``{0, ..., n-1}``.

    Objects are canonically labeled by first appearance, so each structure is
    listed once and objects touched by no arrow are left out.
    """
    _check_cap("lcr-sgpd", n, max_size)
    start = time.perf_counter()
    X = carrier(n)
    arrows = X.elements
    found = []
    for ends in _restricted_growth(2 * n):
        k = max(ends, default=-1) + 1
        objects = FinSet("X_ob", [f"o{i}" for i in range(k)])
        s = {f: f"o{ends[2 * i]}" for i, f in enumerate(arrows)}
        t = {f: f"o{ends[2 * i + 1]}" for i, f in enumerate(arrows)}
        for comp in _fill_compositions(arrows, s, t, {}, cancellative=False):
            g = Semigroupoid(objects, X, s, t, comp)
            if all_pass(check_lcr(g)):
                found.append(g)
    return CensusResult("lcr-sgpd", n, found, time.perf_counter() - start)


# -- isomorphism classes ---------------------------------------------------

def _magma_key(X: FinSet, m: Rel, perm: dict) -> tuple:
    return tuple(sorted((perm[h], perm[g], perm[f]) for (h, g), f in m.pairs))


def _sgpd_key(g: Semigroupoid, perm: dict) -> tuple:
    inv = {v: k for k, v in perm.items()}
    order = {}
    for f in sorted(perm.values()):
        for x in (g.s[inv[f]], g.t[inv[f]]):
            order.setdefault(x, len(order))
    ends = tuple((perm[f], order[g.s[f]], order[g.t[f]]) for f in g.arrows)
    comp = tuple(sorted((perm[a], perm[b], perm[c]) for (a, b), c in g.comp.items()))
    return tuple(sorted(ends)), comp


def iso_classes(result: CensusResult) -> int:
    """Number of isomorphism classes among the structures, by brute-force orbits."""
    seen = set()
    for x in result.structures:
        is_sgpd = isinstance(x, Semigroupoid)
        labels = (x.arrows if is_sgpd else x.X).elements
        keys = []
        for p in itertools.permutations(range(len(labels))):
            perm = {labels[i]: p[i] for i in range(len(labels))}
            keys.append(_sgpd_key(x, perm) if is_sgpd else _magma_key(x.X, x.m, perm))
        seen.add(min(keys))
    return len(seen)


# -- theorem cross-checks --------------------------------------------------

@dataclass
class CrossCheck:
    name: str
    n: int
    passed: bool
    summary: str
    mismatches: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __str__(self) -> str:
        lines = [f"{self.name} n={self.n}: {'PASS' if self.passed else 'FAIL'}: {self.summary}"]
        lines += [f"  mismatch: {m}" for m in self.mismatches[:20]]
        return "\n".join(lines)


def cross_check_theorem1(n: int, max_size: Optional[int] = None) -> CrossCheck:
    """Frobenius census and groupoid census correspond one to one.

    Each Frobenius algebra must map to a census groupoid, each groupoid must
    map back to a census Frobenius algebra, and both composites must be the
    identity.
    """
    from .correspond import frob_to_groupoid, groupoid_to_frob

    frobs = enumerate_frobenius(n, max_size=max_size).structures
    gpds = enumerate_groupoids(n, max_size=max(n, cap_for("gpd")) if max_size is None else max_size).structures
    frob_set, gpd_set = set(frobs), set(gpds)
    mismatches = []
    for c in frobs:
        g = frob_to_groupoid(c)
        if g not in gpd_set:
            mismatches.append(("frob without groupoid", c.m.pairs))
        elif groupoid_to_frob(g) != c:
            mismatches.append(("frob round trip", c.m.pairs))
    for g in gpds:
        c = groupoid_to_frob(g)
        if c not in frob_set:
            mismatches.append(("groupoid without frob", sorted(g.comp.items())))
        elif frob_to_groupoid(c) != g:
            mismatches.append(("groupoid round trip", sorted(g.comp.items())))
    if len(frobs) != len(gpds):
        mismatches.append(("count", len(frobs), len(gpds)))
    ok = not mismatches
    summary = (f"bijection of size {len(frobs)}" if ok
               else f"{len(frobs)} Frobenius algebras vs {len(gpds)} groupoids")
    return CrossCheck("thm1", n, ok, summary, mismatches,
                      {"frobenius": len(frobs), "groupoids": len(gpds)})


def cross_check_theorems23(n: int, max_size: Optional[int] = None) -> CrossCheck:
    """LCR semigroupoids give H*-algebras and H*-algebras give LCR semigroupoids.

    Also records which H*-algebras fail (U), i.e. are not Frobenius.
    """
    from .correspond import hstar_to_sgpd, roundtrip_sgpd, sgpd_to_hstar
    from .frobenius import check_hstar, check_U

    sgpds = enumerate_lcr_semigroupoids(n, max_size=max_size).structures
    hstars = enumerate_hstar(n, max_size=max_size).structures
    hstar_ms = {c.m for c in hstars}
    mismatches, roundtrips = [], []
    image = set()
    for g in sgpds:
        c = sgpd_to_hstar(g)
        image.add(c.m)
        if not all_pass(check_hstar(c)):
            mismatches.append(("thm2", sorted(g.comp.items())))
        r = roundtrip_sgpd(g)
        roundtrips.append(r)
        if not r.passed:
            mismatches.append(("roundtrip", sorted(g.comp.items()), r.detail))
    for c in hstars:
        try:
            g = hstar_to_sgpd(c)
        except Exception as exc:  # a failed construction is a theorem mismatch
            mismatches.append(("thm3", c.m.pairs, str(exc)))
            continue
        if not all_pass(check_lcr(g)):
            mismatches.append(("thm3", c.m.pairs))
    if image != hstar_ms:
        mismatches.append(("image", len(image), len(hstar_ms)))
    not_frob = [c for c in hstars if not check_U(c).passed]
    ok = not mismatches
    summary = (f"{len(sgpds)} LCR semigroupoids, {len(hstars)} H*-algebras; "
               f"{len(not_frob)} H*-algebras fail (U)")
    return CrossCheck("thm23", n, ok, summary, mismatches,
                      {"lcr": len(sgpds), "hstar": len(hstars), "roundtrips": roundtrips,
                       "hstar_not_frobenius": not_frob})


# -- export ----------------------------------------------------------------

def emit(result: CensusResult, directory) -> list:
    """One structure file per structure plus ``manifest.json`` with the count."""
    import json
    from pathlib import Path

    from .structfile import dumps

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    width = len(str(max(result.count - 1, 0)))
    files = []
    for i, x in enumerate(result.structures):
        name = f"{result.kind.replace('-', '_')}_{i:0{width}d}"
        path = directory / f"{name}.struct"
        path.write_text(dumps({name: x}), encoding="utf-8")
        written.append(path)
        files.append(path.name)
    manifest = {"kind": result.kind, "n": result.n, "count": result.count, "files": files}
    mpath = directory / "manifest.json"
    mpath.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    written.append(mpath)
    return written
