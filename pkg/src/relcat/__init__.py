"""Finite relations, relative Frobenius and H*-algebras, groupoids,
semigroupoids and weak monoids, with witness-producing law checkers and an
exhaustive small-size census."""

from .census import (
    CensusResult,
    cross_check_theorem1,
    cross_check_theorems23,
    enumerate_frobenius,
    enumerate_groupoids,
    enumerate_hstar,
    enumerate_lcr_semigroupoids,
)
from .correspond import (
    frob_to_groupoid,
    groupoid_to_frob,
    hstar_to_sgpd,
    roundtrip_frob,
    roundtrip_groupoid,
    roundtrip_sgpd,
    sgpd_to_hstar,
)
from .frobenius import (
    FrobCandidate,
    HStarCandidate,
    check_A,
    check_F,
    check_frobenius,
    check_H,
    check_hstar,
    check_M,
    check_U,
)
from .groupoid import (
    Groupoid,
    Semigroupoid,
    check_groupoid,
    check_lcr,
    check_local_cancellativity,
    check_semigroupoid,
    is_regular,
    pseudoinverses,
)
from .relcore import PT, FinSet, ProductSet, PtSubset, Rel, compose, dagger, identity, product
from .report import CheckReport
from .structfile import dumps, parse
from .weakmonoid import (
    FiniteMonoid,
    WeakMonoidCandidate,
    WeakStarCandidate,
    CyclicCandidate,
    check_cyclic,
    check_weak_monoid,
    check_weak_star,
    quotient_by_projector,
)

__all__ = [
    "CensusResult",
    "check_A",
    "check_cyclic",
    "check_F",
    "check_frobenius",
    "check_groupoid",
    "check_H",
    "check_hstar",
    "check_lcr",
    "check_local_cancellativity",
    "check_M",
    "check_semigroupoid",
    "check_U",
    "check_weak_monoid",
    "check_weak_star",
    "CheckReport",
    "compose",
    "cross_check_theorem1",
    "cross_check_theorems23",
    "CyclicCandidate",
    "dagger",
    "dumps",
    "enumerate_frobenius",
    "enumerate_groupoids",
    "enumerate_hstar",
    "enumerate_lcr_semigroupoids",
    "FiniteMonoid",
    "FinSet",
    "frob_to_groupoid",
    "FrobCandidate",
    "Groupoid",
    "groupoid_to_frob",
    "hstar_to_sgpd",
    "HStarCandidate",
    "identity",
    "is_regular",
    "parse",
    "product",
    "ProductSet",
    "pseudoinverses",
    "PT",
    "PtSubset",
    "quotient_by_projector",
    "Rel",
    "roundtrip_frob",
    "roundtrip_groupoid",
    "roundtrip_sgpd",
    "Semigroupoid",
    "sgpd_to_hstar",
    "WeakMonoidCandidate",
    "WeakStarCandidate",
]

__version__ = "0.1.0"
