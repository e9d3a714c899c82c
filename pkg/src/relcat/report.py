from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Optional

from .relcore import PtSubset


@dataclass(frozen=True)
class CheckReport:
    """Verdict for one law.

    A failing report always carries a ``witness``: a tuple of elements (plus a
    short tag where one law has several shapes of failure) that can be replayed
    against the structure to reproduce the violation.  ``informational``
    reports never affect an overall verdict.
    """

    axiom: str
    passed: bool
    witness: Optional[tuple] = None
    unit: Optional[PtSubset] = None
    detail: str = ""
    informational: bool = False
    extra: Optional[Mapping[str, Any]] = None

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError(f"failing report for {self.axiom} needs a witness")

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def __str__(self) -> str:
        s = f"{self.axiom}: {self.verdict}"
        if self.witness is not None:
            s += f"  witness={format_witness(self.witness)}"
        return s


def format_witness(w) -> str:
    if isinstance(w, (tuple, list)):
        return "(" + ", ".join(format_witness(x) for x in w) + ")"
    if isinstance(w, (frozenset, set)):
        return "{" + ", ".join(sorted(map(str, w))) + "}"
    return str(w)


def all_pass(reports: Iterable[CheckReport]) -> bool:
    return all(r.passed for r in reports if not r.informational)


def first_failure(reports: Iterable[CheckReport]) -> Optional[CheckReport]:
    return next((r for r in reports if not r.passed and not r.informational), None)
