"""Exception types shared across relcat."""

from __future__ import annotations


class RelcatError(Exception):
    """Base class for every error raised by relcat."""


class TypeMismatch(RelcatError, TypeError):
    """Composed relations do not meet on a common middle set."""


class NotTotal(RelcatError, ValueError):
    """A map handed to graph_of (or a structure field) is not defined everywhere."""


class MultiValued(RelcatError):
    """The multiplication relates a pair to more than one element."""

    def __init__(self, h, g, values):
        self.pair = (h, g)
        self.values = tuple(values)
        super().__init__(f"m({h}, {g}) is multi-valued: {sorted(self.values)}")


class PreconditionError(RelcatError):
    """A construction was applied to a structure that fails its input checks.

    ``reports`` holds the failing CheckReports when they are available.
    """

    def __init__(self, message: str, reports=()):
        self.reports = tuple(reports)
        super().__init__(message)


class NonAssociativeProduct(PreconditionError):
    """``(ba)b`` and ``b(ab)`` disagree while evaluating the canonical involution."""


class NonUniqueWitness(PreconditionError):
    """An element that must be unique (source, target, inverse) is absent or repeated."""


class NotSingleValued(PreconditionError):
    """Distinct pseudoinverses give distinct values for ``f*f`` or ``ff*``."""


class DomainMismatch(PreconditionError):
    """Definedness of the multiplication disagrees with the source/target pullback."""


class IsoFailure(RelcatError):
    """A claimed isomorphism does not commute with the structure maps."""


class NotProjector(RelcatError, ValueError):
    pass


class NotCommutative(RelcatError, ValueError):
    pass


class IllDefined(RelcatError, ValueError):
    """The operation induced on a quotient depends on the chosen representatives."""


class CapExceeded(RelcatError):
    """A brute-force search was asked to run beyond its configured size cap."""


class InternalInconsistency(RelcatError, AssertionError):
    """Two independent evaluations of the same law disagreed."""
