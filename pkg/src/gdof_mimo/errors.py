"""Exception hierarchy shared by the library and the CLI."""


class GdofError(Exception):
    """Base class for all package errors."""


class DomainError(GdofError, ValueError):
    """An input lies outside the admissible parameter domain."""


class BoundaryError(DomainError):
    """Exponents sit exactly on a regime boundary (alpha == 1)."""


class NumericalError(GdofError, ArithmeticError):
    """A factorization or solver failed in a way that signals ill-conditioning."""


class UnboundedError(NumericalError):
    """The symmetric-rate LP has no finite optimum (a layer class is unconstrained)."""


class AssumptionError(GdofError):
    """A deterministic model violates a structural assumption needed by the capacity formulas."""
