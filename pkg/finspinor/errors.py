"""Exceptions raised by the finspinor library and commands."""


class FinspinorError(ValueError):
    """Base class for every error raised by finspinor."""


class DomainError(FinspinorError):
    """An argument lies outside the domain of the operation."""


class NotUnimodularError(FinspinorError):
    """A basis change matrix does not have determinant 1."""


class SingularMatrixError(FinspinorError):
    """A matrix that must be inverted is singular."""


class NotABasisError(FinspinorError):
    """The supplied Hermitian matrices are not linearly independent."""


class ConventionError(FinspinorError):
    """A value that must be real (or must match an oracle) did not.

    Raised when an imaginary residue exceeds tolerance; in practice this
    points at an index or transpose convention bug.
    """


class DocumentError(FinspinorError):
    """A JSON document could not be parsed or failed validation."""
