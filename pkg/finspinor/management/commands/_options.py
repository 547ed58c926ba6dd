"""Argument validation and input loading shared by the finspinor commands."""
import logging
from contextlib import contextmanager

from django.core.management.base import CommandError

from finspinor.documents import load_basis, load_matrix
from finspinor.errors import (
    ConventionError, DocumentError, DomainError, FinspinorError, NotUnimodularError,
    SingularMatrixError,
)
from finspinor.herm import standard_herm_basis
from finspinor.spinors import make_basis_change

logger = logging.getLogger(__name__)

# Exit codes
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


def check_range(name: str, value: int, low: int, high: int | None = None) -> int:
    if value < low or (high is not None and value > high):
        bound = f"{low}..{high}" if high is not None else f">= {low}"
        logger.error(f"{name}={value} outside {bound}")
        raise CommandError(f"{name} must be {bound}, got {value}", returncode=EXIT_USAGE)
    return value


def load_change(path: str, n: int):
    """Read a MatrixDocument and validate it as an element of SL(n, C)."""
    try:
        matrix = load_matrix(path)
    except DocumentError as e:
        logger.error(f"Failed to parse {path}: {e}")
        raise CommandError(str(e), returncode=EXIT_USAGE) from e
    if matrix.shape[0] != n:
        raise CommandError(
            f"{path} holds a {matrix.shape[0]}x{matrix.shape[0]} matrix, expected N={n}",
            returncode=EXIT_USAGE,
        )
    try:
        return make_basis_change(matrix)
    except (NotUnimodularError, SingularMatrixError) as e:
        logger.error(f"Rejected {path}: {e}")
        raise CommandError(str(e), returncode=EXIT_PRECONDITION) from e
    except DomainError as e:
        raise CommandError(str(e), returncode=EXIT_USAGE) from e


def load_basis_option(path: str | None, n: int):
    """The basis from a gen-basis document, or the standard one."""
    if not path:
        return standard_herm_basis(n)
    try:
        basis = load_basis(path)
    except FinspinorError as e:
        logger.error(f"Failed to load basis {path}: {e}")
        raise CommandError(str(e), returncode=EXIT_USAGE) from e
    if basis.dim != n:
        raise CommandError(f"{path} is a basis of Herm({basis.dim}), expected N={n}",
                           returncode=EXIT_USAGE)
    return basis


@contextmanager
def library_errors(command: str):
    """Turn finspinor errors raised by a computation into CommandErrors.

    Failed realness or oracle checks exit 1, non-unimodular or singular
    input exits 3, anything else exits 2.
    """
    try:
        yield
    except ConventionError as e:
        logger.error(f"[{command}] Numerical check failed: {e}")
        raise CommandError(str(e), returncode=EXIT_VERIFY_FAILED) from e
    except (NotUnimodularError, SingularMatrixError) as e:
        logger.error(f"[{command}] {e}")
        raise CommandError(str(e), returncode=EXIT_PRECONDITION) from e
    except FinspinorError as e:
        logger.error(f"[{command}] {e}")
        raise CommandError(str(e), returncode=EXIT_USAGE) from e
