'''
Copyright (c) 2026 KLJ Enterprises, LLC.
Licensed under the terms in the LICENSE file in the root of this repository.
'''
# Core/errors.py

# Exit codes used by main.py; one per error family.
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_CONVERGENCE = 4


class MarcumPhiError(Exception):
    """Base class for every error raised by the numeric packages."""

    exit_code = EXIT_CONVERGENCE


class DomainError(MarcumPhiError, ValueError):
    """An argument lies outside the domain of the requested function."""

    exit_code = EXIT_DOMAIN


class ConvergenceError(MarcumPhiError, ArithmeticError):
    """A truncated series did not meet its tolerance within max_terms."""

    exit_code = EXIT_CONVERGENCE

    def __init__(self, message: str, terms: int | None = None, partial: float | None = None):
        super().__init__(message)
        self.terms = terms
        self.partial = partial


class QuadratureError(ConvergenceError):
    """Adaptive quadrature could not reach its error target."""


class LinearAlgebraError(DomainError):
    """Covariance is not Hermitian PD, or the mean matrix is not rank one."""


class UsageError(Exception):
    """Missing or malformed CLI parameters."""

    exit_code = EXIT_USAGE


def require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (MarcumPhiError, UsageError)):
        return exc.exit_code
    if isinstance(exc, IndexError):
        return EXIT_DOMAIN
    return EXIT_CONVERGENCE
