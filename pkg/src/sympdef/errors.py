"""Exception hierarchy.

Every mathematical failure derives from :class:`SympdefError`; the CLI maps
those to exit code 1 and :class:`ConfigError` to exit code 2.
"""

from __future__ import annotations


class SympdefError(Exception):
    """Base class; ``witness`` carries a counterexample when one exists."""

    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


class ConfigError(SympdefError):
    pass


class TermLimitExceeded(SympdefError):
    pass


class InvalidAlgebra(SympdefError):
    pass


class NotAnIdeal(SympdefError):
    pass


class NotSquareZero(SympdefError):
    pass


class NotElementary(SympdefError):
    pass


class SpaceMismatch(SympdefError):
    pass


class BaseMismatch(SympdefError):
    pass


class NotClosed(SympdefError):
    pass


class WrongClosedFiber(SympdefError):
    pass


class Degenerate(SympdefError):
    pass


class RankOverflow(SympdefError):
    pass


class InconsistentLift(SympdefError):
    pass


class NotADifferential(SympdefError):
    pass


class NotAntisymmetric(SympdefError):
    pass


class JacobiFails(SympdefError):
    pass


class NotADerivation(SympdefError):
    pass


class NotClosedInput(SympdefError):
    pass
