"""Exception types shared across the package."""

from __future__ import annotations


class BPWLError(Exception):
    """Base class for all errors raised by :mod:`bpwl`."""


class LevelError(BPWLError, ValueError):
    """Malformed level input (k = -3, non-coprime pair, ...)."""


class OutOfScopeLevel(BPWLError):
    """A well-formed level for which the requested data is not available."""


class UnboundVariable(BPWLError, KeyError):
    pass


class LevelPole(BPWLError, ZeroDivisionError):
    """The chosen level annihilates a denominator of a k-dependent coefficient."""


class TruncationOverflow(BPWLError):
    """A mode action would leave the truncated graded space."""


class InvariantFailure(BPWLError, AssertionError):
    """An internal cross-check failed; indicates an implementation bug."""


class DomainError(BPWLError, ValueError):
    """Parameter outside the domain of a family or table."""
