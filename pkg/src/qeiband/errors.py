"""Exception hierarchy shared by all qeiband modules."""
from __future__ import annotations


class QeiError(Exception):
    """Base class for all qeiband errors."""


class DomainError(QeiError, ValueError):
    """A parameter lies outside the operation's domain (e.g. tau0 <= 0)."""


class UnsupportedDimension(DomainError):
    """Closed-form reductions exist only for the supported dimensions."""


class UnsupportedScenario(QeiError):
    """The requested operation is not defined for this scenario type."""


class NoSignChange(QeiError):
    """Root bracket endpoints do not straddle a sign change."""


class BracketFailure(QeiError):
    """No sign-changing bracket could be located for a root."""


class NonFinite(QeiError):
    """A function evaluation returned NaN or infinity."""


class NonConvergent(QeiError):
    """An iterative scheme exhausted its budget before reaching tolerance."""


class SingularDiscretization(QeiError):
    """The discrete eigenproblem is degenerate (non-positive weight)."""
