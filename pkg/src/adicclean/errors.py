"""Exception hierarchy for adicclean.

Algebraic failures (element not a unit, lift did not converge, ...) all
derive from AdicCleanError so callers can distinguish them from input
errors (ValueError / TypeError raised on malformed arguments).
"""


class AdicCleanError(Exception):
    """Base class for algebraic failures."""


class InvalidSpec(AdicCleanError):
    """Ring specification parameters are invalid (non-prime p, cap < 1, ...)."""


class SpecMismatch(AdicCleanError):
    """Operands belong to different rings."""


class EndoSpecMismatch(AdicCleanError):
    """Endomorphism tag is not applicable to the element's ring."""


class BadLevel(AdicCleanError):
    """Truncation level outside 1..cap."""


class NotUnit(AdicCleanError):
    """Element has no two-sided inverse."""


class NotUnitInCorner(AdicCleanError):
    """Corner element is not invertible inside its corner ring."""


class CornerNotUnit(NotUnitInCorner):
    """Sylvester solve failed because the unit-corner block is not invertible."""


class NotIdempotent(AdicCleanError):
    """Element expected to satisfy e*e == e does not."""


class NotApproximateIdempotent(AdicCleanError):
    """Hensel input does not satisfy a*a - a in I."""


class NoConvergence(AdicCleanError):
    """Iteration budget exceeded; signals an internal bug, not bad input."""


class NotPrimeField(AdicCleanError):
    """Matrix fast path requires a matrix ring over Z/p with p prime."""


class BudgetExceeded(AdicCleanError):
    """Enumeration or search budget exceeded."""


class PostconditionViolated(AdicCleanError):
    """An internally verified identity failed; indicates a bug upstream."""


class NotNilpotentAtLevel(AdicCleanError):
    """No power of the element entered the required ideal power within budget."""


class ResidualNonzero(AdicCleanError):
    """Sylvester post-check identities failed at the working level."""


class CommutationNotAchieved(AdicCleanError):
    """Refined idempotent does not commute with x to the promised level."""


class CertificateInvalid(AdicCleanError):
    """Final certificate failed re-verification."""
