"""Exception hierarchy.

Every error raised on bad input derives from :class:`K3Error` (itself a
``ValueError``), so callers can catch the whole family at once.  The one
exception that signals a bug rather than bad input is
:class:`InternalInconsistency`.
"""


class K3Error(ValueError):
    """Base class for invalid-input errors."""


# lattice
class NotSymmetric(K3Error):
    pass


class OddDiagonal(K3Error):
    pass


class WrongSignature(K3Error):
    pass


class OutOfRange(K3Error):
    pass


class DimensionMismatch(K3Error):
    pass


class ZeroClass(K3Error):
    pass


class NonPositivePolarization(K3Error):
    pass


class LatticeOverflow(K3Error, OverflowError):
    """An intermediate value left the signed 64-bit range."""


# cohomology / polarization
class NotAmple(K3Error):
    pass


class NotEffective(K3Error):
    pass


class NotNef(K3Error):
    pass


class NonzeroSquare(K3Error):
    pass


class NotVeryAmple(K3Error):
    pass


# acm
class NeitherSideEffective(K3Error):
    pass


class EmptyWindow(K3Error):
    pass


class OutOfScope(K3Error):
    pass


# harness
class BoundTooSmall(K3Error):
    pass


class PreconditionViolated(K3Error):
    pass


class InternalInconsistency(RuntimeError):
    """Raised when computed cohomology contradicts Riemann-Roch."""
