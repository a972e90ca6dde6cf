"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`QuivhomError`.
The CLI maps the four families below onto its exit codes.
"""


class QuivhomError(Exception):
    """Base class."""


class ParseError(QuivhomError):
    """Malformed input file."""


class InvariantViolation(QuivhomError):
    """Well-formed input that breaks a structural invariant."""


class OracleViolation(QuivhomError):
    """A cotorsion-pair oracle returned data that fails re-verification."""


class ConstructionError(QuivhomError):
    """A construction could not be carried out on the given input."""


class DimensionMismatch(InvariantViolation):
    pass


class BadVertex(InvariantViolation):
    pass


class NotNatural(InvariantViolation):
    pass


class NotExact(InvariantViolation):
    pass


class ActionNotPreserved(QuivhomError):
    """A sub/quotient space failed to inherit the module action (a bug)."""


class TruncatedPathSet(ConstructionError):
    pass


class CyclicQuiver(ConstructionError):
    pass


class NotLeftRooted(ConstructionError):
    pass


class NotRightRooted(ConstructionError):
    pass


class NotInPhi(ConstructionError):
    pass


class NoPreimage(ConstructionError):
    pass


class LiftFailure(OracleViolation):
    pass


class TooLarge(ConstructionError):
    pass


class CertificateInvalid(ConstructionError):
    pass


class UnsupportedOutsideWindow(ConstructionError):
    pass
