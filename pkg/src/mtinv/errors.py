"""Exception hierarchy shared by the library and the command line driver."""


class MtinvError(Exception):
    """Base class for every error raised by this package."""


class RelationViolation(MtinvError):
    """Generator data does not extend to a group action."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class InvariantViolation(MtinvError):
    """A module or map fails one of its structural checks."""


class SizeGuard(MtinvError):
    pass


class CompositionMismatch(MtinvError):
    pass


class InvalidSubgroup(MtinvError):
    pass


class UnknownConstruction(MtinvError):
    pass


class NotATorus(MtinvError):
    pass


class CrossCheckFailure(MtinvError):
    """Two independent computations of the same group disagree.

    This always indicates a bug in the package, never bad input.
    """


class ExactnessFailure(MtinvError):
    """A sequence that must be exact was found not to be."""


class ParseError(MtinvError):
    pass


class SchemaError(MtinvError):
    pass


class ValidationError(MtinvError):
    pass
