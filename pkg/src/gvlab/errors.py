"""Exception hierarchy shared by every gvlab module."""


class GVLabError(Exception):
    """Base class for all gvlab errors."""


class PreconditionError(GVLabError, ValueError):
    """An argument violates an operation's documented precondition."""


class NonPrimeCharacteristic(PreconditionError):
    pass


class ReducibleModulus(PreconditionError):
    pass


class UnsupportedSize(PreconditionError):
    pass


class UnsupportedField(PreconditionError):
    pass


class ZeroInverse(GVLabError, ZeroDivisionError):
    pass


class LengthMismatch(PreconditionError):
    pass


class TrivialCode(GVLabError):
    """The code has dimension zero, so it has no minimum distance."""


class SizeGuard(GVLabError):
    """An enumeration would exceed its configured work budget."""


class DomainError(PreconditionError):
    pass


class OddVariations(GVLabError):
    pass


class NoValidDecomposition(GVLabError):
    pass


class ZeroConstantTerm(PreconditionError):
    pass


class ParseError(PreconditionError):
    pass
