"""Exception hierarchy shared by all envelkit modules."""


class EnvelkitError(Exception):
    """Base class for every error raised by envelkit."""


class ParseError(EnvelkitError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MixedFields(EnvelkitError):
    pass


class DimensionMismatch(EnvelkitError):
    pass


class NotAnIdeal(EnvelkitError):
    pass


class NotAbelianIdeal(NotAnIdeal):
    pass


class NotDerivation(EnvelkitError):
    pass


class NotRepresentation(EnvelkitError):
    pass


class NotInvariant(EnvelkitError):
    pass


class JacobiError(EnvelkitError):
    pass


class MixedParents(EnvelkitError):
    pass


class OrderNotAdapted(EnvelkitError):
    pass


class NotInMU(EnvelkitError):
    pass


class DegreeOverflow(EnvelkitError):
    pass


class NotCodimOne(EnvelkitError):
    pass


class HypothesisNotMet(EnvelkitError):
    pass


class PositiveCharacteristic(EnvelkitError):
    """Raised by computations that are only valid in characteristic zero."""


class BadParameter(EnvelkitError):
    pass


class WrongCharacteristic(EnvelkitError):
    pass


class DifferentFamilies(EnvelkitError):
    pass


class NotDim4(EnvelkitError):
    pass


class NotSolvable(EnvelkitError):
    pass
