"""Exception hierarchy."""


class KappaError(Exception):
    """Base class for all library errors."""


class OrderMismatchError(KappaError, ValueError):
    pass


class NonUnitError(KappaError, ValueError):
    pass


class NormalizationError(KappaError, ValueError):
    pass


class ExponentError(KappaError, ValueError):
    pass


class MetricMismatchError(KappaError, ValueError):
    pass


class UnknownGeneratorError(KappaError, KeyError):
    pass


class SingularParameterError(KappaError, ValueError):
    pass


class RegimeError(KappaError, ValueError):
    pass


class ParseError(KappaError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class IncompleteRealizationError(KappaError, ValueError):
    pass


class DegenerateModelError(KappaError, ValueError):
    pass
