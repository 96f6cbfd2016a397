"""Exception hierarchy shared by all threshkit modules."""


class ThreshError(Exception):
    """Base class for every error raised by threshkit."""


class InputError(ThreshError):
    """Malformed or inconsistent input (maps to CLI exit code 2)."""


class EmptyInput(InputError):
    pass


class TrivialFamily(InputError):
    pass


class ForeignElement(InputError):
    pass


class GroundMismatch(InputError):
    pass


class InvalidProbability(InputError):
    pass


class NotSymmetric(InputError):
    pass


class NotACover(InputError):
    pass


class DuplicateInFibre(InputError):
    pass


class FibreError(InputError):
    pass


class ProbabilityOverflow(InputError):
    pass


class CapExceeded(ThreshError):
    """An enumeration or generator-count cap would be exceeded (exit code 3)."""


class LimitExceeded(ThreshError):
    """More results exist than the caller's limit; ``partial`` holds what was found."""

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)
