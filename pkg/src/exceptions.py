class SchubertError(Exception):
    """
    Base class of every error raised by the engine.
    The CLI prints the class name together with the message.
    """

    @property
    def name(self) -> str:
        return type(self).__name__


class UnknownType(SchubertError):
    pass


class InvalidCartanDatum(SchubertError):
    pass


class NotFiniteType(SchubertError):
    pass


class NonIntegralCoroot(SchubertError):
    pass


class UnknownRoot(SchubertError):
    pass


class InvalidRoot(UnknownRoot):
    """
    A coordinate vector that cannot be a root at all: zero, or with mixed signs.
    """
    pass


class CoefficientOverflow(SchubertError):
    pass


class WrongGrade(SchubertError):
    pass


class InvalidDegree(SchubertError):
    pass


class RankTooLarge(SchubertError):
    pass


class CheckpointMismatch(SchubertError):
    pass


class Interrupted(SchubertError):
    """
    The search was stopped by a signal; the checkpoint (if any) has been flushed
    and the run can be resumed from it.
    """
    pass


class MemoryBudgetExceeded(SchubertError):
    pass
