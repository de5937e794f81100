"""Exception hierarchy shared by all modules."""


class VCAError(Exception):
    """Base class for every error raised by :mod:`cyclevca`."""


class ChordError(VCAError, ValueError):
    pass


class LoopError(ChordError):
    pass


class CycleEdgeError(ChordError):
    pass


class FormatError(VCAError, ValueError):
    pass


class InfeasibleCandidateSetError(VCAError):
    """The candidate links do not 3-connect the cycle."""


class InfeasibleInputError(VCAError):
    pass


class NotAComponentError(VCAError, ValueError):
    pass


class NotABorderChordError(VCAError, ValueError):
    pass


class DegenerateZoneError(VCAError):
    pass


class SingletonError(VCAError, ValueError):
    """A link set has a link that crosses no other link of the set."""


class OverlapError(VCAError, ValueError):
    pass


class AlphaRangeError(VCAError, ValueError):
    pass


class IntervalError(VCAError, ValueError):
    pass


class CertificateInfeasibleError(VCAError):
    """An LP certificate failed exact verification.

    ``constraint`` names the violated row or column so the discrepancy can be
    traced back to the transcribed program.
    """

    def __init__(self, message, constraint=None):
        super().__init__(message)
        self.constraint = constraint


class CapExceeded(VCAError):
    pass


class BudgetExceededError(VCAError):
    pass


class GenerationFailedError(VCAError):
    pass
