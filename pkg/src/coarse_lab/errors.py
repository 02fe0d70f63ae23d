"""Exception hierarchy shared by all modules."""


class CoarseLabError(Exception):
    """Base class for every error raised by coarse_lab."""


class InputDomainError(CoarseLabError, ValueError):
    """An argument lies outside the domain an operation accepts."""


class StructuralError(CoarseLabError, ValueError):
    """A graph or operator lacks a structural property the operation needs."""


class DisconnectedComponentError(StructuralError):
    pass


class ResourceExhaustedError(CoarseLabError, RuntimeError):
    """A bounded search (e.g. rejection sampling) ran out of budget."""


class TruncationInsufficientError(CoarseLabError):
    """A finite truncation cannot decide the requested limit statement."""
