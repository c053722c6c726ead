"""Exception types shared across the package."""


class TopfanError(Exception):
    """Base class for all library errors."""


class DomainError(TopfanError):
    """An evaluation was requested outside the domain of the map."""


class SingularRealPart(TopfanError):
    """The rational real-part matrix of a would-be basis is singular."""


class NotUnimodular(TopfanError):
    """The integer-part matrix has determinant different from +-1."""


class FanStructureError(TopfanError):
    """Structurally malformed fan data (rejected at construction)."""


class UnknownSimplexError(TopfanError):
    """A simplex was referenced that does not belong to the complex."""


class PreconditionError(TopfanError):
    """An operation was invoked with a failed precondition."""


class InvalidFanError(TopfanError):
    """An operation requiring a fully valid fan received one that fails an axiom."""


class GenerationError(TopfanError):
    """Random fan generation exhausted its retry budget."""


class FanParseError(TopfanError):
    """A fan document failed to parse; carries a human-readable position."""

    def __init__(self, message: str, position: str = ""):
        self.position = position
        super().__init__(f"{message}" + (f" (at {position})" if position else ""))
