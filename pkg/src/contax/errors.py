"""Exception hierarchy shared by all contax modules."""


class ContaxError(Exception):
    """Base class for user-facing errors (bad input, bad config)."""


class PairParseError(ContaxError):
    """A pairs file line could not be parsed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ValidationError(ContaxError):
    """Structurally invalid input (cycles, orphans, empty term sets, ...)."""


class UnknownAttributeError(ContaxError):
    """Lookup of an attribute that is not part of the table/context."""


class UnknownConceptError(ContaxError):
    """Lookup of a concept that is not part of the taxonomy."""
