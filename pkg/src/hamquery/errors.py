"""Exception types shared across the package."""


class HamqueryError(ValueError):
    """Base class for every error raised by this package."""


class DimensionError(HamqueryError):
    """Operands have incompatible shapes."""


class FormatError(HamqueryError):
    """A text file does not follow the expected format."""


class ValidationError(HamqueryError):
    """A code, design or construction violates one of its invariants."""


class InconsistentResponsesError(HamqueryError):
    """Oracle responses that no binary vector could have produced."""


class SearchLimitError(HamqueryError):
    """An exhaustive search was refused because the input is too large."""
