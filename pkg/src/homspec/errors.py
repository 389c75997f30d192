"""Exception types shared across the package."""


class HomspecError(Exception):
    """Base class for all errors raised by this package."""


class GroupSpecError(HomspecError):
    """Malformed or unsupported group specification."""


class WeightError(HomspecError):
    """A weight violates a precondition (wrong length, not dominant, ...)."""


class RestrictionMapError(HomspecError):
    """A restriction map is inconsistent with the declared lattices."""


class DecompositionError(HomspecError):
    """Character peeling failed; the input was not a genuine character."""


class GroupOrderError(HomspecError):
    """A finite group exceeded the exhaustive-computation bound."""


class InputFormatError(HomspecError):
    """A data file (map, group, grid, report) failed to parse."""
