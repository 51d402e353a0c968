"""Exception types shared across the package."""


class DwtmarkError(Exception):
    """Base class for all dwtmark errors."""


class FormatError(DwtmarkError):
    """A byte stream or key file does not parse as its declared format."""


class DimensionError(DwtmarkError):
    """An array shape violates a structural rule (parity, divisibility, agreement)."""


class MismatchError(DwtmarkError):
    """Inputs are individually valid but disagree with each other or with the key."""
