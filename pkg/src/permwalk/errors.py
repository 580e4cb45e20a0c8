"""Exception types shared across the package."""


class PermwalkError(Exception):
    """Base class for all permwalk errors."""


class DimensionOverflow(PermwalkError):
    """A requested basis or operator exceeds the configured element cap."""


class ClassTooLarge(PermwalkError):
    """A conjugacy class exceeds the iteration cap."""


class NotHermitian(PermwalkError):
    """An operator that must be Hermitian fails the symmetry-residual check."""
