"""Exception hierarchy shared across the package."""


class SymplexError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SymplexError):
    """Invalid user-supplied data (bad files, bad parameters)."""


class CapError(SymplexError):
    """A configured computational cap was exceeded."""


class DegreeBoundExceeded(InputError):
    pass


class EmptySimplex(InputError):
    pass


class VertexOutOfRange(InputError):
    pass


class DimensionOutOfRange(InputError):
    pass


class NotAGroup(InputError):
    pass


class NotASubgroup(InputError):
    pass


class TableUnavailable(InputError):
    pass


class OrthogonalityFailure(InputError):
    pass


class GroupMismatch(InputError):
    pass


class RadiusMismatch(InputError):
    pass


class RadiusTooSmall(InputError):
    pass


class InvalidEmbedding(InputError):
    pass


class Indivisible(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class GroupTooLarge(CapError):
    pass


class SizeCapExceeded(CapError):
    pass


class PowerCapExceeded(CapError):
    pass


class InternalInconsistency(SymplexError):
    """An internal exactness check failed; indicates a bug, never valid data."""
