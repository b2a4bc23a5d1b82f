class DomainError(ValueError):
    """A point, region or image falls outside the space it is supposed to live in."""


class SpaceMismatch(ValueError):
    """A point, region or map does not match the kind of space it is used with."""


class NotInjectiveError(ValueError):
    """An inverse was requested for a map that is not strictly monotone."""


class ResourceError(RuntimeError):
    """An exact computation exceeded its configured size budget."""


class NotComparable(TypeError):
    """Structural equality is not available for this kind of map."""
