"""Exception hierarchy shared by all flexokit modules."""


class FlexokitError(Exception):
    """Base class for all errors raised by this package."""


class DesignError(FlexokitError):
    """A design document violates the schema or a domain invariant.

    ``path`` locates the offending field (dotted, e.g. ``flexures.leg.ribs``)
    when the error was detected during parsing; it is empty for errors raised
    by direct construction of domain objects.
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class DanglingReferenceError(DesignError):
    """A document references a name that is not defined anywhere."""

    def __init__(self, name: str, path: str = ""):
        self.name = name
        super().__init__(f"reference to undefined name {name!r}", path)


class GeometryError(FlexokitError):
    """Requested geometry cannot be realized."""


class AlwaysJammedError(GeometryError):
    """Jamming heads already touch at zero bend (spacing <= head diameter)."""


class UnreachableLimitError(GeometryError):
    """No jam angle exists for the given feature geometry."""


class ContactAtRestError(GeometryError):
    """Extensional features touch before any bending occurs.

    ``min_diagonal`` is the smallest feasible diagonal length in meters.
    """

    def __init__(self, message: str, min_diagonal: float):
        self.min_diagonal = min_diagonal
        super().__init__(message)


class TargetRangeError(FlexokitError):
    """An inverse-design target lies outside the attainable range.

    ``bounds`` holds the attainable (min, max); ``max`` may be a supremum
    that is approached but never reached.
    """

    def __init__(self, message: str, bounds: tuple):
        self.bounds = bounds
        super().__init__(message)


class OverPullError(FlexokitError):
    """Tendon pull exceeds the limb's total jam capacity."""


class EmptyLimbError(FlexokitError):
    """A limb has no joints to actuate."""
