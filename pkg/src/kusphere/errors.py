"""Exception hierarchy shared by every module."""


class KuSphereError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class InputError(KuSphereError, ValueError):
    exit_code = 2


class ParseError(InputError):
    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DataError(InputError):
    """Ingested class data violates an invariant; ``field`` names the culprit."""

    def __init__(self, message, field=None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)


class ResourceError(KuSphereError):
    exit_code = 3


class ContractError(KuSphereError):
    """A map was passed that does not satisfy a checked precondition."""


class ConsistencyError(KuSphereError, AssertionError):
    """Two independent computations disagreed. Should never happen."""
