"""Exception hierarchy shared across the package."""


class LcisError(Exception):
    """Base class for all lcislab errors."""


class InstanceTooLarge(LcisError):
    """An input exceeds a documented desk-scale cap."""


class UnsupportedArity(LcisError, ValueError):
    pass


class ParameterError(LcisError, ValueError):
    pass


class GadgetContractError(LcisError):
    """A gadget violates the increasing-subsequence bound a combiner relies on."""


class ShapeError(LcisError, ValueError):
    """Malformed instance: bad file syntax or violated structural invariant.

    ``lineno`` is set when the error comes from a parser.
    """

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno
