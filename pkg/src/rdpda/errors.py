"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A supplied parameter violates a documented precondition."""


class FormatError(ValueError):
    """An input document does not match the expected schema."""


class GiveUpError(RuntimeError):
    """A rejection sampler exhausted its reject budget without a success."""

    def __init__(self, message: str, rejects: int):
        super().__init__(message)
        self.rejects = rejects
