class InputError(ValueError):
    """Malformed or inconsistent input (bad letter, index out of range, ...)."""


class SizeLimitError(RuntimeError):
    """A closure or enumeration would exceed the materialization cap."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required
