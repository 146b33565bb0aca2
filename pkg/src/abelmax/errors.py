"""Shared exception types."""


class CapacityError(RuntimeError):
    """A computation was refused because it exceeds a configured cap.

    Raised instead of silently truncating; callers may retry with a
    larger cap.  The CLI maps this to exit code 3.
    """


class GeneratorFileError(ValueError):
    """A generator file failed to parse or failed its order check."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        loc = ""
        if path is not None:
            loc = f"{path}:"
        if line is not None:
            loc += f"{line}:"
        super().__init__(f"{loc} {message}" if loc else message)
        self.path = path
        self.line = line
