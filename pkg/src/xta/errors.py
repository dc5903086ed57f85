"""Exception types shared by every solver module."""


class XtaError(Exception):
    pass


class ParseError(XtaError, ValueError):
    """Malformed instance file. ``line`` is 1-based, or None for whole-file problems."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContractViolation(XtaError, ValueError):
    """An operation was called outside its precondition."""
