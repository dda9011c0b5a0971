class ToolkitError(Exception):
    """
    Base class of every error raised by the toolkit.

    The command line maps ``exit_code`` to the process exit status.
    """
    exit_code = 1


class InputError(ToolkitError):
    """Malformed or inadmissible input."""
    exit_code = 2


class ParseError(InputError):
    """
    Syntax error in a polynomial expression.

    :param message: Human readable description
    :type message: str
    :param text: The text being parsed
    :type text: str
    :param position: 0-based offset of the offending character
    :type position: int
    """

    def __init__(self, message, text='', position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")

    def excerpt(self):
        """Return the parsed text with a caret under the error position."""
        return f"{self.text}\n{' ' * self.position}^"


class UnknownVariableError(ParseError):
    pass


class PresentationError(InputError):
    """Presentation rejected: non-minimal, or cap too small / ideal not m-primary."""
    pass


class NotAnIdealError(InputError):
    pass


class OperandMismatchError(InputError):
    """Arithmetic between values over different fields, variables or caps."""
    pass


class RingFileError(InputError):
    """
    Error while reading a ring or matrix file.

    :param message: Description of the problem
    :type message: str
    :param path: File being read
    :type path: str
    :param line: 1-based line number, or None when the problem is file-wide
    :type line: int or None
    """

    def __init__(self, message, path='<string>', line=None):
        self.path = path
        self.line = line
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {message}")


class ResourceGuardError(ToolkitError):
    """Computation refused because it would exceed a configured bound."""
    exit_code = 3


class InternalConsistencyError(ToolkitError):
    """Two independent computations disagree; the result cannot be trusted."""
    exit_code = 4
