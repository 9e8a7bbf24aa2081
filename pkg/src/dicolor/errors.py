"""Exception hierarchy shared by every solver and procedure."""


class DicolorError(Exception):
    """Base class for all errors raised by dicolor."""


class InvalidDigraph(DicolorError, ValueError):
    """Loops, duplicate arcs or malformed adjacency data."""


class InvalidVertex(DicolorError, IndexError):
    pass


class InvalidProbability(DicolorError, ValueError):
    pass


class ParseError(DicolorError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PartialColoring(DicolorError, ValueError):
    pass


class InvalidColoring(DicolorError, ValueError):
    pass


class InvalidPartition(DicolorError, ValueError):
    pass


class NotATournament(DicolorError, ValueError):
    pass


class TooLarge(DicolorError, ValueError):
    pass


class InsufficientLists(DicolorError, ValueError):
    pass


class TransferFailed(DicolorError):
    pass


class RetriesExhausted(DicolorError):
    pass


class RoundsExhausted(DicolorError):
    pass


class HallViolation(DicolorError):
    pass


class ExtensionFailed(DicolorError):
    pass
