"""Exception types raised by pantslab."""


class PantslabError(Exception):
    pass


class MalformedPartitionError(PantslabError, ValueError):
    pass


class ClosureViolationError(PantslabError):
    """A subcomplex predicate keeps a cell but drops one of its faces."""

    def __init__(self, cell, face):
        self.cell = cell
        self.face = face
        super().__init__(f"kept cell {cell} has dropped face {face}")


class CollapseViolationError(PantslabError):
    """A scheduled pair was not a free face/coface pair at its turn."""

    def __init__(self, face, coface, cofaces):
        self.face = face
        self.coface = coface
        self.cofaces = list(cofaces)
        shown = ", ".join(str(c) for c in self.cofaces) or "none"
        super().__init__(f"pair ({face}, {coface}) is not free; cofaces of {face}: {shown}")


class GradingError(PantslabError):
    pass


class EmptyStratumError(PantslabError, ValueError):
    pass


class UnsupportedFormatError(PantslabError, ValueError):
    pass
