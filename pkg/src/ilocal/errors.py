"""Exception types shared across the package."""


class InvalidComplex(ValueError):
    """A complex violates a structural invariant (bdry^2, monotone gradings, ...)."""


class NotSplit(InvalidComplex):
    """An involution is missing, fails J^2 = 1, or fixes a number of cells != 1."""


class WidthExceeded(ValueError):
    """Doubling/halving parameter exceeds half the width of the complex."""


class NotSimplified(ValueError):
    """A linear combination still contains a cancelling +/- pair."""


class NotInXForm(ValueError):
    """A module is not the connected homology of any combination of basis complexes."""


class NotAChainMap(ValueError):
    """A purported chain map fails d o f = f o d or is not grading-preserving."""


class ExpressionError(ValueError):
    """Syntax error in a combination expression; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
