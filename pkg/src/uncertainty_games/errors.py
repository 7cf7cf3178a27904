"""Exception hierarchy.

Every error raised on purpose by this package derives from
:class:`UncertaintyGamesError`, which itself is a ``ValueError`` so that
callers validating user input can catch the builtin.
"""


class UncertaintyGamesError(ValueError):
    pass


class InvalidDimension(UncertaintyGamesError):
    pass


class InvalidGame(UncertaintyGamesError):
    pass


class InvalidProblem(UncertaintyGamesError):
    pass


class InvalidInput(UncertaintyGamesError):
    pass


class InvariantViolation(UncertaintyGamesError):
    pass


class NotMajorized(UncertaintyGamesError):
    """Raised by ``hlp_transfer`` when the target is not majorized.

    ``index`` is the (1-based) prefix length of the first violated partial
    sum, or ``None`` when only the totals differ.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class AxiomViolation(UncertaintyGamesError):
    """An entropy axiom failed; ``pair`` carries the offending channels."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ParseError(UncertaintyGamesError):
    pass
