"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-range input (bad mask, wrong dimension, ...)."""


class ParseError(InputError):
    """A data file could not be parsed."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = str(path)
            if line is not None:
                where += ":%d" % line
            where += ": "
        elif line is not None:
            where = "line %d: " % line
        super().__init__(where + message)


class NotGSError(ValueError):
    """Raised when an operation needs a gross substitutes input and did not get one."""

    def __init__(self, message, S=None, triple=None):
        self.S = S
        self.triple = triple
        super().__init__(message)


class ConcordanceError(ValueError):
    """Two valuations have crossing minimal substitution trees at some set S."""

    def __init__(self, message, S, witness):
        self.S = S
        self.witness = witness
        super().__init__(message)


class IntegrabilityError(ValueError):
    """A second-derivative tensor does not come from any valuation."""
