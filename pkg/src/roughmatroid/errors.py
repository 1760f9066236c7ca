"""Exception hierarchy shared by all modules."""


class RoughMatroidError(Exception):
    pass


class CapacityError(RoughMatroidError):
    """Raised when an exhaustive scan would exceed the configured size cap."""


class UniverseMismatchError(RoughMatroidError, ValueError):
    pass


class HypothesisError(RoughMatroidError):
    """An operation's mathematical preconditions do not hold for its input.

    Typically the relation is not serial and transitive, or a set passed
    as a regular set is not one.
    """


class LatticeError(RoughMatroidError):
    pass


class RelationParseError(RoughMatroidError):
    def __init__(self, message, line=None, token=None):
        self.line = line
        self.token = token
        where = f"line {line}: " if line is not None else ""
        tok = f" (token {token!r})" if token is not None else ""
        super().__init__(f"{where}{message}{tok}")
