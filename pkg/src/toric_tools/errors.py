"""Exception hierarchy.

``InputError`` covers malformed or out-of-contract input (CLI exit code 2);
``ComputationError`` covers failures of a well-posed computation (exit code 3).
"""


class InputError(ValueError):
    pass


class ComputationError(ArithmeticError):
    pass


class DimensionMismatch(InputError):
    pass


class UnsupportedRank(InputError):
    pass


class TruncationTooSmall(InputError):
    pass


class TruncationExhausted(ComputationError):
    """Raised when the precision ran out before the semigroup was certified.

    Callers should retry with a larger truncation.
    """


class NotAPlaneBranchSemigroup(InputError):
    pass


class MalformedExponents(InputError):
    pass


class InconsistentCharacter(InputError):
    pass


class NoTameProjection(ComputationError):
    pass


class NotAFan(InputError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NoDominatedCone(ComputationError):
    pass
