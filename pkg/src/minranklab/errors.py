"""Exception hierarchy shared by the library and the CLI.

The CLI maps these onto exit codes: ``InputError`` -> 1,
``ResourceLimit`` -> 2, ``VerificationFailure`` -> 3.
"""


class MinrankLabError(Exception):
    """Base class for every error raised by this package."""


class InputError(MinrankLabError, ValueError):
    """Malformed or out-of-contract input."""


class DomainError(InputError):
    pass


class ShapeError(InputError):
    pass


class SingularError(MinrankLabError, ArithmeticError):
    pass


class ResourceLimit(MinrankLabError):
    """An exact routine was asked to exceed its configured size limit."""


class InstanceTooLarge(ResourceLimit):
    pass


class Undecided(ResourceLimit):
    """The node budget ran out before the search could decide."""

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class VerificationFailure(MinrankLabError):
    pass


class LemmaCounterexample(VerificationFailure):
    """Exhaustive search found no principal submatrix with the required witness."""
