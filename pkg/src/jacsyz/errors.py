"""Exception types shared by the library and the command line."""


class InputError(ValueError):
    """Malformed or mathematically invalid user input."""


class TransversalityError(InputError):
    """A coordinate hyperplane required to be transversal is not."""


class InconsistencyError(ArithmeticError):
    """Two independent computations that must agree did not."""
