"""Exception hierarchy for fusion2s.

Every error carries the process exit code the CLI reports for it:
0 success, 1 theorem-falsifying or internal failure, 2 input error,
3 capability or size error.
"""


class Fusion2SError(Exception):
    """Base exception for fusion2s errors."""
    exit_code = 1


class InputError(Fusion2SError):
    """Raised when an argument is malformed or belongs to the wrong group."""
    exit_code = 2


class SizeError(Fusion2SError):
    """Raised when a group exceeds the configured size cap."""
    exit_code = 3

    def __init__(self, size: int, limit: int, what: str = "group"):
        self.size = size
        self.limit = limit
        super().__init__(f"{what} of order {size} exceeds the size cap {limit}")


class FormValidationError(InputError):
    """Raised when a quadratic form or bicharacter fails validation."""


class WellDefinednessError(FormValidationError):
    """Raised when coefficients are not compatible with the residue relations."""


class QuadraticityError(FormValidationError):
    """Raised when q(m*g) differs from q(g)**(m*m) or q(-g) from q(g)."""


class BilinearityError(FormValidationError):
    """Raised when the polarization of a form is not bi-additive."""


class ExistenceError(InputError):
    """Raised when no module braiding exists on the requested module category."""


class CrossCheckError(Fusion2SError):
    """Raised when two independent criteria disagree."""
    exit_code = 1


class InvariantViolation(Fusion2SError):
    """Raised when an internal invariant fails; always indicates a bug."""
    exit_code = 1


class OracleUnavailable(Fusion2SError):
    """Raised when the Drinfeld-center path is requested for a form with no bicharacter."""
    exit_code = 3
