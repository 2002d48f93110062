"""Exception hierarchy for the construction pipeline."""


class BAError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(BAError, ValueError):
    """Spectral data or 1-form data that cannot be used as given."""


class DomainError(BAError, ValueError):
    """Evaluation requested at a point outside the function's domain."""


class SingularSystemError(BAError):
    """The gluing/normalization system is numerically singular."""

    def __init__(self, u, condition_number):
        self.u = tuple(u)
        self.condition_number = condition_number
        super().__init__(
            f"non-generic divisor at u={self.u}: condition number {condition_number:.3g}"
        )


class SignViolation(BAError, ValueError):
    """A Lame coefficient squared has the wrong sign at some parameter point."""

    def __init__(self, u, index, value):
        self.u = tuple(u)
        self.index = index
        self.value = value
        super().__init__(
            f"H_{index + 1}^2 = {value:.6g} has the wrong sign at u={self.u}"
        )
