"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Invalid input: out-of-range parameters, malformed matrices, bad arguments."""


class NumericalError(RuntimeError):
    """A computation is undefined for the given input (e.g. a zero-probability outcome)."""
