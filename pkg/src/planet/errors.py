"""Exception hierarchy shared across the package."""


class PlanetError(Exception):
    """Base class for all library errors."""


class FieldError(PlanetError, ValueError):
    """A value cannot be represented in the session field."""


class BackendError(FieldError):
    """Exact and approximate values (or two different fields) were mixed."""


class DegenerateError(PlanetError, ValueError):
    """Degenerate geometric input, e.g. joining a point with itself."""


class NetError(PlanetError, ValueError):
    """Malformed or unverified net handed to an operation that needs a net."""


class CubicError(PlanetError, ValueError):
    """Invalid cubic input (zero form, point off the curve, line in the curve)."""


class NumericError(PlanetError, ArithmeticError):
    """A numerical procedure (rank decision, refinement, series) did not converge."""


class Inconclusive(PlanetError):
    """The check cannot decide on degenerate input."""


class RealizationError(PlanetError, ValueError):
    """A requested group realization is excluded (e.g. three invariant factors)."""


class InputError(PlanetError, ValueError):
    """Malformed JSON input; ``location`` points at the offending entry."""

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location
