"""
Exception hierarchy shared by the library and the command line.

The CLI maps ``ConfigError`` to exit code 2 and ``DomainError`` (with its
subclasses) to exit code 3.
"""


class TomostarError(Exception):
    """Base class of every error raised by tomostar."""


class ConfigError(TomostarError):
    """Invalid configuration, quadrature override or command-line usage."""


class DomainError(TomostarError, ValueError):
    """An argument lies outside the domain of an operation."""


class SingularLimitError(DomainError):
    """The requested value only exists as a distribution (e.g. 𝔥 = 0 Groenewold kernel)."""


class ChartError(DomainError):
    """The closed form is written in a chart that excludes the argument (ν₃ = 0)."""


class DegenerateLineError(DomainError):
    """Line parameters μ = ν = 0 do not define a line."""


class AccuracyError(TomostarError):
    """A quadrature or an extrapolation did not reach the requested accuracy.

    Args:
        message: Human readable description
        estimate: Best value obtained before giving up
        residual: Disagreement that triggered the failure
    """

    def __init__(self, message: str, estimate: complex = complex("nan"), residual: float = float("nan")):
        super().__init__(message)
        self.estimate = estimate
        self.residual = residual

    def __str__(self):
        return f"{self.args[0]} (estimate={self.estimate!r}, residual={self.residual:.3e})"
