"""Exception types shared across the package."""

from __future__ import annotations


class AngdilError(Exception):
    """Base class for every error raised by this package."""


class SingularPointError(AngdilError, ValueError):
    """A polar quantity was requested at the origin."""


class OutOfDomainError(AngdilError, ValueError):
    """A point lies outside the closed unit disk or a sampled grid's hull."""


class EvaluationError(AngdilError, ArithmeticError):
    """An integrand or jet produced a non-finite value."""


class RegularityError(AngdilError):
    """The Jacobian is not strictly positive at a point where it must be.

    ``r`` and ``theta`` locate the offending sample and ``jacobian`` holds
    the value found there.
    """

    def __init__(self, r: float, theta: float, jacobian: float, message: str = ""):
        self.r = float(r)
        self.theta = float(theta)
        self.jacobian = float(jacobian)
        text = message or "non-positive Jacobian"
        super().__init__(f"{text}: J={self.jacobian:.6g} at r={self.r:.6g}, theta={self.theta:.6g}")


class HypothesisError(AngdilError, ValueError):
    """A map does not satisfy a hypothesis of the bound being evaluated (e.g. f(0) = 0)."""


class ParseError(AngdilError, ValueError):
    """Malformed sampled-map file; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class StructureError(AngdilError, ValueError):
    """Sampled data does not form a full tensor-product polar grid."""


class ConfigError(AngdilError, ValueError):
    """Invalid run configuration; ``field`` is the dotted path of the offending entry."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
