"""Exception hierarchy shared by all modules."""


class SphereHeunError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(SphereHeunError, ValueError):
    """Invalid physical parameters or user input."""


class OutOfDomain(SphereHeunError, ValueError):
    """Angle outside the open interval (0, pi)."""


# recursion / continued fraction

class DegenerateDenominator(SphereHeunError, ZeroDivisionError):
    pass


class InvalidAPrime(SphereHeunError, ValueError):
    pass


class CoefficientError(SphereHeunError, ZeroDivisionError):
    """A recursion coefficient needed as a divisor vanished."""


# spectrum solver

class PoleAtLandauFloor(SphereHeunError, ZeroDivisionError):
    """The accessory parameter h is singular at this energy."""


class BracketInvalid(SphereHeunError, ValueError):
    pass


class PoleDetected(SphereHeunError, ArithmeticError):
    """Root refinement converged onto a pole of the continued fraction."""


class InsufficientRoots(SphereHeunError, RuntimeError):
    """Fewer roots than requested inside the scanned window."""

    def __init__(self, message, found=0, window=(None, None)):
        super().__init__(message)
        self.found = found
        self.window = window


# wavefunction

class GammaPole(SphereHeunError, ZeroDivisionError):
    pass


class NotMinimal(SphereHeunError, RuntimeError):
    """Recursion coefficients did not decay: not an eigenvalue or truncation too small."""


class ZeroNorm(SphereHeunError, ArithmeticError):
    pass


# classical

class BelowMinimum(SphereHeunError, ValueError):
    pass


class MultipleWells(SphereHeunError, RuntimeError):
    pass


class NotBracketed(SphereHeunError, RuntimeError):
    pass
