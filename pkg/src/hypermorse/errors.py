"""Exception types shared across the package."""


class HypermorseError(Exception):
    """Base class for all package-specific errors."""


# quadrature / differentiation

class TailDivergence(HypermorseError):
    """Semi-infinite integral keeps growing; the integrand does not decay."""


class StepUnderflow(HypermorseError):
    """Finite-difference step too small for stable differencing."""


# special functions

class PoleAtNonPositiveInteger(HypermorseError):
    """Gamma evaluated at 0, -1, -2, ..."""


class ParameterPole(HypermorseError):
    """Hypergeometric lower parameter at a non-positive integer."""


class SeriesNonConvergence(HypermorseError):
    """Series did not converge within the configured budget or argument range."""


class OutsideConvergenceRegion(HypermorseError):
    """Argument outside the convergence domain of the double series."""


class IntegerTwoMuUnsupported(HypermorseError):
    """Whittaker W with 2*mu an integer is not supported."""


# kernels

class OutsideSupport(HypermorseError):
    """Wave kernel evaluated on its singular support boundary."""


class GammaPole(HypermorseError):
    """Spectral parameter sits on a bound-state pole of the resolvent."""


class DiagonalSingularity(HypermorseError):
    """Resolvent kernel requested on the diagonal z = z'."""


class ConvergenceViolated(HypermorseError):
    """Spectral parameter violates the decay precondition of a kernel integral."""


class Phi1OutsideDisc(HypermorseError):
    """Second argument of the two-variable confluent series left the unit disc."""


class UnsupportedK(HypermorseError):
    """Magnetic/coupling constant outside the implemented range."""


# harness

class CalibrationAmbiguous(HypermorseError):
    """No unique convention candidate passed calibration."""


class InvalidGrid(HypermorseError):
    """Malformed grid specification."""
