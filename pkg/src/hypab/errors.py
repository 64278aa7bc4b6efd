"""Exception types raised by the numerical routines."""


class HypabError(Exception):
    """Base class for all package errors."""


class ConvergenceError(HypabError, ArithmeticError):
    """A series, quadrature or truncated sum did not reach its tolerance."""


class TruncationError(ConvergenceError):
    """A partial-wave or winding sum is not converged at its truncation."""


class PoleError(HypabError, ValueError):
    """A special function was evaluated at a pole."""


class ConicalRealityError(ConvergenceError):
    """A conical function came out with a non-negligible imaginary part."""


class QuantumNumberError(HypabError, ValueError):
    """A quantum number lies outside its admissible window."""


class UnsupportedProblemError(HypabError, NotImplementedError):
    """The requested problem has no available spectral data."""
