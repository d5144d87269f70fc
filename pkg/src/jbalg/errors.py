"""Exception hierarchy for jbalg.

Every error raised by the library derives from :class:`JBAlgError` so callers
can catch library failures without catching programming errors.  Domain and
positivity failures carry the offending spectral data so messages can name
the violated bound.
"""

from __future__ import annotations


class JBAlgError(Exception):
    """Base class for all jbalg errors."""


class InvalidElementError(JBAlgError, ValueError):
    """Malformed element data: wrong coordinate count, non-finite entries."""


class IncompatibleAlgebrasError(JBAlgError, ValueError):
    """Binary operation on elements of different algebras."""


class ParameterError(JBAlgError, ValueError):
    """Scalar parameter outside its admissible range (lambda = 0, beta <= 0, ...)."""


class DomainError(JBAlgError, ValueError):
    """Spectrum leaves the domain of a scalar function.

    Attributes
    ----------
    label : name of the scalar function
    eigenvalue : offending spectral point
    bound : violated domain bound
    """

    def __init__(self, label: str, eigenvalue: float, bound: float, side: str = "lower"):
        self.label = label
        self.eigenvalue = eigenvalue
        self.bound = bound
        self.side = side
        super().__init__(
            f"eigenvalue {eigenvalue!r} violates {side} domain bound {bound!r} "
            f"of scalar function {label!r}"
        )


class PositivityError(JBAlgError, ValueError):
    """Operand that must be positive invertible is not."""

    def __init__(self, context: str, min_eigenvalue: float):
        self.context = context
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f"{context}: operand is not positive invertible "
            f"(min eigenvalue {min_eigenvalue!r})"
        )


class SingularityError(JBAlgError, ValueError):
    """Inverse of an element whose spectrum touches zero."""

    def __init__(self, min_abs_eigenvalue: float):
        self.min_abs_eigenvalue = min_abs_eigenvalue
        super().__init__(
            f"element is numerically singular (min |eigenvalue| = {min_abs_eigenvalue!r})"
        )


class ConsistencyError(JBAlgError, RuntimeError):
    """Internal self-check failed (characteristic identity residual, complex
    cubic discriminant, spectral deviation after interpolation, quadrature
    weight normalization)."""


class SamplerError(JBAlgError, RuntimeError):
    """Random construction failed to satisfy its own post-condition."""


class UnknownIdError(JBAlgError, KeyError):
    """Verification id not present in the registry."""


class ReportFormatError(JBAlgError, ValueError):
    """Report file does not parse against the expected schema."""

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"malformed report {path!r}: {reason}")
