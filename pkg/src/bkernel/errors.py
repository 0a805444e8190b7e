"""Exception types shared across the package.

Everything raised on purpose derives from KernelToolError so callers (and the
command line driver) can distinguish our contract violations from genuine bugs.
"""


class KernelToolError(Exception):
    """Base class for all errors raised by this package."""


class SingularMatrix(KernelToolError):
    """The exponent matrix has determinant zero."""


class UnboundedDomain(KernelToolError):
    """The monomial polyhedron defined by the matrix is not bounded."""


class PreconditionViolated(KernelToolError):
    """An operation was called with inputs outside its stated contract."""


class SingularEvaluation(KernelToolError):
    """A kernel denominator factor vanishes at the requested point."""


class NotSquareIntegrable(KernelToolError):
    """The requested Laurent monomial has infinite norm on the domain."""


class NoConvergence(KernelToolError):
    """A truncated series did not stabilise within the truncation cap."""


class SamplingExhausted(KernelToolError):
    """Rejection sampling failed to produce enough interior points."""


class ParseError(KernelToolError):
    """Malformed command line input (matrix or point syntax)."""
