"""Exception hierarchy shared across the package."""


class QcLdpcError(Exception):
    """Base class for all package errors."""


class ParameterError(QcLdpcError, ValueError):
    """A parameter is out of range or inconsistent with the others."""


class InfeasibleParametersError(ParameterError):
    """Parameters are structurally infeasible (no instance can exist)."""


class SingularElementError(QcLdpcError, ArithmeticError):
    """Circulant element is not invertible in GF(2)[x]/(x^p + 1)."""


class SingularMatrixError(QcLdpcError, ArithmeticError):
    """Block-circulant matrix has no inverse (or no usable pivot was found)."""


class GenerationFailureError(QcLdpcError, RuntimeError):
    """Randomized generation did not produce a valid object within the retry budget."""


class DecodeFailureError(QcLdpcError, RuntimeError):
    """Bit-flipping decoder did not reach a zero syndrome.

    Callers that implement a retransmission protocol can catch this and
    request a fresh encryption.
    """

    def __init__(self, message="decoding failed", iterations=None):
        super().__init__(message)
        self.iterations = iterations


class FormatError(QcLdpcError, ValueError):
    """A serialized key or ciphertext file is malformed."""
