"""McEliece-style public-key cryptosystem over quasi-cyclic LDPC codes.

Core flow: ``CodeSpec`` fixes the parameters, ``keygen`` samples a sparse
private code plus its disguising matrices, ``encrypt``/``decrypt`` move
messages through the public code, and the analysis modules reproduce the
size, cost, threshold and security figures of the design space.
"""

from .bitvec import BitVector
from .circulant import OpCounter, QcMatrix
from .codes import CodeSpec, PrivateCode, sample_difference_family
from .crypto import (PrivateKey, PublicKey, decrypt, encrypt, keygen,
                     random_error_vector, systematize)
from .decoder import DecodeOutcome, DecoderConfig, bf_decode, compute_syndrome
from .errors import (DecodeFailureError, FormatError, GenerationFailureError,
                     InfeasibleParametersError, ParameterError, QcLdpcError,
                     SingularElementError, SingularMatrixError)
from .security import (AttackModel, SternParams, WorkFactorReport,
                       decoding_attack_wf, dual_attack_wf, security_level,
                       stern_cost, stern_workfactor)
from .thresholds import (EnsembleParams, ThresholdReport, find_threshold,
                         flip_probabilities, iterate_residual, optimize_b)

__version__ = "0.1.0"

__all__ = [
    "BitVector", "OpCounter", "QcMatrix",
    "CodeSpec", "PrivateCode", "sample_difference_family",
    "PrivateKey", "PublicKey", "keygen", "encrypt", "decrypt",
    "random_error_vector", "systematize",
    "DecoderConfig", "DecodeOutcome", "bf_decode", "compute_syndrome",
    "EnsembleParams", "ThresholdReport", "find_threshold",
    "flip_probabilities", "iterate_residual", "optimize_b",
    "AttackModel", "SternParams", "WorkFactorReport",
    "stern_cost", "stern_workfactor", "decoding_attack_wf", "dual_attack_wf",
    "security_level",
    "QcLdpcError", "ParameterError", "InfeasibleParametersError",
    "SingularElementError", "SingularMatrixError", "GenerationFailureError",
    "DecodeFailureError", "FormatError",
    "__version__",
]
