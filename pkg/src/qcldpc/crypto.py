"""Key generation, encryption and decryption.

The private code is hidden behind two secret block-circulant matrices: a
dense k0 x k0 scrambler S and a sparse n0 x n0 transformation Q whose block
weights follow a cyclic pattern summing to m per row and column.  The
public generator is S^-1 G Q^-1, so a ciphertext is x = u S^-1 G Q^-1 + e
with e of weight t'.  Multiplying by Q moves the received word back into
the private code with an error e Q of weight at most t' m, which the
bit-flipping decoder removes; the systematic prefix of the corrected word
is u S^-1, and one multiplication by S restores the cleartext.

Counted operations, when a counter is attached: the two block-circulant
vector products (encrypt: by the public generator; decrypt: by S), n for
adding the error vector, n*m for the sparse product by Q, and the decoder's
per-iteration figure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bitvec import BitVector
from .circulant import (OpCounter, QcMatrix, circ_from_support, circ_random,
                        qc_invert, qc_mul, qc_transpose, vec_mul,
                        vec_mul_sparse)
from .codes import CodeSpec, PrivateCode, build_G, build_H, sample_difference_family
from .decoder import DecoderConfig, bf_decode
from .errors import (DecodeFailureError, GenerationFailureError,
                     InfeasibleParametersError, ParameterError,
                     SingularMatrixError)

DEFAULT_MAX_RETRIES = 64


@dataclass
class PrivateKey:
    code: PrivateCode
    scrambler: QcMatrix
    transformation: QcMatrix

    @property
    def spec(self) -> CodeSpec:
        return self.code.spec


@dataclass
class PublicKey:
    spec: CodeSpec
    matrix: QcMatrix
    systematic: bool = False


def _resolve_rng(seed, rng) -> random.Random:
    if rng is not None:
        if seed is not None:
            raise ParameterError("pass either seed or rng, not both")
        return rng
    return random.Random(seed)


def transformation_weight_pattern(n0: int, m: int) -> tuple:
    """Block weights of the first block row of Q; later rows shift it right."""
    base = m // n0
    first = m - (n0 - 1) * base
    return (first,) + (base,) * (n0 - 1)


def _parity_pattern_invertible(n0: int, pattern) -> bool:
    """Invertibility of the pattern-parity circulant over GF(2).

    Evaluation at x = 1 maps the whole transformation onto this n0 x n0
    binary matrix, so a singular parity pattern dooms every sample.
    """
    rows = []
    for i in range(n0):
        bits = 0
        for j in range(n0):
            if pattern[(j - i) % n0] & 1:
                bits |= 1 << j
        rows.append(bits)
    for col in range(n0):
        piv = next((r for r in range(col, n0) if rows[r] >> col & 1), None)
        if piv is None:
            return False
        rows[col], rows[piv] = rows[piv], rows[col]
        for r in range(n0):
            if r != col and rows[r] >> col & 1:
                rows[r] ^= rows[col]
    return True


def generate_scrambler(p: int, k0: int, rng: random.Random,
                       max_retries: int = DEFAULT_MAX_RETRIES) -> tuple:
    """Random dense invertible k0 x k0 block-circulant matrix, with inverse."""
    for _ in range(max_retries):
        s = QcMatrix(p, tuple(tuple(circ_random(p, rng) for _ in range(k0))
                              for _ in range(k0)))
        try:
            return s, qc_invert(s)
        except SingularMatrixError:
            continue
    raise GenerationFailureError(f"no invertible scrambler in {max_retries} tries")


def generate_transformation(spec: CodeSpec, rng: random.Random,
                            max_retries: int = DEFAULT_MAX_RETRIES) -> tuple:
    """Random sparse invertible n0 x n0 block-circulant matrix, with inverse.

    Row i uses the weight pattern shifted by i, so every row and column of
    the expanded matrix has weight m.  m must be odd: an even m makes every
    column sum even and the matrix singular.
    """
    n0, p, m = spec.n0, spec.p, spec.m
    if m % 2 == 0:
        raise ParameterError("transformation row weight m must be odd")
    if m > n0 * p:
        raise ParameterError("transformation row weight m exceeds row length")
    pattern = transformation_weight_pattern(n0, m)
    if max(pattern) > p:
        raise ParameterError("transformation block weight exceeds block size")
    if not _parity_pattern_invertible(n0, pattern):
        raise InfeasibleParametersError(
            f"weight pattern {pattern} has a singular parity matrix; "
            f"no invertible transformation exists for n0={n0}, m={m}")
    for _ in range(max_retries):
        rows = []
        for i in range(n0):
            row = []
            for j in range(n0):
                w = pattern[(j - i) % n0]
                support = rng.sample(range(p), w)
                row.append(circ_from_support(p, support))
            rows.append(tuple(row))
        q = QcMatrix(p, tuple(rows))
        try:
            return q, qc_invert(q)
        except SingularMatrixError:
            continue
    raise GenerationFailureError(f"no invertible transformation in {max_retries} tries")


def keygen(spec: CodeSpec, seed=None, rng=None,
           max_retries: int = DEFAULT_MAX_RETRIES,
           systematic: bool = False) -> tuple:
    """(private key, public key) for the given parameters."""
    rng = _resolve_rng(seed, rng)
    for _ in range(max_retries):
        code = sample_difference_family(spec, rng=rng)
        try:
            g = build_G(code)
        except ArithmeticError:
            continue
        s, s_inv = generate_scrambler(spec.p, spec.k0, rng, max_retries)
        q, q_inv = generate_transformation(spec, rng, max_retries)
        g_pub = qc_mul(qc_mul(s_inv, g), q_inv)
        priv, pub = PrivateKey(code, s, q), PublicKey(spec, g_pub)
        if systematic:
            try:
                priv, pub = systematize(priv, pub)
            except SingularMatrixError:
                continue
        return priv, pub
    raise GenerationFailureError(f"no usable key pair in {max_retries} tries")


def public_check_matrix(priv: PrivateKey) -> QcMatrix:
    """H Q^T, a parity-check matrix of the public code (analysis helper)."""
    return qc_mul(build_H(priv.code), qc_transpose(priv.transformation))


def systematize(priv: PrivateKey, pub: PublicKey) -> tuple:
    """Equivalent key pair whose public matrix has an identity left part.

    Left-multiplying the public generator by the inverse of its left k0 x k0
    corner changes the map from messages to codewords, so the scrambler must
    absorb the same factor or decryption would return scrambled messages.
    Raises SingularMatrixError when the corner has no block-level inverse.
    """
    if pub.systematic:
        return priv, pub
    k0 = pub.spec.k0
    left = QcMatrix(pub.matrix.p, tuple(row[:k0] for row in pub.matrix.blocks))
    g_sys = qc_mul(qc_invert(left), pub.matrix)
    s_new = qc_mul(priv.scrambler, left)
    return (PrivateKey(priv.code, s_new, priv.transformation),
            PublicKey(pub.spec, g_sys, systematic=True))


def random_error_vector(n: int, weight: int, seed=None, rng=None) -> BitVector:
    return BitVector.random_weight(n, weight, _resolve_rng(seed, rng))


def encrypt(pub: PublicKey, message: BitVector, error: BitVector | None = None,
            seed=None, rng=None, counter: OpCounter | None = None) -> BitVector:
    """message (k bits) to ciphertext (n bits) with a fresh weight-t' error."""
    spec = pub.spec
    if message.n != spec.k:
        raise ParameterError(f"message length {message.n}, expected {spec.k}")
    if error is None:
        error = random_error_vector(spec.n, spec.t_prime, seed=seed, rng=rng)
    else:
        if error.n != spec.n:
            raise ParameterError(f"error length {error.n}, expected {spec.n}")
        if error.weight != spec.t_prime:
            raise ParameterError(f"error weight {error.weight}, expected {spec.t_prime}")
    x = vec_mul(message, pub.matrix, counter=counter)
    if counter is not None:
        counter.add(spec.n)
    return x ^ error


def decrypt(priv: PrivateKey, ciphertext: BitVector,
            cfg: DecoderConfig | None = None,
            counter: OpCounter | None = None) -> BitVector:
    """Ciphertext (n bits) back to the message (k bits).

    Raises DecodeFailureError when bit flipping does not reach a zero
    syndrome within the iteration cap.
    """
    spec = priv.spec
    if ciphertext.n != spec.n:
        raise ParameterError(f"ciphertext length {ciphertext.n}, expected {spec.n}")
    if counter is not None:
        counter.add(spec.n * spec.m)
    inner = vec_mul_sparse(ciphertext, priv.transformation)
    outcome = bf_decode(priv.code, inner, cfg=cfg, counter=counter)
    if not outcome.success:
        raise DecodeFailureError(iterations=outcome.iterations)
    u_prime = outcome.word.take(spec.k)
    return vec_mul(u_prime, priv.scrambler, counter=counter)
