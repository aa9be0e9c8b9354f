"""Closed-form size and binary-operation models.

The multiplication cost model mirrors the split recursion in ``circulant``
exactly: a size-s product costs ceil(s^2 / 2) when done directly and
3 C(s/2) + (3/2) s when split, with the same cutoff policy, so the figures
here equal the instrumented ``OpCounter`` values bit for bit.

Per-bit figures divide the total by the number of cleartext bits k.  This
convention is flagged explicitly because ciphertext bits n are the other
defensible divisor; ``encryption_ops_per_bit`` accepts ``per="cleartext"``
(default) or ``per="ciphertext"``.
"""

from __future__ import annotations

from functools import lru_cache

from .circulant import DEFAULT_CUTOFF
from .errors import ParameterError


def key_size_bytes(n0: int, p: int, systematic: bool = True) -> int:
    """Public key storage: (n0-1) circulant rows when systematic, else (n0-1)*n0."""
    if p % 8:
        raise ParameterError("key size formula assumes p divisible by 8")
    rows = (n0 - 1) if systematic else (n0 - 1) * n0
    return rows * p // 8


@lru_cache(maxsize=None)
def winograd_cost(size: int, cutoff: int | None = None) -> int:
    """Modeled binary ops of one size-`size` vector-circulant product."""
    cutoff = DEFAULT_CUTOFF if cutoff is None else cutoff
    if size < 1:
        raise ParameterError("size must be positive")
    if size <= cutoff or size % 2:
        return (size * size + 1) // 2
    return 3 * winograd_cost(size // 2, cutoff) + (3 * size) // 2


@lru_cache(maxsize=None)
def winograd_eval_cost(size: int, cutoff: int | None = None) -> int:
    """Ops spent on the vector-side evaluation tree alone."""
    cutoff = DEFAULT_CUTOFF if cutoff is None else cutoff
    if size <= cutoff or size % 2:
        return 0
    return size // 2 + 3 * winograd_eval_cost(size // 2, cutoff)


def qc_vec_mul_cost(p: int, inner: int, cols: int, cutoff: int | None = None) -> int:
    """Vector times an (inner x cols) block matrix, evaluations shared."""
    c = winograd_cost(p, cutoff)
    e = winograd_eval_cost(p, cutoff)
    return inner * e + inner * cols * (c - e) + (inner - 1) * cols * p


def encryption_ops_total(n0: int, p: int, cutoff: int | None = None) -> int:
    """u * Gpub plus the n xors that add the error vector."""
    k0 = n0 - 1
    return qc_vec_mul_cost(p, k0, n0, cutoff) + n0 * p


def encryption_ops_per_bit(n0: int, p: int, per: str = "cleartext",
                           cutoff: int | None = None) -> float:
    total = encryption_ops_total(n0, p, cutoff)
    if per == "cleartext":
        return total / ((n0 - 1) * p)
    if per == "ciphertext":
        return total / (n0 * p)
    raise ParameterError(f"unknown divisor {per!r}")


def bf_iteration_cost(n0: int, p: int, d_v: int) -> int:
    """Ops of one bit-flipping pass: r(2 d_c - 1) check ops + 3 d_v per bit."""
    n, r = n0 * p, p
    d_c = n0 * d_v
    return r * (2 * d_c - 1) + n * 3 * d_v


def decryption_ops_total(n0: int, p: int, d_v: int, m: int,
                         iterations: int = 10, cutoff: int | None = None) -> int:
    """x*Q (n*m sparse ops) + `iterations` decoder passes + u'*S."""
    n, k0 = n0 * p, n0 - 1
    return (n * m
            + iterations * bf_iteration_cost(n0, p, d_v)
            + qc_vec_mul_cost(p, k0, k0, cutoff))


def decryption_ops_per_bit(n0: int, p: int, d_v: int, m: int,
                           iterations: int = 10, cutoff: int | None = None) -> float:
    return decryption_ops_total(n0, p, d_v, m, iterations, cutoff) / ((n0 - 1) * p)
