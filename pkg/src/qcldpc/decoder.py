"""Bit-flipping decoder for the sparse block-circulant parity-check matrix.

The default variant counts, for every bit, how many of its parity checks are
unsatisfied under the current word and flips all bits whose count reaches a
threshold b, synchronously, until the syndrome is zero or an iteration cap
is hit.  Per iteration the attached counter is charged the aggregate-count
accounting r(2 d_c - 1) + 3 n d_v, independent of the data.

The extrinsic variant excludes each check's own message when deciding what
to send back to it (the classical message-passing formulation).  It is kept
behind a configuration flag for fidelity experiments and supports no
operation counting, because the aggregate model above does not describe it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitvec import BitVector
from .circulant import OpCounter
from .codes import PrivateCode
from .errors import ParameterError


@dataclass(frozen=True)
class DecoderConfig:
    """b=None resolves the flip threshold from the ensemble analysis."""

    b: int | None = None
    max_iterations: int = 10
    extrinsic: bool = False
    b_schedule: tuple | None = None

    def __post_init__(self):
        if self.max_iterations < 0:
            raise ParameterError("max_iterations must be non-negative")


@dataclass(frozen=True)
class DecodeOutcome:
    word: BitVector
    iterations: int
    success: bool


def compute_syndrome(code: PrivateCode, word: BitVector) -> BitVector:
    """H times the word, as a length-r vector."""
    spec = code.spec
    if word.n != spec.n:
        raise ParameterError(f"word length {word.n}, expected {spec.n}")
    chunks = [c.to_array() for c in word.split(spec.p)]
    synd = np.zeros(spec.p, dtype=np.uint8)
    for blk, x in zip(code.h, chunks):
        for s in blk.support:
            synd ^= np.roll(x, -s)
    return BitVector.from_array(synd)


def _resolve_b(spec, cfg: DecoderConfig, iteration: int) -> int:
    if cfg.b_schedule:
        idx = min(iteration, len(cfg.b_schedule) - 1)
        b = cfg.b_schedule[idx]
    elif cfg.b is not None:
        b = cfg.b
    else:
        from .thresholds import EnsembleParams, optimize_b
        b = optimize_b(EnsembleParams.from_code_spec(spec)).b
    if not 1 <= b <= spec.d_v:
        raise ParameterError(f"flip threshold {b} outside [1, {spec.d_v}]")
    return b


def bf_decode(code: PrivateCode, received: BitVector,
              cfg: DecoderConfig | None = None,
              counter: OpCounter | None = None) -> DecodeOutcome:
    spec = code.spec
    cfg = cfg or DecoderConfig()
    if received.n != spec.n:
        raise ParameterError(f"received length {received.n}, expected {spec.n}")
    if cfg.extrinsic:
        if counter is not None:
            raise ParameterError("operation counting models the aggregate-count variant only")
        return _bf_decode_extrinsic(code, received, cfg)

    p, n0 = spec.p, spec.n0
    supports = [blk.support for blk in code.h]
    x = [c.to_array() for c in received.split(p)]
    per_iter_ops = spec.r * (2 * spec.d_c - 1) + spec.n * 3 * spec.d_v

    def syndrome():
        s = np.zeros(p, dtype=np.uint8)
        for i in range(n0):
            for off in supports[i]:
                s ^= np.roll(x[i], -off)
        return s

    synd = syndrome()
    iterations = 0
    while synd.any() and iterations < cfg.max_iterations:
        b = _resolve_b(spec, cfg, iterations)
        for i in range(n0):
            counts = np.zeros(p, dtype=np.int16)
            for off in supports[i]:
                counts += np.roll(synd, off)
            x[i] ^= (counts >= b).astype(np.uint8)
        iterations += 1
        if counter is not None:
            counter.add(per_iter_ops)
        synd = syndrome()

    word = BitVector.join([BitVector.from_array(c) for c in x])
    return DecodeOutcome(word, iterations, not synd.any())


def _bf_decode_extrinsic(code: PrivateCode, received: BitVector,
                         cfg: DecoderConfig) -> DecodeOutcome:
    spec = code.spec
    p, n0, d_v = spec.p, spec.n0, spec.d_v
    supports = [blk.support for blk in code.h]
    rec = [c.to_array() for c in received.split(p)]
    # msg[i][si][c]: bit that variable (i, c) last sent to check (c - s[si]) mod p
    msg = [np.tile(rec[i], (d_v, 1)) for i in range(n0)]
    word = [r.copy() for r in rec]

    def syndrome_of(blocks):
        s = np.zeros(p, dtype=np.uint8)
        for i in range(n0):
            for off in supports[i]:
                s ^= np.roll(blocks[i], -off)
        return s

    if not syndrome_of(word).any():
        return DecodeOutcome(received, 0, True)

    iterations = 0
    for iterations in range(1, cfg.max_iterations + 1):
        b = _resolve_b(spec, cfg, iterations - 1)
        total = np.zeros(p, dtype=np.uint8)
        for i in range(n0):
            for si, off in enumerate(supports[i]):
                total ^= np.roll(msg[i][si], -off)
        new_msg = []
        for i in range(n0):
            est = np.empty((d_v, p), dtype=np.uint8)
            for si, off in enumerate(supports[i]):
                # parity of the other variables in the check, as seen from (i, c)
                est[si] = np.roll(total, off) ^ msg[i][si]
            disagree = (est != rec[i]).astype(np.int16)
            votes = disagree.sum(axis=0)
            flip_edges = (votes - disagree) >= b
            new_msg.append(rec[i] ^ flip_edges.astype(np.uint8))
            word[i] = rec[i] ^ (votes >= b).astype(np.uint8)
        msg = new_msg
        if not syndrome_of(word).any():
            break

    out = BitVector.join([BitVector.from_array(c) for c in word])
    return DecodeOutcome(out, iterations, not syndrome_of(word).any())
