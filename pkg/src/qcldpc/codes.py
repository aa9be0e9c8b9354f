"""Code construction from random difference families.

The private parity-check matrix is a single block row of n0 circulants of
column weight d_v.  Freedom from length-4 cycles in the Tanner graph is
equivalent to all within-block support differences (a - b) mod p being
distinct across the whole family, which is the defining property of a
difference family; supports are drawn by seeded rejection sampling.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bitvec import BitVector
from .circulant import (CirculantElement, QcMatrix, SparseCirculant, circ_invert,
                        circ_mul_schoolbook, circ_transpose, circ_zero)
from .errors import GenerationFailureError, InfeasibleParametersError, ParameterError


@dataclass(frozen=True)
class CodeSpec:
    """Parameter set: length n0*p, dimension (n0-1)*p, redundancy p."""

    n0: int
    p: int
    d_v: int
    m: int
    t_prime: int

    def __post_init__(self):
        if self.n0 < 2:
            raise ParameterError(f"need at least two circulant blocks, got n0={self.n0}")
        if self.p < 2:
            raise ParameterError(f"block size must be at least 2, got p={self.p}")
        if not 1 <= self.d_v <= self.p:
            raise ParameterError(f"column weight d_v={self.d_v} outside [1, {self.p}]")
        if self.m < 1 or self.m > self.n0 * self.p:
            raise ParameterError(f"transformation weight m={self.m} out of range")
        if not 0 <= self.t_prime * self.m <= self.n0 * self.p:
            raise ParameterError(f"error weight t'={self.t_prime} out of range")

    @property
    def n(self) -> int:
        return self.n0 * self.p

    @property
    def k(self) -> int:
        return (self.n0 - 1) * self.p

    @property
    def k0(self) -> int:
        return self.n0 - 1

    @property
    def r(self) -> int:
        return self.p

    @property
    def d_c(self) -> int:
        return self.n0 * self.d_v

    @property
    def t(self) -> int:
        """Weight of the error pattern seen by the private decoder."""
        return self.t_prime * self.m


@dataclass(frozen=True)
class PrivateCode:
    spec: CodeSpec
    h: tuple  # n0 SparseCirculant blocks of weight d_v


def check_4cycle_free(supports, p: int) -> bool:
    """True when all within-block differences are distinct modulo p."""
    seen = set()
    for sup in supports:
        for a in sup:
            for b in sup:
                if a == b:
                    continue
                d = (a - b) % p
                if d in seen:
                    return False
                seen.add(d)
    return True


def sample_difference_family(spec: CodeSpec, seed=None, rng=None,
                             max_retries: int = 100_000) -> PrivateCode:
    """Draw n0 supports of size d_v whose difference multiset has no repeats.

    Elements are drawn uniformly one at a time and redrawn on any collision
    of the induced differences; a stuck support triggers a restart of the
    whole family.  Requires n0 * d_v * (d_v - 1) < p so that the difference
    multiset can fit.
    """
    n0, p, d_v = spec.n0, spec.p, spec.d_v
    if n0 * d_v * (d_v - 1) >= p:
        raise InfeasibleParametersError(
            f"difference family needs n0*d_v*(d_v-1) < p, got {n0 * d_v * (d_v - 1)} >= {p}")
    if rng is None:
        rng = random.Random(seed)
    budget = max_retries
    while budget > 0:
        diffs = set()
        supports = []
        stuck = False
        for _ in range(n0):
            sup = []
            misses = 0
            while len(sup) < d_v:
                budget -= 1
                cand = rng.randrange(p)
                new = set()
                ok = cand not in sup
                if ok:
                    for other in sup:
                        d1 = (cand - other) % p
                        d2 = (other - cand) % p
                        # d1 == d2 happens at difference p/2 and is itself a repeat
                        if d1 == d2 or d1 in diffs or d2 in diffs or d1 in new or d2 in new:
                            ok = False
                            break
                        new.add(d1)
                        new.add(d2)
                if ok:
                    sup.append(cand)
                    diffs |= new
                else:
                    misses += 1
                    if misses > 64 * d_v or budget <= 0:
                        stuck = True
                        break
            if stuck:
                break
            supports.append(tuple(sorted(sup)))
        if stuck:
            continue
        code = PrivateCode(spec, tuple(SparseCirculant(p, s) for s in supports))
        assert check_4cycle_free([blk.support for blk in code.h], p)
        return code
    raise GenerationFailureError(
        f"no difference family found within {max_retries} draws for {spec}")


def build_H(code: PrivateCode) -> QcMatrix:
    """The 1 x n0 block row of sparse circulants."""
    return QcMatrix(code.spec.p, [[blk.to_element() for blk in code.h]])


def build_G(code: PrivateCode) -> QcMatrix:
    """Systematic generator [I | P] with P_i = (H_last^-1 * H_i)^T.

    Valid only when the last block is invertible; since x+1 always divides
    x^p + 1, that requires odd d_v (and still fails occasionally, in which
    case the caller redraws the family).
    """
    spec = code.spec
    if spec.d_v % 2 == 0:
        raise InfeasibleParametersError(
            "even column weight makes every block divisible by x+1, so the "
            "last block is never invertible")
    p, k0 = spec.p, spec.n0 - 1
    h_last_inv = circ_invert(code.h[-1].to_element())
    blocks = []
    for i in range(k0):
        row = [circ_zero(p) for _ in range(spec.n0)]
        row[i] = CirculantElement(p, BitVector(1, p))
        prod = circ_mul_schoolbook(h_last_inv, code.h[i].to_element())
        row[k0] = circ_transpose(prod)
        blocks.append(row)
    return QcMatrix(p, blocks)
