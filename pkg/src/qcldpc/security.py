"""Work-factor estimates for information-set decoding attacks.

Costs Stern's collision-based ISD algorithm: each iteration permutes the
code, row-reduces, splits an information window in halves of subset weight
p each, and matches l-bit projections.  The success probability of one
iteration is the chance that a target of weight w splits as (p, p, w - 2p)
across the two halves and the residual window; the work factor is the
per-iteration bit-operation cost over that probability.  Binomials are
evaluated through lgamma, so half-integer split sizes from odd dimensions
are fine.  When 2^log2_targets interchangeable targets exist (for example
the quasi-cyclic shifts of one codeword), the success probability is
multiplied accordingly and capped at one.

Two attacks on the cryptosystem are costed: recovering the error vector
from a ciphertext (general decoding of the public code, strengthened by
extending the information set by delta rows to exploit the delta shifted
reformulations of the same instance), and recovering the secret sparse
parity check as a low-weight codeword of the dual of the public code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

LOG2E = math.log2(math.e)
DEFAULT_MAX_SUBSET_WEIGHT = 8
DEFAULT_MAX_WINDOW = 200


def log2_binom(a: float, b: float) -> float:
    """log2 of C(a, b); real arguments, -inf outside 0 <= b <= a."""
    if b < 0 or b > a:
        return -math.inf
    return (math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)) * LOG2E


@dataclass(frozen=True)
class AttackModel:
    """Search for one of 2^log2_targets weight-w words in an (n, k) code."""

    n: int
    k: int
    w: int
    log2_targets: float = 0.0

    def __post_init__(self):
        if not 0 < self.k < self.n:
            raise ValueError("need 0 < k < n")
        if self.w < 0:
            raise ValueError("w must be non-negative")


@dataclass(frozen=True)
class SternParams:
    subset_weight: int
    window: int


@dataclass(frozen=True)
class WorkFactorReport:
    log2_wf: float
    model: AttackModel
    params: SternParams
    log2_success: float
    log2_iter_cost: float
    shift_count: int | None = None

    @property
    def expected_iterations(self) -> float:
        return 2.0 ** -self.log2_success


def stern_cost(model: AttackModel, params: SternParams) -> WorkFactorReport | None:
    """Work factor at fixed algorithm parameters, or None if inadmissible."""
    n, K, w = model.n, model.k, model.w
    p, l = params.subset_weight, params.window
    if 2 * p > w or l < 1 or n - K - l < w - 2 * p:
        return None
    lL = log2_binom(K / 2.0, p)
    if lL == -math.inf:
        return None
    l_p1 = 2 * lL + log2_binom(n - K - l, w - 2 * p) - log2_binom(n, w)
    l_succ = min(0.0, l_p1 + model.log2_targets)
    if l_succ == -math.inf:
        return None
    red = n - K - l
    t_gauss = red * n / max(1.0, math.log2(red)) if red > 1 else n
    t_proj = 2.0 * (2.0 ** lL) * max(p, 1) * l
    l_coll = 2 * lL - l + math.log2(max(2 * p, 1) * 2 * (w - 2 * p + 1))
    t_iter = t_gauss + t_proj + 2.0 ** l_coll
    return WorkFactorReport(math.log2(t_iter) - l_succ, model, params,
                            l_succ, math.log2(t_iter))


def _best_window(model: AttackModel, p: int, max_window: int):
    """Vectorized scan over the window size l; returns (log2_wf, l) or None."""
    n, K, w = model.n, model.k, model.w
    if 2 * p > w:
        return None
    lL = log2_binom(K / 2.0, p)
    if lL == -math.inf:
        return None
    w2 = w - 2 * p
    ls = np.arange(1, max_window, dtype=float)
    red = n - K - ls
    valid = red >= w2
    if not valid.any():
        return None
    rr = np.where(valid, red, float(w2))
    lc_red = np.where(valid,
                      (gammaln(rr + 1) - gammaln(rr - w2 + 1)) * LOG2E
                      - math.lgamma(w2 + 1) * LOG2E,
                      -np.inf)
    l_succ = np.minimum(0.0, 2 * lL + lc_red - log2_binom(n, w) + model.log2_targets)
    t_gauss = np.where(red > 1,
                       red * n / np.maximum(1.0, np.log2(np.maximum(red, 2.0))),
                       float(n))
    t_proj = 2.0 * (2.0 ** lL) * max(p, 1) * ls
    l_coll = 2 * lL - ls + math.log2(max(2 * p, 1) * 2 * (w2 + 1))
    t_iter = t_gauss + t_proj + 2.0 ** l_coll
    wf = np.where(valid & (l_succ > -np.inf), np.log2(t_iter) - l_succ, np.inf)
    i = int(np.argmin(wf))
    if not np.isfinite(wf[i]):
        return None
    return float(wf[i]), int(ls[i])


def stern_workfactor(model: AttackModel,
                     max_subset_weight: int = DEFAULT_MAX_SUBSET_WEIGHT,
                     max_window: int = DEFAULT_MAX_WINDOW) -> WorkFactorReport:
    """Cheapest Stern parameters for the model."""
    best = None
    for p in range(0, min(max_subset_weight, model.w // 2) + 1):
        r = _best_window(model, p, max_window)
        if r is not None and (best is None or r[0] < best[0]):
            best = (r[0], p, r[1])
    if best is None:
        raise ValueError("no admissible algorithm parameters")
    report = stern_cost(model, SternParams(best[1], best[2]))
    return report


def decoding_attack_wf(n0: int, p: int, t_prime: int,
                       max_subset_weight: int = DEFAULT_MAX_SUBSET_WEIGHT,
                       max_window: int = DEFAULT_MAX_WINDOW) -> WorkFactorReport:
    """Recover the weight-t' error vector behind one ciphertext.

    The quasi-cyclic structure yields delta shifted reformulations that are
    attacked jointly by appending delta rows to the information set; delta
    is optimized on a geometric grid plus a local refinement.
    """
    n, k = n0 * p, (n0 - 1) * p

    def attempt(delta):
        model = AttackModel(n, k + delta, t_prime, log2_targets=math.log2(delta))
        best = None
        for ps in range(0, min(max_subset_weight, t_prime // 2) + 1):
            r = _best_window(model, ps, max_window)
            if r is not None and (best is None or r[0] < best[0]):
                best = (r[0], ps, r[1])
        return (best, model) if best else None

    deltas = sorted(set([1, 2, 3] +
                        [int(round(1.3 ** i)) for i in range(1, 40) if 1.3 ** i <= p]))
    best = None
    for d in deltas:
        r = attempt(d)
        if r and (best is None or r[0][0] < best[0][0]):
            best = (*r, d)
    d0 = best[2]
    for d in range(max(1, int(d0 * 0.7)), min(p, int(d0 * 1.45)) + 1, max(1, d0 // 12)):
        r = attempt(d)
        if r and r[0][0] < best[0][0]:
            best = (*r, d)
    (wf, ps, l), model, delta = best
    base = stern_cost(model, SternParams(ps, l))
    return WorkFactorReport(base.log2_wf, model, base.params,
                            base.log2_success, base.log2_iter_cost,
                            shift_count=delta)


def dual_attack_wf(n0: int, p: int, d_v: int, m: int,
                   max_subset_weight: int = DEFAULT_MAX_SUBSET_WEIGHT,
                   max_window: int = DEFAULT_MAX_WINDOW) -> WorkFactorReport:
    """Recover a sparse private check row from the dual of the public code.

    The rows of the hidden sparse check matrix times the transformation are
    weight m*n0*d_v words of a dual code of dimension p, and the p cyclic
    shifts of any one of them are equivalent targets.
    """
    model = AttackModel(n0 * p, p, m * n0 * d_v, log2_targets=math.log2(p))
    return stern_workfactor(model, max_subset_weight, max_window)


@dataclass(frozen=True)
class SecurityReport:
    log2_wf: float
    decoding: WorkFactorReport
    dual: WorkFactorReport


def security_level(n0: int, p: int, d_v: int, m: int, t_prime: int) -> SecurityReport:
    """min over the two attack families."""
    dec = decoding_attack_wf(n0, p, t_prime)
    dual = dual_attack_wf(n0, p, d_v, m)
    return SecurityReport(min(dec.log2_wf, dual.log2_wf), dec, dual)
