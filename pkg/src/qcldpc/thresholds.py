"""Density-evolution style analysis of the bit-flipping decoder.

Models decoding over the regular ensemble with n bits, column weight d_v and
row weight d_c.  Conditioned on q residual errors, the parity of the other
d_c - 1 positions of a check follows a hypergeometric law, which gives the
probability that a check is satisfied or violated as seen from a correct or
from an erroneous bit.  Binomial tails over the d_v - 1 remaining checks of a
bit then give the flip probabilities, and iterating the expected residual
error count decides whether decoding with flip threshold b converges.

q is carried as a real number, so binomials are evaluated through lgamma and
are zero outside the smooth support.  The error-count threshold is the
largest starting weight whose recursion still converges, found by bracketing
plus bisection, and optimize_b picks the flip threshold b maximizing it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

DEFAULT_TOLERANCE = 1e-3
DEFAULT_MAX_ITERATIONS = 10_000
STALL_EPS = 1e-12


@dataclass(frozen=True)
class EnsembleParams:
    n: int
    d_v: int
    d_c: int

    def __post_init__(self):
        if self.n <= self.d_c or self.d_c <= self.d_v or self.d_v < 1:
            raise ValueError("need n > d_c > d_v >= 1")

    @classmethod
    def from_code_spec(cls, spec) -> "EnsembleParams":
        return cls(n=spec.n, d_v=spec.d_v, d_c=spec.d_c)

    def default_b_range(self) -> range:
        return range((self.d_v + 1) // 2, self.d_v)


@dataclass(frozen=True)
class ThresholdReport:
    params: EnsembleParams
    b: int
    threshold: int


@dataclass(frozen=True)
class ResidualTrace:
    residuals: tuple
    converged: bool


class _Kernel:
    """Per-parameter evaluator; batches every lgamma of an iteration into one call."""

    def __init__(self, params: EnsembleParams):
        self.params = params
        n, d = float(params.n), params.d_c
        self.n = n
        self.d = d
        js = np.arange(d, dtype=float)
        self.lgc = gammaln(float(d)) - gammaln(js + 1.0) - gammaln(d - js)
        self.a1 = n - d
        self.lga1 = gammaln(self.a1 + 1.0)
        self.lgn1 = gammaln(n)
        self.js = js
        self.buf = np.empty(4 * d + 4)
        self._tails = {}

    def probs(self, q: float):
        d, a1, n, js, buf = self.d, self.a1, self.n, self.js, self.buf
        if q <= 0.0:
            return 1.0, 0.0, 1.0, 0.0
        x1 = q - js
        x2 = x1 - 1.0
        ok1 = (x1 > -1.0) & (a1 - x1 > -1.0)
        ok2 = (x2 > -1.0) & (a1 - x2 > -1.0)
        buf[0:d] = np.where(ok1, x1, 0.0) + 1.0
        buf[d:2 * d] = np.where(ok1, a1 - x1, 0.0) + 1.0
        buf[2 * d:3 * d] = np.where(ok2, x2, 0.0) + 1.0
        buf[3 * d:4 * d] = np.where(ok2, a1 - x2, 0.0) + 1.0
        buf[4 * d] = q + 1.0
        buf[4 * d + 1] = n - q
        buf[4 * d + 2] = q
        buf[4 * d + 3] = n - q + 1.0
        g = gammaln(buf)
        den1 = self.lgn1 - g[4 * d] - g[4 * d + 1]
        t1 = np.exp(np.where(ok1, self.lgc + self.lga1 - g[0:d] - g[d:2 * d] - den1, -np.inf))
        p_cc = t1[::2].sum()
        p_ci = t1[1::2].sum()
        den2 = self.lgn1 - g[4 * d + 2] - g[4 * d + 3]
        t2 = np.exp(np.where(ok2, self.lgc + self.lga1 - g[2 * d:3 * d] - g[3 * d:4 * d] - den2, -np.inf))
        return p_cc, p_ci, t2[::2].sum(), t2[1::2].sum()

    def tail_coeffs(self, b: int):
        try:
            return self._tails[b]
        except KeyError:
            d_v = self.params.d_v
            js = np.arange(b, d_v, dtype=float)
            cb = np.exp(gammaln(float(d_v)) - gammaln(js + 1.0) - gammaln(d_v - js))
            self._tails[b] = (js, (d_v - 1.0) - js, cb)
            return self._tails[b]

    def flip_probs(self, b: int, q: float):
        p_cc, p_ci, p_ic, p_ii = self.probs(q)
        js, co, cb = self.tail_coeffs(b)
        f = float((cb * p_ic ** js * p_ii ** co).sum())
        g = float((cb * p_ci ** js * p_cc ** co).sum())
        return f, g


@lru_cache(maxsize=None)
def _kernel(params: EnsembleParams) -> _Kernel:
    return _Kernel(params)


def check_probabilities(params: EnsembleParams, q: float):
    """(satisfied | bit correct, violated | bit correct,
    satisfied | bit wrong, violated | bit wrong) with q residual errors."""
    return _kernel(params).probs(q)


def flip_probabilities(params: EnsembleParams, b: int, q: float):
    """(P flip | bit wrong, P flip | bit correct) at threshold b."""
    _validate_b(params, b)
    return _kernel(params).flip_probs(b, q)


def _validate_b(params: EnsembleParams, b: int):
    if not 1 <= b <= params.d_v:
        raise ValueError(f"flip threshold {b} outside [1, {params.d_v}]")


def _converges(params: EnsembleParams, b: int, t: int,
               tol: float, max_iterations: int) -> bool:
    # The residual map is monotone in q, so a non-decreasing step can never
    # come back down to zero; exiting there only shortcuts the stall and
    # iteration-cap checks below without changing the verdict.
    kern = _kernel(params)
    n = params.n
    if t > n:
        return False
    q = float(t)
    for _ in range(max_iterations):
        f, g = kern.flip_probs(b, q)
        q_next = t - t * f + (n - t) * g
        if q_next < tol:
            return True
        if q_next >= q - STALL_EPS or q_next > n:
            return False
        q = q_next
    return False


def iterate_residual(params: EnsembleParams, b: int, t: int,
                     tol: float = DEFAULT_TOLERANCE,
                     max_iterations: int = DEFAULT_MAX_ITERATIONS) -> ResidualTrace:
    """Expected residual error counts, starting from t errors."""
    _validate_b(params, b)
    kern = _kernel(params)
    n = params.n
    q = float(t)
    trace = [q]
    converged = False
    for _ in range(max_iterations):
        f, g = kern.flip_probs(b, q)
        q_next = t - t * f + (n - t) * g
        trace.append(q_next)
        if q_next < tol:
            converged = True
            break
        if abs(q_next - q) < STALL_EPS or q_next > n:
            break
        q = q_next
    return ResidualTrace(tuple(trace), converged)


def find_threshold(params: EnsembleParams, b: int,
                   tol: float = DEFAULT_TOLERANCE,
                   max_iterations: int = DEFAULT_MAX_ITERATIONS,
                   hint: int | None = None) -> int:
    """Largest t whose recursion converges at threshold b (0 if none)."""
    _validate_b(params, b)

    def conv(t):
        return _converges(params, b, t, tol, max_iterations)

    n = params.n
    if hint and hint > 1 and conv(hint):
        lo, t = hint, 2 * hint
    else:
        lo, t = 0, 1
    hi = None
    while hi is None:
        if t > n:
            return n
        if conv(t):
            lo, t = t, 2 * t
        else:
            hi = t
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if conv(mid):
            lo = mid
        else:
            hi = mid
    return lo


@lru_cache(maxsize=None)
def optimize_b(params: EnsembleParams,
               tol: float = DEFAULT_TOLERANCE,
               max_iterations: int = DEFAULT_MAX_ITERATIONS,
               b_values: tuple | None = None,
               hint: int | None = None) -> ThresholdReport:
    """Flip threshold b maximizing the error-count threshold (ties: smaller b).

    A candidate b is searched in full only if it converges at one past the
    best threshold so far, which cheaply discards dominated candidates.
    """
    candidates = b_values if b_values is not None else tuple(params.default_b_range())
    if not candidates:
        raise ValueError("empty flip-threshold range")
    best_t, best_b = 0, None
    for b in candidates:
        _validate_b(params, b)
        if best_t > 0 and not _converges(params, b, best_t + 1, tol, max_iterations):
            continue
        start = max(best_t + 1, hint or 0)
        th = find_threshold(params, b, tol, max_iterations, hint=start)
        if th > best_t or best_b is None:
            best_t, best_b = th, b
    return ThresholdReport(params, best_b, best_t)
