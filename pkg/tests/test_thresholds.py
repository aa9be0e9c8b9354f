import itertools
import math
from fractions import Fraction

import pytest

from qcldpc.codes import CodeSpec
from qcldpc.thresholds import (EnsembleParams, ResidualTrace, ThresholdReport,
                               check_probabilities, find_threshold,
                               flip_probabilities, iterate_residual,
                               optimize_b)


def exact_check_probs(n, d_c, q):
    """Hypergeometric parities with exact rational arithmetic."""

    def parity_split(errors):
        if errors <= 0:
            return Fraction(1), Fraction(0)
        total = Fraction(math.comb(n - 1, errors))
        even = odd = Fraction(0)
        for j in range(d_c):
            if errors - j < 0 or errors - j > n - d_c:
                continue
            ways = Fraction(math.comb(d_c - 1, j) * math.comb(n - d_c, errors - j))
            if j % 2:
                odd += ways
            else:
                even += ways
        return even / total, odd / total

    p_cc, p_ci = parity_split(q)
    p_ic, p_ii = parity_split(q - 1)
    return p_cc, p_ci, p_ic, p_ii


def enumerated_check_probs(n, d_c, q):
    """Count parities over every placement of the residual errors."""

    def parity_split(errors):
        if errors <= 0:
            return 1.0, 0.0
        window = set(range(d_c - 1))
        even = total = 0
        for pattern in itertools.combinations(range(n - 1), errors):
            total += 1
            if len(window.intersection(pattern)) % 2 == 0:
                even += 1
        return even / total, 1 - even / total

    p_cc, p_ci = parity_split(q)
    p_ic, p_ii = parity_split(q - 1)
    return p_cc, p_ci, p_ic, p_ii


def test_parameter_validation():
    with pytest.raises(ValueError):
        EnsembleParams(10, 3, 12)
    with pytest.raises(ValueError):
        EnsembleParams(100, 5, 5)
    with pytest.raises(ValueError):
        EnsembleParams(100, 0, 5)


def test_from_code_spec():
    params = EnsembleParams.from_code_spec(CodeSpec(3, 4096, 13, 7, 27))
    assert params == EnsembleParams(12288, 13, 39)
    assert params.default_b_range() == range(7, 13)


def test_check_probabilities_normalization():
    for n, d_c in ((16, 6), (100, 15), (12288, 39)):
        params = EnsembleParams(n, d_c // 3, d_c)
        for q in (0, 1, 2, n // 10, n // 2, n - 1):
            p_cc, p_ci, p_ic, p_ii = check_probabilities(params, q)
            assert math.isclose(p_cc + p_ci, 1.0, abs_tol=1e-9)
            assert math.isclose(p_ic + p_ii, 1.0, abs_tol=1e-9)
            assert all(-1e-12 <= x <= 1 + 1e-12 for x in (p_cc, p_ci, p_ic, p_ii))
    assert check_probabilities(EnsembleParams(100, 5, 15), 0) == (1.0, 0.0, 1.0, 0.0)


def test_check_probabilities_match_exact_rationals():
    for n, d_c in ((14, 5), (16, 6)):
        params = EnsembleParams(n, d_c - 2, d_c)
        for q in range(0, n):
            got = check_probabilities(params, q)
            want = exact_check_probs(n, d_c, q)
            for g, w in zip(got, want):
                assert math.isclose(g, float(w), rel_tol=1e-10, abs_tol=1e-12), (n, d_c, q)


def test_check_probabilities_match_enumeration():
    n, d_c = 14, 5
    params = EnsembleParams(n, 3, d_c)
    for q in range(1, 7):
        got = check_probabilities(params, q)
        want = enumerated_check_probs(n, d_c, q)
        for g, w in zip(got, want):
            assert math.isclose(g, w, rel_tol=1e-9, abs_tol=1e-12), q


def test_flip_probabilities_bounds():
    params = EnsembleParams(12288, 13, 39)
    for b in (7, 9, 12):
        for q in (1, 50, 190, 500, 3000):
            f, g = flip_probabilities(params, b, q)
            assert 0.0 <= f <= 1.0 and 0.0 <= g <= 1.0
            assert f >= g  # an erroneous bit must be the likelier flip


def test_flip_threshold_validation():
    params = EnsembleParams(100, 5, 15)
    with pytest.raises(ValueError):
        flip_probabilities(params, 0, 3)
    with pytest.raises(ValueError):
        flip_probabilities(params, 6, 3)
    with pytest.raises(ValueError):
        find_threshold(params, 0)


def test_residual_trace_converges_below_threshold():
    params = EnsembleParams(1203, 5, 15)
    t = find_threshold(params, 4)
    assert t == 29
    trace = iterate_residual(params, 4, t)
    assert isinstance(trace, ResidualTrace)
    assert trace.converged
    assert trace.residuals[0] == float(t)
    assert trace.residuals[-1] < 1e-3
    assert all(b < a for a, b in zip(trace.residuals, trace.residuals[1:]))

    diverged = iterate_residual(params, 4, t + 1)
    assert not diverged.converged


def test_threshold_spot_values():
    assert find_threshold(EnsembleParams(1203, 5, 15), 3) == 14
    assert optimize_b(EnsembleParams(1203, 5, 15)) == ThresholdReport(
        EnsembleParams(1203, 5, 15), 4, 29)
    assert optimize_b(EnsembleParams(12288, 13, 39)) == ThresholdReport(
        EnsembleParams(12288, 13, 39), 9, 190)
    assert optimize_b(EnsembleParams(24576, 13, 52)) == ThresholdReport(
        EnsembleParams(24576, 13, 52), 10, 270)


def test_hint_does_not_change_threshold():
    params = EnsembleParams(12288, 13, 39)
    base = find_threshold(params, 9)
    assert find_threshold(params, 9, hint=base - 30) == base
    assert find_threshold(params, 9, hint=base + 30) == base
    assert find_threshold(params, 9, hint=2) == base


def test_optimize_over_restricted_candidates():
    params = EnsembleParams(1203, 5, 15)
    only3 = optimize_b(params, b_values=(3,))
    assert only3.b == 3
    assert only3.threshold == find_threshold(params, 3)
    with pytest.raises(ValueError):
        optimize_b(params, b_values=())


def test_majority_threshold_never_negative():
    params = EnsembleParams(1203, 5, 15)
    assert find_threshold(params, 5) >= 0
