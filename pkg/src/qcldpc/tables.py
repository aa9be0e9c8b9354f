"""Report tables over the standard parameter grid.

Each builder returns (header, rows) with plain Python values, ready for
CSV emission or plotting.  The grid spans block sizes 4096..16384 in steps
of 1024, code rates 2/3 and 3/4 (n0 = 3, 4) and column weights 13 and 15,
with transformation weight m = 7, matching the published design space.

Table ids: 1 key sizes, 2 encryption cost, 3 error-count thresholds of the
private decoder, 4 decryption cost, 6 correctable public error weight t',
7 attack work factors.  Ids 5 and related prose tables have no tabular
content to reproduce.
"""

from __future__ import annotations

import csv

from .complexity import (decryption_ops_per_bit, encryption_ops_per_bit,
                         key_size_bytes)
from .errors import ParameterError
from .security import decoding_attack_wf, dual_attack_wf
from .thresholds import EnsembleParams, optimize_b

P_GRID = tuple(range(4096, 16384 + 1, 1024))
N0_VALUES = (3, 4)
DV_VALUES = (13, 15)
DEFAULT_M = 7
DEFAULT_ITERATIONS = 10

TABLE_IDS = (1, 2, 3, 4, 6, 7)


def key_size_table(n0_values=N0_VALUES, p_grid=P_GRID, systematic=True):
    header = ["n0"] + [f"p={p}" for p in p_grid]
    rows = [[n0] + [key_size_bytes(n0, p, systematic) for p in p_grid]
            for n0 in n0_values]
    return header, rows


def encryption_table(n0_values=N0_VALUES, p_grid=P_GRID, per="cleartext"):
    header = ["n0"] + [f"p={p}" for p in p_grid]
    rows = [[n0] + [round(encryption_ops_per_bit(n0, p, per=per)) for p in p_grid]
            for n0 in n0_values]
    return header, rows


def _threshold_grid(n0_values, dv_values, p_grid, progress=None):
    """{(n0, d_v, p): ThresholdReport}; neighbour results seed the search."""
    out = {}
    for n0 in n0_values:
        for d_v in dv_values:
            hint = None
            prev_p = None
            for p in p_grid:
                params = EnsembleParams(n=n0 * p, d_v=d_v, d_c=n0 * d_v)
                if hint is not None and prev_p is not None:
                    hint = max(2, round(hint * p / prev_p))
                rep = optimize_b(params, hint=hint)
                out[n0, d_v, p] = rep
                hint, prev_p = rep.threshold, p
                if progress is not None:
                    progress(f"threshold n0={n0} d_v={d_v} p={p}: "
                             f"t_th={rep.threshold} (b={rep.b})")
    return out


def threshold_table(n0_values=N0_VALUES, dv_values=DV_VALUES, p_grid=P_GRID,
                    progress=None):
    grid = _threshold_grid(n0_values, dv_values, p_grid, progress)
    header = ["n0", "d_v"] + [f"p={p}" for p in p_grid]
    rows = [[n0, d_v] + [grid[n0, d_v, p].threshold for p in p_grid]
            for n0 in n0_values for d_v in dv_values]
    return header, rows


def correctable_table(n0_values=N0_VALUES, dv_values=DV_VALUES, p_grid=P_GRID,
                      m=DEFAULT_M, progress=None):
    """Largest public error weight t' = floor(t_th / m)."""
    grid = _threshold_grid(n0_values, dv_values, p_grid, progress)
    header = ["n0", "d_v"] + [f"p={p}" for p in p_grid]
    rows = [[n0, d_v] + [grid[n0, d_v, p].threshold // m for p in p_grid]
            for n0 in n0_values for d_v in dv_values]
    return header, rows


def decryption_table(n0_values=N0_VALUES, dv_values=DV_VALUES, p_grid=P_GRID,
                     m=DEFAULT_M, iterations=DEFAULT_ITERATIONS):
    header = ["n0", "d_v"] + [f"p={p}" for p in p_grid]
    rows = [[n0, d_v] + [round(decryption_ops_per_bit(n0, p, d_v, m, iterations))
                         for p in p_grid]
            for n0 in n0_values for d_v in dv_values]
    return header, rows


def security_table(n0_values=N0_VALUES, dv_values=DV_VALUES, p_grid=P_GRID,
                   m=DEFAULT_M, progress=None):
    """log2 work factor of the cheaper attack, at t' = floor(t_th / m)."""
    grid = _threshold_grid(n0_values, dv_values, p_grid, progress)
    header = ["n0", "d_v"] + [f"p={p}" for p in p_grid]
    rows = []
    for n0 in n0_values:
        for d_v in dv_values:
            row = [n0, d_v]
            for p in p_grid:
                t_prime = grid[n0, d_v, p].threshold // m
                dec = decoding_attack_wf(n0, p, t_prime)
                dual = dual_attack_wf(n0, p, d_v, m)
                row.append(round(min(dec.log2_wf, dual.log2_wf), 1))
                if progress is not None:
                    progress(f"security n0={n0} d_v={d_v} p={p}: "
                             f"decode 2^{dec.log2_wf:.1f} dual 2^{dual.log2_wf:.1f}")
            rows.append(row)
    return header, rows


def build_table(table_id: int, m: int = DEFAULT_M,
                iterations: int = DEFAULT_ITERATIONS, per: str = "cleartext",
                progress=None):
    if table_id == 1:
        return key_size_table()
    if table_id == 2:
        return encryption_table(per=per)
    if table_id == 3:
        return threshold_table(progress=progress)
    if table_id == 4:
        return decryption_table(m=m, iterations=iterations)
    if table_id == 6:
        return correctable_table(m=m, progress=progress)
    if table_id == 7:
        return security_table(m=m, progress=progress)
    raise ParameterError(f"no table {table_id}; available: {TABLE_IDS}")


def write_csv(header, rows, stream) -> None:
    w = csv.writer(stream)
    w.writerow(header)
    w.writerows(rows)
