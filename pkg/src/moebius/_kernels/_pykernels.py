"""Numpy fallback implementations of the hot float kernels.

Both kernels scan a row range [row_start, row_end) of a finite float64
distance matrix so callers can partition work; witnesses are reported in
row-major first-occurrence order, making results independent of the
partitioning.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def quasi_scan(d: np.ndarray, row_start: int, row_end: int):
    """Worst quasi-metric ratio over ordered triples (x, y, z) of distinct
    indices with x in the row range: max of d[x,z] / max(d[x,y], d[y,z]).

    Returns (ratio, x, y, z); ratio -1.0 when the range holds no triple.
    """
    n = d.shape[0]
    best = -1.0
    witness = (-1, -1, -1)
    if n < 3:
        return best, *witness
    for x in range(row_start, row_end):
        pairmax = np.maximum(d[x][:, None], d)  # [y, z] -> max(d[x,y], d[y,z])
        pairmax[x, :] = np.inf                  # y == x excluded
        np.fill_diagonal(pairmax, np.inf)       # y == z excluded
        denom = pairmax.min(axis=0)
        argmin_y = pairmax.argmin(axis=0)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = np.where(denom > 0, d[x] / denom, np.inf)
        ratios[x] = -np.inf                     # z == x excluded
        z = int(ratios.argmax())
        r = float(ratios[z])
        if r > best:
            best = r
            witness = (x, int(argmin_y[z]), z)
    return best, *witness


def corner_scan(d: np.ndarray, row_start: int, row_end: int):
    """Smallest corner measure over non-degenerate quadruples (w, x, y, z)
    with w in the row range.

    For entries (A, B, C) = (d[wx]d[yz], d[wy]d[zx], d[wz]d[xy]) the corner
    measure is min(max(A,B)/C, max(A,C)/B, max(B,C)/A).

    Returns (margin, w, x, y, z); margin inf when the range holds no quadruple.
    """
    n = d.shape[0]
    best = np.inf
    witness = (-1, -1, -1, -1)
    if n < 4:
        return best, *witness
    idx = np.arange(n)
    for w in range(row_start, row_end):
        for x in range(n):
            if x == w:
                continue
            a = d[w, x] * d            # [y, z] -> A
            b = np.outer(d[w], d[:, x])  # [y, z] -> d[w,y] * d[z,x]
            c = np.outer(d[x], d[w])     # [y, z] -> d[x,y] * d[w,z]
            m1 = np.maximum(a, b) / c
            m2 = np.maximum(a, c) / b
            m3 = np.maximum(b, c) / a
            measure = np.minimum(np.minimum(m1, m2), m3)
            measure[w, :] = np.inf
            measure[x, :] = np.inf
            measure[:, w] = np.inf
            measure[:, x] = np.inf
            np.fill_diagonal(measure, np.inf)
            flat = int(measure.argmin())
            y, z = divmod(flat, n)
            val = float(measure[y, z])
            if val < best:
                best = val
                witness = (w, x, int(y), int(z))
    _ = idx
    return best, *witness
