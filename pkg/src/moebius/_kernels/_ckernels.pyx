# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the hot float kernels.

Same contracts as the numpy fallback: scan a row range of a finite float64
distance matrix, report the extremal value with its first witness in
row-major order.  Loops run without the GIL so callers can fan row chunks
across threads.
"""

import numpy as np

cimport numpy as cnp

BACKEND = "c"

cdef double D_INF = float("inf")


def quasi_scan(double[:, ::1] d, Py_ssize_t row_start, Py_ssize_t row_end):
    cdef Py_ssize_t n = d.shape[0]
    cdef double best = -1.0
    cdef Py_ssize_t bx = -1, by = -1, bz = -1
    cdef Py_ssize_t x, y, z
    cdef double dxz, m, denom, ratio
    cdef Py_ssize_t besty
    if n < 3:
        return best, bx, by, bz
    with nogil:
        for x in range(row_start, row_end):
            for z in range(n):
                if z == x:
                    continue
                dxz = d[x, z]
                denom = D_INF
                besty = -1
                for y in range(n):
                    if y == x or y == z:
                        continue
                    m = d[x, y]
                    if d[y, z] > m:
                        m = d[y, z]
                    if m < denom:
                        denom = m
                        besty = y
                if besty < 0:
                    continue
                if denom > 0.0:
                    ratio = dxz / denom
                else:
                    ratio = D_INF
                if ratio > best:
                    best = ratio
                    bx = x
                    by = besty
                    bz = z
    return best, bx, by, bz


def corner_scan(double[:, ::1] d, Py_ssize_t row_start, Py_ssize_t row_end):
    cdef Py_ssize_t n = d.shape[0]
    cdef double best = D_INF
    cdef Py_ssize_t bw = -1, bx = -1, by = -1, bz = -1
    cdef Py_ssize_t w, x, y, z
    cdef double a, b, c, m1, m2, m3, measure
    if n < 4:
        return best, bw, bx, by, bz
    with nogil:
        for w in range(row_start, row_end):
            for x in range(n):
                if x == w:
                    continue
                for y in range(n):
                    if y == w or y == x:
                        continue
                    for z in range(n):
                        if z == w or z == x or z == y:
                            continue
                        a = d[w, x] * d[y, z]
                        b = d[w, y] * d[z, x]
                        c = d[w, z] * d[x, y]
                        m1 = (a if a > b else b) / c
                        m2 = (a if a > c else c) / b
                        m3 = (b if b > c else c) / a
                        measure = m1
                        if m2 < measure:
                            measure = m2
                        if m3 < measure:
                            measure = m3
                        if measure < best:
                            best = measure
                            bw = w
                            bx = x
                            by = y
                            bz = z
    return best, bw, bx, by, bz
