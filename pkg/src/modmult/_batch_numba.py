"""Numba-compiled batch kernels; see _batch_numpy for the fallback twins.

Rows are (n, 4) int64 arrays holding [a, b, c, d].
"""

import numpy as np
from numba import njit

ENTRY_GUARD = np.int64(1) << 31


@njit(cache=True)
def mul(m1, m2):
    out = np.empty_like(m1)
    for i in range(m1.shape[0]):
        a1, b1, c1, d1 = m1[i, 0], m1[i, 1], m1[i, 2], m1[i, 3]
        a2, b2, c2, d2 = m2[i, 0], m2[i, 1], m2[i, 2], m2[i, 3]
        out[i, 0] = a1 * a2 + b1 * c2
        out[i, 1] = a1 * b2 + b1 * d2
        out[i, 2] = c1 * a2 + d1 * c2
        out[i, 3] = c1 * b2 + d1 * d2
    return out


@njit(cache=True)
def dets(rows):
    out = np.empty(rows.shape[0], dtype=np.int64)
    for i in range(rows.shape[0]):
        out[i] = rows[i, 0] * rows[i, 3] - rows[i, 1] * rows[i, 2]
    return out


@njit(cache=True)
def reduce_mod(rows, n):
    out = np.empty_like(rows)
    for i in range(rows.shape[0]):
        for j in range(4):
            out[i, j] = rows[i, j] % n
    return out


@njit(cache=True)
def f_mod24(rows):
    out = np.empty(rows.shape[0], dtype=np.int64)
    for i in range(rows.shape[0]):
        a = rows[i, 0] % 24
        b = rows[i, 1] % 24
        c = rows[i, 2] % 24
        d = rows[i, 3] % 24
        common = (a + d) * c - b * d * (c * c - 1)
        if c % 2 == 1:
            value = common - 3 * c
        else:
            value = common + 3 * d - 3 - 3 * c * d
        out[i] = value % 24
    return out


@njit(cache=True)
def g_mod24(rows):
    out = np.empty(rows.shape[0], dtype=np.int64)
    for i in range(rows.shape[0]):
        a = rows[i, 0] % 2
        b = rows[i, 1] % 2
        c = rows[i, 2] % 2
        d = rows[i, 3] % 2
        if b == 1 and c == 1 and a == 0 and d == 0:
            value = -rows[i, 2]
        elif a == 1 and d == 1 and b == 0 and c == 0:
            value = rows[i, 3] - 1
        else:
            raise ValueError("matrix outside Gamma_theta in theta batch")
        out[i] = value % 24
    return out


@njit(cache=True)
def words_from_indices(idx, gens):
    count = idx.shape[0]
    rows = np.zeros((count, 4), dtype=np.int64)
    for i in range(count):
        rows[i, 0] = 1
        rows[i, 3] = 1
    for step in range(idx.shape[1]):
        for i in range(count):
            a1, b1, c1, d1 = rows[i, 0], rows[i, 1], rows[i, 2], rows[i, 3]
            j = idx[i, step]
            a2, b2, c2, d2 = gens[j, 0], gens[j, 1], gens[j, 2], gens[j, 3]
            rows[i, 0] = a1 * a2 + b1 * c2
            rows[i, 1] = a1 * b2 + b1 * d2
            rows[i, 2] = c1 * a2 + d1 * c2
            rows[i, 3] = c1 * b2 + d1 * d2
            for j2 in range(4):
                v = rows[i, j2]
                if v >= ENTRY_GUARD or -v >= ENTRY_GUARD:
                    raise OverflowError("word entries exceed supported magnitude")
    return rows
