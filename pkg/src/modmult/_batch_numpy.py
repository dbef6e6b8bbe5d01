"""Pure-numpy batch kernels; vectorized fallbacks for the numba versions.

Rows are (n, 4) int64 arrays holding [a, b, c, d].  Results are bit-for-bit
identical to modmult._batch_numba.
"""

import numpy as np

# Growth guard for repeated products: keeps every intermediate product
# representable in int64 with room to spare.
ENTRY_GUARD = np.int64(1) << 31


def mul(m1, m2):
    a1, b1, c1, d1 = m1[:, 0], m1[:, 1], m1[:, 2], m1[:, 3]
    a2, b2, c2, d2 = m2[:, 0], m2[:, 1], m2[:, 2], m2[:, 3]
    out = np.empty_like(m1)
    out[:, 0] = a1 * a2 + b1 * c2
    out[:, 1] = a1 * b2 + b1 * d2
    out[:, 2] = c1 * a2 + d1 * c2
    out[:, 3] = c1 * b2 + d1 * d2
    return out


def dets(rows):
    return rows[:, 0] * rows[:, 3] - rows[:, 1] * rows[:, 2]


def reduce_mod(rows, n):
    return rows % np.int64(n)


def f_mod24(rows):
    # f(M) mod 24 depends only on the entries mod 24 (and the branch only on
    # the parity of c), so reduce first; intermediates then stay tiny.
    r = rows % np.int64(24)
    a, b, c, d = r[:, 0], r[:, 1], r[:, 2], r[:, 3]
    common = (a + d) * c - b * d * (c * c - 1)
    odd = c % 2 == 1
    values = np.where(odd, common - 3 * c, common + 3 * d - 3 - 3 * c * d)
    return values % np.int64(24)


def g_mod24(rows):
    r = rows % np.int64(24)
    a, b, c, d = r[:, 0], r[:, 1], r[:, 2], r[:, 3]
    a_odd, b_odd = a % 2 == 1, b % 2 == 1
    c_odd, d_odd = c % 2 == 1, d % 2 == 1
    branch_bc = b_odd & c_odd & ~a_odd & ~d_odd
    branch_ad = a_odd & d_odd & ~b_odd & ~c_odd
    if not np.all(branch_bc | branch_ad):
        raise ValueError("matrix outside Gamma_theta in theta batch")
    values = np.where(branch_bc, -c, d - 1)
    return values % np.int64(24)


def words_from_indices(idx, gens):
    """Fold generator choices into matrices: row i is the product of
    gens[idx[i, 0]] ... gens[idx[i, L-1]]."""
    count = idx.shape[0]
    rows = np.zeros((count, 4), dtype=np.int64)
    rows[:, 0] = 1
    rows[:, 3] = 1
    for step in range(idx.shape[1]):
        rows = mul(rows, gens[idx[:, step]])
        if np.abs(rows).max(initial=0) >= ENTRY_GUARD:
            raise OverflowError("word entries exceed supported magnitude")
    return rows
