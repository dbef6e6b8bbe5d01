"""Batched character evaluation over arrays of matrices.

This is the hot path of the verification sweeps.  Matrices travel as
(n, 4) int64 rows [a, b, c, d]; the inner loops live in a backend module
chosen at import time (numba-compiled or pure numpy, see modmult.backend).
Both backends are exact and produce identical arrays, so seeded runs are
reproducible regardless of the backend.
"""

import numpy as np

from . import backend
from .sl2z import GAMMA1, GAMMA_THETA, MatZ, generators

_impl = backend.load_impl()
ACTIVE_BACKEND = backend.active_backend()


def _generator_table(group: str) -> np.ndarray:
    # identity appended as the padding generator for variable-length words
    gens = [m.entries() for m in generators(group)] + [(1, 0, 0, 1)]
    return np.array(gens, dtype=np.int64)


_TABLES = {GAMMA1: _generator_table(GAMMA1), GAMMA_THETA: _generator_table(GAMMA_THETA)}


def matrices_to_rows(mats) -> np.ndarray:
    return np.array([m.entries() for m in mats], dtype=np.int64).reshape(-1, 4)


def rows_to_matrices(rows) -> list[MatZ]:
    return [MatZ(int(a), int(b), int(c), int(d)) for a, b, c, d in rows]


def random_word_rows(
    group: str, count: int, length: int, seed, vary_length: bool = False
) -> np.ndarray:
    """Seeded batch of group words as rows.

    Generator choices are drawn outside the kernels, so every backend sees
    the same draw and returns the same matrices.  With vary_length, each
    word's length is drawn uniformly from 0..length.
    """
    table = _TABLES[group]
    pad = len(table) - 1
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, pad, size=(count, length))
    if vary_length and length > 0:
        lengths = rng.integers(0, length + 1, size=count)
        idx[np.arange(length)[None, :] >= lengths[:, None]] = pad
    return _impl.words_from_indices(idx, table)


def mul_rows(m1: np.ndarray, m2: np.ndarray) -> np.ndarray:
    return _impl.mul(m1, m2)


def det_rows(rows: np.ndarray) -> np.ndarray:
    return _impl.dets(rows)


def reduce_rows(rows: np.ndarray, n: int) -> np.ndarray:
    return _impl.reduce_mod(rows, np.int64(n))


def eta_exponents(rows: np.ndarray, k: int) -> np.ndarray:
    """Root24 exponents of the eta-power character on each row."""
    return (2 * k % 24) * _impl.f_mod24(rows) % 24


def theta_exponents(rows: np.ndarray, k: int) -> np.ndarray:
    """Root24 exponents of the theta-power character on each row.

    Raises if any row falls outside the theta group.
    """
    return (6 * k % 24) * _impl.g_mod24(rows) % 24
