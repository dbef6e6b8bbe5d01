from hypothesis import strategies as st

from modmult.sl2z import GAMMA1, GAMMA_THETA, I, generators, mat_mul


def word_from_indices(indices, group=GAMMA1):
    gens = generators(group)
    m = I
    for j in indices:
        m = mat_mul(m, gens[j % len(gens)])
    return m


def matrices(group=GAMMA1, max_length=16):
    """Strategy: random group words, entries stay small by construction."""
    return st.lists(
        st.integers(min_value=0, max_value=3), max_size=max_length
    ).map(lambda idx: word_from_indices(idx, group))


sl2z_matrices = matrices(GAMMA1)
gamma_theta_matrices = matrices(GAMMA_THETA)
small_k = st.integers(min_value=-24, max_value=24)
