import os
import subprocess
import sys

import numpy as np
import pytest

from modmult import _batch_numpy, backend, batch
from modmult.multiplier import f, g, nu_eta_pow2k, nu_theta_pow2k
from modmult.sl2z import GAMMA1, GAMMA_THETA, generators, mat_mul
from conftest import word_from_indices

IMPLS = [pytest.param(_batch_numpy, id="numpy")]
if backend.numba_available():
    from modmult import _batch_numba

    IMPLS.append(pytest.param(_batch_numba, id="numba"))


def random_rows(count=300, length=12, seed=0, group=GAMMA1):
    return batch.random_word_rows(group, count, length, seed, vary_length=True)


@pytest.fixture(params=IMPLS)
def impl(request):
    return request.param


class TestKernelsAgainstScalar:
    def test_words_match_scalar_folding(self, impl):
        rng = np.random.default_rng(5)
        idx = rng.integers(0, 4, size=(80, 10))
        table = np.array(
            [m.entries() for m in generators(GAMMA1)], dtype=np.int64
        )
        rows = impl.words_from_indices(idx, table)
        for i in range(idx.shape[0]):
            expected = word_from_indices(idx[i])
            assert tuple(int(x) for x in rows[i]) == expected.entries()

    def test_mul_matches_scalar(self, impl):
        r1, r2 = random_rows(seed=1), random_rows(seed=2)
        prod = impl.mul(r1, r2)
        for i in range(0, len(prod), 17):
            m1 = batch.rows_to_matrices(r1[i : i + 1])[0]
            m2 = batch.rows_to_matrices(r2[i : i + 1])[0]
            assert tuple(int(x) for x in prod[i]) == mat_mul(m1, m2).entries()

    def test_dets_are_one(self, impl):
        assert (impl.dets(random_rows(seed=3)) == 1).all()

    def test_reduce(self, impl):
        rows = random_rows(seed=4)
        reduced = impl.reduce_mod(rows, np.int64(12))
        assert ((0 <= reduced) & (reduced < 12)).all()
        assert ((reduced - rows) % 12 == 0).all()

    def test_f_mod24_matches_scalar(self, impl):
        rows = random_rows(seed=6)
        values = impl.f_mod24(rows)
        for i, m in enumerate(batch.rows_to_matrices(rows)):
            assert int(values[i]) == f(m) % 24

    def test_g_mod24_matches_scalar(self, impl):
        rows = random_rows(seed=7, group=GAMMA_THETA)
        values = impl.g_mod24(rows)
        for i, m in enumerate(batch.rows_to_matrices(rows)):
            assert int(values[i]) == g(m) % 24

    def test_g_rejects_outside_theta_group(self, impl):
        rows = np.array([[1, 1, 0, 1]], dtype=np.int64)
        with pytest.raises(ValueError):
            impl.g_mod24(rows)

    def test_word_overflow_guard(self, impl):
        gens = np.array([[1, 1 << 20, 0, 1]], dtype=np.int64)
        idx = np.zeros((1, 5000), dtype=np.int64)
        with pytest.raises(OverflowError):
            impl.words_from_indices(idx, gens)


class TestExponents:
    @pytest.mark.parametrize("k", [-5, 0, 1, 2, 3, 6, 11])
    def test_eta_exponents(self, k):
        rows = random_rows(seed=8)
        exps = batch.eta_exponents(rows, k)
        for i, m in enumerate(batch.rows_to_matrices(rows)):
            assert int(exps[i]) == nu_eta_pow2k(m, k).exponent

    @pytest.mark.parametrize("k", [-3, 0, 1, 2, 3, 5])
    def test_theta_exponents(self, k):
        rows = random_rows(seed=9, group=GAMMA_THETA)
        exps = batch.theta_exponents(rows, k)
        for i, m in enumerate(batch.rows_to_matrices(rows)):
            assert int(exps[i]) == nu_theta_pow2k(m, k).exponent


class TestImplsAgree:
    @pytest.mark.skipif(not backend.numba_available(), reason="numba not installed")
    def test_identical_words(self):
        from modmult import _batch_numba

        rng = np.random.default_rng(10)
        idx = rng.integers(0, 4, size=(200, 14))
        table = np.array(
            [m.entries() for m in generators(GAMMA_THETA)], dtype=np.int64
        )
        a = _batch_numpy.words_from_indices(idx, table)
        b = _batch_numba.words_from_indices(idx, table)
        assert (a == b).all()
        assert (_batch_numpy.f_mod24(a) == _batch_numba.f_mod24(b)).all()


class TestRandomWordRows:
    def test_seeded_and_deterministic(self):
        a = batch.random_word_rows(GAMMA1, 40, 10, 3, vary_length=True)
        b = batch.random_word_rows(GAMMA1, 40, 10, 3, vary_length=True)
        assert (a == b).all()

    def test_vary_length_includes_identity_padding(self):
        rows = batch.random_word_rows(GAMMA1, 200, 6, 0, vary_length=True)
        assert (batch.det_rows(rows) == 1).all()
        # with lengths drawn from 0..6, some words must be the identity
        identity_rows = (rows == np.array([1, 0, 0, 1])).all(axis=1)
        assert identity_rows.any()

    def test_zero_length(self):
        rows = batch.random_word_rows(GAMMA1, 5, 0, 1)
        assert (rows == np.array([1, 0, 0, 1], dtype=np.int64)).all()

    def test_theta_words_have_theta_parity(self):
        rows = batch.random_word_rows(GAMMA_THETA, 300, 12, 2, vary_length=True)
        assert ((rows[:, 0] - rows[:, 3]) % 2 == 0).all()
        assert ((rows[:, 1] - rows[:, 2]) % 2 == 0).all()


class TestBackendSelection:
    def _probe(self, env_value):
        env = dict(os.environ)
        if env_value is None:
            env.pop("MODMULT_BACKEND", None)
        else:
            env["MODMULT_BACKEND"] = env_value
        proc = subprocess.run(
            [sys.executable, "-c", "from modmult import batch; print(batch.ACTIVE_BACKEND)"],
            capture_output=True,
            text=True,
            env=env,
        )
        return proc

    def test_numpy_forced(self):
        proc = self._probe("numpy")
        assert proc.returncode == 0
        assert proc.stdout.strip() == "numpy"

    @pytest.mark.skipif(not backend.numba_available(), reason="numba not installed")
    def test_numba_forced(self):
        proc = self._probe("numba")
        assert proc.returncode == 0
        assert proc.stdout.strip() == "numba"

    def test_invalid_value_rejected(self):
        proc = self._probe("cuda")
        assert proc.returncode != 0
        assert "MODMULT_BACKEND" in proc.stderr
