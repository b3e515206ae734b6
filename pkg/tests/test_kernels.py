import os
import subprocess
import sys

import numpy as np
import pytest

from intdecomp import _accel, kernels

pytestmark = pytest.mark.skipif(not _accel.NUMBA_AVAILABLE, reason="numba not installed")

CASES = [(2, 1), (2, 3), (3, 2), (5, 1), (2, 30), (46337, 2)]


@pytest.mark.parametrize("p,k", CASES)
def test_howell_parity(p, k):
    rng = np.random.default_rng(p * 100 + k)
    m = p**k
    for _ in range(25):
        r, c = rng.integers(1, 7, size=2)
        a = rng.integers(0, m, size=(r, c))
        if rng.random() < 0.5:
            a = (a * p ** rng.integers(0, k + 1)) % m
        assert np.array_equal(kernels.howell_nb(a, p, k), kernels.howell_np(a, p, k))


@pytest.mark.parametrize("p,k", CASES)
def test_reduce_parity(p, k):
    rng = np.random.default_rng(k)
    m = p**k
    h = kernels.howell_np(rng.integers(0, m, size=(4, 6)), p, k)
    v = rng.integers(0, m, size=(30, 6))
    assert np.array_equal(kernels.reduce_rows_nb(h, v, m), kernels.reduce_rows_np(h, v, m))


@pytest.mark.parametrize("m", [2, 9, 2**31])
def test_mul_batch_parity(m):
    rng = np.random.default_rng(m % 97)
    t = 4
    table = rng.integers(-3, 4, size=(t, t, t)) % m
    x = rng.integers(0, m, size=(50, t))
    y = rng.integers(0, m, size=(50, t))
    nb = kernels.mul_batch_nb(x, y, table, m)
    npv = kernels.mul_batch_np(x, y, table, m)
    exact = np.einsum("ni,nj,ijl->nl", x.astype(object), y.astype(object), table.astype(object)) % m
    assert np.array_equal(nb, npv)
    assert np.array_equal(nb, exact.astype(np.int64))


def test_env_flag_selects_numpy_path():
    code = "from intdecomp import _accel; print(_accel.USE_NUMBA)"
    env = dict(os.environ, INTDECOMP_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"
    env["INTDECOMP_DISABLE_NUMBA"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "True"


def test_numpy_path_end_to_end():
    code = (
        "from intdecomp import fixture, verify_phi, decide_at_prime;"
        "r = verify_phi(fixture('gaussian'), 2, 4, 1);"
        "print(r.ok, r.witness.coeffs.tolist(), decide_at_prime(fixture('zs3'), 3).reason)"
    )
    env = dict(os.environ, INTDECOMP_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False [[0, 0], [1, 1], [1, 1]] nonzero_radical"
