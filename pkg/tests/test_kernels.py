import os
import random
import subprocess
import sys

import pytest

from mhessian import _pykernels, kernels

try:
    from mhessian import _kernels
except ImportError:  # extension not built
    _kernels = None

compiled = pytest.mark.skipif(_kernels is None, reason="compiled extension not built")
P = (1 << 31) - 1


def rand_matrix(rng, n, m, lo=-50, hi=50):
    return [[rng.randint(lo, hi) for _ in range(m)] for _ in range(n)]


@compiled
@pytest.mark.parametrize("seed", range(10))
def test_backends_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 12)
    A = rand_matrix(rng, n, n)
    if seed % 3 == 0:
        A[-1] = [2 * x for x in A[0]]
    assert _kernels.det_bareiss_int(A) == _pykernels.det_bareiss_int(A)
    assert _kernels.det_integer(A) == _pykernels.det_integer(A)
    assert _kernels.det_mod_p(A, P) == _pykernels.det_mod_p(A, P) == _pykernels.det_integer(A) % P
    R = rand_matrix(rng, n, n + 3, -3, 3)
    assert _kernels.rank_profile_mod_p(R, n + 3, P) == _pykernels.rank_profile_mod_p(R, n + 3, P)
    a = {(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-5, 5) for _ in range(5)}
    b = {(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-5, 5) for _ in range(5)}
    assert _kernels.poly_mul(a, b) == _pykernels.poly_mul(a, b)


@compiled
def test_large_determinant_uses_several_primes():
    rng = random.Random(11)
    A = rand_matrix(rng, 10, 10, -10 ** 12, 10 ** 12)
    assert _kernels.det_integer(A) == _pykernels.det_bareiss_int(A)


def test_empty_matrix_conventions():
    for mod in filter(None, (_pykernels, _kernels)):
        assert mod.det_integer([]) == 1
        assert mod.det_mod_p([], P) == 1


def test_primes_are_descending_31_bit():
    ps = kernels.modular_primes(3)
    assert ps[0] == P and ps == sorted(ps, reverse=True) and all(p < 2 ** 31 for p in ps)


def test_pure_python_switch():
    env = dict(os.environ, MHESSIAN_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import mhessian; print(mhessian.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    if _kernels is not None:
        assert kernels.BACKEND == "cython"
