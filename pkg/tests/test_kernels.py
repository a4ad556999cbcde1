import random

import pytest

from vhess import _accel, _kernels_py

P = 2305843009213693951

try:
    from vhess import _kernels as native
except ImportError:  # pragma: no cover - pure-Python install
    native = None

needs_native = pytest.mark.skipif(native is None, reason="compiled extension not built")


def _rand_matrix(rng, r, c, p, rank=None):
    if rank is None:
        return [[rng.randrange(p) for _ in range(c)] for _ in range(r)]
    a = [[rng.randrange(p) for _ in range(rank)] for _ in range(r)]
    b = [[rng.randrange(p) for _ in range(c)] for _ in range(rank)]
    return [[sum(a[i][k] * b[k][j] for k in range(rank)) % p for j in range(c)] for i in range(r)]


@pytest.mark.parametrize("seed", range(10))
def test_python_rank_of_low_rank_products(seed):
    rng = random.Random(seed)
    k = rng.randint(0, 5)
    M = _rand_matrix(rng, 6, 7, P, rank=k)
    assert _kernels_py.rank_mod_p(M, P) == k


def test_python_det_small():
    assert _kernels_py.det_mod_p([[1, 2], [3, 4]], 101) == (-2) % 101


@needs_native
@pytest.mark.parametrize("seed", range(20))
def test_native_matches_python(seed):
    rng = random.Random(seed)
    p = rng.choice([P, 1000003, 2305843009213693921])
    n = rng.randint(1, 8)
    M = _rand_matrix(rng, n, n, p, rank=rng.randint(0, n))
    assert native.rank_mod_p(M, p) == _kernels_py.rank_mod_p(M, p)
    assert native.det_mod_p(M, p) == _kernels_py.det_mod_p(M, p)


@needs_native
def test_native_batch_evaluation_matches_python():
    rng = random.Random(7)
    nvars, p = 4, P
    exps, coefs, offsets = [], [], [0]
    for _ in range(5):
        for _ in range(rng.randint(0, 4)):
            exps.extend(rng.randint(0, 3) for _ in range(nvars))
            coefs.append(rng.randrange(p))
        offsets.append(len(coefs))
    a = native.PolyBatch(exps, coefs, offsets, nvars, 3, p)
    b = _kernels_py.PolyBatch(exps, coefs, offsets, nvars, 3, p)
    for _ in range(5):
        pt = [rng.randrange(p) for _ in range(nvars)]
        assert a.evaluate(pt) == b.evaluate(pt)


def test_backend_flag():
    assert _accel.BACKEND in ("cython", "python")


def test_reports_identical_across_backends(tmp_path):
    import os
    import subprocess
    import sys

    outs = []
    for pure in ("0", "1"):
        path = tmp_path / f"r{pure}.json"
        env = dict(os.environ, VHESS_PURE_PYTHON=pure)
        proc = subprocess.run([sys.executable, "-m", "vhess.cli", "acceptance", "--only",
                               "C03,C15", "--json", str(path)], env=env, capture_output=True)
        assert proc.returncode == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
