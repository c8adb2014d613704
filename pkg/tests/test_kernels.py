"""Compiled kernels against the pure-Python ones."""
import json
import os
import random
import subprocess
import sys

import numpy as np
import pytest

from betanum import Params, _backend, _pykernels, words, zbeta

ck = pytest.importorskip("betanum._ckernels")


@pytest.mark.parametrize("p,q", [(5, 2), (4, 1), (3, 2), (9, 4), (20, 3)])
def test_normalize_parity(p, q):
    rng = random.Random(p * 100 + q)
    for _ in range(3000):
        digits = [rng.randint(0, 3 * p) for _ in range(rng.randint(0, 10))]
        msd = rng.randint(-4, 6)
        assert ck.normalize(list(digits), msd, p, q) == _pykernels.normalize(list(digits), msd, p, q)


@pytest.mark.parametrize("p,q", [(5, 2), (4, 1), (11, 7)])
def test_window_extrema_parity(p, q):
    letters = words.letters_array(words.u_prefix(5000, Params(p, q)))
    lo_c, hi_c = ck.window_extrema(letters, 300)
    lo_p, hi_p = _pykernels.window_extrema(letters, 300)
    assert np.array_equal(np.asarray(lo_c), np.asarray(lo_p))
    assert np.array_equal(np.asarray(hi_c), np.asarray(hi_p))


def test_diff_kind_parity():
    rng = random.Random(8)
    for _ in range(2000):
        p = rng.randint(2, 9)
        q = rng.randint(1, p - 1)
        a, b = rng.randint(-60, 60), rng.randint(-12, 12)
        if Params(p, q).fin(a, b).sign() <= 0:
            for kern in (ck, _pykernels):
                with pytest.raises(ValueError):
                    kern.diff_kind(a, b, p, q)
            continue
        assert ck.diff_kind(a, b, p, q) == _pykernels.diff_kind(a, b, p, q)


@pytest.mark.parametrize("p,q", [(5, 2), (4, 1), (6, 4), (3, 2)])
def test_lplus_scan_parity(p, q, monkeypatch):
    P = Params(p, q)
    fast = zbeta.lplus_search(3, P, threads=1).to_dict()
    monkeypatch.setattr(_backend, "lplus_scan", _pykernels.lplus_scan)
    slow = zbeta.lplus_search(3, P, threads=1).to_dict()
    assert json.dumps(fast, sort_keys=True) == json.dumps(slow, sort_keys=True)


def test_pure_env_var_forces_fallback():
    env = dict(os.environ, BETANUM_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import betanum; print(betanum.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert _backend.NAME == "cython"
