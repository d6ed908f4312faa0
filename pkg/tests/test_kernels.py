"""The compiled core and the numpy fallback must agree bit for bit."""

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adtnc._kernels import _pure
from adtnc.galois import GF

core = pytest.importorskip("adtnc._kernels._core", reason="compiled core not built")

FIELDS = [GF(2), GF(3), GF(2, 4), GF(2, 8), GF(257), GF(2, 16)]


def tables(f):
    return f.p, f.exp, f.log


@st.composite
def matrices(draw, max_dim=7):
    f = draw(st.sampled_from(FIELDS))
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    a = f.random(rng, (r, c)).reshape(r, c)
    # low-rank and sparse cases matter for pivoting
    if draw(st.booleans()):
        a[rng.random((r, c)) < 0.6] = 0
    return f, a


@given(matrices())
def test_rank_and_rref_agree(fa):
    f, a = fa
    assert _pure.rank(a, *tables(f)) == core.rank(a, *tables(f))
    r1, p1, d1 = _pure.rref(a, *tables(f))
    r2, p2, d2 = core.rref(a, *tables(f))
    assert np.array_equal(np.asarray(r1), np.asarray(r2))
    assert list(p1) == list(p2)
    assert d1 == d2


@given(matrices())
def test_det_agrees(fa):
    f, a = fa
    n = min(a.shape)
    sq = np.ascontiguousarray(a[:n, :n])
    assert _pure.det(sq, *tables(f)) == core.det(sq, *tables(f))


@given(matrices(), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_matmul_agrees(fa, k, seed):
    f, a = fa
    b = f.random(np.random.default_rng(seed), (a.shape[1], k)).reshape(a.shape[1], k)
    assert np.array_equal(_pure.matmul(a, b, *tables(f)), core.matmul(a, b, *tables(f)))


@given(st.sampled_from(FIELDS), st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_transfer_agrees(f, n, seed):
    rng = np.random.default_rng(seed)
    F = np.triu(f.random(rng, (n, n)).reshape(n, n), 1)
    F[rng.random((n, n)) < 0.5] = 0
    order = np.arange(n, dtype=np.int64)
    assert np.array_equal(_pure.transfer(F, order, *tables(f)), core.transfer(F, order, *tables(f)))


@given(st.integers(0, 2**32 - 1))
def test_mincut_enum_agrees(seed):
    from adtnc import _kernels
    from adtnc.mincut import mincut_enumeration
    from adtnc.netmodel import random_network

    net = random_network(np.random.default_rng(seed), n_nodes=5, max_ports=16)
    a = mincut_enumeration(net, "N0", "N4")
    saved = _kernels.mincut_enum
    try:
        _kernels.mincut_enum = _pure.mincut_enum
        b = mincut_enumeration(net, "N0", "N4")
    finally:
        _kernels.mincut_enum = saved
    assert (a.value, a.witness) == (b.value, b.witness)


def test_env_var_selects_fallback():
    env = dict(os.environ, ADTNC_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import adtnc; print(adtnc.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
