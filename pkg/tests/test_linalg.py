import time

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adtnc.galois import GF
from adtnc.linalg import (
    Matrix,
    NotNilpotentError,
    SingularMatrixError,
    build_F,
    independent_columns,
    null_space,
    power_sum,
    transfer_matrix,
)
from adtnc.netmodel import CodeAssignment, Network, NetworkError, Node, random_network
from golden import F_GOLDEN, FIG2_LABELS, UNUSED_SLOTS, grid, slot_ports

FIELDS = st.sampled_from([GF(2), GF(3), GF(2, 4), GF(2, 8), GF(251)])
seeds = st.integers(0, 2**32 - 1)


def fig2_code(net, values):
    p = net.port
    return CodeAssignment(beta={(p(a), p(b)): v for (a, b), v in values.items()})


def label_perm(net):
    return [net.port(l) for l in FIG2_LABELS]


class TestBuildF:
    def test_matches_golden(self, fig2):
        slots = [c for row in grid(F_GOLDEN) for c in row if c.startswith("b")]
        values = {slot_ports(s): (0 if s in UNUSED_SLOTS else 10 + k) for k, s in enumerate(slots)}
        t0 = time.perf_counter()
        F = build_F(fig2, fig2_code(fig2, values)).data
        assert time.perf_counter() - t0 < 1.0
        perm = label_perm(fig2)
        for i, row in enumerate(grid(F_GOLDEN)):
            for j, cell in enumerate(row):
                want = values[slot_ports(cell)] if cell.startswith("b") else int(cell)
                assert F[perm[i], perm[j]] == want, (FIG2_LABELS[i], FIG2_LABELS[j])

    def test_broadcast_row(self, fig2):
        F = build_F(fig2).data
        p = fig2.port
        assert sorted(np.nonzero(F[p("e1")])[0]) == sorted([p("e3"), p("e6")])

    def test_empty_network(self):
        net = Network([Node("A", 1, 1), Node("B", 1, 1)], [])
        assert build_F(net).is_zero()

    def test_cross_node_beta(self, fig2):
        with pytest.raises(NetworkError):
            build_F(fig2, CodeAssignment(beta={(fig2.port("e3"), fig2.port("e9")): 1}))


class TestTransfer:
    def test_zero_F(self):
        f = GF(5)
        assert transfer_matrix(Matrix.zeros(f, 4, 4)) == Matrix.identity(f, 4)

    @pytest.mark.parametrize("q,want", [(2, 0), (3, 2)])
    def test_fig2_path_sum(self, fig2, q, want):
        net = fig2.replace(field=GF.from_order(q))
        code = CodeAssignment(beta={s: 1 for s in net.beta_slots})
        T = transfer_matrix(build_F(net, code))
        assert T.data[net.port("e1"), net.port("e12")] == want

    def test_cyclic_rejected(self):
        f = GF(2)
        F = Matrix(f, [[0, 1], [1, 0]])
        with pytest.raises(NotNilpotentError, match="delaynet"):
            transfer_matrix(F)

    def test_random_inverse_contract(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            f = GF(2, 8)
            n = int(rng.integers(1, 12))
            perm = rng.permutation(n)
            raw = np.triu(f.random(rng, (n, n)).reshape(n, n), 1)
            raw[rng.random((n, n)) < 0.5] = 0
            F = Matrix(f, raw[np.ix_(perm, perm)])
            I = Matrix.identity(f, n)
            assert transfer_matrix(F) @ (I - F) == I

    @given(FIELDS, seeds)
    def test_identities(self, f, seed):
        net = random_network(np.random.default_rng(seed), n_nodes=5, field=f)
        code = CodeAssignment(beta={s: int(f.random(np.random.default_rng(seed + 1))) for s in net.beta_slots})
        F = build_F(net, code)
        T = transfer_matrix(F)
        I = Matrix.identity(f, net.n_ports)
        assert T @ (I - F) == I and (I - F) @ T == I
        assert T == power_sum(F, net.n_ports)
        assert (I - F).det() == f.one


class TestElimination:
    def test_identity(self):
        f = GF(2, 4)
        for n in (1, 3, 6):
            I = Matrix.identity(f, n)
            assert I.rank() == n and I.det() == f.one

    def test_fig2_block(self):
        # [[b69, b37 + b610], [0, b47]] with b69 = b47 = 1
        f = GF(2, 8)
        for b37, b610 in [(0, 0), (5, 9), (200, 3)]:
            M = Matrix(f, [[1, f.add(b37, b610)], [0, 1]])
            assert M.det() == f.one and M.rank() == 2

    def test_equal_rows(self):
        assert Matrix(GF(2), [[1, 1], [1, 1]]).rank() == 1

    def test_singular_inverse_carries_rank(self):
        with pytest.raises(SingularMatrixError) as exc:
            Matrix(GF(3), [[1, 2, 0], [2, 1, 0], [0, 0, 1]]).inverse()
        assert exc.value.rank == 2

    @given(FIELDS, seeds, st.integers(1, 6), st.integers(1, 6), st.integers(1, 6))
    def test_rank_of_product(self, f, seed, r, k, c):
        rng = np.random.default_rng(seed)
        A = f.random(rng, (r, k)).reshape(r, k)
        B = f.random(rng, (k, c)).reshape(k, c)
        B[:, rng.random(c) < 0.4] = 0
        A, B = Matrix(f, A), Matrix(f, B)
        assert (A @ B).rank() <= min(A.rank(), B.rank())

    @given(FIELDS, seeds)
    def test_rref_deterministic(self, f, seed):
        rng = np.random.default_rng(seed)
        M = Matrix(f, f.random(rng, (5, 7)).reshape(5, 7))
        a, pa = M.rref()
        b, pb = Matrix(f, M.data.copy()).rref()
        assert a == b and pa == pb
        assert pa == sorted(pa)

    @given(FIELDS, seeds)
    def test_null_space_and_pivots(self, f, seed):
        rng = np.random.default_rng(seed)
        raw = f.random(rng, (4, 6)).reshape(4, 6)
        raw[3] = raw[0]
        M = Matrix(f, raw)
        N = null_space(M)
        assert N.shape[1] == 6 - M.rank()
        assert (M @ N).is_zero()
        cols = independent_columns(M)
        assert M.submatrix(range(4), cols).rank() == len(cols) == M.rank()


def test_rational_matrices_share_elimination():
    from adtnc.galois import RationalField

    rf = RationalField(GF(2))
    D = rf.D
    M = Matrix(rf, [[rf.one, D], [D, rf.one]])
    assert M.rank() == 2
    assert M.det() == rf.one + D * D
    assert M @ M.inverse() == Matrix.identity(rf, 2)


def test_text_form():
    assert Matrix(GF(3), [[1, 0], [2, 1]]).to_text() == "1 0\n2 1"
