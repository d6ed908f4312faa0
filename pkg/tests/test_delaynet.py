import time

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adtnc import fixture
from adtnc.codecon import system_matrix
from adtnc.delaynet import (
    delayed_F,
    delayed_system_matrix,
    delayed_transfer,
    delayed_verify,
    nonsingular,
    random_delay_code,
    simulate_time,
)
from adtnc.galois import GF, Polynomial, RationalField, RationalFunction
from adtnc.linalg import Matrix, build_F
from adtnc.netmodel import CodeAssignment, Network, NetworkError, Node, random_assignment, random_network
from conftest import fig2_identity_code
from golden import DF_GOLDEN, FIG2_LABELS, UNUSED_SLOTS, golden_entry, grid, slot_ports

seeds = st.integers(0, 2**32 - 1)


def self_loop(field=GF(2)):
    """S -> V -> T where V's second output feeds its own second input."""
    net = Network(
        [Node("S", 0, 1), Node("V", 2, 2), Node("T", 1, 0)],
        [(0, 1), (3, 2), (4, 5)],
        {"S": 1},
        {"T": 1},
        field=field,
        delay=True,
    )
    code = CodeAssignment(beta={s: 1 for s in net.beta_slots}, alpha={(0, 0): 1}, eps={(5, 0): 1})
    return net, code


def series_coeff(r, t):
    return r.series(t + 1).coeff(t)


class TestTransfer:
    def test_delayed_golden(self, fig2):
        f = GF(2, 8)
        net = fig2.replace(field=f)
        rng = np.random.default_rng(2024)
        slots = {s for row in grid(DF_GOLDEN) for cell in row for term in cell.split("+") for s in term.split("*") if s.startswith("b")}
        slots |= set(UNUSED_SLOTS)
        beta = {slot_ports(s): (0 if s in UNUSED_SLOTS else int(f.random(rng)) or 1) for s in slots}
        code = CodeAssignment(beta={(net.port(a), net.port(b)): v for (a, b), v in beta.items()})
        t0 = time.perf_counter()
        T = delayed_transfer(build_F(net, code), "exact")
        assert time.perf_counter() - t0 < 5.0
        rf = RationalField(f)
        perm = [net.port(l) for l in FIG2_LABELS]
        for i, row in enumerate(grid(DF_GOLDEN)):
            for j, cell in enumerate(row):
                assert T.data[perm[i], perm[j]] == golden_entry(cell, rf, beta), (FIG2_LABELS[i], FIG2_LABELS[j])

    def test_two_port_cycle(self):
        f = GF(3)
        T = delayed_transfer(Matrix(f, [[0, 1], [1, 0]]), "exact")
        rf = RationalField(f)
        want = rf.one / (rf.one - rf.D * rf.D)
        assert T.data[0, 0] == want
        S = delayed_transfer(Matrix(f, [[0, 1], [1, 0]]), "series", order=8)
        assert S.entry(0, 0) == want.series(8)

    def test_default_series_order(self):
        S = delayed_transfer(Matrix(GF(2), [[0, 1], [1, 0]]), "series")
        assert S.order == 4

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            delayed_transfer(Matrix(GF(2), [[0]]), "laplace")

    @given(seeds, st.integers(1, 10))
    def test_inverse_contract(self, seed, n):
        rng = np.random.default_rng(seed)
        f = GF(2, 4) if seed % 2 else GF(3)
        raw = f.random(rng, (n, n)).reshape(n, n)
        raw[rng.random((n, n)) < 0.7] = 0
        F = Matrix(f, raw)
        T = delayed_transfer(F)
        rf = RationalField(f)
        assert (Matrix.identity(rf, n) - delayed_F(F)) @ T == Matrix.identity(rf, n)

    @given(seeds, st.integers(1, 8), st.integers(1, 10))
    def test_series_truncates_exact(self, seed, n, k):
        rng = np.random.default_rng(seed)
        f = GF(5)
        raw = f.random(rng, (n, n)).reshape(n, n)
        raw[rng.random((n, n)) < 0.6] = 0
        F = Matrix(f, raw)
        T = delayed_transfer(F)
        S = delayed_transfer(F, "series", order=k)
        for i in range(n):
            for j in range(n):
                assert S.entry(i, j) == T.data[i, j].series(k)


class TestSystemMatrix:
    def test_fig2_pure_delay(self, fig2):
        M = delayed_system_matrix(fig2, fig2_identity_code(fig2))
        rf = M.field
        D3 = rf.D * rf.D * rf.D
        assert M == Matrix(rf, [[D3, rf.zero], [rf.zero, D3]])

    def test_zero_beta(self, fig2):
        assert delayed_system_matrix(fig2, fig2_identity_code(fig2, b69=0, b47=0)).is_zero()

    def test_rational_overrides(self, fig2):
        rf = RationalField(fig2.field)
        alpha = Matrix.zeros(rf, 2, 12)
        code = fig2_identity_code(fig2)
        assert delayed_system_matrix(fig2, code, alpha=alpha).is_zero()

    def test_cyclic_rational_and_nonsingular(self):
        net, code = self_loop(GF(2, 4))
        M = delayed_system_matrix(net, code)
        assert not M.data[0, 0].is_polynomial()
        sym = nonsingular(M, "symbolic")
        ev = nonsingular(M, "evaluation")
        assert sym.nonsingular and ev.nonsingular

    def test_cycle2_fixture(self):
        net = fixture("cycle2")
        code, verdict, _ = random_delay_code(net, rng=0)
        assert verdict.feasible
        M = delayed_system_matrix(net, code)
        assert nonsingular(M, "symbolic").nonsingular == nonsingular(M, "evaluation").nonsingular

    @given(seeds)
    def test_acyclic_collapse_at_one(self, seed):
        rng = np.random.default_rng(seed)
        net = random_network(rng, n_nodes=5, field=GF(2, 4))
        code = random_assignment(net, rng)
        Md = delayed_system_matrix(net, code)
        M = system_matrix(net, code).M
        assert Md.evaluate(1) == M
        # polynomial entries with degree at most the longest port path
        longest = len(net.topological_ports())
        for x in Md.data.flat:
            assert x.is_polynomial() and x.num.degree < longest

    @given(seeds)
    def test_methods_agree(self, seed):
        rng = np.random.default_rng(seed)
        f = GF(2) if seed % 3 == 0 else GF(3)
        rf = RationalField(f)
        n = int(rng.integers(1, 4))
        rows = []
        for _ in range(n):
            row = []
            for _ in range(n):
                num = Polynomial(f, f.random(rng, 3))
                den = Polynomial(f, [1, *f.random(rng, 2)])
                row.append(RationalFunction(num, den))
            rows.append(row)
        M = Matrix(rf, rows)
        assert nonsingular(M, "symbolic").nonsingular == nonsingular(M, "evaluation").nonsingular


class TestSimulation:
    def test_fig2_impulse(self, fig2):
        code = fig2_identity_code(fig2)
        M = delayed_system_matrix(fig2, code)
        X = np.zeros((10, 2), dtype=np.int64)
        X[0] = (1, 0)
        Z = simulate_time(fig2, code, X).Z
        for t in range(10):
            for k in range(2):
                assert Z[t, k] == series_coeff(M.data[0, k], t)

    def test_zero_input(self):
        net, code = self_loop()
        assert not simulate_time(net, code, np.zeros((12, 1), dtype=np.int64)).Z.any()

    def test_two_cycle_period(self):
        net, code = self_loop()
        X = np.zeros((12, 1), dtype=np.int64)
        X[0] = 1
        z = simulate_time(net, code, X).Z[:, 0]
        assert z.tolist() == [0, 0, 0] + [1, 0] * 4 + [1]
        rf = RationalField(GF(2))
        assert delayed_system_matrix(net, code).data[0, 0] == rf.D**3 / (rf.one - rf.D**2)

    def test_structural_errors(self):
        net = Network([Node("A", 0, 1), Node("B", 1, 1)], [(0, 2)], delay=True)
        with pytest.raises(NetworkError):
            simulate_time(net, CodeAssignment(), np.zeros((2, 0)))


def test_delayed_verify_names_receivers(fig2):
    v = delayed_verify(fig2, fig2_identity_code(fig2))
    assert v.feasible and v.receivers[0]["dest"] == "T"
    v = delayed_verify(fig2, fig2_identity_code(fig2, b69=0))
    assert not v.feasible
