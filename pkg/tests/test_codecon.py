import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adtnc import fixture
from adtnc.codecon import (
    InfeasibleError,
    build_A,
    build_B,
    coding_bound,
    construct,
    construct_disjoint_multicast,
    construct_two_level,
    random_code,
    select_field,
    simulate_ports,
    simulated_system_matrix,
    solve_multiple_multicast,
    system_matrix,
    verify,
)
from adtnc.galois import GF
from adtnc.linalg import Matrix
from adtnc.mincut import mincut_enumeration
from adtnc.netmodel import (
    CodeAssignment,
    Connection,
    ConnectionSet,
    Network,
    NetworkError,
    Node,
    random_assignment,
    random_network,
)
from conftest import fig2_identity_code
from instances import decodes, random_disjoint, random_payload

seeds = st.integers(0, 2**32 - 1)
UNICAST2 = ConnectionSet((Connection("S", "T", (1, 2)),), "unicast")


class TestMatrices:
    def test_fig2_A_support(self, fig2):
        code = random_assignment(fig2, np.random.default_rng(0))
        A = build_A(fig2, code)
        assert A.shape == (2, 12)
        cols = {int(j) for j in np.nonzero(A.data)[1]}
        assert cols <= {fig2.port("e1"), fig2.port("e2")}

    def test_fig2_B_support(self, fig2):
        code = random_assignment(fig2, np.random.default_rng(0))
        B = build_B(fig2, code)
        assert B.shape == (2, 12)
        cols = {int(j) for j in np.nonzero(B.data)[1]}
        assert cols <= {fig2.port("e11"), fig2.port("e12")}

    def test_zero_assignment(self, fig2):
        sm = system_matrix(fig2, CodeAssignment())
        assert sm.A.is_zero() and sm.B.is_zero() and sm.M.is_zero()

    def test_fig2_identity(self, fig2):
        sm = system_matrix(fig2, fig2_identity_code(fig2))
        assert sm.M == Matrix.identity(fig2.field, 2)

    def test_zero_beta(self, fig2):
        code = fig2_identity_code(fig2, b69=0, b47=0)
        assert system_matrix(fig2, code).M.is_zero()

    def test_illegal_alpha(self, fig2):
        with pytest.raises(NetworkError):
            system_matrix(fig2, CodeAssignment(alpha={(0, fig2.port("e3")): 1}))

    def test_duality_200(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            f = [GF(2), GF(3), GF(2, 8)][int(rng.integers(3))]
            net = random_network(rng, n_nodes=int(rng.integers(3, 7)), field=f)
            code = random_assignment(net, rng)
            assert system_matrix(net, code).M == simulated_system_matrix(net, code)

    @given(seeds)
    def test_duality_property(self, seed):
        rng = np.random.default_rng(seed)
        net = random_network(rng, n_nodes=5, field=GF(2, 4))
        code = random_assignment(net, rng)
        X = random_payload(net, rng)
        _, Z = simulate_ports(net, code, X)
        M = system_matrix(net, code).M
        assert np.array_equal((M.T @ Matrix(net.field, X)).data, Z)


class TestVerify:
    def test_fig2_identity_feasible(self, fig2):
        v = verify(fig2, fig2_identity_code(fig2), UNICAST2)
        assert v.feasible
        assert v.decoders["T"] == Matrix.identity(fig2.field, 2)

    def test_singular_receiver_named(self):
        net = fixture("butterfly")
        code = random_assignment(net, np.random.default_rng(1)).replace(eps={})
        v = verify(net, code)
        assert not v.feasible
        assert {r.dest for r in v.failing()} == {"T1", "T2"}
        assert all("rank" in r.reason for r in v.failing())

    def test_leak_reported(self, fig2):
        net = fig2.replace(destinations={"T": 1})
        conns = ConnectionSet((Connection("S", "T", (1,)),), "general")
        p = fig2.port
        code = fig2_identity_code(fig2).replace(eps={(p("e11"), 0): 1, (p("e12"), 0): 1})
        v = verify(net, code, conns)
        assert not v.feasible
        assert v.receivers[0].interference == ("X(S,2)",)

    @given(seeds)
    def test_feasible_means_decodable(self, seed):
        rng = np.random.default_rng(seed)
        net = fixture("relay2")
        res = random_code(net, q=16, trials=1, rng=rng)
        if res.verdict.feasible:
            assert decodes(res.net, res.code, res.verdict, net.connections, rng)


class TestRandomCode:
    def test_fig2_first_trial(self, fig2):
        res = random_code(fig2, UNICAST2, q=256, trials=8, rng=7)
        assert res.verdict.feasible
        assert res.bound == pytest.approx((1 - 1 / 256) ** len(fig2.edges))

    def test_bound_value(self):
        assert coding_bound(16, 2, 5) == pytest.approx(0.5129, abs=5e-5)

    def test_rate_above_mincut(self, fig2):
        net = fig2.replace(sources={"S": 3}, destinations={"T": 3})
        conns = ConnectionSet((Connection("S", "T", (1, 2, 3)),), "unicast")
        res = random_code(net, conns, q=256, trials=6, rng=0, stop_on_success=False)
        assert res.successes == 0
        assert any("mincut(S, T) = 2" in n for n in res.verdict.notes)

    def test_field_selection(self, fig2):
        assert select_field(fig2, 2, 16) == GF(2, 4)
        assert select_field(fig2.replace(field=GF(2)), 2) == GF(2, 2)
        assert select_field(fig2.replace(field=GF(2)), 4) == GF(2, 3)
        assert select_field(fig2, 2) == fig2.field

    def test_same_seed_same_code(self, fig2):
        a = random_code(fig2, UNICAST2, rng=11)
        b = random_code(fig2, UNICAST2, rng=11)
        assert a.code == b.code and a.attempts == b.attempts

    def test_random_eps_is_also_valid(self):
        res = random_code(fixture("butterfly"), q=256, trials=16, rng=3, random_eps=True)
        assert res.verdict.feasible

    def test_multicast_verdicts_follow_mincut(self):
        rng = np.random.default_rng(17)
        for _ in range(40):
            net = random_network(rng, n_nodes=5, field=GF(2, 16))
            dests = ["N3", "N4"]
            cut = min(mincut_enumeration(net, "N0", t).value for t in dests)
            mu = int(rng.integers(1, len(net.outputs_of["N0"]) + 1))
            net = net.replace(sources={"N0": mu}, destinations={t: mu for t in dests})
            conns = ConnectionSet(
                tuple(Connection("N0", t, tuple(range(1, mu + 1))) for t in dests), "single-multicast"
            )
            res = random_code(net, conns, trials=4, rng=rng)
            assert res.verdict.feasible == (cut >= mu)


class TestDisjoint:
    def test_two_receivers_identity(self):
        net = Network(
            [Node("S", 0, 2), Node("V", 2, 2), Node("T1", 1, 0), Node("T2", 1, 0)],
            [(0, 2), (1, 3), (4, 6), (5, 7)],
            {"S": 2},
            {"T1": 1, "T2": 1},
        )
        conns = ConnectionSet((Connection("S", "T1", (1,)), Connection("S", "T2", (2,))), "disjoint-multicast")
        res = construct_disjoint_multicast(net, conns, q=256, rng=0)
        assert system_matrix(res.net, res.code).M == Matrix.identity(res.net.field, 2)
        assert decodes(res.net, res.code, res.verdict, conns, np.random.default_rng(0))

    def test_single_receiver_is_unicast(self, fig2):
        net = fig2.replace(field=GF(2, 8))
        conns = ConnectionSet((Connection("S", "T", (1, 2)),), "disjoint-multicast")
        res = construct_disjoint_multicast(net, conns, rng=1)
        assert res.verdict.feasible
        assert system_matrix(res.net, res.code).M == Matrix.identity(res.net.field, 2)

    def test_subset_over_cut_rejected(self):
        net = Network(
            [Node("S", 0, 3), Node("T1", 2, 0), Node("T2", 1, 0)],
            [(0, 3), (1, 4), (1, 5)],
            {"S": 3},
            {"T1": 2, "T2": 1},
        )
        conns = ConnectionSet(
            (Connection("S", "T1", (1, 2)), Connection("S", "T2", (3,))), "disjoint-multicast"
        )
        with pytest.raises(InfeasibleError) as exc:
            construct_disjoint_multicast(net, conns, q=256, rng=0)
        assert exc.value.detail["receivers"] == ["T1", "T2"]
        assert exc.value.detail["mincut"] == 2

    @given(seeds)
    def test_no_leak_property(self, seed):
        rng = np.random.default_rng(seed)
        net, conns, rates = random_disjoint(rng)
        res = construct_disjoint_multicast(net, conns, rng=rng)
        M = system_matrix(res.net, res.code).M
        # every receiver sees exactly an identity on its own processes
        assert M == Matrix.identity(res.net.field, sum(rates))


class TestTwoLevel:
    def test_fixture(self):
        net = fixture("twolevel")
        res = construct_two_level(net, rng=0)
        assert res.verdict.feasible
        M = system_matrix(res.net, res.code).M
        assert M.data[:, net.output_cols("T1")].tolist() == [[1], [0]]
        assert decodes(res.net, res.code, res.verdict, net.connections, np.random.default_rng(1))

    def test_no_disjoint_tier_is_multicast(self):
        net = fixture("twolevel")
        conns = ConnectionSet((Connection("S", "T2", (1, 2)),), "two-level-multicast")
        res = construct_two_level(net.replace(destinations={"T2": 2}), conns, rng=0)
        assert res.verdict.feasible

    def test_weak_full_receiver_rejected(self):
        # T1 has a single input, so it cannot be a full receiver of two processes
        net = fixture("twolevel")
        conns = ConnectionSet(
            (Connection("S", "T2", (1,)), Connection("S", "T1", (1, 2))), "two-level-multicast"
        )
        net = net.replace(destinations={"T1": 2, "T2": 1})
        with pytest.raises(InfeasibleError, match="T1"):
            construct_two_level(net, conns, rng=0)


class TestMultipleMulticast:
    def test_fixture_decodes(self):
        net = fixture("multisource")
        res = solve_multiple_multicast(net, rng=0)
        assert res.verdict.feasible
        assert decodes(res.net, res.code, res.verdict, net.connections, np.random.default_rng(2))

    def test_weak_receiver(self):
        net = fixture("multisource")
        drop = [e for e in net.edges if net.port_owner[e[1]] == "T2" and net.port_owner[e[0]] == "S2"]
        weak = net.without_edges(drop)
        with pytest.raises(InfeasibleError, match="T2"):
            solve_multiple_multicast(weak, rng=0)

    def test_one_source_matches_multicast(self):
        net = fixture("butterfly")
        conns = ConnectionSet(tuple(Connection("S", t, (1, 2)) for t in ("T1", "T2")), "multiple-multicast")
        a = solve_multiple_multicast(net, conns, q=256, rng=0)
        b = random_code(net, q=256, rng=0)
        assert a.verdict.feasible == b.verdict.feasible is True

    def test_dispatch(self):
        assert construct(fixture("multisource"), rng=0).verdict.feasible
        assert construct(fixture("twolevel"), rng=0).verdict.feasible
        assert construct(fixture("fig2"), rng=0).verdict.feasible
