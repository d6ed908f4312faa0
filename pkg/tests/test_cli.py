import json
import subprocess
import sys

import jsonschema
import pytest

from adtnc import fixture
from adtnc.cli import main
from adtnc.galois import make_rng
from adtnc.linalg import build_F
from adtnc.netfile import (
    FIXTURES,
    NetworkFileError,
    assignment_from_dict,
    assignment_to_dict,
    dumps_network,
    fixture_path,
    loads_network,
    network_from_dict,
    network_to_dict,
    schema,
)
from adtnc.netmodel import CodeAssignment, random_assignment
from golden import F_GOLDEN, FIG2_LABELS, grid


def run(capsys, *argv):
    status = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return status, out, err


def report(capsys, *argv):
    status, out, _ = run(capsys, *argv, "--format", "json")
    rep = json.loads(out)
    assert rep["status"] == status
    return rep


FIG2 = fixture_path("fig2")
CYCLE2 = fixture_path("cycle2")
DIAMOND = fixture_path("diamond")
MULTI = fixture_path("multisource")


class TestFiles:
    @pytest.mark.parametrize("name", FIXTURES)
    def test_round_trip(self, name, tmp_path):
        net = fixture(name)
        text = dumps_network(net)
        again = loads_network(text)
        assert again == net
        assert dumps_network(again) == text
        assert network_to_dict(again) == network_to_dict(net)

    @pytest.mark.parametrize("name", FIXTURES)
    def test_fixture_matches_schema(self, name):
        with open(fixture_path(name), encoding="utf-8") as fh:
            jsonschema.validate(json.load(fh), schema("network"))
        jsonschema.validate(network_to_dict(fixture(name)), schema("network"))

    def test_fig2_sparsity(self):
        net = fixture("fig2")
        assert net.n_ports == 12
        slots = set(net.beta_slots)
        full = CodeAssignment(beta={s: 1 for s in slots})
        F = build_F(net, full).data
        perm = [net.port(l) for l in FIG2_LABELS]
        for i, row in enumerate(grid(F_GOLDEN)):
            for j, cell in enumerate(row):
                assert bool(F[perm[i], perm[j]]) == (cell != "0"), (FIG2_LABELS[i], FIG2_LABELS[j])

    def test_port_numbering_is_derived(self):
        d = network_to_dict(fixture("fig2"))
        assert all(set(n) <= {"id", "inputs", "outputs", "labels"} for n in d["nodes"])

    def test_bad_json_has_position(self):
        with pytest.raises(NetworkFileError) as exc:
            loads_network('{\n  "nodes": [\n    {"id": "S",, }\n  ]\n}')
        assert exc.value.line == 3
        assert exc.value.column == 16
        assert ":3:16" in str(exc.value)

    def test_semantic_error_names_element(self):
        d = network_to_dict(fixture("fig2"))
        d["connections"][0]["source"] = 5
        with pytest.raises(NetworkFileError, match=r"connections\[0\]\.source"):
            network_from_dict(d)

    def test_edge_to_missing_port(self):
        d = network_to_dict(fixture("fig2"))
        d["edges"][1] = ["e1", "e40"]
        with pytest.raises(NetworkFileError, match=r"edges\[1\]\[1\]"):
            network_from_dict(d)

    def test_counts_accept_object_form(self):
        d = network_to_dict(fixture("fig2"))
        d["sources"] = {"S": 2}
        d["destinations"] = {"T": 2}
        jsonschema.validate(d, schema("network"))
        assert network_from_dict(d) == fixture("fig2")

    def test_assignment_round_trip(self):
        net = fixture("fig2")
        code = random_assignment(net, make_rng(11))
        d = assignment_to_dict(code)
        jsonschema.validate(d, schema("assignment"))
        back = assignment_from_dict(json.loads(json.dumps(d)), net)
        assert back.to_dict() == code.to_dict()

    def test_assignment_value_outside_field(self):
        net = fixture("cycle2")
        with pytest.raises(NetworkFileError):
            assignment_from_dict({"beta": {"e2,e4": 5}}, net)


class TestValidate:
    def test_fig2_ok(self, capsys):
        rep = report(capsys, "validate", FIG2)
        assert rep["status"] == 0
        assert rep["result"]["ok"] and rep["result"]["acyclic"]

    def test_cycle2_static_vs_delay(self, capsys):
        status, out, _ = run(capsys, "validate", CYCLE2, "--static")
        assert status == 2
        assert "rerun with --delay" in out
        status, out, _ = run(capsys, "validate", CYCLE2, "--delay")
        assert status == 0
        assert "accepted under the delay model" in out

    def test_malformed_edge_direction(self, capsys, tmp_path):
        d = network_to_dict(fixture("fig2"))
        d["edges"][0] = list(reversed(d["edges"][0]))
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(d))
        status, out, err = run(capsys, "validate", bad)
        assert status == 1
        assert out == ""
        assert "adtnc: error:" in err and "e" in err

    def test_parse_error_exit(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"nodes": [}')
        status, _, err = run(capsys, "validate", bad)
        assert status == 1
        assert f"{bad}:1:" in err

    def test_usage_error_exit(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["validate", str(FIG2), "--static", "--delay"])
        assert exc.value.code == 1
        capsys.readouterr()


class TestMincut:
    def test_fig2_enum(self, capsys):
        rep = report(capsys, "mincut", FIG2, "S", "T", "--method", "enum")
        (cut,) = rep["result"]["cuts"]
        assert cut["value"] == 2
        assert cut["method"] == "enumeration"

    def test_fig2_algebraic(self, capsys):
        rep = report(capsys, "mincut", FIG2, "S", "T", "--method", "alg", "--q", "256")
        assert rep["result"]["cuts"][0]["value"] == 2

    def test_table_output(self, capsys):
        status, out, _ = run(capsys, "mincut", FIG2, "S", "T", "--method", "enum")
        assert status == 0
        assert out.startswith("mincut(S, T) = 2")

    def test_half_pair_is_usage_error(self, capsys):
        status, _, err = run(capsys, "mincut", FIG2, "S")
        assert status == 1
        assert "source and a destination" in err

    def test_cyclic(self, capsys):
        rep = report(capsys, "mincut", CYCLE2, "--method", "enum")
        assert rep["result"]["cuts"][0]["value"] == 1
        status, _, err = run(capsys, "mincut", CYCLE2, "--method", "alg")
        assert status == 1
        assert "cycle" in err


class TestCode:
    def test_byte_identical(self, capsys, tmp_path):
        outs = []
        for k in range(2):
            path = tmp_path / f"r{k}.json"
            status, out, _ = run(capsys, "code", FIG2, "--q", "256", "--seed", "7", "--format", "json", "--out", path)
            assert status == 0
            outs.append((out, path.read_bytes()))
        assert outs[0] == outs[1]

    def test_multisource_multiple_multicast(self, capsys):
        rep = report(capsys, "code", MULTI, "--class", "multiple-multicast")
        assert rep["status"] == 0
        assert rep["result"]["verdict"]["feasible"]

    def test_cycle_needs_delay(self, capsys):
        status, out, _ = run(capsys, "code", CYCLE2, "--static")
        assert status == 2
        assert "--delay" in out
        rep = report(capsys, "code", CYCLE2, "--delay", "--seed", "3", "--trials", "16")
        assert rep["result"]["model"] == "delay"

    def test_code_then_verify(self, capsys, tmp_path):
        asg = tmp_path / "a.json"
        status, _, _ = run(capsys, "code", FIG2, "--seed", "2", "--assignment-out", asg)
        assert status == 0
        jsonschema.validate(json.loads(asg.read_text()), schema("assignment"))
        rep = report(capsys, "verify", FIG2, asg)
        assert rep["status"] == 0 and rep["result"]["feasible"]

    def test_verify_accepts_report(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        run(capsys, "code", FIG2, "--seed", "5", "--out", out)
        rep = report(capsys, "verify", FIG2, out)
        assert rep["result"]["feasible"]

    def test_verify_bundled_code(self, capsys):
        rep = report(capsys, "verify", FIG2, fixture_path("fig2_code"))
        assert rep["status"] == 0

    def test_verify_bad_code(self, capsys, tmp_path):
        bad = tmp_path / "zero.json"
        bad.write_text(json.dumps({"alpha": {"1,e1": 1, "2,e2": 1}, "epsilon": {"e11,1": 1, "e12,2": 1}}))
        rep = report(capsys, "verify", FIG2, bad)
        assert rep["status"] == 2
        assert not rep["result"]["feasible"]


class TestOther:
    def test_erasure_exact(self, capsys):
        rep = report(capsys, "erasure", fixture_path("parallel"))
        assert rep["status"] == 0
        assert rep["result"]["connections"][0]["average_mincut"] == pytest.approx(1.0)

    def test_erasure_static(self, capsys):
        rep = report(capsys, "erasure", DIAMOND, "--static", "--q", "256", "--trials", "64")
        assert rep["status"] == 0

    def test_delay_series(self, capsys):
        status, out, _ = run(capsys, "delay", CYCLE2, "--order", "6", "--seed", "1", "--trials", "16")
        assert "(I - DF)^-1 mod D^6:" in out
        assert "M(D):" in out
        assert status in (0, 2)


ALL_COMMANDS = [
    ("validate", FIG2),
    ("validate", CYCLE2, "--static"),
    ("mincut", FIG2),
    ("mincut", FIG2, "S", "T", "--method", "alg", "--seed", "4"),
    ("code", FIG2, "--seed", "9"),
    ("code", MULTI, "--class", "multiple-multicast", "--seed", "9"),
    ("code", CYCLE2, "--delay", "--seed", "9"),
    ("verify", FIG2, fixture_path("fig2_code")),
    ("erasure", DIAMOND, "--seed", "9"),
    ("erasure", DIAMOND, "--static", "--seed", "9"),
    ("erasure", fixture_path("parallel"), "--method", "monte-carlo", "--samples", "200", "--seed", "9"),
    ("delay", CYCLE2, "--order", "4", "--seed", "9"),
    ("delay", FIG2, "--seed", "9"),
]


@pytest.mark.parametrize("argv", ALL_COMMANDS, ids=[f"{a[0]}-{k}" for k, a in enumerate(ALL_COMMANDS)])
def test_reports_deterministic_and_valid(capsys, argv):
    a = report(capsys, *argv)
    b = report(capsys, *argv)
    assert a == b
    jsonschema.validate(a, schema("report"))


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "adtnc", "mincut", str(FIG2), "S", "T", "--method", "enum", "--format", "json"],
        capture_output=True,
        text=True,
        check=True,
    ).stdout
    assert json.loads(out)["result"]["cuts"][0]["value"] == 2
