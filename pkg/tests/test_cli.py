import json
from pathlib import Path

import pytest

from mixedborda import cli
from mixedborda.fixtures import FIXTURES
from mixedborda.graph_core import load_graph

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_files_match_code(name):
    assert load_graph(FIXTURE_DIR / f"{name}.json") == FIXTURES[name]()


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_mbb_and_oracle_outputs_are_byte_identical(name, capsys):
    path = str(FIXTURE_DIR / f"{name}.json")
    code_a, a, _ = run(["solve", "--rule", "mbb", path], capsys)
    code_b, b, _ = run(["solve", "--rule", "oracle", path], capsys)
    assert code_a == code_b == 0 and a == b
    assert run(["solve", path], capsys)[1] == a


def test_solve_fig1(capsys):
    code, out, _ = run(["solve", str(FIXTURE_DIR / "two-cycle.json")], capsys)
    data = json.loads(out)
    assert code == 0
    assert {p for row in data["assignment"].values() for p in row.values()} == {"1/2"}
    assert data["min_cost"] == 3 and data["num_min_branchings"] == "2"
    assert data["weights"] == {"s1": "2", "s2": "2"}


def test_table_format_is_marked(capsys):
    _, out, _ = run(["solve", "--format", "table", str(FIXTURE_DIR / "two-cycle.json")], capsys)
    assert "display only" in out and "0.500000" in out


def test_compare(capsys):
    code, out, _ = run(["compare", "--eps", "1/1000000", str(FIXTURE_DIR / "two-cycle.json")], capsys)
    assert code == 0 and json.loads(out)["within_tolerance"] is True
    code, _, _ = run(["compare", "--eps", "1/2", "--tol", "1/1000000", str(FIXTURE_DIR / "two-cycle.json")], capsys)
    assert code == 2


def test_rw_needs_eps(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["solve", "--rule", "rw", str(FIXTURE_DIR / "two-cycle.json")])
    assert info.value.code == 1
    code, out, _ = run(["solve", "--rule", "rw", "--eps", "1/10", str(FIXTURE_DIR / "two-cycle.json")], capsys)
    assert code == 0 and json.loads(out)["assignment"]["v1"]["s1"] == "11/21"


def test_impossibility(capsys):
    code, out, _ = run(["impossibility"], capsys)
    assert code == 0
    assert out.strip().splitlines()[-1] == "0 rules survive out of 32"
    assert len(out.strip().splitlines()) == 33


def test_axioms_command(capsys, monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "7")
    code, out, _ = run(["axioms", "--instances", "5", "--check", "anonymity,copy"], capsys)
    data = json.loads(out)
    assert code == 0 and data["seed"] == 7
    assert set(data["summary"]) == {"anonymity", "copy-robustness"}
    again = run(["axioms", "--instances", "5", "--check", "anonymity,copy"], capsys)[1]
    assert again == out


def test_unknown_check(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["axioms", "--check", "bogus"])
    assert info.value.code == 1


def test_parse_error_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"nodes": [\n')
    code, _, err = run(["solve", str(bad)], capsys)
    assert code == 1 and "line 2" in err


def test_invalid_graph(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "nodes": [{"id": "v"}, {"id": "s", "role": "sink"}],
        "edges": [{"from": "v", "to": "s", "cost": 0}],
    }))
    code, _, err = run(["solve", str(bad)], capsys)
    assert code == 1 and "cost < 1" in err


def test_certificate(capsys):
    code, out, _ = run(["certificate", str(FIXTURE_DIR / "two-cycle.json")], capsys)
    data = json.loads(out)
    assert code == 0
    assert {"members": ["v1", "v2"], "y": 1} in data["sets"]


def test_watershed_and_parametric(capsys):
    code, out, _ = run(["watershed", str(FIXTURE_DIR / "watershed.json")], capsys)
    assert code == 0 and json.loads(out) == {"v1": {"left": "1"}, "v3": {"right": "1"}}
    code, out, _ = run(["parametric", "--eps", "1/100000000", str(FIXTURE_DIR / "parametric.json")], capsys)
    data = json.loads(out)
    assert code == 0 and data["assignment"]["v1"] == {"s1": "2/3", "s2": "1/3"}
    code, _, err = run(["watershed", str(FIXTURE_DIR / "two-cycle.json")], capsys)
    assert code == 1 and "label" in err


def test_oracle_command(capsys):
    code, out, _ = run(["oracle", str(FIXTURE_DIR / "two-cycle.json")], capsys)
    data = json.loads(out)
    assert (data["branchings"], data["min_cost"], data["num_min_branchings"]) == (3, 3, "2")
