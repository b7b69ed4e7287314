import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from tropbundles import cli
from tropbundles.linalg import InvariantError

SAMPLES = Path(__file__).resolve().parent.parent / "samples"
COMMAND_FOR_SCHEMA = {
    "tropbundles.semiring/1": "analyze-semiring",
    "tropbundles.cocycle/1": "decompose",
    "tropbundles.covering/1": "covering",
    "tropbundles.trop/1": "trop",
    "tropbundles.valuation/1": "check-valuation",
    "tropbundles.submodules/1": "submodules",
    "tropbundles.lift/1": "lift",
}


def sample_args():
    for path in sorted(SAMPLES.glob("*.json")):
        schema = json.loads(path.read_text())["schema"]
        yield pytest.param([COMMAND_FOR_SCHEMA[schema], str(path)], id=path.stem)
    for preset in ("P1", "A2", "P1xP1"):
        yield pytest.param(["pic", "--preset", preset], id=f"pic-{preset}")
    yield pytest.param(["classify-bundles", "--preset", "P1", "--rank", "2"], id="classify-P1")


def run(args):
    return subprocess.run([sys.executable, "-m", "tropbundles.cli", *args], capture_output=True, text=True)


def payload(stdout: str) -> dict:
    return json.loads(stdout.split("\n", 1)[1])


@pytest.mark.parametrize("args", list(sample_args()))
def test_samples_succeed_and_match_schema(args):
    proc = run(args)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    out = payload(proc.stdout)
    jsonschema.validate(out, cli.load_schema("result"))
    assert out["status"] == "ok" and out["command"] == args[0]
    assert proc.stdout.splitlines()[0] == out["summary"]


def test_output_is_deterministic():
    args = ["decompose", str(SAMPLES / "p1_rank2.json")]
    assert run(args).stdout == run(args).stdout


def test_summaries(capsys):
    expected = {
        ("pic", "--preset", "P1"): "Pic = Z, generator x",
        ("trop", str(SAMPLES / "cusp.json")): "Trop(A) = T_Q[x,y]/<x^2 = y^3>",
        ("check-valuation", str(SAMPLES / "x2_tx_valid.json")): "monomial valuation: valid",
        ("check-valuation", str(SAMPLES / "x2_tx_violated.json")): "monomial valuation: violated",
    }
    for args, summary in expected.items():
        assert cli.main(list(args)) == 0
        assert capsys.readouterr().out.splitlines()[0] == summary


def test_json_out(tmp_path, capsys):
    target = tmp_path / "out.json"
    assert cli.main(["pic", "--preset", "P2", "--json-out", str(target)]) == 0
    assert json.loads(target.read_text())["result"]["group"] == "Z"
    capsys.readouterr()


def test_schema_violation_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema": "tropbundles.trop/1"}))
    assert cli.main(["trop", str(bad)]) == 2
    assert cli.main(["trop", str(tmp_path / "missing.json")]) == 2
    assert cli.main(["pic", "--preset", "nowhere"]) == 2
    assert cli.main(["no-such-command"]) == 2
    out = capsys.readouterr().out
    assert '"status": "error"' in out


def test_budget_exits_3(capsys):
    assert cli.main(["analyze-semiring", "--preset", "dual", "--budget", "5"]) == 3
    out = capsys.readouterr().out
    assert payload(out)["status"] == "unknown-at-bound"


def test_unknown_query_exits_3(tmp_path, capsys):
    # (x (+) y)^2 vs (x (+) y (+) 0)^2 modulo the bend relations of x + y + 1
    q = [[{"coeff": "0", "exponent": [2, 0]}, {"coeff": "0", "exponent": [1, 1]}, {"coeff": "0", "exponent": [0, 2]}],
         [{"coeff": "0", "exponent": [2, 0]}, {"coeff": "0", "exponent": [1, 1]}, {"coeff": "0", "exponent": [0, 2]},
          {"coeff": "0", "exponent": [1, 0]}, {"coeff": "0", "exponent": [0, 1]}, {"coeff": "0", "exponent": [0, 0]}]]
    data = {"schema": "tropbundles.trop/1",
            "algebra": {"monoid": {"variables": ["x", "y"], "relations": []},
                        "relations": [[{"coeff": "1", "monomial": [1, 0]}, {"coeff": "1", "monomial": [0, 1]},
                                       {"coeff": "1", "monomial": [0, 0]}]]},
            "queries": [q]}
    path = tmp_path / "q.json"
    path.write_text(json.dumps(data))
    assert cli.main(["trop", str(path), "--closure-bound", "0"]) == 3
    assert payload(capsys.readouterr().out)["result"]["queries"] == ["unknown-at-bound"]
    assert cli.main(["trop", str(path), "--closure-bound", "4"]) == 0
    assert payload(capsys.readouterr().out)["result"]["queries"] == ["equal"]


def test_invariant_failure_exits_4(monkeypatch, capsys):
    def broken(*_):
        raise InvariantError("forced")

    monkeypatch.setitem(cli.COMMANDS, "pic", broken)
    assert cli.main(["pic", "--preset", "P1"]) == 4
    assert payload(capsys.readouterr().out)["status"] == "error"
