import io
import json

import pytest

from pebbling import cli
from pebbling.board import ResourceLimitError
from pebbling.report import CheckResult, VerificationReport


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sequence_csv(capsys):
    code, out, _ = run(["sequence", "--k-max", "7", "--format", "csv"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k,G"
    assert lines[1:] == ["2,1", "3,2", "4,4", "5,9", "6,20", "7,46"]


def test_table_rows_respect_m_max(capsys):
    code, out, _ = run(["table", "--k-max", "12", "--m-max", "1", "--format", "json"], capsys)
    rows = json.loads(out)
    assert code == 0
    assert {r["m"] for r in rows} == {0, 1}
    assert {"k": 7, "m": 1, "G": 6} in rows


def test_json_big_integers_are_strings(capsys):
    code, out, _ = run(["sequence", "--k-max", "80", "--format", "json"], capsys)
    rows = json.loads(out)
    last = rows[-1]
    assert code == 0 and last["k"] == 80
    assert isinstance(last["G"], str) and int(last["G"]) > 2**63
    assert isinstance(rows[0]["G"], int)


def test_default_format_not_tty_is_json(capsys):
    code, out, _ = run(["w0", "--l-max", "5"], capsys)
    assert code == 0
    assert json.loads(out) == [{"l": 2, "W0": 1}, {"l": 3, "W0": 2}, {"l": 4, "W0": 6}, {"l": 5, "W0": 15}]


def test_text_format(capsys):
    code, out, _ = run(["w0", "--l-max", "3", "--format", "text"], capsys)
    assert code == 0
    assert out.split() == ["l", "W0", "2", "1", "3", "2"]


def test_constants(capsys):
    code, out, _ = run(["constants", "--digits", "15", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["z_star"] == "0.430729593137930"
    assert data["a"].startswith("2.32164219949")
    assert data["c_star"].startswith("0.1226870")


def test_enumerate_matches(capsys):
    code, out, _ = run(["enumerate", "--m-max", "1", "--max-steps", "5", "--format", "json"], capsys)
    rows = json.loads(out)
    assert code == 0
    assert all(r["match"] for r in rows)
    assert [r["bfs"] for r in rows if r["m"] == 0][:6] == [1, 2, 4, 9, 20, 46]


def test_asymptotic(capsys):
    code, out, _ = run(["asymptotic", "--k-max", "100", "--ks", "50,100", "--format", "json"], capsys)
    rows = json.loads(out)
    assert code == 0
    assert all(r["ok"] for r in rows)
    assert len(rows) == 4


def test_verify_passes(capsys):
    code, out, _ = run(["verify", "--k-max", "40", "--order", "60", "--digits", "20",
                        "--max-steps", "7", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_verify_failure_exit_one(capsys, monkeypatch):
    bad = VerificationReport("fake", [CheckResult("broken", False, "x", first_failure=17)])
    monkeypatch.setattr(cli, "run_all", lambda **kw: bad)
    monkeypatch.setattr(cli, "refinement_check", lambda policy: VerificationReport("none"))
    code, _, err = run(["verify", "--format", "json"], capsys)
    assert code == 1
    assert "first counterexample" in err and "broken" in err


def test_enumerate_resource_limit_exit_three(capsys, monkeypatch):
    def limited(m, steps):
        raise ResourceLimitError("too many states", counts={2: 1, 3: 2}, last_complete=3)

    monkeypatch.setattr(cli, "enumerate_counts", limited)
    code, out, err = run(["enumerate", "--format", "csv"], capsys)
    assert code == 3
    assert out.splitlines()[1:] == ["0,2,1,1,True", "0,3,2,2,True"]
    assert "partial results" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["sequence", "--k-max", "-3"],
        ["sequence", "--k-max", "1"],
        ["w0", "--l-max", "1"],
        ["constants", "--digits", "0"],
        ["table", "--format", "xml"],
        ["nonsense"],
        ["asymptotic", "--k-max", "50", "--ks", "60"],
        ["asymptotic", "--ks", "a,b"],
        ["verify", "--digits", "10"],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_output_file(tmp_path, capsys):
    path = tmp_path / "seq.csv"
    code, out, _ = run(["sequence", "--k-max", "5", "--format", "csv", "--out", str(path)], capsys)
    assert code == 0 and out == ""
    assert path.read_text() == "k,G\n2,1\n3,2\n4,4\n5,9\n"


def test_output_deterministic():
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        cli.run(cli.RunConfig("table", k_max=40, output_format="csv"), stdout=buf)
        outs.append(buf.getvalue().encode())
    assert outs[0] == outs[1]
