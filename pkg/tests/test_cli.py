import json

import pytest

from burnfuse.burnside import basis, single
from burnfuse.cli import Config, read_config_file, run
from burnfuse.errors import InputError
from burnfuse.groups import parse_group
from burnfuse.serialize import dump_json, element_to_json


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_basis_rows(capsys):
    code, out, _ = invoke(capsys, "basis", "C2", "C2")
    assert code == 0
    assert "3 classes" in out


def test_idempotent_closed_form(capsys):
    code, out, _ = invoke(capsys, "idempotent", "S3", "--p", "3", "--k", "4")
    assert code == 0
    assert out.count("41 mod 3^4") == 2


def test_counterexample_reports_value(capsys):
    code, out, _ = invoke(capsys, "verify", "counterexample", "C3", "--p", "2")
    assert code == 0
    assert "PASS" in out
    assert "3 mod 2^" in out


def test_output_deterministic(capsys):
    _, first, _ = invoke(capsys, "basis", "S3", "S3")
    _, second, _ = invoke(capsys, "basis", "S3", "S3")
    assert first == second
    _, j1, _ = invoke(capsys, "--format", "json", "stable-basis", "S3", "S3",
                      "--p", "3", "--k", "3")
    _, j2, _ = invoke(capsys, "--format", "json", "stable-basis", "S3", "S3",
                      "--p", "3", "--k", "3")
    assert j1 == j2


def test_compose_and_json_round_trip(tmp_path, capsys):
    S3 = parse_group("S3")
    x = single(basis(S3, S3)[1])
    path = tmp_path / "x.json"
    path.write_text(dump_json(element_to_json(x)), encoding="utf-8")
    code, out, _ = invoke(capsys, "--format", "json", "compose",
                          str(path), str(path))
    assert code == 0
    data = json.loads(out)
    assert data["source"] == "S3" and data["target"] == "S3"
    # loader accepts what the CLI emits
    path2 = tmp_path / "y.json"
    path2.write_text(out, encoding="utf-8")
    code2, out2, _ = invoke(capsys, "--format", "json", "compose",
                            str(path2), str(path))
    assert code2 == 0


def test_restrict_and_complete(tmp_path, capsys):
    S3 = parse_group("S3")
    path = tmp_path / "id.json"
    path.write_text(dump_json(element_to_json(single(basis(S3, S3)[2]))),
                    encoding="utf-8")
    code, out, _ = invoke(capsys, "restrict", str(path), "--p", "2")
    assert code == 0
    code, out, _ = invoke(capsys, "complete", str(path), "--p", "2", "--k", "4")
    assert code == 0
    assert "stable element" in out


def test_verify_sum_and_functor(capsys):
    code, out, _ = invoke(capsys, "verify", "sum", "S3", "--kmax", "2")
    assert code == 0
    assert "=> PASS" in out
    code, out, _ = invoke(capsys, "verify", "functor", "S3", "S3", "S3",
                          "--p", "2", "--pairs", "3")
    assert code == 0


def test_verify_sum_failure_exit_code(tmp_path, monkeypatch, capsys):
    # an impossible schedule cap forces reported exhaustion and exit 1
    monkeypatch.chdir(tmp_path)
    (tmp_path / "burnfuse.toml").write_text(
        "schedule_cap = 0\n", encoding="utf-8")
    code, out, _ = invoke(capsys, "verify", "sum", "S3", "--kmax", "3")
    assert code == 1
    assert "FAIL" in out


def test_input_errors_exit_two(tmp_path, capsys):
    code, _, err = invoke(capsys, "basis", "Z9", "C2")
    assert code == 2
    assert "error" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code, _, err = invoke(capsys, "compose", str(bad), str(bad))
    assert code == 2
    code, _, err = invoke(capsys, "idempotent", "S3", "--p", "4")
    assert code == 2
    code, _, err = invoke(capsys, "verify", "counterexample", "C4", "--p", "2")
    assert code == 2


def test_splitting_command(capsys):
    code, out, _ = invoke(capsys, "splitting", "S3", "--p", "3", "--n", "1")
    assert code == 0
    assert "32" in out


def test_config_file(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "burnfuse.toml").write_text(
        "precision = 5\nseed = 1  # comment\n", encoding="utf-8")
    cfg = read_config_file()
    assert cfg == {"precision": 5, "seed": 1}
    code, out, _ = invoke(capsys, "idempotent", "S3", "--p", "3")
    assert code == 0
    assert "mod 3^5" in out
    (tmp_path / "burnfuse.toml").write_text("nonsense = 3\n", encoding="utf-8")
    code, _, err = invoke(capsys, "idempotent", "S3", "--p", "3")
    assert code == 2


def test_config_validation():
    with pytest.raises(InputError):
        Config(precision=0)
    with pytest.raises(InputError):
        Config(order_cap=1)


def test_invert_unit_command(capsys):
    code, out, _ = invoke(capsys, "invert-unit", "S3", "--p", "3", "--k", "4")
    assert code == 0
    assert out.count("61 mod 3^4") == 2


def test_verify_counterexample_json_envelope(capsys):
    code, out, _ = invoke(capsys, "--format", "json", "verify",
                          "counterexample", "C3", "--p", "2")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True


def test_verify_all_gate(capsys):
    code, out, _ = invoke(capsys, "--format", "json", "verify", "all")
    assert code == 0
    data = json.loads(out)
    assert len(data["criteria"]) == 10
    assert all(c["passed"] for c in data["criteria"])
