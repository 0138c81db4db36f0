import json
import subprocess
import sys

import pytest

from sl4branch.cli import (EXIT_CHECK_FAILED, EXIT_GROUP, EXIT_INPUT, EXIT_OK, EXIT_TABLE,
                           EXIT_USAGE, SCHEMA, main)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info_typeII(capsys):
    code, out, _ = run(capsys, "info", "--group", "typeII")
    assert code == EXIT_OK
    assert "order 60, 5 classes, exponent 30" in out
    assert "class sizes: 1 15 20 12 12" in out


def test_info_trivial_and_cyclic4(capsys):
    _, out, _ = run(capsys, "info", "--group", "trivial")
    assert "order 1," in out
    _, out, _ = run(capsys, "info", "--group", "cyclic4", "--format", "json-like")
    doc = json.loads(out)
    assert doc["group"]["order"] == 4 and doc["group"]["exponent"] == 4


def test_series_trivial(capsys):
    code, out, _ = run(capsys, "series", "--group", "trivial", "--check-degree", "6")
    assert code == EXIT_OK
    assert out.count("P[chi_") == 1
    assert "[FAIL]" not in out and out.endswith("result: PASS\n")


def test_series_typeII_json(capsys):
    code, out, _ = run(capsys, "series", "--group", "typeII", "--format", "json-like")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA
    assert len(doc["series"]["coordinates"]) == 5
    assert doc["tensor_matrices"]["A1"][3] == [1, 1, 1, 1, 1]
    names = [c["name"] for c in doc["checks"]]
    assert any("schur_character" in n for n in names)
    assert any("cg_recurrence" in n for n in names)
    assert doc["passed"] and doc["exit_code"] == 0


def test_series_specialization(capsys):
    code, out, _ = run(capsys, "series", "--group", "typeII", "--specialize", "u=0,w=0",
                       "--no-oracles", "--no-key-relation", "--check-degree", "2")
    assert code == EXIT_OK
    assert ("P[chi_0](u=0, w=0) = (t^8 - t^6 + t^4 - t^2 + 1) / ((1 - t)^4*(1 + t)^2*"
            "(1 + t + t^2)*(1 + t + t^2 + t^3 + t^4))") in out
    assert "[PASS] invariant coordinate equals the Molien series" in out
    assert "oracle" not in out and "key relation" not in out


@pytest.mark.parametrize("group,expected", [
    ("trivial", "Molien series: (1) / ((1 - t)^4)"),
    ("typeII", "Molien series: (t^8 - t^6 + t^4 - t^2 + 1) /"),
])
def test_molien(capsys, group, expected):
    code, out, _ = run(capsys, "molien", "--group", group)
    assert code == EXIT_OK and expected in out


def test_molien_compare_cyclic4(capsys):
    code, out, _ = run(capsys, "molien", "--group", "cyclic4", "--compare")
    assert code == EXIT_OK
    assert "[PASS] Molien series equals P(t,0,0)_0" in out


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--group", "trivial")
    assert code == EXIT_OK and "[FAIL]" not in out


def test_verify_perturbed_table(capsys, tmp_path):
    from conftest import built
    from sl4branch.chartab import format_table
    path = tmp_path / "bad.tab"
    path.write_text(format_table(built("typeII").T).replace("5 ; 1 ; -1 ; 0 ; 0",
                                                             "5 ; 1 ; -1 ; 0 ; 1"))
    code, out, err = run(capsys, "verify", "--group", "typeII", "--table", str(path))
    assert code == EXIT_TABLE
    assert "orthogonality" in out and "orthogonality" in err
    assert out.endswith("result: FAIL\n")


def test_loaded_table_is_used(capsys, tmp_path):
    from conftest import built
    from sl4branch.chartab import save_table
    path = tmp_path / "good.tab"
    save_table(built("typeII").T, path)
    code, out, _ = run(capsys, "series", "--group", "typeII", "--table", str(path),
                       "--check-degree", "3")
    assert code == EXIT_OK and f"source: {path}" in out


def test_group_file_errors(capsys, tmp_path):
    bad_det = tmp_path / "det.grp"
    bad_det.write_text("2\n2,0,0,0; 0,1,0,0; 0,0,1,0; 0,0,0,1\n")
    code, _, err = run(capsys, "info", "--group", str(bad_det))
    assert code == EXIT_GROUP and "determinant" in err
    bad_syntax = tmp_path / "syn.grp"
    bad_syntax.write_text("2\n1,0,0,0; 0,1,0,0; 0,0,1,0; 0,0,0,E(\n")
    code, _, err = run(capsys, "info", "--group", str(bad_syntax))
    assert code == EXIT_INPUT and "syn.grp:2" in err


def test_group_file_pipeline(capsys, tmp_path):
    path = tmp_path / "minus.grp"
    path.write_text("2\n-1,0,0,0; 0,-1,0,0; 0,0,-1,0; 0,0,0,-1\n")
    code, out, _ = run(capsys, "verify", "--group", str(path), "--check-degree", "4")
    assert code == EXIT_OK
    assert "order 2, 2 classes" in out


@pytest.mark.parametrize("argv", [
    ["series", "--group", "nosuchgroup"],
    ["series", "--group", "trivial", "--specialize", "x=1"],
    ["series", "--group", "trivial", "--check-degree", "-1"],
    ["series", "--group", "trivial", "--threads", "0"],
    ["series", "--group", "trivial", "--format", "yaml"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_USAGE


def test_output_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["series", "--group", "cyclic4", "--format", "json-like", "--out", str(a)]) == 0
    assert main(["series", "--group", "cyclic4", "--format", "json-like", "--out", str(b),
                 "--threads", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""


def test_unwritable_output(tmp_path, capsys):
    code = main(["info", "--group", "trivial", "--out", str(tmp_path / "no" / "dir.txt")])
    assert code == 9


def test_check_failure_exit_code(monkeypatch, capsys):
    import sl4branch.cli as cli
    monkeypatch.setattr(cli, "equal", lambda a, b: False)
    code, out, _ = run(capsys, "molien", "--group", "trivial", "--compare")
    assert code == EXIT_CHECK_FAILED and "[FAIL]" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sl4branch", "info", "--group", "trivial"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "order 1," in proc.stdout
