from __future__ import annotations

import json

import pytest

from cosetlab.cli import main


def run_cli(argv):
    try:
        return main(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)


def read_json(capsys):
    out = capsys.readouterr().out
    return json.loads(out)


def test_dist_golden_s3(tmp_path, capsys):
    rc = run_cli(["dist", "--group", "s3", "--subgroup", "[(12)]", "--out", str(tmp_path)])
    assert rc == 0
    body = read_json(capsys)
    assert body["ok"] is True
    rep = body["report"]
    assert abs(rep["distinguishability"] - 1 / 3) < 1e-10
    weak = rep["weak_distribution"]
    assert abs(weak["(3,)"] - 1 / 3) < 1e-10
    assert abs(weak["(2, 1)"] - 2 / 3) < 1e-10
    assert abs(weak["(1, 1, 1)"]) < 1e-10
    assert (tmp_path / "dist_report.json").exists()
    csv_lines = (tmp_path / "dist_weak.csv").read_text().strip().splitlines()
    assert csv_lines[0] == "irrep,dim,weak_probability,mean_l1sq"
    assert len(csv_lines) == 4


def test_dist_reports_are_byte_identical(tmp_path, capsys):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    assert run_cli(["dist", "--group", "s3", "--subgroup", "[(12)]", "--seed", "5", "--out", str(d1)]) == 0
    assert run_cli(["dist", "--group", "s3", "--subgroup", "[(12)]", "--seed", "5", "--out", str(d2)]) == 0
    capsys.readouterr()
    assert (d1 / "dist_report.json").read_bytes() == (d2 / "dist_report.json").read_bytes()
    assert (d1 / "dist_weak.csv").read_bytes() == (d2 / "dist_weak.csv").read_bytes()


def test_dist_with_subgroup_file(tmp_path, capsys):
    sub = tmp_path / "sub.json"
    sub.write_text('{"generators": []}')
    rc = run_cli(["dist", "--group", "s3", "--subgroup", str(sub)])
    assert rc == 0
    body = read_json(capsys)
    assert body["report"]["subgroup_order"] == 1
    assert body["report"]["distinguishability"] < 1e-10


def test_dist_with_linear_small_set(capsys):
    rc = run_cli(["dist", "--group", "gl2_3", "--subgroup", "unipotent", "--S", "linear", "--D", "2"])
    assert rc == 0
    body = read_json(capsys)
    assert body["ok"] is True
    bound = body["report"]["bound"]
    assert bound["S"] == ["U0", "U1"]
    assert body["report"]["distinguishability"] <= bound["value"]


def test_chartable_gl2_summary(tmp_path, capsys):
    rc = run_cli(["chartable", "gl2", "--q", "3", "--out", str(tmp_path)])
    assert rc == 0
    body = read_json(capsys)
    assert body["n_irreps"] == 8
    assert body["sum_of_squares"] == 48
    assert body["family_counts"] == {"U": 2, "V": 2, "W": 1, "X": 3}
    assert body["orthogonality_error"] < 1e-9
    lines = (tmp_path / "chartable.csv").read_text().strip().splitlines()
    assert len(lines) == 9
    cells = lines[1].split(",")
    assert cells[1].endswith("i")


def test_chartable_other_kinds(tmp_path, capsys):
    assert run_cli(["chartable", "sn", "--n", "4", "--out", str(tmp_path)]) == 0
    assert run_cli(["chartable", "wreath", "--base", "s3", "--out", str(tmp_path)]) == 0
    capsys.readouterr()


def test_dims_factorial(capsys):
    rc = run_cli(["dims", "sn", "--n", "6"])
    assert rc == 0
    body = read_json(capsys)
    assert body["ok"] is True
    assert body["factorial"] == 720
    assert sum(d * d for d in body["dims"].values()) == 720


def test_lambda_audit(capsys):
    rc = run_cli(["lambda-audit", "--n", "8", "--c", "1/6"])
    assert rc == 0
    body = read_json(capsys)
    assert body["ok"] is True
    assert body["audit"]["size"] == 4


def test_lambda_audit_bad_fraction():
    assert run_cli(["lambda-audit", "--n", "6", "--c", "zebra"]) == 2


def test_roichman(capsys):
    rc = run_cli(["roichman", "--n", "5", "--c", "1/6"])
    assert rc == 0
    body = read_json(capsys)
    assert body["report"]["rows"]


def test_goppa_roundtrip(tmp_path, capsys):
    rc = run_cli([
        "goppa", "build", "--q", "5", "--gamma", "0,1,2,3", "--r", "1",
        "--out", str(tmp_path),
    ])
    assert rc == 0
    build = read_json(capsys)
    assert build["ok"] is True
    assert build["k"] == 2 and build["n"] == 4
    assert build["min_distance"] == 3
    spec_path = str(tmp_path / "goppa_build.json")
    assert run_cli(["goppa", "aut", "--spec", spec_path, "--out", str(tmp_path)]) == 0
    aut = read_json(capsys)
    assert aut["order"] == 4 and aut["minimal_degree"] == 4
    assert run_cli(["goppa", "check", "--spec", spec_path, "--out", str(tmp_path)]) == 0
    check = read_json(capsys)
    assert check["ok"] is True and check["failed_check"] is None


def test_goppa_build_rejects_bad_spec():
    assert run_cli(["goppa", "build", "--q", "5", "--gamma", "0,0,1", "--r", "1"]) == 2


def test_mceliece_gen_and_attack(tmp_path, capsys):
    rc = run_cli([
        "mceliece", "gen", "--q", "2", "--k", "2", "--n", "3", "--seed", "3",
        "--out", str(tmp_path),
    ])
    assert rc == 0
    capsys.readouterr()
    inst_path = str(tmp_path / "mceliece_instance.json")
    rc = run_cli(["mceliece", "attack", "--instance", inst_path, "--out", str(tmp_path)])
    assert rc == 0
    body = json.loads((tmp_path / "mceliece_attack.json").read_text())
    assert body["ok"] is True
    assert body["failed_check"] is None
    capsys.readouterr()


def test_mceliece_attack_tampered_instance(tmp_path, capsys):
    assert run_cli([
        "mceliece", "gen", "--q", "2", "--k", "2", "--n", "3", "--seed", "4",
        "--out", str(tmp_path),
    ]) == 0
    capsys.readouterr()
    obj = json.loads((tmp_path / "mceliece_instance.json").read_text())
    obj["instance"]["Mstar"][0][0] ^= 1
    bad = tmp_path / "tampered.json"
    bad.write_text(json.dumps(obj))
    rc = run_cli(["mceliece", "attack", "--instance", str(bad)])
    assert rc == 1
    body = read_json(capsys)
    assert body["ok"] is False
    assert "error" in body


def test_mceliece_attack_requires_instance():
    assert run_cli(["mceliece", "attack"]) == 2


def test_verify_lemmas_small(tmp_path, capsys):
    rc = run_cli(["verify-lemmas", "--suite", "small", "--out", str(tmp_path)])
    assert rc == 0
    body = read_json(capsys)
    assert body["ok"] is True
    assert body["checks"] > 100
    assert all(v["failures"] == 0 for v in body["by_check"].values())


def test_unknown_group_spec_exits_config_error():
    assert run_cli(["dist", "--group", "qq7", "--subgroup", "trivial"]) == 2


def test_unknown_subgroup_spec_exits_config_error():
    assert run_cli(["dist", "--group", "s3", "--subgroup", "nonsense"]) == 2


def test_unknown_suite_is_config_error():
    assert run_cli(["verify-lemmas", "--suite", "giant"]) == 2


def test_version_flag(capsys):
    rc = run_cli(["--version"])
    assert rc == 0
    assert capsys.readouterr().out.strip()
