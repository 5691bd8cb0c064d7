import json

import pytest

from green_bounds.report import from_json


def test_bound_json(cli, capsys) -> None:
    assert cli.main(["bound", "--format", "json", "--log-level", "warning"]) == 0
    out = capsys.readouterr().out
    document = json.loads(out)
    assert document["schema"] == 1
    assert document["kind"] == "bound_report"
    assert document["provenance"] == "paper"
    assert document["theorem"]["statement"] == "1.6·10^4 + 7.7n + 0.088n^2"
    assert document["regime_a_hi"] == pytest.approx(16144.2, abs=0.1)
    assert document["display"]["regime_a_hi"] == "16200"
    assert document["display"]["regime_a_lo"] == "-30500"
    report = from_json(out)
    assert report.group == "gamma0(11)"
    assert report.regime_a.hi == document["regime_a_hi"]


def test_bound_text(cli, capsys) -> None:
    assert cli.main(["bound", "--level", "37", "--use-genus"]) == 0
    out = capsys.readouterr().out
    assert "BOUND REPORT (paper)" in out
    assert "Group gamma0(37)" in out
    assert "sup gr^can <=" in out


def test_output_file(cli, capsys, tmp_path) -> None:
    path = tmp_path / "report.json"
    assert cli.main(["bound", "--format", "json", "--output", str(path)]) == 0
    assert json.loads(path.read_text(encoding="utf-8")) == json.loads(capsys.readouterr().out)


def test_config_file_with_flag_override(cli, capsys, tmp_path) -> None:
    path = tmp_path / "run.conf"
    path.write_text("level = 37\noutput_format = json\n", encoding="utf-8")
    assert cli.main(["bound", "--config", str(path), "--level", "11"]) == 0
    assert json.loads(capsys.readouterr().out)["group"] == "gamma0(11)"


@pytest.mark.parametrize(
    "argv",
    [
        ["bound", "--level", "10"],
        ["bound", "--family", "gamma1", "--level", "5"],
        ["fsup", "--level", "10", "--use-genus"],
    ],
)
def test_genus_zero_exit_code(cli, capsys, argv) -> None:
    assert cli.main(argv) == 3
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bound", "--grid", "0.2"],
        ["bound", "--family", "hecke"],
        ["bound", "--A", "1", "--B", "0"],
        ["shc", "--a", "0.5"],
    ],
)
def test_usage_exit_code(cli, capsys, argv) -> None:
    assert cli.main(argv) == 2


def test_shc_json(cli, capsys) -> None:
    assert cli.main(["shc", "--a", "2.0", "--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["kind"] == "shc_transform"
    assert document["transform"] == pytest.approx(document["closed_form"], abs=1e-8)
    assert document["legendre_at_a"] == pytest.approx(2.0 / 3.0)


def test_fsup_text(cli, capsys) -> None:
    assert cli.main(["fsup", "--level", "100"]) == 0
    out = capsys.readouterr().out
    assert "F BOUND (paper)" in out
    assert "sup_X" in out


def test_count_json(cli, capsys) -> None:
    argv = ["count", "--b", "17", "--grid", "0.05", "--oracle-samples", "2", "--format", "json"]
    assert cli.main(argv) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["kind"] == "count_certificate"
    assert document["certified_sup"] >= max(document["max_sample"], 196)
    assert document["oracle_checked"] == 2
    assert document["delta"] == 2.0


def test_count_follows_delta(cli, capsys) -> None:
    argv = ["count", "--b", "3.1472", "--grid", "0.05", "--delta", "3", "--oracle-samples", "0", "--format", "json"]
    assert cli.main(argv) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["delta"] == 3.0
    # 118 translates of 14i lie within 3.1472
    assert document["certified_sup"] >= 118


def test_selftest(cli, capsys) -> None:
    assert cli.main(["selftest", "--log-level", "ERROR"]) == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out
    assert "14/14 golden checks passed" in out
