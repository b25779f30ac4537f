import json

import pytest

from relctx.cli import CSV_HEADER, RunConfig, main, read_config_file

FAST = ["--p-nodes", "64", "--theta-nodes", "24", "--phi-nodes", "16"]


def data_rows(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    assert lines[0] == CSV_HEADER
    return [l.split(",") for l in lines[1:]]


def test_defaults_are_figure_parameters():
    cfg = RunConfig()
    assert (cfg.epsilon, cfg.mass) == (0.1, 1.0)
    assert (cfg.sigma_up, cfg.sigma_down, cfg.sigma_plus, cfg.sigma_minus) == (2.0, 4.0, 3.0, 6.0)
    assert cfg.grid.p_max == 49.0


def test_invalid_epsilon_names_field(capsys):
    assert main(["boost", "--epsilon", "1.5"]) == 1
    assert "epsilon" in capsys.readouterr().err


def test_unparseable_value(capsys):
    assert main(["sweep", "--zeta-steps", "many"]) == 1
    assert "zeta_steps" in capsys.readouterr().err


def test_boost_identity(capsys, tmp_path):
    out = tmp_path / "boost.json"
    assert main(["boost", "--zeta", "0", "--out", str(out), *FAST]) == 0
    report = json.loads(out.read_text())
    for entry in report["states"].values():
        assert entry["purity_tau"] == pytest.approx(1.0, abs=1e-10)
        assert entry["rho"] == entry["tau"]
    assert "purity tau = 1.000000" in capsys.readouterr().out


def test_boost_mixed(tmp_path):
    out = tmp_path / "boost.json"
    assert main(["boost", "--zeta", "1", "--out", str(out), *FAST]) == 0
    report = json.loads(out.read_text())
    for entry in report["states"].values():
        assert entry["purity_tau"] < 1
        assert abs(entry["trace_tau"] - 1) < 1e-8
        assert entry["min_eig_tau"] > 0
        assert entry["hermiticity_error"] == 0


def test_contextuality_rest_frame(tmp_path):
    out = tmp_path / "ctx.json"
    assert main(["contextuality", "--zeta", "0", "--out", str(out), *FAST]) == 0
    report = json.loads(out.read_text())
    assert report["rest"]["verdict"] == "contextual"
    assert report["rest"]["rank"] == 3
    assert report["frame"]["status"] == "singular"


def test_contextuality_spherical_preserved(tmp_path):
    out = tmp_path / "ctx.json"
    args = ["contextuality", "--zeta", "1", "--epsilon", "0", "--out", str(out), *FAST]
    args += [f"--sigma-{k}" for k in ("up",)] + ["3"]
    args += ["--sigma-down", "3", "--sigma-plus", "3", "--sigma-minus", "3"]
    assert main(args) == 0
    report = json.loads(out.read_text())
    assert report["boosted"]["rank"] == 3
    assert report["boosted"]["verdict"] == "contextual"


def test_discriminate(capsys):
    assert main(["discriminate", "--zeta", "0", *FAST]) == 0
    text = capsys.readouterr().out
    assert "p_success_four = 0.500000" in text
    assert "p_helstrom_two = 0.500000" in text


def test_sweep_row_count_and_rest_values(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--zeta-min", "0", "--zeta-max", "3", "--zeta-steps", "31", "--out", str(out), *FAST]) == 0
    rows = data_rows(out.read_text())
    assert len(rows) == 31
    assert rows[0][:3] == ["0.000000", "0.500000", "0.500000"]
    assert all(r[-1] == "ok" for r in rows)


def test_sweep_csv_format_and_config_echo(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--zetas", "0,1", "--out", str(out), *FAST]) == 0
    raw = out.read_bytes()
    assert b"\r\n" not in raw
    text = raw.decode("utf-8")
    assert "# epsilon = 0.1" in text and "# p_max = 49.0" in text and "# theta_nodes = 24" in text
    assert len(data_rows(text)) == 2


def test_sweep_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["sweep", "--zeta-steps", "4", "--out", str(path), *FAST]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_file_and_override(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# experiment\nepsilon = 0.2\nzeta-steps = 3\nzeta_max = 1\np_nodes = 64\ntheta_nodes = 24\nphi_nodes = 16\n")
    assert read_config_file(conf)["epsilon"] == 0.2
    assert main(["sweep", "--config", str(conf), "--epsilon", "0.05"]) == 0
    text = capsys.readouterr().out
    assert "# epsilon = 0.05" in text
    assert len(data_rows(text)) == 3


def test_unknown_config_key(tmp_path):
    conf = tmp_path / "bad.conf"
    conf.write_text("colour = red\n")
    assert main(["boost", "--config", str(conf)]) == 1


def test_missing_config_file(tmp_path):
    assert main(["boost", "--config", str(tmp_path / "nope.conf")]) == 3


def test_unwritable_output(tmp_path):
    assert main(["sweep", "--zeta-steps", "1", "--out", str(tmp_path / "no" / "x.csv"), *FAST]) == 3


def test_numerical_failure_exit_code(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--zeta-steps", "2", "--tol", "1e-14", "--out", str(out), *FAST]) == 2
    rows = data_rows(out.read_text())
    assert all("SolverError" in r[-1] for r in rows)
