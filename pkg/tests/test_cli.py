import json
import warnings

import numpy as np
import pytest

from dment import cli
from dment.scan import Axis, SweepGrid, run_sweep
from dment.sweep_io import read_sweep_csv, sweep_csv_text

S3 = "0.5773502691896258"
SYM_W = f"{S3},{S3},{S3}"


def run_cli(argv):
    try:
        return cli.main(argv)
    except SystemExit as exc:  # argparse validation failures
        return exc.code


class TestVersion:
    def test_text(self, capsys):
        assert run_cli(["version"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("dment 0.1.0")
        assert "doubled" in out

    def test_json(self, capsys):
        assert run_cli(["version", "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["name"] == "dment"


class TestMeasure:
    def test_symmetric_w(self, capsys):
        code = run_cli(["measure", "--family", "w", "--w", SYM_W, "--theta", "0"])
        assert code == 0
        lines = dict(line.split(" = ") for line in capsys.readouterr().out.splitlines())
        assert abs(float(lines["three_pi"]) - 0.549364) < 1e-5

    def test_ghz_json(self, capsys):
        code = run_cli(["measure", "--family", "ghz",
                        "--g", "0.7071067812,0.7071067812",
                        "--theta", "5.0", "--normalize", "--format", "json"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert abs(doc["report"]["three_pi"] - 1.0) < 1e-10

    def test_product_state_all_zero(self, capsys):
        code = run_cli(["measure", "--family", "w", "--w", "1,0,0", "--theta", "0.3"])
        assert code == 0
        lines = dict(line.split(" = ") for line in capsys.readouterr().out.splitlines())
        assert all(abs(float(v)) < 1e-12 for v in lines.values())

    def test_unnormalized_rejected(self, capsys):
        code = run_cli(["measure", "--family", "w", "--w", "0.577,0.577,0.577"])
        assert code == 2
        assert "w_state" in capsys.readouterr().err

    def test_missing_state_params(self, capsys):
        assert run_cli(["measure", "--family", "w"]) == 2

    def test_complex_environment_flag(self, capsys):
        code = run_cli(["measure", "--family", "w", "--w", SYM_W, "--theta", "0.7",
                        "--env", "0.7071067812,0,0,0.7071067812", "--normalize"])
        assert code == 0
        with_default = run_cli(["measure", "--family", "w", "--w", SYM_W,
                                "--theta", "0.7", "--normalize"])
        assert with_default == 0
        lines = capsys.readouterr().out.strip().split("\n")
        half = len(lines) // 2
        for custom_env, default_env in zip(lines[:half], lines[half:]):
            assert custom_env.split(" = ")[0] == default_env.split(" = ")[0]
            # the environment state drops out of every measure
            assert abs(float(custom_env.split(" = ")[1])
                       - float(default_env.split(" = ")[1])) < 1e-12


class TestSweep:
    def test_stdout_matches_direct_run(self, capsys):
        code = run_cli(["sweep", "--family", "w", "--w", SYM_W,
                        "--theta-range", "0:0.8:0.1"])
        assert code == 0
        out = capsys.readouterr().out
        grid = SweepGrid(family="w", theta=Axis(0.0, 0.8, 0.1),
                         w1=Axis.fixed(float(S3)), w2=Axis.fixed(float(S3)))
        assert out == sweep_csv_text(run_sweep(grid))

    def test_out_file_and_sidecar(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        code = run_cli(["sweep", "--family", "w", "--w2", "0.8",
                        "--w1-range", "0.3:0.6:0.01", "--theta", "0.55",
                        "--esd-tolerance", "0.002", "--out", str(out)])
        assert code == 0
        rows = read_sweep_csv(out.read_text())
        assert len(rows) == 31
        sidecar = json.loads((tmp_path / "sweep.csv.sidecar.json").read_text())
        assert sidecar["schema"] == 1
        assert any(i["measure"] == "n_ac" and i["lo"] <= 0.4 and i["hi"] >= 0.5
                   for i in sidecar["esd_intervals"])

    def test_json_format(self, tmp_path):
        out = tmp_path / "sweep.json"
        code = run_cli(["sweep", "--family", "ghz", "--g", "0.8,0.6",
                        "--theta-range", "0:1:0.5", "--format", "json",
                        "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert len(doc["rows"]) == 3
        first = doc["rows"][0]
        assert all(row["three_pi"] == first["three_pi"] for row in doc["rows"])

    def test_g0_range(self, capsys):
        code = run_cli(["sweep", "--family", "ghz", "--g0-range", "0:1:0.25",
                        "--theta", "0.5"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 6

    def test_reversed_range_rejected(self, capsys):
        assert run_cli(["sweep", "--family", "w", "--w", SYM_W,
                        "--theta-range", "1:0:0.1"]) == 2

    def test_empty_grid_rejected(self, capsys):
        code = run_cli(["sweep", "--family", "w", "--w2", "0.9",
                        "--w1-range", "0.9:0.95:0.01", "--theta", "0.1"])
        assert code == 2
        assert "admissible" in capsys.readouterr().err

    def test_unwritable_out(self, tmp_path, capsys):
        blocker = tmp_path / "blocker"
        blocker.write_text("file, not a directory")
        code = run_cli(["sweep", "--family", "w", "--w", SYM_W, "--theta", "0",
                        "--out", str(blocker / "sub" / "x.csv")])
        assert code == 3

    def test_jobs_env_fallback(self, capsys, monkeypatch):
        argv = ["sweep", "--family", "w", "--w", SYM_W, "--theta-range", "0:0.2:0.1"]
        assert run_cli(argv) == 0
        serial = capsys.readouterr().out
        monkeypatch.setenv("DMENT_JOBS", "2")
        assert run_cli(argv) == 0
        assert capsys.readouterr().out == serial


class TestRepro:
    def test_symmetric_table(self, tmp_path, capsys):
        code = run_cli(["repro", "table-symmetric-w", "--out", str(tmp_path),
                        "--seed", "7"])
        assert code == 0
        rows = read_sweep_csv((tmp_path / "table-symmetric-w.csv").read_text())
        assert len(rows) == 9
        expected = [0.549364, 0.471871, 0.281458, 0.0819103, 0.000557363,
                    0.106773, 0.312717, 0.492105, 0.547631]
        got = [row["three_pi"] for row in rows]
        assert np.abs(np.array(got) - expected).max() < 1e-3
        manifest = json.loads((tmp_path / "MANIFEST.json").read_text())
        assert manifest["negativity_convention"] == "doubled"
        assert manifest["seed"] == 7
        assert manifest["version"]

    def test_convention_changes_manifest(self, tmp_path):
        run_cli(["repro", "table-symmetric-w", "--out", str(tmp_path / "a")])
        run_cli(["repro", "table-symmetric-w", "--out", str(tmp_path / "b"),
                 "--negativity-convention", "raw"])
        a = json.loads((tmp_path / "a" / "MANIFEST.json").read_text())
        b = json.loads((tmp_path / "b" / "MANIFEST.json").read_text())
        assert a["negativity_convention"] != b["negativity_convention"]

    def test_unknown_target(self, capsys):
        assert run_cli(["repro", "not-a-target"]) == 2
        assert "not-a-target" in capsys.readouterr().err


class TestServerMode:
    @pytest.fixture
    def http_client(self, monkeypatch):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            from fastapi.testclient import TestClient
        from dment.server import app
        test_client = TestClient(app)

        def fake_post(url, json=None, timeout=None):
            return test_client.post(url.removeprefix("http://svc"), json=json)

        def fake_get(url, timeout=None):
            return test_client.get(url.removeprefix("http://svc"))

        monkeypatch.setattr(cli.httpx, "post", fake_post)
        monkeypatch.setattr(cli.httpx, "get", fake_get)

    def test_measure_over_http_matches_local(self, http_client, capsys):
        argv = ["measure", "--family", "w", "--w", SYM_W, "--theta", "0.4"]
        assert run_cli(argv) == 0
        local = capsys.readouterr().out
        assert run_cli(argv + ["--server", "http://svc"]) == 0
        assert capsys.readouterr().out == local

    def test_version_over_http(self, http_client, capsys):
        assert run_cli(["version", "--server", "http://svc"]) == 0
        assert "dment" in capsys.readouterr().out

    def test_sweep_over_http_matches_local(self, http_client, capsys):
        argv = ["sweep", "--family", "ghz", "--g", "0.8,0.6",
                "--theta-range", "0:0.4:0.2"]
        assert run_cli(argv) == 0
        local = capsys.readouterr().out
        assert run_cli(argv + ["--server", "http://svc"]) == 0
        assert capsys.readouterr().out == local

    def test_repro_over_http(self, http_client, tmp_path):
        code = run_cli(["repro", "table-symmetric-w", "--out", str(tmp_path),
                        "--server", "http://svc"])
        assert code == 0
        assert (tmp_path / "table-symmetric-w.csv").exists()
        assert (tmp_path / "MANIFEST.json").exists()

    def test_domain_error_maps_to_exit_2(self, http_client, capsys):
        code = run_cli(["measure", "--family", "w", "--w", "0.577,0.577,0.577",
                        "--server", "http://svc"])
        assert code == 2
