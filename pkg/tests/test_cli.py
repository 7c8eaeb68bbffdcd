import json
import subprocess
import sys
from pathlib import Path

import pytest

from coherentpairs import cli

PKG = Path(__file__).resolve().parents[1]
CONFIGS = PKG / "src" / "coherentpairs" / "configs"
GOLDEN = Path(__file__).resolve().parent / "golden"

BUNDLED = ["jacobi10_pair", "laguerre2_pair",
           "jacobi_companion_sq", "jacobi_companion_sym"]


def run_cli(args):
    proc = subprocess.run([sys.executable, "-m", "coherentpairs.cli", *args],
                          capture_output=True, text=True)
    return proc


class TestGolden:
    @pytest.mark.parametrize("name", BUNDLED)
    def test_bundled_config_matches_golden(self, name, tmp_path):
        out = tmp_path / "out.json"
        proc = run_cli(["--config", str(CONFIGS / f"{name}.json"),
                        "--out", str(out)])
        assert proc.returncode == 0, proc.stderr
        assert out.read_bytes() == (GOLDEN / f"{name}.json").read_bytes()

    def test_byte_stable_across_runs(self, tmp_path):
        cfg = CONFIGS / "jacobi10_pair.json"
        one = tmp_path / "one.json"
        two = tmp_path / "two.json"
        assert run_cli(["--config", str(cfg), "--out", str(one)]).returncode == 0
        assert run_cli(["--config", str(cfg), "--out", str(two)]).returncode == 0
        assert one.read_bytes() == two.read_bytes()


class TestCommands:
    def test_moments_table(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "command": "moments", "depth": 4,
            "functional": {"family": "hermite", "a0": "1"}}))
        proc = run_cli(["--config", str(cfg)])
        assert proc.returncode == 0
        rows = json.loads(proc.stdout)["rows"]
        assert rows[4] == {"n": 4, "a_n": "3/4"}

    def test_recurrence_conventions(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "command": "recurrence", "depth": 3, "convention": "flip",
            "functional": {"family": "laguerre", "alpha": "2", "a0": "2"}}))
        proc = run_cli(["--config", str(cfg)])
        rows = json.loads(proc.stdout)["rows"]
        assert rows[1]["b_n"] == "5/1"
        assert rows[1]["c_n"] == "-3/1"

    def test_csv_output_quotes_cells(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "command": "moments", "depth": 2,
            "functional": {"family": "hermite", "a0": "1"}}))
        proc = run_cli(["--config", str(cfg), "--format", "csv"])
        assert proc.returncode == 0
        lines = proc.stdout.splitlines()
        assert lines[0] == '"n","a_n"'
        assert lines[1] == '"0","1/1"'

    def test_depth_override(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "command": "moments", "depth": 9,
            "functional": {"family": "hermite", "a0": "1"}}))
        proc = run_cli(["--config", str(cfg), "--depth", "2"])
        assert len(json.loads(proc.stdout)["rows"]) == 3

    def test_sobolev_records(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "command": "sobolev", "depth": 5, "lambda": "1/3",
            "u0": {"family": "laguerre", "alpha": "1", "a0": "1"},
            "u1": {"family": "laguerre", "alpha": "1", "a0": "1"}}))
        proc = run_cli(["--config", str(cfg)])
        report = json.loads(proc.stdout)
        assert report["coherent"] is True
        assert report["records"][2]["sigma_t"] == "-3/1"
        assert all(rec["relation_holds"] for rec in report["records"])

    def test_verify_ok(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "command": "verify", "depth": 12,
            "u": {"family": "jacobi", "alpha": "2", "beta": "1", "a0": "4/3"},
            "A": ["1", "-2", "1"], "D": ["1", "2", "1"],
            "m0": "7/3", "m1": "1/2"}))
        proc = run_cli(["--config", str(cfg)])
        report = json.loads(proc.stdout)
        assert proc.returncode == 0
        assert report["ok"] is True
        assert set(report["residuals"]) == {"0/1"}


class TestExitCodes:
    def test_config_error_unknown_key(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"command": "moments", "bogus": 1,
                                   "functional": {"family": "hermite"}}))
        proc = run_cli(["--config", str(cfg)])
        assert proc.returncode == 2
        assert json.loads(proc.stdout)["error"]["type"] == "ConfigError"

    def test_config_error_bad_json(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("{not json")
        assert run_cli(["--config", str(cfg)]).returncode == 2

    def test_math_domain_error(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "command": "recurrence", "depth": 3,
            "functional": {"moments": ["1", "0", "0", "0", "0", "0", "0", "0"]}}))
        proc = run_cli(["--config", str(cfg)])
        assert proc.returncode == 3
        record = json.loads(proc.stdout)["error"]
        assert record["type"] == "QuasiDefiniteViolation"
        assert record["index"] == 1

    def test_verification_failure(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "command": "verify", "depth": 8,
            "u": {"family": "jacobi", "alpha": "2", "beta": "1", "a0": "4/3"},
            "A": ["1", "-2", "1"], "D": ["1", "2", "1"],
            "u1": {"family": "hermite", "a0": "1"}}))
        proc = run_cli(["--config", str(cfg)])
        assert proc.returncode == 4
        assert json.loads(proc.stdout)["ok"] is False

    def test_in_process_entry_point(self, tmp_path):
        out = tmp_path / "o.json"
        code = cli.main(["--config", str(CONFIGS / "jacobi_companion_sym.json"),
                         "--out", str(out)])
        assert code == 0
        assert json.loads(out.read_text())["identity_holds"] is True
