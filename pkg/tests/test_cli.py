"""Command-line interface: argument handling, output formats, exit codes."""
import json
import subprocess
import sys

import numpy as np
import pytest

import treenodal as tn
from treenodal import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestGenerate:
    def test_json_round_trips_through_the_parser(self, capsys):
        code, out = run_cli(
            capsys, "generate", "--generate", "random",
            "--n", "7", "--weights", "uniform:0.5:2", "--seed", "5",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["run_config"]["command"] == "generate"
        assert doc["run_config"]["seed"] == 5
        tree, potential = tn.from_json(out)   # extra keys are ignored
        assert tree.n == 7
        assert np.array_equal(potential, np.zeros(7))

    def test_seeded_potential_is_recorded(self, capsys):
        _, out = run_cli(
            capsys, "generate", "--generate", "path", "--n", "3",
            "--potential", "uniform:-1:1", "--seed", "9",
        )
        _, potential = tn.from_json(out)
        # potential stream is decoupled from the weight stream
        assert np.array_equal(potential, tn.random_potential(3, law="uniform:-1:1", seed=10))

    def test_dot_format_carries_the_config_comment(self, capsys):
        code, out = run_cli(capsys, "generate", "--generate", "star", "--n", "5", "--format", "dot")
        assert code == 0
        assert out.startswith("// run_config: ")
        assert "graph tree {" in out

    def test_text_format(self, capsys):
        code, out = run_cli(capsys, "generate", "--generate", "path", "--n", "3", "--format", "text")
        assert code == 0
        assert out.startswith("# run_config: ")
        assert "0 -- 1" in out

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "tree.json"
        code, out = run_cli(
            capsys, "generate", "--generate", "path", "--n", "4", "--output", str(target)
        )
        assert code == 0 and out == ""
        tree, _ = tn.from_json(target.read_text())
        assert tree.n == 4


class TestSpectrum:
    def test_path_two_vertices(self, capsys):
        code, out = run_cli(
            capsys, "spectrum", "--generate", "path", "--n", "2", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["eigenvalues"] == pytest.approx([0.0, 2.0], abs=1e-14)
        assert doc["backend"] in ("compiled", "pure")
        assert doc["multiplicity"]["groups"] == [[1, 1], [2, 2]]

    def test_text_lists_one_line_per_eigenvalue(self, capsys):
        code, out = run_cli(
            capsys, "spectrum", "--generate", "star", "--n", "5", "--format", "text"
        )
        assert code == 0
        assert out.count("lambda_") == 5
        assert "simple=false" in out

    def test_dump_matrix(self, capsys):
        _, out = run_cli(
            capsys, "spectrum", "--generate", "path", "--n", "2",
            "--format", "json", "--dump-matrix",
        )
        assert json.loads(out)["matrix"] == [[1.0, -1.0], [-1.0, 1.0]]


class TestNodal:
    def test_star_second_eigenvector(self, capsys):
        code, out = run_cli(
            capsys, "nodal", "--generate", "star", "--n", "5",
            "--index", "2", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["index"] == 2
        assert doc["eigenvalue"] == pytest.approx(1.0, abs=1e-12)
        # the basis chosen inside the triple eigenspace is solver-defined,
        # but any lambda=1 eigenvector obeys the sign-graph bound
        assert 2 <= len(doc["sign_graphs"]) <= 4
        assert doc["zero_count"] >= 1
        assert doc["diagnostics"] == []

    def test_index_out_of_range_is_a_usage_error(self, capsys):
        with pytest.raises(SystemExit) as err:
            cli.main(["nodal", "--generate", "path", "--n", "3", "--index", "4"])
        assert err.value.code == 2

    def test_dot_format(self, capsys):
        code, out = run_cli(
            capsys, "nodal", "--generate", "path", "--n", "4", "--index", "2",
            "--format", "dot",
        )
        assert code == 0
        assert "graph nodal {" in out


class TestVerify:
    def test_star_passes_with_inapplicable_counting_checks(self, capsys):
        code, out = run_cli(
            capsys, "verify", "--generate", "star", "--n", "5", "--format", "text"
        )
        assert code == 0
        lines = dict()
        for line in out.splitlines():
            if line and not line.startswith("#"):
                parts = line.split()
                lines[parts[0]] = parts[1]
        assert lines["spectrum"] == "pass"
        assert lines["greens"] == "pass"
        assert lines["courant"] == "inapplicable"
        assert lines["interlacing"] == "inapplicable"
        assert lines["perron"] == "pass"
        assert lines["zero_dichotomy"] == "pass"

    def test_json_reports(self, capsys):
        code, out = run_cli(
            capsys, "verify", "--generate", "random", "--n", "6",
            "--weights", "uniform:0.5:2", "--potential", "uniform:-1:1",
            "--seed", "3", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert [r["check"] for r in doc["reports"]] == list(cli.verify_mod.CHECK_NAMES)
        assert all(r["verdict"] in ("pass", "inapplicable") for r in doc["reports"])

    def test_input_file(self, capsys, tmp_path):
        t = tn.generate("random_pruefer", 6, weight_law="uniform:0.5:2", seed=41)
        path = tmp_path / "t.json"
        path.write_text(tn.to_json(t, tn.random_potential(6, law="uniform:-1:1", seed=42)))
        code, _ = run_cli(capsys, "verify", "--input", str(path))
        assert code == 0


class TestBatch:
    def test_small_batch_text(self, capsys):
        code, out = run_cli(
            capsys, "batch", "--count", "3", "--n-min", "4", "--n-max", "5", "--seed", "2"
        )
        assert code == 0
        assert out.startswith("# batch count=3 seed=2")
        assert "failures: none" in out

    def test_json_summary(self, capsys):
        code, out = run_cli(
            capsys, "batch", "--count", "2", "--n-min", "4", "--n-max", "4",
            "--seed", "3", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["count"] == 2
        assert doc["failures"] == []
        assert doc["config"]["command"] == "batch"
        assert "jobs" not in doc["config"]

    def test_config_file_overrides(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"count": 2, "n_max": 5}))
        code, out = run_cli(
            capsys, "batch", "--count", "50", "--config", str(cfg), "--format", "json"
        )
        assert code == 0
        assert json.loads(out)["count"] == 2

    def test_unknown_config_key_is_a_usage_error(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"threads": 4}))
        with pytest.raises(SystemExit) as err:
            cli.main(["batch", "--config", str(cfg)])
        assert err.value.code == 2

    def test_reruns_are_byte_identical(self, tmp_path):
        cmd = [
            sys.executable, "-m", "treenodal.cli",
            "batch", "--count", "4", "--n-min", "4", "--n-max", "6",
            "--seed", "21", "--format", "json",
        ]
        a = subprocess.run(cmd, capture_output=True, check=True).stdout
        b = subprocess.run(cmd, capture_output=True, check=True).stdout
        assert a == b and a


class TestUsageErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["spectrum", "--generate", "wheel", "--n", "5"],
            ["spectrum", "--generate", "path", "--n", "5", "--eps-z", "-1"],
            ["spectrum", "--generate", "path", "--n", "5", "--tau-gap", "0"],
            ["verify", "--jobs", "2"],
            ["batch", "--jobs", "0"],
            ["nodal", "--generate", "path", "--n", "1"],
        ],
    )
    def test_exit_code_two(self, argv):
        with pytest.raises(SystemExit) as err:
            cli.main(argv)
        assert err.value.code == 2

    def test_input_and_generate_are_exclusive(self, tmp_path):
        path = tmp_path / "t.json"
        path.write_text(tn.to_json(tn.generate("path", 3)))
        with pytest.raises(SystemExit) as err:
            cli.main(["spectrum", "--input", str(path), "--generate", "star"])
        assert err.value.code == 2

    def test_unreadable_input_is_a_usage_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        with pytest.raises(SystemExit) as err:
            cli.main(["spectrum", "--input", str(bad)])
        assert err.value.code == 2

    def test_failure_exit_code_is_one(self, capsys, monkeypatch):
        # no honest instance fails the theorems, so fabricate one report
        monkeypatch.setattr(
            cli, "run_all",
            lambda *a, **k: [{"check": "greens", "verdict": "fail", "details": {}}],
        )
        code = cli.main(["verify", "--generate", "path", "--n", "3"])
        assert code == 1
        capsys.readouterr()
