"""CLI behaviour: subcommands, exit codes, output files."""

import json

import pytest

from tempocode.cli import main


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEncodeCommand:
    def test_docstring_example(self, capsys):
        code, out, _ = _run(capsys, ["encode", "--features", "0.2,0.9,0.1,0.7"])
        assert code == 0
        record = json.loads(out)
        assert list(record.items()) == [("1", 0.0), ("3", 0.003333), ("0", 0.006667)]

    def test_custom_params(self, capsys):
        code, out, _ = _run(capsys, ["encode", "--features", "0.4,0.9", "--tau-base", "0.02", "--threshold", "0.5"])
        assert code == 0
        assert json.loads(out) == {"1": 0.0}

    def test_silent_packet(self, capsys):
        code, out, _ = _run(capsys, ["encode", "--features", "0.0,0.05"])
        assert code == 0
        assert json.loads(out) == {}

    def test_bad_features_exit_2(self, capsys):
        code, _, err = _run(capsys, ["encode", "--features", "0.2,abc"])
        assert code == 2
        assert "config error" in err


class TestCapacityCommand:
    def test_ordered(self, capsys):
        code, out, _ = _run(capsys, ["capacity", "--n", "3"])
        assert code == 0
        assert out == "ordered: 2.585 bits\n"

    def test_with_unordered(self, capsys):
        code, out, _ = _run(capsys, ["capacity", "--n", "10", "--k", "3"])
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].startswith("ordered: 21.791")
        assert lines[1].startswith("unordered: 6.907")

    def test_invalid_n_exit_2(self, capsys):
        code, _, err = _run(capsys, ["capacity", "--n", "0"])
        assert code == 2


class TestArgumentErrors:
    def test_unknown_flag_exit_2(self, capsys):
        code, _, err = _run(capsys, ["discriminate", "--bogus"])
        assert code == 2
        assert "usage" in err

    def test_unknown_command_exit_2(self, capsys):
        code, _, _ = _run(capsys, ["transmogrify"])
        assert code == 2

    def test_help_exit_0(self, capsys):
        code, out, _ = _run(capsys, ["--help"])
        assert code == 0
        assert "discriminate" in out


@pytest.fixture()
def small_config(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({
        "experiment": {
            "n_train": 5,
            "n_test": 10,
            "sigmas": [0.0, 0.1],
            "steps": 40,
        }
    }))
    return path


class TestExperimentCommands:
    def test_discriminate_text(self, capsys, tmp_path, small_config):
        code, out, err = _run(
            capsys,
            ["discriminate", "--config", str(small_config), "--seed", "42", "--out", str(tmp_path / "out")],
        )
        assert code == 0
        assert "traversal discrimination" in out
        assert "seed=42" in out
        run_dirs = list((tmp_path / "out" / "discriminate").iterdir())
        assert len(run_dirs) == 1
        names = {p.name for p in run_dirs[0].iterdir()}
        assert names == {"report.txt", "report.csv", "report.json"}

    def test_json_format_echoes_effective_config(self, capsys, tmp_path, small_config):
        code, out, _ = _run(
            capsys,
            ["discriminate", "--config", str(small_config), "--seed", "5",
             "--out", str(tmp_path / "out"), "--format", "json"],
        )
        assert code == 0
        data = json.loads(out)
        assert data["seed"] == 5
        assert data["config"]["experiment"]["n_train"] == 5
        assert data["config"]["world"]["seed"] == 5
        from tempocode.config import config_from_dict

        echoed = config_from_dict(data["config"])
        assert echoed.to_dict() == data["config"]

    def test_byte_identical_reruns(self, capsys, tmp_path, small_config):
        outs = []
        for sub in ("a", "b"):
            code, _, _ = _run(
                capsys,
                ["noise-sweep", "--config", str(small_config), "--seed", "1", "--out", str(tmp_path / sub)],
            )
            assert code == 0
            run_dir = next((tmp_path / sub / "noise-sweep").iterdir())
            outs.append({p.name: p.read_bytes() for p in run_dir.iterdir() if p.is_file()})
        assert outs[0] == outs[1]

    def test_plot_writes_curves(self, capsys, tmp_path, small_config):
        code, _, _ = _run(
            capsys,
            ["noise-sweep", "--config", str(small_config), "--seed", "1",
             "--out", str(tmp_path / "out"), "--plot"],
        )
        assert code == 0
        run_dir = next((tmp_path / "out" / "noise-sweep").iterdir())
        curves = {p.name for p in (run_dir / "curves").iterdir()}
        assert curves == {"dense_accuracy.dat", "temporal_accuracy.dat", "gap_pp.dat"}
        first = (run_dir / "curves" / "temporal_accuracy.dat").read_text().splitlines()
        assert first[0].startswith("#")
        assert len(first[1].split()) == 2

    def test_lambda_converge_csv_format(self, capsys, tmp_path, small_config):
        code, out, _ = _run(
            capsys,
            ["lambda-converge", "--config", str(small_config), "--seed", "3",
             "--out", str(tmp_path / "out"), "--format", "csv", "--plot"],
        )
        assert code == 0
        assert out.splitlines()[0] == "step,object_type,lambda"
        run_dir = next((tmp_path / "out" / "lambda-converge").iterdir())
        curves = {p.name for p in (run_dir / "curves").iterdir()}
        assert curves == {"lambda_uniform.dat", "lambda_moderate.dat", "lambda_complex.dat"}

    def test_config_error_exit_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"stdp": {"tau_plus": -1}}))
        code, _, err = _run(capsys, ["discriminate", "--config", str(bad)])
        assert code == 2
        assert "stdp.tau_plus" in err

    def test_missing_config_exit_2(self, capsys, tmp_path):
        code, _, _ = _run(capsys, ["discriminate", "--config", str(tmp_path / "none.json")])
        assert code == 2


class TestSeedResolution:
    def test_env_var_fallback(self, capsys, tmp_path, small_config, monkeypatch):
        monkeypatch.setenv("TEMPOCODE_SEED", "99")
        code, out, _ = _run(
            capsys,
            ["discriminate", "--config", str(small_config), "--out", str(tmp_path / "out"), "--format", "json"],
        )
        assert code == 0
        assert json.loads(out)["seed"] == 99

    def test_flag_beats_env(self, capsys, tmp_path, small_config, monkeypatch):
        monkeypatch.setenv("TEMPOCODE_SEED", "99")
        code, out, _ = _run(
            capsys,
            ["discriminate", "--config", str(small_config), "--seed", "7",
             "--out", str(tmp_path / "out"), "--format", "json"],
        )
        assert code == 0
        assert json.loads(out)["seed"] == 7

    def test_config_seed_beats_env(self, capsys, tmp_path, monkeypatch):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps({"world": {"seed": 31}, "experiment": {"n_train": 3, "n_test": 4}}))
        monkeypatch.setenv("TEMPOCODE_SEED", "99")
        code, out, _ = _run(
            capsys,
            ["discriminate", "--config", str(cfg_path), "--out", str(tmp_path / "out"), "--format", "json"],
        )
        assert code == 0
        assert json.loads(out)["seed"] == 31

    def test_bad_env_seed_exit_2(self, capsys, tmp_path, small_config, monkeypatch):
        monkeypatch.setenv("TEMPOCODE_SEED", "not-a-number")
        code, _, err = _run(capsys, ["discriminate", "--config", str(small_config), "--out", str(tmp_path / "o")])
        assert code == 2
        assert "TEMPOCODE_SEED" in err
