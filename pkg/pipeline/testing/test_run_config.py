"""
Tests for run-config loading, overrides and output-directory resolution.
"""

import json

import pytest

from config.errors import DataValidationError, ParseError, UsageError
from neuralnet.config import Preset
from pipeline.run_config import RunConfig, load_run_config, parse_int_list, resolve_output_dir


def _write(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_relative_paths_resolve_against_config_file(tmp_path, monkeypatch):
    config_dir = tmp_path / "configs"
    config_dir.mkdir()
    (tmp_path / "data").mkdir()
    path = _write(config_dir / "run.json", {"seed": 7, "cultural_path": "../data/culture.csv", "output_dir": "out"})

    monkeypatch.chdir(tmp_path / "data")
    config = load_run_config(path)
    assert config.cultural_path == (tmp_path / "data" / "culture.csv").resolve()
    assert config.output_dir == (config_dir / "out").resolve()
    assert config.seed == 7


def test_echo_is_relative_and_omits_output_dir(tmp_path):
    path = _write(tmp_path / "run.json", {"seed": 1, "cultural_path": "culture.csv", "output_dir": "out"})
    echo = load_run_config(path).to_dict(relative_to=tmp_path)
    assert echo["cultural_path"] == "culture.csv"
    assert "output_dir" not in echo
    assert echo["preset"] == "final"
    assert echo["batch_grid"] == [16, 32, 64, 96]


def test_overrides_skip_none():
    config = RunConfig(seed=1)
    changed = config.with_overrides(seed=9, t_low=None, preset=Preset.ORIGINAL)
    assert (changed.seed, changed.t_low, changed.preset) == (9, 0.25, Preset.ORIGINAL)


def test_thresholds_must_be_in_unit_interval():
    with pytest.raises(DataValidationError, match="t_low"):
        RunConfig(seed=1, t_low=1.5)


def test_unknown_keys_are_usage_errors(tmp_path):
    with pytest.raises(UsageError, match="colour"):
        load_run_config(_write(tmp_path / "run.json", {"seed": 1, "colour": "blue"}))


def test_broken_json_names_file_and_line(tmp_path):
    path = tmp_path / "run.json"
    path.write_text('{\n  "seed": 1,\n  oops\n}\n', encoding="utf-8")
    with pytest.raises(ParseError) as info:
        load_run_config(path)
    assert info.value.line == 3
    assert "run.json" in str(info.value)


def test_missing_input_paths_are_reported(tmp_path):
    path = _write(tmp_path / "run.json", {"seed": 1, "cultural_path": "nowhere.csv"})
    with pytest.raises(DataValidationError, match="cultural_path"):
        load_run_config(path).check_paths()


def test_output_dir_precedence(tmp_path, monkeypatch):
    monkeypatch.setenv("PRICE_CONTEXT_OUTPUT_DIR", str(tmp_path / "env"))
    monkeypatch.chdir(tmp_path)
    bare = RunConfig(seed=1)
    from_file = RunConfig(seed=1, output_dir=tmp_path / "file")

    assert resolve_output_dir(from_file, tmp_path / "flag") == (tmp_path / "flag").resolve()
    assert resolve_output_dir(from_file, None) == tmp_path / "file"
    assert resolve_output_dir(bare, None) == (tmp_path / "env").resolve()

    monkeypatch.delenv("PRICE_CONTEXT_OUTPUT_DIR")
    assert resolve_output_dir(bare, None) == (tmp_path / "runs" / "default").resolve()


def test_synth_and_preprocess_views():
    config = RunConfig(seed=5, synth={"rows": 10, "noise": 0.0}, log_columns=("gdp_per_capita",))
    synth = config.synth_config()
    assert (synth.seed, synth.rows, synth.noise) == (5, 10, 0.0)
    options = config.preprocess_options()
    assert options.seed == 5
    assert options.log_columns == ("gdp_per_capita",)


def test_parse_int_list():
    assert parse_int_list("16, 32,64") == [16, 32, 64]
    assert parse_int_list(None) is None
    with pytest.raises(UsageError):
        parse_int_list("16,abc")
