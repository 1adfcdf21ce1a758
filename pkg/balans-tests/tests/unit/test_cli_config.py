"""
Unit tests for configuration loading and the in-process CLI entry point.
"""

import io
import json

import pytest

from cli import DEFAULT_CONFIG, EXIT_OK, EXIT_USAGE, load_config, run
from exceptions import ConfigError


@pytest.mark.unit
def test_missing_config_returns_defaults(tmp_path):
    config = load_config(str(tmp_path / "absent.json"))
    assert config == DEFAULT_CONFIG
    config["grid"]["a_max"] = 1
    assert DEFAULT_CONFIG["grid"]["a_max"] == 120


@pytest.mark.unit
def test_partial_config_is_merged_over_defaults(tmp_path):
    path = tmp_path / "partial.json"
    path.write_text(json.dumps({"budget": {"cap": 512}, "verify": {"eq1.1": {"range": [2, 5]}}}))
    config = load_config(str(path))
    assert config["budget"] == {"initial_terms": 16, "cap": 512}
    assert config["verify"]["eq1.1"]["range"] == [2, 5]
    assert config["grid"]["n_max"] == 5000


@pytest.mark.unit
@pytest.mark.parametrize("text", ["{ not json", "[1, 2]"])
def test_unusable_config_raises(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_config(str(path))


@pytest.mark.unit
def test_shipped_config_loads(repo_root):
    config = load_config(str(repo_root / "balans_config.json"))
    assert config["verify"]["conj4.1"] == {"y_max": 25, "n_max": 1000}


@pytest.mark.unit
def test_run_writes_nothing_on_error():
    out = io.StringIO()
    assert run(["find", "--a", "2", "--b", "4"], out) == EXIT_USAGE
    assert out.getvalue() == ""


@pytest.mark.unit
def test_run_in_process_text_output():
    out = io.StringIO()
    assert run(["--format", "text", "seq", "--family", "balancing", "--count", "4"], out) == EXIT_OK
    assert out.getvalue() == "1 6 35 204\n"
