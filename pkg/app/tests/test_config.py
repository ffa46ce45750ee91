"""
Configuration tests: defaults, key=value files, flag overrides
"""

import pytest

from app.config import Settings, load_settings, settings
from app.exceptions import ConfigError
from app.schemas.run_config import RunConfig


def test_defaults():
    assert settings.APP_NAME == "TradeRank"
    cfg = Settings().run_config()

    assert cfg == RunConfig()
    assert cfg.alpha == 0.85
    assert cfg.beta == 0.5
    assert cfg.zeta == 0.99
    assert cfg.tolerance == 1e-8
    assert cfg.weighted_degrees is True


def test_config_file_values_and_case(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("alpha=0.9\nMAX_ITERATIONS=500\nlog_level=DEBUG\n")

    loaded = load_settings(path)
    assert loaded.ALPHA == 0.9
    assert loaded.MAX_ITERATIONS == 500
    assert loaded.LOG_LEVEL == "DEBUG"


def test_flags_override_file(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("BETA=0.7\nZETA=0.95\n")

    cfg = load_settings(path).run_config(beta=0.3, zeta=None)
    assert cfg.beta == 0.3
    assert cfg.zeta == 0.95


def test_environment_is_not_consulted(monkeypatch):
    monkeypatch.setenv("ALPHA", "0.5")
    monkeypatch.setenv("TOLERANCE", "0.1")

    assert Settings().ALPHA == 0.85
    assert Settings().TOLERANCE == 1e-8


@pytest.mark.parametrize("field", ["alpha", "beta", "zeta", "blend_c"])
@pytest.mark.parametrize("value", [0.0, 1.0, -0.1, 1.5])
def test_open_interval_bounds(field, value):
    with pytest.raises(ConfigError) as excinfo:
        Settings().run_config(**{field: value})
    assert field in str(excinfo.value)


def test_unknown_key_in_file(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("DAMPING=0.8\n")

    with pytest.raises(ConfigError):
        load_settings(path)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_settings(tmp_path / "absent.env")


def test_run_config_is_frozen():
    cfg = RunConfig()

    with pytest.raises(Exception):
        cfg.alpha = 0.5
