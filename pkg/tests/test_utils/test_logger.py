import json
import logging

import pytest

from posenc_wl.utils.logger import ROOT_LOGGER, build_logging_config, setup_logging


@pytest.fixture
def restore_logging(settings, monkeypatch):
    yield
    monkeypatch.setattr(settings, "LOG_DIR", None)
    monkeypatch.setattr(settings, "LOG_FORMAT", "json")
    setup_logging("WARNING")


def test_console_only_without_log_dir():
    config = build_logging_config("INFO", True, None)
    assert list(config["handlers"]) == ["stderr"]
    assert config["loggers"][ROOT_LOGGER]["propagate"] is False
    assert config["handlers"]["stderr"]["formatter"] == "json"


def test_log_dir_adds_rotating_files(tmp_path):
    config = build_logging_config("DEBUG", False, tmp_path)
    assert set(config["loggers"][ROOT_LOGGER]["handlers"]) == {"stderr", "run_file", "error_file"}
    assert config["handlers"]["error_file"]["level"] == "ERROR"
    assert "json" not in config["formatters"]


def test_json_lines_reach_the_log_file(settings, monkeypatch, tmp_path, restore_logging):
    monkeypatch.setattr(settings, "LOG_DIR", str(tmp_path / "logs"))
    monkeypatch.setattr(settings, "LOG_FORMAT", "json")
    setup_logging("DEBUG")

    logging.getLogger("posenc_wl.tests").info("refined", extra={"details": {"rounds": 3}})
    for handler in logging.getLogger(ROOT_LOGGER).handlers:
        handler.flush()

    record = json.loads((tmp_path / "logs" / "posenc_wl.log").read_text().splitlines()[-1])
    assert record["message"] == "refined"
    assert record["level"] == "INFO"
    assert record["details"] == {"rounds": 3}
    assert (tmp_path / "logs" / "errors.log").exists()


def test_log_level_flag_overrides_settings(settings, monkeypatch, restore_logging):
    monkeypatch.setattr(settings, "LOG_LEVEL", "INFO")
    setup_logging("error")
    assert logging.getLogger(ROOT_LOGGER).level == logging.ERROR
