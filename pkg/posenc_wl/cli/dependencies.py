"""Shared helpers for CLI sub-commands: settings overrides, graph input and artifact output."""

import argparse
import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, Optional

from posenc_wl.core.config import Settings, get_settings
from posenc_wl.core.exceptions import CliUsageError, PosEncError
from posenc_wl.models.graph import FeaturedGraph
from posenc_wl.models.schemas import CliConfig
from posenc_wl.validators.edge_list import edge_list_validator

# Settings a CLI flag may override for the duration of one invocation.
_OVERRIDES = {"quant_step": "QUANT_STEP", "seed": "SEED", "jobs": "JOBS", "report_format": "REPORT_FORMAT"}


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser that raises instead of exiting, so errors share the JSON error body."""

    def error(self, message: str):
        raise CliUsageError(message, {"usage": self.format_usage().strip()})


def get_current_settings() -> Settings:
    return get_settings()


@contextmanager
def settings_overrides(config: CliConfig) -> Iterator[Settings]:
    """Apply flag values on top of the environment-derived settings, restoring them afterwards."""
    settings = get_settings()
    saved = {attr: getattr(settings, attr) for attr in _OVERRIDES.values()}
    try:
        for field, attr in _OVERRIDES.items():
            value = getattr(config, field)
            if value is not None:
                setattr(settings, attr, value.value if hasattr(value, "value") else value)
        yield settings
    finally:
        for attr, value in saved.items():
            setattr(settings, attr, value)


def read_graph(path: Optional[str], flag: str = "-i") -> FeaturedGraph:
    """Read an edge-list file (``-`` for stdin)."""
    if not path:
        raise CliUsageError(f"missing graph input ({flag})")
    if path == "-":
        return edge_list_validator.parse(sys.stdin.read())
    if not Path(path).exists():
        raise CliUsageError(f"input file not found: {path}", {"flag": flag})
    return edge_list_validator.read(path)


def emit(text: str, output: Optional[str]) -> None:
    """Write an artifact to ``output`` or stdout."""
    if output and output != "-":
        try:
            Path(output).write_text(text, encoding="utf-8")
        except OSError as e:
            raise PosEncError(f"cannot write {output}: {e}", {"path": output}) from e
        return
    sys.stdout.write(text)
    sys.stdout.flush()


def dump_json(data: Dict[str, Any]) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
