import json

import pytest

from posenc_wl.main import run
from posenc_wl.validators.corpus_file import corpus_file_validator


@pytest.fixture
def cli(settings, capsys):
    """Run the CLI in-process and return ``(exit_code, stdout, stderr)``."""

    def _run(*argv):
        code = run([str(a) for a in argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


@pytest.fixture
def error_body():
    """The JSON error document: the last stderr line."""

    def _parse(stderr):
        return json.loads(stderr.strip().splitlines()[-1])

    return _parse


@pytest.fixture
def corpus_spec(tmp_path, small_corpus):
    path = tmp_path / "small.jsonl"
    corpus_file_validator.write(small_corpus.to_records(), path)
    return f"file({path})"
