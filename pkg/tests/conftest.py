from __future__ import annotations

from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def fixture_path():
    def lookup(name: str) -> Path:
        return DATA / name

    return lookup


def run_cli(argv: list[str], capsys) -> tuple[int, str, str]:
    """Run the command line in process, capturing exit code and streams."""
    from oodn.cli import main

    try:
        code = main(argv)
    except SystemExit as exc:  # argparse usage failures
        code = exc.code if isinstance(exc.code, int) else 1
    captured = capsys.readouterr()
    return code, captured.out, captured.err
