import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def golden_dir():
    return GOLDEN_DIR


@pytest.fixture(scope="session")
def golden_sources(golden_dir):
    """Every snippet in the golden corpus, hand-tokenized and generated."""
    return {p.name: p.read_text(encoding="utf-8")
            for p in sorted(golden_dir.glob("*.py"))}


@pytest.fixture(scope="session")
def golden_token_pairs(golden_dir):
    """The hand-tokenized subset: (source, expected token list) pairs."""
    from clcp.pylex import parse_token_lines

    pairs = {}
    for tok_path in sorted(golden_dir.glob("*.tokens")):
        src = tok_path.with_suffix(".py").read_text(encoding="utf-8")
        pairs[tok_path.stem] = (src, parse_token_lines(tok_path.read_text(encoding="utf-8")))
    return pairs
