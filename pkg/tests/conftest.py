import pathlib

import pytest

from ceed.lexicon import build_lexicon, load_lexicon

REPO = pathlib.Path(__file__).resolve().parents[1]
DATA = REPO / "data"


@pytest.fixture(scope="session")
def data_dir() -> pathlib.Path:
    return DATA


@pytest.fixture(scope="session")
def fixture_lexicon_path(tmp_path_factory) -> pathlib.Path:
    out = tmp_path_factory.mktemp("lexicon") / "fixture.lex"
    build_lexicon(DATA / "titles.txt", DATA / "anchors.tsv", out)
    return out


@pytest.fixture(scope="session")
def fixture_lexicon(fixture_lexicon_path):
    return load_lexicon(fixture_lexicon_path)
