from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # tests/oracles.py

from minifix.corpus import build_index
from minifix.synth import make_suite, write_corpus


@pytest.fixture(scope="session")
def suite():
    return make_suite()


@pytest.fixture(scope="session")
def corpus_paths(tmp_path_factory, suite):
    directory = tmp_path_factory.mktemp("corpus")
    return write_corpus(directory, 30, seed=11, suite=suite)


@pytest.fixture(scope="session")
def index(corpus_paths, suite):
    idx, rejections = build_index(corpus_paths, suite)
    assert not rejections
    return idx
