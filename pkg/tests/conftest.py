from __future__ import annotations

import pytest

from morfwork.corpus import build_index
from morfwork.disambiguator import tag_corpus
from morfwork.workbench import Workbench, _default_data


def read_data(name: str) -> str:
    return _default_data(name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def wb() -> Workbench:
    return Workbench.load()


@pytest.fixture(scope="session")
def corpus_text() -> str:
    return read_data("sample_corpus.txt")


@pytest.fixture(scope="session")
def gold_text() -> str:
    return read_data("sample_gold.tagged")


@pytest.fixture(scope="session")
def tagging(wb, corpus_text):
    return tag_corpus(corpus_text, wb.analyzer, wb.constraints, wb.stats)


@pytest.fixture(scope="session")
def tagged(tagging):
    return tagging[0]


@pytest.fixture(scope="session")
def tag_report(tagging):
    return tagging[1]


@pytest.fixture(scope="session")
def token_analyses(tagging):
    return tagging[2]


@pytest.fixture(scope="session")
def index(tagged):
    return build_index(tagged)
