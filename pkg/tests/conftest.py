import sys
from pathlib import Path

import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

from hypernorm.classifier import Fragment, classify  # noqa: E402
from hypernorm.exemplar import build_exemplar  # noqa: E402


def golden(name: str) -> str:
    return (HERE / "golden" / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def exemplar():
    return build_exemplar()


@pytest.fixture(scope="session")
def exemplar_fragment(exemplar):
    ont, registry = exemplar
    return Fragment(ont, registry)


@pytest.fixture(scope="session")
def exemplar_dag(exemplar):
    ont, registry = exemplar
    return classify(ont, registry)
