import pytest
from hypothesis import settings

from valseq.defseq import build
from valseq.presets import example

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def seq71():
    return build(example("7.1"))


@pytest.fixture(scope="session")
def seq82():
    return build(example("8.2"))


@pytest.fixture(scope="session")
def seq81():
    return build(example("8.1"))
