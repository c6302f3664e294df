import pytest

from fuzzydss.fixtures import load_paper_case
from fuzzydss.pipeline import run_pipeline


@pytest.fixture(scope="session")
def paper_case():
    return load_paper_case()


@pytest.fixture(scope="session")
def paper_session(paper_case):
    return run_pipeline(paper_case)
