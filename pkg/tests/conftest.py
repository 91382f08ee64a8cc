import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from greymix.document import paper_example  # noqa: E402
from greymix.pipeline import run_pipeline  # noqa: E402


@pytest.fixture(scope="session")
def paper_doc():
    return paper_example()


@pytest.fixture(scope="session")
def paper_report(paper_doc):
    return run_pipeline(paper_doc)
