import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stsramsey import fano, s9


@pytest.fixture(scope="session")
def fano_sys():
    return fano()


@pytest.fixture(scope="session")
def s9_sys():
    return s9()
