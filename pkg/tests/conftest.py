import sys
from pathlib import Path

import pytest

from fgdef import _kernels
from fgdef.words import Alphabet

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def ab2():
    return Alphabet(2)


@pytest.fixture(scope="session")
def ab3():
    return Alphabet(3)


@pytest.fixture(params=_kernels.available_backends(),
                ids=lambda m: m.BACKEND)
def kernel(request):
    """Each available kernel backend (pure Python, compiled if built)."""
    return request.param
