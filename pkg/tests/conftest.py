import os

import pytest

# OSPART_FULL=1 raises the exhaustive bounds (slow: minutes, not seconds)
FULL = os.environ.get("OSPART_FULL") == "1"


@pytest.fixture(scope="session")
def full_mode():
    return FULL
