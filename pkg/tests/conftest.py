import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES = []


def random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20031015)


@st.composite
def unit_vectors(draw):
    v = draw(
        st.lists(
            st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False), min_size=3, max_size=3
        ).filter(lambda w: np.linalg.norm(w) > 1e-3)
    )
    v = np.array(v)
    return v / np.linalg.norm(v)


rapidities = st.floats(0.0, 5.0, allow_nan=False, allow_infinity=False)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
