import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from kg2.atomic import dilate  # noqa: E402
from kg2.bundled import twisted_identity_seed, one_vertex_seed, swap_seed  # noqa: E402
from kg2.core import flip_from_permutation, identity_theta, make_theta  # noqa: E402

settings.register_profile("repo", max_examples=60, deadline=None)
settings.load_profile("repo")

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def dov():
    return dilate(one_vertex_seed(), 3)


@pytest.fixture(scope="session")
def dov_deep():
    return dilate(one_vertex_seed(), 5)


@pytest.fixture(scope="session")
def dswap():
    return dilate(swap_seed(), 3)


@pytest.fixture(scope="session")
def dtw():
    return dilate(twisted_identity_seed(), 3)


@st.composite
def thetas(draw, max_m=3, max_n=3):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    keys = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    images = draw(st.permutations(keys))
    return make_theta(m, n, dict(zip(keys, images)))


@st.composite
def words(draw, G, max_len=6):
    from kg2.core import e, f

    k = draw(st.integers(0, max_len))
    out = []
    for _ in range(k):
        if draw(st.booleans()):
            out.append(e(draw(st.integers(1, G.m))))
        else:
            out.append(f(draw(st.integers(1, G.n))))
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
