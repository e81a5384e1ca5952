import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

# PASS/FAIL lines from test_acceptance.py, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


@st.composite
def reduced_words(draw, k, max_len=12):
    """Reduced words over 1..k: a first letter, then non-zero shifts mod k."""
    if k == 1:
        return draw(st.sampled_from([(), (1,)]))
    first = draw(st.integers(1, k))
    shifts = draw(st.lists(st.integers(1, k - 1), max_size=max_len - 1))
    if not draw(st.booleans()) and not shifts:
        return ()
    w = [first]
    for s in shifts:
        w.append((w[-1] - 1 + s) % k + 1)
    return tuple(w)


@pytest.fixture
def small_system():
    from matchlab.systems import FiniteColourSystem

    return FiniteColourSystem(3, [(), (1,), (2,), (2, 1), (3,), (3, 1), (3, 2)], name="V")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
