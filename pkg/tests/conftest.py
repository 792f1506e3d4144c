import pytest
from hypothesis import settings, strategies as st

from pantslab.combinatorics import canonicalize, mask

# derandomized so that repeated runs are identical
settings.register_profile("pantslab", derandomize=True, max_examples=80, deadline=None)
settings.load_profile("pantslab")


@st.composite
def cyclic_partitions(draw, min_size=2, max_size=6, min_parts=1):
    """A random cyclic partition: shuffle {0..size-1}, cut the circle in >= min_parts arcs."""
    size = draw(st.integers(min_size, max_size))
    order = draw(st.permutations(range(size)))
    k = draw(st.integers(min(min_parts, size), size))
    cuts = sorted(draw(st.sets(st.integers(1, size - 1), min_size=k - 1, max_size=k - 1))) if k > 1 else []
    bounds = [0] + cuts + [size]
    parts = [mask(order[a:b]) for a, b in zip(bounds, bounds[1:])]
    return canonicalize(parts, size)


@pytest.fixture(scope="session")
def sigma0_n2():
    from pantslab.combinatorics import standard_partition
    return standard_partition(2)


# -- acceptance summary --------------------------------------------------------------
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
