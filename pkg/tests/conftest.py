import sys
from pathlib import Path

from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from pathflip.geom import PointSet, in_general_position  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("default")


def point_lists(min_size=3, max_size=7, bound=60):
    coord = st.integers(-bound, bound)
    return (st.lists(st.tuples(coord, coord), min_size=min_size, max_size=max_size, unique=True)
            .filter(in_general_position))


def point_sets(min_size=3, max_size=7, bound=60):
    return point_lists(min_size, max_size, bound).map(PointSet)


# one summary line per acceptance criterion, shown whatever the capture mode
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
