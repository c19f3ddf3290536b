import pytest
from hypothesis import settings

settings.register_profile("repo", deadline=None, max_examples=60)
settings.load_profile("repo")


@pytest.fixture
def sample_modules():
    from bordered_twist.knot_cfd import KNOT_NAMES, builtin_knot, cfd_from_cfk

    return [cfd_from_cfk(builtin_knot(k), n) for k in KNOT_NAMES for n in (-3, 0, 3)]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
