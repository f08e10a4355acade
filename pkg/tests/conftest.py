import pytest

from secondham.generators import named, random_cubic

ACCEPTANCE: dict[int, tuple[bool, str]] = {}

SMALL_SIZES = (6, 8, 10, 12, 14, 16)


def small_corpus(count=510, sizes=SMALL_SIZES, seed0=0):
    """Random cubic instances with n <= 16, cycling through the sizes."""
    return [random_cubic(sizes[k % len(sizes)], seed0 + k) for k in range(count)]


@pytest.fixture(scope="session")
def corpus():
    return [named(x) for x in ("k4", "k33", "prism", "cube")] + small_corpus()


@pytest.fixture
def acceptance():
    def record(number: int, passed: bool, detail: str) -> None:
        ACCEPTANCE[number] = (passed, detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}")
