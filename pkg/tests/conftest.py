import random
from fractions import Fraction

import pytest

from ncprob.measures import AtomicMeasure


def rand_fraction(rng, lo=-3, hi=3, den=6):
    q = rng.randint(1, den)
    return Fraction(rng.randint(lo * q, hi * q), q)


def random_atomic(rng, k):
    atoms = set()
    while len(atoms) < k:
        atoms.add(rand_fraction(rng))
    raw = [rng.randint(1, 9) for _ in range(k)]
    total = sum(raw)
    return AtomicMeasure(tuple(sorted(atoms)), tuple(Fraction(w, total) for w in raw))


@pytest.fixture
def rng():
    return random.Random(20240611)


_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    found = [v for k, v in report.user_properties if k == "acceptance"]
    if not found:
        return
    number, title = found[0]
    state = "PASS" if report.passed else "FAIL"
    prev = _ACCEPTANCE.get(number)
    if prev is None or prev[1] == "PASS":
        _ACCEPTANCE[number] = (title, state)


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            item.user_properties.append(("acceptance", tuple(m.args)))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, state = _ACCEPTANCE[number]
        terminalreporter.write_line(f"[{state}] {number:2d}. {title}")
