import pytest

from scring.measure import small_pieces
from scring.presentation import BUNDLED, load_presentation

SMALL = ("toy", "c7", "overlap", "commutator", "monfree", "threeterm")


class Fixture:
    def __init__(self, name):
        self.name = name
        self.pres = load_presentation(f"bundled:{name}")
        self.alphabet = self.pres.alphabet
        self._rs = None
        self._pt = {}

    @property
    def rs(self):
        if self._rs is None:
            self._rs = self.pres.close()
        return self._rs

    def pt(self, strict=False):
        if strict not in self._pt:
            self._pt[strict] = small_pieces(self.rs, tau=self.pres.tau, strict=strict)
        return self._pt[strict]

    def w(self, text):
        return self.alphabet.parse(text)


@pytest.fixture(scope="session")
def corpus():
    return {name: Fixture(name) for name in BUNDLED}


@pytest.fixture(scope="session")
def c50(corpus):
    return corpus["c50"]


@pytest.fixture(scope="session")
def toy(corpus):
    return corpus["toy"]


@pytest.fixture(scope="session")
def overlap(corpus):
    return corpus["overlap"]


# one summary line per acceptance criterion, in criterion order
_CRITERIA: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        prev = _CRITERIA.get(name, "PASS")
        _CRITERIA[name] = prev if report.passed and prev == "PASS" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split("_")[2])):
        num, title = name.split("_")[2], " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"criterion {num} [PRIMARY] {title}: {_CRITERIA[name]}")
