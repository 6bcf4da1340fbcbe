import pytest

from ringlab.corpus import CorpusSpec, build_corpus, default_corpus

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = {}


def record_criterion(n, ok, detail):
    ACCEPTANCE_LINES[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture(scope="session")
def default_spec():
    return default_corpus()


@pytest.fixture(scope="session")
def corpus(default_spec):
    return build_corpus(default_spec)


SMALL = ("Z2", "Z4", "Z6", "Z8", "Z9", "Z12", "Z2 x Z2", "Z2 x Z4", "Z2 x Z2 x Z2",
         "idz(Z4, Z2)", "idz(Z8, Z2)", "dup(Z4, <2>)", "dup(Z2, <1>)")


@pytest.fixture(scope="session")
def small_corpus():
    return build_corpus(CorpusSpec(SMALL, symbolic=True))
