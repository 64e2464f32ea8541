import pytest
from hypothesis import strategies as st

from jacmap.poly import Poly2

ACCEPTANCE_LINES = []


def record_acceptance(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture
def acceptance():
    return record_acceptance


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def polys(max_exp=4, max_terms=6):
    mono = st.tuples(st.integers(0, max_exp), st.integers(0, max_exp))
    return st.dictionaries(mono, coeffs, max_size=max_terms).map(Poly2)


def rationals(limit=10):
    return st.fractions(min_value=-limit, max_value=limit, max_denominator=9)
