import pytest

from edspang import parse_ed_text, parse_sources_text
from helpers import S_B_TEXT, T_A_TEXT, T_B_TEXT

_ACCEPTANCE: list[str] = []


@pytest.fixture
def t_a():
    return parse_ed_text(T_A_TEXT)


@pytest.fixture
def t_b():
    return parse_ed_text(T_B_TEXT)


@pytest.fixture
def s_b(t_b):
    return parse_sources_text(S_B_TEXT, 4, t_b)


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per criterion; printed in the terminal summary."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
        _ACCEPTANCE.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
