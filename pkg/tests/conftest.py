import pytest

from hodgerr.exactnum import RATIONALS, cyclotomic_modulus

ACCEPTANCE = {}


def record(criterion: str, passed: bool, detail: str = ""):
    ACCEPTANCE[criterion] = (passed, detail)


@pytest.fixture
def acceptance_record():
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        passed, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}  {detail}")


MODULI = [RATIONALS, cyclotomic_modulus(3), cyclotomic_modulus(5)]
