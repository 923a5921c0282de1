import math

import mpmath
import pytest

_ACCEPTANCE_LINES: list[str] = []


def trial_division_primes(count: int) -> list[int]:
    """Independent oracle: the first ``count`` primes by trial division."""
    out = []
    m = 2
    while len(out) < count:
        if all(m % p for p in out if p * p <= m):
            out.append(m)
        m += 1
    return out


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    return all(m % d for d in range(2, math.isqrt(m) + 1))


def mp_frac(x):
    return mpmath.mpf(x.numerator) / x.denominator


@pytest.fixture(scope="session")
def oracle_primes():
    return trial_division_primes(2100)


@pytest.fixture(scope="session")
def six_over_pi2():
    with mpmath.workdps(60):
        return 6 / mpmath.pi**2


@pytest.fixture
def acceptance():
    def record(criterion: str, passed: bool, detail: str = ""):
        mark = "PASS" if passed else "FAIL"
        _ACCEPTANCE_LINES.append(f"[{mark}] {criterion}" + (f" -- {detail}" if detail else ""))
        assert passed, f"{criterion}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
