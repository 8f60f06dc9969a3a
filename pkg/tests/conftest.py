import math
import sys

import pytest

from sqfree_sumsets.sieve import build_squarefree_table


def trial_squarefree(n: int) -> bool:
    """Independent oracle: test every d^2 <= n."""
    if n == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def mobius_count(N: int) -> int:
    """Number of squarefree n <= N via sum_{d <= sqrt N} mu(d) floor(N / d^2)."""
    r = math.isqrt(N)
    mu = [1] * (r + 1)
    prime = [True] * (r + 1)
    for p in range(2, r + 1):
        if prime[p]:
            for j in range(2 * p, r + 1, p):
                prime[j] = False
            for j in range(p, r + 1, p):
                mu[j] = -mu[j]
            for j in range(p * p, r + 1, p * p):
                mu[j] = 0
    return sum(mu[d] * (N // (d * d)) for d in range(1, r + 1))


@pytest.fixture(scope="session")
def table_1e5():
    return build_squarefree_table(10**5)


@pytest.fixture(scope="session")
def table_1e6():
    return build_squarefree_table(10**6)


@pytest.fixture(scope="session")
def table_1e7():
    return build_squarefree_table(10**7)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for i, (ok, detail) in sorted(mod.RESULTS.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {i}: {detail}")
